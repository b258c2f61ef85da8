//! Tokenizer for the document language. `#` starts a comment running to end
//! of line; newlines are ordinary whitespace; `0-cell` through `3-cell` are
//! single tokens.

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(usize),
    Cell(u8),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Semi,
    Comma,
    Dot,
    Pipe,
    At,
    Star,
    Equals,
    Arrow,
    DArrow,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::Cell(d) => write!(f, "`{d}-cell`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Pipe => write!(f, "`|`"),
            Tok::At => write!(f, "`@`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Equals => write!(f, "`=`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::DArrow => write!(f, "`=>`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
            continue;
        }
        let push = |out: &mut Vec<Token>, tok: Tok| {
            out.push(Token {
                tok,
                line: tline,
                col: tcol,
            })
        };
        match c {
            '{' => {
                push(&mut out, Tok::LBrace);
                advance(&mut i, &mut line, &mut col);
            }
            '}' => {
                push(&mut out, Tok::RBrace);
                advance(&mut i, &mut line, &mut col);
            }
            '(' => {
                push(&mut out, Tok::LParen);
                advance(&mut i, &mut line, &mut col);
            }
            ')' => {
                push(&mut out, Tok::RParen);
                advance(&mut i, &mut line, &mut col);
            }
            '[' => {
                push(&mut out, Tok::LBracket);
                advance(&mut i, &mut line, &mut col);
            }
            ']' => {
                push(&mut out, Tok::RBracket);
                advance(&mut i, &mut line, &mut col);
            }
            ':' => {
                push(&mut out, Tok::Colon);
                advance(&mut i, &mut line, &mut col);
            }
            ';' => {
                push(&mut out, Tok::Semi);
                advance(&mut i, &mut line, &mut col);
            }
            ',' => {
                push(&mut out, Tok::Comma);
                advance(&mut i, &mut line, &mut col);
            }
            '.' => {
                push(&mut out, Tok::Dot);
                advance(&mut i, &mut line, &mut col);
            }
            '|' => {
                push(&mut out, Tok::Pipe);
                advance(&mut i, &mut line, &mut col);
            }
            '@' => {
                push(&mut out, Tok::At);
                advance(&mut i, &mut line, &mut col);
            }
            '*' => {
                push(&mut out, Tok::Star);
                advance(&mut i, &mut line, &mut col);
            }
            '=' => {
                if chars.get(i + 1) == Some(&'>') {
                    push(&mut out, Tok::DArrow);
                    advance(&mut i, &mut line, &mut col);
                    advance(&mut i, &mut line, &mut col);
                } else {
                    push(&mut out, Tok::Equals);
                    advance(&mut i, &mut line, &mut col);
                }
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    push(&mut out, Tok::Arrow);
                    advance(&mut i, &mut line, &mut col);
                    advance(&mut i, &mut line, &mut col);
                } else {
                    return Err(ParseError::SyntaxError {
                        line: tline,
                        col: tcol,
                        expected: "`->`".to_string(),
                        found: "`-`".to_string(),
                    });
                }
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[i..j].iter().collect();
                // 0-cell, 1-cell, 2-cell, 3-cell keywords
                let rest: String = chars[j..].iter().take(5).collect();
                if digits.len() == 1 && rest == "-cell" {
                    let dim = digits.parse::<u8>().unwrap_or(0);
                    if dim <= 3 {
                        push(&mut out, Tok::Cell(dim));
                        for _ in 0..6 {
                            advance(&mut i, &mut line, &mut col);
                        }
                        continue;
                    }
                }
                let n = digits.parse::<usize>().map_err(|_| ParseError::SyntaxError {
                    line: tline,
                    col: tcol,
                    expected: "a number".to_string(),
                    found: format!("`{digits}`"),
                })?;
                push(&mut out, Tok::Nat(n));
                for _ in i..j {
                    advance(&mut i, &mut line, &mut col);
                }
            }
            a if a.is_alphabetic() || a == '_' => {
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                push(&mut out, Tok::Ident(word));
                for _ in i..j {
                    advance(&mut i, &mut line, &mut col);
                }
            }
            other => {
                return Err(ParseError::SyntaxError {
                    line: tline,
                    col: tcol,
                    expected: "a token".to_string(),
                    found: format!("`{other}`"),
                });
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_cell_keywords_and_numbers() {
        let toks = tokenize("0-cell x 1-cell f 42").unwrap();
        assert_eq!(toks[0].tok, Tok::Cell(0));
        assert_eq!(toks[1].tok, Tok::Ident("x".to_string()));
        assert_eq!(toks[2].tok, Tok::Cell(1));
        assert_eq!(toks[4].tok, Tok::Nat(42));
    }

    #[test]
    fn lexes_arrows_and_comments() {
        let toks = tokenize("a -> b => c # comment -> ignored\n;").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.tok).collect();
        assert!(matches!(kinds[1], Tok::Arrow));
        assert!(matches!(kinds[3], Tok::DArrow));
        assert!(matches!(kinds[5], Tok::Semi));
    }

    #[test]
    fn tracks_positions() {
        let toks = tokenize("a\n  b").unwrap();
        assert_eq!((toks[1].line, toks[1].col), (2, 3));
    }

    #[test]
    fn rejects_stray_characters() {
        assert!(tokenize("a $ b").is_err());
        assert!(tokenize("a - b").is_err());
    }
}
