//! Recursive-descent parser and resolver.
//!
//! Parsing resolves names in declaration order and validates structure as it
//! goes: signatures are rebuilt generator by generator, terms are
//! typechecked, diagrams evaluated, and movie frames computed. Axiom-level
//! checking (category laws, coherence) is left to the `check` command.

use super::ast::{Command, Document, FunctorPayload, Item, RenderFormat};
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;
use crate::diagram::{self, Diagram2, MoveDescriptor, Slice, Wire};
use crate::limits::Cone;
use crate::signature::{CellGenerator, GenName, Signature};
use crate::term::{self, Direction, Layer2, Path1, Term2, Term3};
use crate::twofun::data::{FunctorData, ModificationData, Strength, TransformationData};
use crate::twofun::finite_cat::{CatFunctor, CatNatTrans, FiniteCategory};
use crate::twofun::two_cat::{Builder, Finite2Category};
use crate::twofun::world::{CatWorld, TwoWorld};
use crate::twofun::PastingOrder;
use std::collections::BTreeMap;
use std::sync::Arc;

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        doc: Document::empty(),
    };
    p.document()?;
    Ok(p.doc)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    doc: Document,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err_here<T>(&self, expected: impl Into<String>) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::SyntaxError {
            line: t.line,
            col: t.col,
            expected: expected.into(),
            found: t.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            self.err_here(tok.to_string())
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let t = self.next();
                Ok((s, t.line, t.col))
            }
            _ => self.err_here("a name"),
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        match self.peek().tok {
            Tok::Nat(n) => {
                self.next();
                Ok(n)
            }
            _ => self.err_here("a number"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => self.err_here(format!("`{kw}`")),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn strength(&mut self) -> Result<Strength, ParseError> {
        let (word, line, col) = self.ident()?;
        word.parse().map_err(|_| ParseError::SyntaxError {
            line,
            col,
            expected: "`strict`, `pseudo`, or `lax`".to_string(),
            found: format!("`{word}`"),
        })
    }

    fn check_unique(&self, name: &str, line: usize, col: usize) -> Result<(), ParseError> {
        if self.doc.find(name).is_some() {
            return Err(ParseError::DuplicateName {
                line,
                col,
                name: name.to_string(),
            });
        }
        Ok(())
    }

    fn validation<T>(
        &self,
        line: usize,
        col: usize,
        message: impl Into<String>,
    ) -> Result<T, ParseError> {
        Err(ParseError::ValidationFailed {
            line,
            col,
            message: message.into(),
        })
    }

    // ---- environment lookups ----------------------------------------------

    fn lookup_signature(&self, name: &str, line: usize, col: usize) -> Result<&Signature, ParseError> {
        match self.doc.find(name) {
            Some(Item::Signature { sig, .. }) => Ok(sig),
            _ => Err(ParseError::UnresolvedName {
                line,
                col,
                name: name.to_string(),
            }),
        }
    }

    fn lookup_category(
        &self,
        name: &str,
        line: usize,
        col: usize,
    ) -> Result<&Arc<FiniteCategory>, ParseError> {
        match self.doc.find(name) {
            Some(Item::Category { category, .. }) => Ok(category),
            _ => Err(ParseError::UnresolvedName {
                line,
                col,
                name: name.to_string(),
            }),
        }
    }

    fn lookup_twocat(
        &self,
        name: &str,
        line: usize,
        col: usize,
    ) -> Result<&Finite2Category, ParseError> {
        match self.doc.find(name) {
            Some(Item::TwoCategory { cat, .. }) => Ok(cat),
            _ => Err(ParseError::UnresolvedName {
                line,
                col,
                name: name.to_string(),
            }),
        }
    }

    fn lookup_catfunctor(
        &self,
        name: &str,
        line: usize,
        col: usize,
    ) -> Result<&CatFunctor, ParseError> {
        match self.doc.find(name) {
            Some(Item::CatFunctor { functor, .. }) => Ok(functor),
            _ => Err(ParseError::UnresolvedName {
                line,
                col,
                name: name.to_string(),
            }),
        }
    }

    fn lookup_cattrans(
        &self,
        name: &str,
        line: usize,
        col: usize,
    ) -> Result<&CatNatTrans, ParseError> {
        match self.doc.find(name) {
            Some(Item::CatTrans { trans, .. }) => Ok(trans),
            _ => Err(ParseError::UnresolvedName {
                line,
                col,
                name: name.to_string(),
            }),
        }
    }

    fn lookup_term2(&self, name: &str, line: usize, col: usize) -> Result<(&str, &Term2), ParseError> {
        match self.doc.find(name) {
            Some(Item::Term2 { sig, term, .. }) => Ok((sig, term)),
            _ => Err(ParseError::UnresolvedName {
                line,
                col,
                name: name.to_string(),
            }),
        }
    }

    // ---- document structure ------------------------------------------------

    fn document(&mut self) -> Result<(), ParseError> {
        loop {
            match self.peek().tok.clone() {
                Tok::Eof => return Ok(()),
                Tok::Ident(word) => {
                    let item = match word.as_str() {
                        "signature" => self.signature_decl()?,
                        "term" => self.term2_decl()?,
                        "term3" => self.term3_decl()?,
                        "diagram" => self.diagram_decl()?,
                        "movie" => self.movie_decl()?,
                        "category" => self.category_decl()?,
                        "catfunctor" => self.catfunctor_decl()?,
                        "cattrans" => self.cattrans_decl()?,
                        "2category" => unreachable!("lexes as number"),
                        "functor" => self.functor_decl()?,
                        "transformation" => self.transformation_decl()?,
                        "modification" => self.modification_decl()?,
                        "cone" => self.cone_decl()?,
                        "check" | "normalize" | "eq" | "eq3" | "compose" | "mediate"
                        | "homcat" | "limit" | "certify" | "render" => {
                            let cmd = self.command()?;
                            Item::Command(cmd)
                        }
                        _ => return self.err_here("a declaration or command"),
                    };
                    self.doc.items.push(item);
                }
                Tok::Nat(2) if matches!(&self.peek2().tok, Tok::Ident(s) if s == "category") => {
                    let item = self.twocategory_decl()?;
                    self.doc.items.push(item);
                }
                _ => return self.err_here("a declaration or command"),
            }
        }
    }

    /// Optional separator between block entries; returns false before `}`.
    fn more_entries(&mut self) -> bool {
        if self.peek().tok == Tok::Semi {
            self.next();
        }
        self.peek().tok != Tok::RBrace && self.peek().tok != Tok::Eof
    }

    // ---- signatures and terms ----------------------------------------------

    fn signature_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("signature")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.expect(Tok::LBrace)?;
        let mut sig = Signature::new();
        while self.peek().tok != Tok::RBrace {
            let dim = match self.peek().tok {
                Tok::Cell(d) => {
                    self.next();
                    d
                }
                _ => return self.err_here("`0-cell`, `1-cell`, `2-cell`, or `3-cell`"),
            };
            let (gname, gline, gcol) = self.ident()?;
            let gen = match dim {
                0 => CellGenerator::object(gname.as_str()),
                1 => {
                    self.expect(Tok::Colon)?;
                    let (src, ..) = self.ident()?;
                    self.expect(Tok::Arrow)?;
                    let (tgt, ..) = self.ident()?;
                    CellGenerator::arrow(gname.as_str(), src.as_str(), tgt.as_str())
                }
                2 => {
                    self.expect(Tok::Colon)?;
                    let src = self.path_expr(&sig)?;
                    self.expect(Tok::DArrow)?;
                    let tgt = self.path_expr(&sig)?;
                    CellGenerator::surface(gname.as_str(), src, tgt)
                }
                _ => {
                    self.expect(Tok::Colon)?;
                    let src = self.term2_expr(&sig)?;
                    self.expect(Tok::Arrow)?;
                    let tgt = self.term2_expr(&sig)?;
                    CellGenerator::volume(gname.as_str(), src, tgt)
                }
            };
            sig = match sig.with_generator(gen) {
                Ok(s) => s,
                Err(e) => return self.validation(gline, gcol, e.to_string()),
            };
            if !self.more_entries() {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(Item::Signature { name, sig })
    }

    /// `id ( NAME )` or `f . g . h`, resolved against `sig`.
    fn path_expr(&mut self, sig: &Signature) -> Result<Path1, ParseError> {
        if self.at_keyword("id") {
            self.next();
            self.expect(Tok::LParen)?;
            let (obj, line, col) = self.ident()?;
            self.expect(Tok::RParen)?;
            let name = GenName::from(obj.as_str());
            if sig.object(&name).is_none() {
                return Err(ParseError::UnresolvedName { line, col, name: obj });
            }
            return Ok(Path1::identity(name));
        }
        let (first, line, col) = self.ident()?;
        let mut segments = vec![GenName::from(first.as_str())];
        while self.peek().tok == Tok::Dot {
            self.next();
            let (seg, ..) = self.ident()?;
            segments.push(GenName::from(seg.as_str()));
        }
        let start = match sig.arrow_ends(&segments[0]) {
            Some((src, _)) => src.clone(),
            None => {
                return Err(ParseError::UnresolvedName {
                    line,
                    col,
                    name: first,
                })
            }
        };
        let p = Path1::new(start, segments);
        match term::typecheck_path(sig, &p) {
            Ok(_) => Ok(p),
            Err(e) => self.validation(line, col, e.to_string()),
        }
    }

    /// `id2 ( path )` or `[l | core | r] ; [..] ; ...`
    fn term2_expr(&mut self, sig: &Signature) -> Result<Term2, ParseError> {
        let (line, col) = (self.peek().line, self.peek().col);
        if self.at_keyword("id2") {
            self.next();
            self.expect(Tok::LParen)?;
            let p = self.path_expr(sig)?;
            self.expect(Tok::RParen)?;
            return Ok(Term2::identity(p));
        }
        let mut layers = vec![self.layer_expr(sig)?];
        while self.peek().tok == Tok::Semi && self.peek2().tok == Tok::LBracket {
            self.next();
            layers.push(self.layer_expr(sig)?);
        }
        let source = match layers[0].source(sig) {
            Ok(p) => p,
            Err(e) => return self.validation(line, col, e.to_string()),
        };
        let t = Term2::new(source, layers);
        match term::typecheck_term2(sig, &t) {
            Ok(_) => Ok(t),
            Err(e) => self.validation(line, col, e.to_string()),
        }
    }

    /// `[ pathopt | core | pathopt ]`; empty whiskers take their basepoint
    /// from the core's boundary.
    fn layer_expr(&mut self, sig: &Signature) -> Result<Layer2, ParseError> {
        self.expect(Tok::LBracket)?;
        let left = if self.peek().tok == Tok::Pipe {
            None
        } else {
            Some(self.path_expr(sig)?)
        };
        self.expect(Tok::Pipe)?;
        let (core, line, col) = self.ident()?;
        let core_name = GenName::from(core.as_str());
        let (csrc, _) = match sig.surface_paths(&core_name) {
            Some(pair) => pair,
            None => {
                return Err(ParseError::UnresolvedName {
                    line,
                    col,
                    name: core,
                })
            }
        };
        let csrc = csrc.clone();
        self.expect(Tok::Pipe)?;
        let right = if self.peek().tok == Tok::RBracket {
            None
        } else {
            Some(self.path_expr(sig)?)
        };
        self.expect(Tok::RBracket)?;
        let left = left.unwrap_or_else(|| Path1::identity(csrc.start.clone()));
        let right = match right {
            Some(p) => p,
            None => {
                let end = match csrc.end(sig) {
                    Ok(e) => e,
                    Err(e) => return self.validation(line, col, e.to_string()),
                };
                Path1::identity(end)
            }
        };
        Ok(Layer2 {
            left,
            core: core_name,
            right,
        })
    }

    fn term2_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("term")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.keyword("over")?;
        let (signame, sline, scol) = self.ident()?;
        let sig = self.lookup_signature(&signame, sline, scol)?.clone();
        self.expect(Tok::Equals)?;
        let term = self.term2_expr(&sig)?;
        Ok(Item::Term2 {
            name,
            sig: signame,
            term,
        })
    }

    fn term3_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("term3")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.keyword("over")?;
        let (signame, sline, scol) = self.ident()?;
        let sig = self.lookup_signature(&signame, sline, scol)?.clone();
        self.expect(Tok::Equals)?;
        // source: a named 2-term or an inline expression
        let source = match self.peek().tok.clone() {
            Tok::Ident(word) if word != "id2" && self.doc.find(&word).is_some() => {
                let (tname, tline, tcol) = self.ident()?;
                let (tsig, t) = self.lookup_term2(&tname, tline, tcol)?;
                if tsig != signame {
                    return self.validation(
                        tline,
                        tcol,
                        format!("term {tname} is over signature {tsig}, not {signame}"),
                    );
                }
                t.clone()
            }
            _ => self.term2_expr(&sig)?,
        };
        let mut t3 = Term3::identity(source);
        while self.peek().tok == Tok::Semi {
            let continues = matches!(
                &self.peek2().tok,
                Tok::Ident(w) if w == "sigma" || w == "sigma_inv" || w == "apply"
            );
            if !continues {
                break;
            }
            self.next();
            let (word, wline, wcol) = self.ident()?;
            match word.as_str() {
                "sigma" | "sigma_inv" => {
                    self.expect(Tok::LParen)?;
                    let at = self.nat()?;
                    self.expect(Tok::RParen)?;
                    let want = if word == "sigma" {
                        Direction::Forward
                    } else {
                        Direction::Backward
                    };
                    let current = match t3.target(&sig) {
                        Ok(c) => c,
                        Err(e) => return self.validation(wline, wcol, e.to_string()),
                    };
                    let step = match term::interchanger_at(&sig, &current, at) {
                        Ok(s) => s,
                        Err(e) => return self.validation(wline, wcol, e.to_string()),
                    };
                    if let crate::term::Move3::Interchanger { direction, .. } = &step.moves[0] {
                        if *direction != want {
                            return self.validation(
                                wline,
                                wcol,
                                format!("layer pair at {at} swaps {direction}, not {want}"),
                            );
                        }
                    }
                    t3.moves.extend(step.moves);
                }
                "apply" => {
                    let (gen, gline, gcol) = self.ident()?;
                    self.expect(Tok::At)?;
                    let at = self.nat()?;
                    let gen_name = GenName::from(gen.as_str());
                    let current = match t3.target(&sig) {
                        Ok(c) => c,
                        Err(e) => return self.validation(gline, gcol, e.to_string()),
                    };
                    let (left, right) = if self.peek().tok == Tok::LBracket {
                        self.next();
                        let l = if self.peek().tok == Tok::Pipe {
                            None
                        } else {
                            Some(self.path_expr(&sig)?)
                        };
                        self.expect(Tok::Pipe)?;
                        let r = if self.peek().tok == Tok::RBracket {
                            None
                        } else {
                            Some(self.path_expr(&sig)?)
                        };
                        self.expect(Tok::RBracket)?;
                        let (src3, _) = match sig.volume_terms(&gen_name) {
                            Some(pair) => pair,
                            None => {
                                return Err(ParseError::UnresolvedName {
                                    line: gline,
                                    col: gcol,
                                    name: gen,
                                })
                            }
                        };
                        let base = src3.source.start.clone();
                        let lp = l.unwrap_or_else(|| Path1::identity(base));
                        let rp = match r {
                            Some(p) => p,
                            None => {
                                let end = match src3.target(&sig).and_then(|t| t.end(&sig)) {
                                    Ok(e) => e,
                                    Err(e) => return self.validation(gline, gcol, e.to_string()),
                                };
                                Path1::identity(end)
                            }
                        };
                        (lp, rp)
                    } else {
                        match term::infer_gen3_whiskers(&sig, &current, &gen_name, at) {
                            Ok(pair) => pair,
                            Err(e) => return self.validation(gline, gcol, e.to_string()),
                        }
                    };
                    t3 = match term::apply_gen3(&sig, &t3, &gen_name, at, &left, &right) {
                        Ok(next) => next,
                        Err(e) => return self.validation(gline, gcol, e.to_string()),
                    };
                }
                _ => return self.err_here("`sigma`, `sigma_inv`, or `apply`"),
            }
        }
        Ok(Item::Term3 {
            name,
            sig: signame,
            term: t3,
        })
    }

    // ---- diagrams and movies -----------------------------------------------

    fn diagram_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("diagram")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.keyword("over")?;
        let (signame, sline, scol) = self.ident()?;
        let sig = self.lookup_signature(&signame, sline, scol)?.clone();
        self.expect(Tok::LBrace)?;
        self.keyword("top")?;
        let start_override = if self.peek().tok == Tok::At {
            self.next();
            let (obj, ..) = self.ident()?;
            Some(obj)
        } else {
            None
        };
        self.expect(Tok::Colon)?;
        let mut wires = Vec::new();
        while let Tok::Ident(w) = self.peek().tok.clone() {
            self.next();
            wires.push(Wire::new(w.as_str()));
        }
        let (top_line, top_col) = (self.peek().line, self.peek().col);
        let start = match (&start_override, wires.first()) {
            (Some(obj), _) => GenName::from(obj.as_str()),
            (None, Some(first)) => match sig.arrow_ends(&first.label) {
                Some((src, _)) => src.clone(),
                None => {
                    return Err(ParseError::UnresolvedName {
                        line: top_line,
                        col: top_col,
                        name: first.label.as_str().to_string(),
                    })
                }
            },
            (None, None) => {
                return self.validation(
                    top_line,
                    top_col,
                    "an empty top needs an explicit basepoint: `top @ x :`",
                )
            }
        };
        // slices: transcribe with running wire lists
        let mut slices = Vec::new();
        let mut current = wires.clone();
        while self.more_entries() {
            self.keyword("slice")?;
            self.expect(Tok::Colon)?;
            let (vertex, vline, vcol) = self.ident()?;
            self.expect(Tok::At)?;
            let pos = self.nat()?;
            let vname = GenName::from(vertex.as_str());
            let (vsrc, vtgt) = match sig.surface_paths(&vname) {
                Some((s, t)) => (s.clone(), t.clone()),
                None => {
                    return Err(ParseError::UnresolvedName {
                        line: vline,
                        col: vcol,
                        name: vertex,
                    })
                }
            };
            if pos + vsrc.len() > current.len() {
                return self.validation(
                    vline,
                    vcol,
                    format!("vertex {vname} at {pos} does not fit the wire row"),
                );
            }
            let mut outputs: Vec<Wire> = current[..pos].to_vec();
            outputs.extend(vtgt.segments.iter().map(|s| Wire::new(s.clone())));
            outputs.extend(current[pos + vsrc.len()..].iter().cloned());
            slices.push(Slice {
                inputs: current.clone(),
                vertex: vname,
                vertex_position: pos,
                outputs: outputs.clone(),
            });
            current = outputs;
        }
        self.expect(Tok::RBrace)?;
        let d = Diagram2 {
            start,
            top: wires,
            slices,
        };
        if let Err(e) = diagram::evaluate2(&sig, &d) {
            return self.validation(line, col, e.to_string());
        }
        Ok(Item::Diagram {
            name,
            sig: signame,
            diagram: d,
        })
    }

    fn movie_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("movie")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.keyword("over")?;
        let (signame, sline, scol) = self.ident()?;
        let sig = self.lookup_signature(&signame, sline, scol)?.clone();
        self.expect(Tok::LBrace)?;
        self.keyword("first")?;
        self.expect(Tok::Colon)?;
        let (dname, dline, dcol) = self.ident()?;
        let first = match self.doc.find(&dname) {
            Some(Item::Diagram { sig: dsig, diagram, .. }) if *dsig == signame => diagram.clone(),
            Some(Item::Diagram { sig: dsig, .. }) => {
                return self.validation(
                    dline,
                    dcol,
                    format!("diagram {dname} is over {dsig}, not {signame}"),
                )
            }
            _ => {
                return Err(ParseError::UnresolvedName {
                    line: dline,
                    col: dcol,
                    name: dname,
                })
            }
        };
        let mut moves = Vec::new();
        while self.more_entries() {
            self.keyword("move")?;
            self.expect(Tok::Colon)?;
            let (word, wline, wcol) = self.ident()?;
            match word.as_str() {
                "interchange" => {
                    self.expect(Tok::At)?;
                    let at = self.nat()?;
                    let (dir, ..) = self.ident()?;
                    let direction = match dir.as_str() {
                        "forward" => Direction::Forward,
                        "backward" => Direction::Backward,
                        _ => return self.err_here("`forward` or `backward`"),
                    };
                    moves.push(MoveDescriptor::InterchangeMove {
                        at_slice: at,
                        direction,
                    });
                }
                "apply" => {
                    let (gen, ..) = self.ident()?;
                    self.expect(Tok::At)?;
                    let at = self.nat()?;
                    self.keyword("offset")?;
                    let off = self.nat()?;
                    moves.push(MoveDescriptor::VertexMove {
                        gen: GenName::from(gen.as_str()),
                        at_slice: at,
                        left_width: off,
                    });
                }
                _ => {
                    return Err(ParseError::SyntaxError {
                        line: wline,
                        col: wcol,
                        expected: "`interchange` or `apply`".to_string(),
                        found: format!("`{word}`"),
                    })
                }
            }
        }
        self.expect(Tok::RBrace)?;
        let movie = match diagram::build_movie(&sig, first, &moves) {
            Ok(m) => m,
            Err(e) => return self.validation(line, col, e.to_string()),
        };
        Ok(Item::Movie {
            name,
            sig: signame,
            first: dname,
            movie,
        })
    }

    // ---- categories --------------------------------------------------------

    fn category_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("category")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.expect(Tok::LBrace)?;
        self.keyword("objects")?;
        self.expect(Tok::Colon)?;
        let mut objects = Vec::new();
        while let Tok::Ident(w) = self.peek().tok.clone() {
            self.next();
            objects.push(w);
        }
        let mut morphisms: Vec<(String, String, String)> = Vec::new();
        let mut compositions: Vec<(String, String, String)> = Vec::new();
        while self.more_entries() {
            let (word, ..) = self.ident()?;
            match word.as_str() {
                "mor" => {
                    let (mname, ..) = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let (src, ..) = self.ident()?;
                    self.expect(Tok::Arrow)?;
                    let (tgt, ..) = self.ident()?;
                    morphisms.push((mname, src, tgt));
                }
                "compose" => {
                    let (g, ..) = self.ident()?;
                    self.expect(Tok::Dot)?;
                    let (f, ..) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (gf, ..) = self.ident()?;
                    compositions.push((g, f, gf));
                }
                _ => return self.err_here("`mor` or `compose`"),
            }
        }
        self.expect(Tok::RBrace)?;
        let obj_refs: Vec<&str> = objects.iter().map(|s| s.as_str()).collect();
        let mor_refs: Vec<(&str, &str, &str)> = morphisms
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        let comp_refs: Vec<(&str, &str, &str)> = compositions
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        match FiniteCategory::build(&obj_refs, &mor_refs, &comp_refs) {
            Ok(cat) => Ok(Item::Category {
                name,
                category: Arc::new(cat),
            }),
            Err(e) => self.validation(line, col, e),
        }
    }

    fn catfunctor_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("catfunctor")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.expect(Tok::Colon)?;
        let (dname, dl, dc) = self.ident()?;
        let dom = self.lookup_category(&dname, dl, dc)?.clone();
        self.expect(Tok::Arrow)?;
        let (cname, cl, cc) = self.ident()?;
        let cod = self.lookup_category(&cname, cl, cc)?.clone();
        self.expect(Tok::LBrace)?;
        let mut ob = vec![usize::MAX; dom.objects.len()];
        let mut mor = vec![usize::MAX; dom.morphisms.len()];
        while self.more_entries() {
            let (word, ..) = self.ident()?;
            match word.as_str() {
                "ob" => {
                    let (o, ol, oc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let oi = dom.object_index(&o).ok_or(ParseError::UnresolvedName {
                        line: ol,
                        col: oc,
                        name: o,
                    })?;
                    let vi = cod.object_index(&v).ok_or(ParseError::UnresolvedName {
                        line: vl,
                        col: vc,
                        name: v,
                    })?;
                    ob[oi] = vi;
                }
                "mor" => {
                    let (m, ml, mc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let mi = dom.morphism_index(&m).ok_or(ParseError::UnresolvedName {
                        line: ml,
                        col: mc,
                        name: m,
                    })?;
                    let vi = cod.morphism_index(&v).ok_or(ParseError::UnresolvedName {
                        line: vl,
                        col: vc,
                        name: v,
                    })?;
                    mor[mi] = vi;
                }
                _ => return self.err_here("`ob` or `mor`"),
            }
        }
        self.expect(Tok::RBrace)?;
        if ob.iter().any(|&o| o == usize::MAX) {
            return self.validation(line, col, "every object needs an `ob` entry");
        }
        // identity morphisms default to identities at the object images
        for (o, &i) in dom.identity.iter().enumerate() {
            if mor[i] == usize::MAX {
                mor[i] = cod.identity[ob[o]];
            }
        }
        if mor.iter().any(|&m| m == usize::MAX) {
            return self.validation(line, col, "every non-identity morphism needs a `mor` entry");
        }
        // boundary compatibility is structural; functor laws wait for `check`
        for (m, &img) in mor.iter().enumerate() {
            let dm = &dom.morphisms[m];
            let im = &cod.morphisms[img];
            if im.src != ob[dm.src] || im.tgt != ob[dm.tgt] {
                return self.validation(
                    line,
                    col,
                    format!("image of {} has endpoints {} -> {}, expected {} -> {}",
                        dm.name,
                        cod.objects[im.src],
                        cod.objects[im.tgt],
                        cod.objects[ob[dm.src]],
                        cod.objects[ob[dm.tgt]]),
                );
            }
        }
        Ok(Item::CatFunctor {
            name,
            dom: dname,
            cod: cname,
            functor: CatFunctor { dom, cod, ob, mor },
        })
    }

    fn cattrans_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("cattrans")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.expect(Tok::Colon)?;
        let (sname, sl, sc) = self.ident()?;
        let src = self.lookup_catfunctor(&sname, sl, sc)?.clone();
        self.expect(Tok::DArrow)?;
        let (tname, tl, tc) = self.ident()?;
        let tgt = self.lookup_catfunctor(&tname, tl, tc)?.clone();
        self.expect(Tok::LBrace)?;
        if src.dom != tgt.dom || src.cod != tgt.cod {
            return self.validation(line, col, "functors are not parallel");
        }
        let mut at = vec![usize::MAX; src.dom.objects.len()];
        while self.more_entries() {
            self.keyword("at")?;
            let (o, ol, oc) = self.ident()?;
            self.expect(Tok::Equals)?;
            let (v, vl, vc) = self.ident()?;
            let oi = src.dom.object_index(&o).ok_or(ParseError::UnresolvedName {
                line: ol,
                col: oc,
                name: o,
            })?;
            let vi = src
                .cod
                .morphism_index(&v)
                .ok_or(ParseError::UnresolvedName {
                    line: vl,
                    col: vc,
                    name: v,
                })?;
            at[oi] = vi;
        }
        self.expect(Tok::RBrace)?;
        if at.iter().any(|&m| m == usize::MAX) {
            return self.validation(line, col, "every object needs an `at` entry");
        }
        for (o, &m) in at.iter().enumerate() {
            let mm = &src.cod.morphisms[m];
            if mm.src != src.ob[o] || mm.tgt != tgt.ob[o] {
                return self.validation(
                    line,
                    col,
                    format!("component at {} has wrong endpoints", src.dom.objects[o]),
                );
            }
        }
        Ok(Item::CatTrans {
            name,
            src: sname,
            tgt: tname,
            trans: CatNatTrans { src, tgt, at },
        })
    }

    // ---- 2-categories ------------------------------------------------------

    fn twocategory_decl(&mut self) -> Result<Item, ParseError> {
        self.expect(Tok::Nat(2))?;
        self.keyword("category")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.expect(Tok::LBrace)?;
        self.keyword("objects")?;
        self.expect(Tok::Colon)?;
        let mut objects = Vec::new();
        while let Tok::Ident(w) = self.peek().tok.clone() {
            self.next();
            objects.push(w);
        }
        let obj_refs: Vec<&str> = objects.iter().map(|s| s.as_str()).collect();
        let mut builder = Builder::new(&obj_refs);
        while self.more_entries() {
            let result = match self.peek().tok.clone() {
                Tok::Cell(1) => {
                    self.next();
                    let (cname, ..) = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let (src, ..) = self.ident()?;
                    self.expect(Tok::Arrow)?;
                    let (tgt, ..) = self.ident()?;
                    builder.cell1(&cname, &src, &tgt)
                }
                Tok::Cell(2) => {
                    self.next();
                    let (cname, ..) = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let (src, ..) = self.ident()?;
                    self.expect(Tok::DArrow)?;
                    let (tgt, ..) = self.ident()?;
                    builder.cell2(&cname, &src, &tgt)
                }
                Tok::Ident(word) => match word.as_str() {
                    "vcomp" => {
                        self.next();
                        let (v, ..) = self.ident()?;
                        self.expect(Tok::Dot)?;
                        let (u, ..) = self.ident()?;
                        self.expect(Tok::Equals)?;
                        let (r, ..) = self.ident()?;
                        builder.vcomp(&v, &u, &r)
                    }
                    "hcomp" => {
                        self.next();
                        let (g, ..) = self.ident()?;
                        self.expect(Tok::Star)?;
                        let (f, ..) = self.ident()?;
                        self.expect(Tok::Equals)?;
                        let (r, ..) = self.ident()?;
                        builder.hcomp1(&g, &f, &r)
                    }
                    "hcomp2" => {
                        self.next();
                        let (v, ..) = self.ident()?;
                        self.expect(Tok::Star)?;
                        let (u, ..) = self.ident()?;
                        self.expect(Tok::Equals)?;
                        let (r, ..) = self.ident()?;
                        builder.hcomp2(&v, &u, &r)
                    }
                    _ => return self.err_here("`1-cell`, `2-cell`, `vcomp`, `hcomp`, or `hcomp2`"),
                },
                _ => return self.err_here("a 2-category entry"),
            };
            builder = match result {
                Ok(b) => b,
                Err(e) => return self.validation(line, col, e),
            };
        }
        self.expect(Tok::RBrace)?;
        Ok(Item::TwoCategory {
            name,
            cat: builder.finish(),
        })
    }

    // ---- functors, transformations, modifications, cones -------------------

    /// Resolve a 1-cell reference in the Cat world: a catfunctor name or
    /// `id ( CATEGORY )`.
    fn cat_one_ref(&mut self) -> Result<CatFunctor, ParseError> {
        if self.at_keyword("id") {
            self.next();
            self.expect(Tok::LParen)?;
            let (cname, cl, cc) = self.ident()?;
            let c = self.lookup_category(&cname, cl, cc)?;
            let f = CatFunctor::identity(c);
            self.expect(Tok::RParen)?;
            return Ok(f);
        }
        let (fname, fl, fc) = self.ident()?;
        Ok(self.lookup_catfunctor(&fname, fl, fc)?.clone())
    }

    /// Resolve a 2-cell reference in the Cat world: a cattrans name or
    /// `id ( one-ref )`.
    fn cat_two_ref(&mut self) -> Result<CatNatTrans, ParseError> {
        if self.at_keyword("id") {
            self.next();
            self.expect(Tok::LParen)?;
            let f = self.cat_one_ref()?;
            self.expect(Tok::RParen)?;
            return Ok(CatNatTrans::identity(&f));
        }
        let (tname, tl, tc) = self.ident()?;
        Ok(self.lookup_cattrans(&tname, tl, tc)?.clone())
    }

    fn functor_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("functor")?;
        let strength = self.strength()?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.expect(Tok::Colon)?;
        let (dname, dl, dc) = self.ident()?;
        let dom = self.lookup_twocat(&dname, dl, dc)?.clone();
        self.expect(Tok::Arrow)?;
        let (cname, ..) = self.ident()?;
        if cname == "Cat" {
            let payload = self.cat_functor_body(&dom, strength, line, col)?;
            Ok(Item::Functor {
                name,
                dom: dname,
                cod: cname,
                payload: FunctorPayload::Cat(payload),
            })
        } else {
            let cod = self
                .lookup_twocat(&cname, line, col)?
                .clone();
            let payload = self.twocat_functor_body(&dom, &cod, strength, line, col)?;
            Ok(Item::Functor {
                name,
                dom: dname,
                cod: cname,
                payload: FunctorPayload::TwoCat(payload),
            })
        }
    }

    fn twocat_functor_body(
        &mut self,
        dom: &Finite2Category,
        cod: &Finite2Category,
        strength: Strength,
        line: usize,
        col: usize,
    ) -> Result<FunctorData<Finite2Category>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut ob = vec![usize::MAX; dom.objects.len()];
        let mut one = vec![usize::MAX; dom.cells1.len()];
        let mut two = vec![usize::MAX; dom.cells2.len()];
        let mut comp: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut unit = vec![usize::MAX; dom.objects.len()];
        while self.more_entries() {
            let (word, wl, wc) = self.ident()?;
            match word.as_str() {
                "ob" => {
                    let (o, ol, oc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let oi = dom.object_index(&o).ok_or(ParseError::UnresolvedName {
                        line: ol,
                        col: oc,
                        name: o,
                    })?;
                    ob[oi] = cod.object_index(&v).ok_or(ParseError::UnresolvedName {
                        line: vl,
                        col: vc,
                        name: v,
                    })?;
                }
                "map1" => {
                    let (f, fl, fc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let fi = dom.cell1_index(&f).ok_or(ParseError::UnresolvedName {
                        line: fl,
                        col: fc,
                        name: f,
                    })?;
                    one[fi] = cod.cell1_index(&v).ok_or(ParseError::UnresolvedName {
                        line: vl,
                        col: vc,
                        name: v,
                    })?;
                }
                "map2" => {
                    let (u, ul, uc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let ui = dom.cell2_index(&u).ok_or(ParseError::UnresolvedName {
                        line: ul,
                        col: uc,
                        name: u,
                    })?;
                    two[ui] = cod.cell2_index(&v).ok_or(ParseError::UnresolvedName {
                        line: vl,
                        col: vc,
                        name: v,
                    })?;
                }
                "comp" => {
                    self.expect(Tok::LParen)?;
                    let (g, gl, gc) = self.ident()?;
                    self.expect(Tok::Comma)?;
                    let (f, fl, fc) = self.ident()?;
                    self.expect(Tok::RParen)?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let gi = dom.cell1_index(&g).ok_or(ParseError::UnresolvedName {
                        line: gl,
                        col: gc,
                        name: g,
                    })?;
                    let fi = dom.cell1_index(&f).ok_or(ParseError::UnresolvedName {
                        line: fl,
                        col: fc,
                        name: f,
                    })?;
                    let vi = cod.cell2_index(&v).ok_or(ParseError::UnresolvedName {
                        line: vl,
                        col: vc,
                        name: v,
                    })?;
                    comp.insert((gi, fi), vi);
                }
                "unit" => {
                    let (o, ol, oc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let oi = dom.object_index(&o).ok_or(ParseError::UnresolvedName {
                        line: ol,
                        col: oc,
                        name: o,
                    })?;
                    unit[oi] = cod.cell2_index(&v).ok_or(ParseError::UnresolvedName {
                        line: vl,
                        col: vc,
                        name: v,
                    })?;
                }
                _ => {
                    return Err(ParseError::SyntaxError {
                        line: wl,
                        col: wc,
                        expected: "`ob`, `map1`, `map2`, `comp`, or `unit`".to_string(),
                        found: format!("`{word}`"),
                    })
                }
            }
        }
        self.expect(Tok::RBrace)?;
        if ob.iter().any(|&o| o == usize::MAX) {
            return self.validation(line, col, "every object needs an `ob` entry");
        }
        // defaults: identity 1-cells map to identities, then every remaining
        // 1-cell must be given
        for (x, &i) in dom.id1.iter().enumerate() {
            if one[i] == usize::MAX {
                one[i] = cod.id1[ob[x]];
            }
        }
        if let Some(f) = one.iter().position(|&f| f == usize::MAX) {
            return self.validation(
                line,
                col,
                format!("1-cell {} needs a `map1` entry", dom.cells1[f].name),
            );
        }
        // identity 2-cells map to identities
        for (f, &i) in dom.id2.iter().enumerate() {
            if two[i] == usize::MAX {
                two[i] = cod.id2[one[f]];
            }
        }
        if let Some(u) = two.iter().position(|&u| u == usize::MAX) {
            return self.validation(
                line,
                col,
                format!("2-cell {} needs a `map2` entry", dom.cells2[u].name),
            );
        }
        // comparison and unit cells default to identities on the composite
        for (&(g, f), _) in &dom.hcomp1 {
            comp.entry((g, f)).or_insert_with(|| {
                match cod.hcomp1.get(&(one[g], one[f])) {
                    Some(&img) => cod.id2[img],
                    None => cod.id2[one[g]], // ill-typed; surfaces in `check`
                }
            });
        }
        for (x, u) in unit.iter_mut().enumerate() {
            if *u == usize::MAX {
                *u = cod.id2[cod.id1[ob[x]]];
            }
        }
        Ok(FunctorData {
            strength,
            ob,
            one,
            two,
            comp,
            unit,
        })
    }

    fn cat_functor_body(
        &mut self,
        dom: &Finite2Category,
        strength: Strength,
        line: usize,
        col: usize,
    ) -> Result<FunctorData<CatWorld>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut ob: Vec<Option<Arc<FiniteCategory>>> = vec![None; dom.objects.len()];
        let mut one: Vec<Option<CatFunctor>> = vec![None; dom.cells1.len()];
        let mut two: Vec<Option<CatNatTrans>> = vec![None; dom.cells2.len()];
        let mut comp: BTreeMap<(usize, usize), CatNatTrans> = BTreeMap::new();
        let mut unit: Vec<Option<CatNatTrans>> = vec![None; dom.objects.len()];
        while self.more_entries() {
            let (word, wl, wc) = self.ident()?;
            match word.as_str() {
                "ob" => {
                    let (o, ol, oc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let oi = dom.object_index(&o).ok_or(ParseError::UnresolvedName {
                        line: ol,
                        col: oc,
                        name: o,
                    })?;
                    ob[oi] = Some(self.lookup_category(&v, vl, vc)?.clone());
                }
                "map1" => {
                    let (f, fl, fc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let fi = dom.cell1_index(&f).ok_or(ParseError::UnresolvedName {
                        line: fl,
                        col: fc,
                        name: f,
                    })?;
                    one[fi] = Some(self.cat_one_ref()?);
                }
                "map2" => {
                    let (u, ul, uc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let ui = dom.cell2_index(&u).ok_or(ParseError::UnresolvedName {
                        line: ul,
                        col: uc,
                        name: u,
                    })?;
                    two[ui] = Some(self.cat_two_ref()?);
                }
                "comp" => {
                    self.expect(Tok::LParen)?;
                    let (g, gl, gc) = self.ident()?;
                    self.expect(Tok::Comma)?;
                    let (f, fl, fc) = self.ident()?;
                    self.expect(Tok::RParen)?;
                    self.expect(Tok::Equals)?;
                    let gi = dom.cell1_index(&g).ok_or(ParseError::UnresolvedName {
                        line: gl,
                        col: gc,
                        name: g,
                    })?;
                    let fi = dom.cell1_index(&f).ok_or(ParseError::UnresolvedName {
                        line: fl,
                        col: fc,
                        name: f,
                    })?;
                    let v = self.cat_two_ref()?;
                    comp.insert((gi, fi), v);
                }
                "unit" => {
                    let (o, ol, oc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let oi = dom.object_index(&o).ok_or(ParseError::UnresolvedName {
                        line: ol,
                        col: oc,
                        name: o,
                    })?;
                    unit[oi] = Some(self.cat_two_ref()?);
                }
                _ => {
                    return Err(ParseError::SyntaxError {
                        line: wl,
                        col: wc,
                        expected: "`ob`, `map1`, `map2`, `comp`, or `unit`".to_string(),
                        found: format!("`{word}`"),
                    })
                }
            }
        }
        self.expect(Tok::RBrace)?;
        let ob: Vec<Arc<FiniteCategory>> = match ob.into_iter().collect::<Option<_>>() {
            Some(v) => v,
            None => return self.validation(line, col, "every object needs an `ob` entry"),
        };
        for (x, &i) in dom.id1.iter().enumerate() {
            if one[i].is_none() {
                one[i] = Some(CatFunctor::identity(&ob[x]));
            }
        }
        let one: Vec<CatFunctor> = match one.into_iter().collect::<Option<_>>() {
            Some(v) => v,
            None => {
                return self.validation(line, col, "every non-identity 1-cell needs a `map1` entry")
            }
        };
        for (f, &i) in dom.id2.iter().enumerate() {
            if two[i].is_none() {
                two[i] = Some(CatNatTrans::identity(&one[f]));
            }
        }
        let two: Vec<CatNatTrans> = match two.into_iter().collect::<Option<_>>() {
            Some(v) => v,
            None => {
                return self.validation(line, col, "every non-identity 2-cell needs a `map2` entry")
            }
        };
        let w = CatWorld;
        for (&(g, f), _) in &dom.hcomp1 {
            if !comp.contains_key(&(g, f)) {
                match w.comp1(&one[g], &one[f]) {
                    Some(c) => {
                        comp.insert((g, f), CatNatTrans::identity(&c));
                    }
                    None => {
                        return self.validation(
                            line,
                            col,
                            format!(
                                "images of {} and {} do not compose; give an explicit `comp` entry",
                                dom.cells1[g].name, dom.cells1[f].name
                            ),
                        )
                    }
                }
            }
        }
        let unit: Vec<CatNatTrans> = unit
            .into_iter()
            .enumerate()
            .map(|(x, u)| u.unwrap_or_else(|| CatNatTrans::identity(&CatFunctor::identity(&ob[x]))))
            .collect();
        let _ = strength;
        Ok(FunctorData {
            strength,
            ob,
            one,
            two,
            comp,
            unit,
        })
    }

    fn transformation_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("transformation")?;
        let strength = self.strength()?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.expect(Tok::Colon)?;
        let (sname, sl, sc) = self.ident()?;
        self.expect(Tok::DArrow)?;
        let (tname, tl, tc) = self.ident()?;
        let (src_dom, src_data) = self.functor_payload_2cat(&sname, sl, sc)?;
        let (tgt_dom, tgt_data) = self.functor_payload_2cat(&tname, tl, tc)?;
        if src_dom != tgt_dom {
            return self.validation(line, col, "functors have different domains");
        }
        let dom = self.lookup_twocat(&src_dom, line, col)?.clone();
        let cod_name = self.functor_cod(&sname);
        let cod = self.lookup_twocat(&cod_name, line, col)?.clone();
        self.expect(Tok::LBrace)?;
        let mut at = vec![usize::MAX; dom.objects.len()];
        let mut wit = vec![usize::MAX; dom.cells1.len()];
        while self.more_entries() {
            let (word, ..) = self.ident()?;
            match word.as_str() {
                "at" => {
                    let (o, ol, oc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let oi = dom.object_index(&o).ok_or(ParseError::UnresolvedName {
                        line: ol,
                        col: oc,
                        name: o,
                    })?;
                    at[oi] = cod.cell1_index(&v).ok_or(ParseError::UnresolvedName {
                        line: vl,
                        col: vc,
                        name: v,
                    })?;
                }
                "wit" => {
                    let (f, fl, fc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let (v, vl, vc) = self.ident()?;
                    let fi = dom.cell1_index(&f).ok_or(ParseError::UnresolvedName {
                        line: fl,
                        col: fc,
                        name: f,
                    })?;
                    wit[fi] = cod.cell2_index(&v).ok_or(ParseError::UnresolvedName {
                        line: vl,
                        col: vc,
                        name: v,
                    })?;
                }
                _ => return self.err_here("`at` or `wit`"),
            }
        }
        self.expect(Tok::RBrace)?;
        if at.iter().any(|&o| o == usize::MAX) {
            return self.validation(line, col, "every object needs an `at` entry");
        }
        // default witness: the identity on G(f)∘η(x) when that composes
        for (f, w) in wit.iter_mut().enumerate() {
            if *w == usize::MAX {
                let x = dom.one_src(f);
                match cod.hcomp1.get(&(tgt_data.one[f], at[x])) {
                    Some(&c) => *w = cod.id2[c],
                    None => {
                        return self.validation(
                            line,
                            col,
                            format!(
                                "witness for {} cannot default; give a `wit` entry",
                                dom.cells1[f].name
                            ),
                        )
                    }
                }
            }
        }
        Ok(Item::Transformation {
            name,
            src: sname,
            tgt: tname,
            data: TransformationData {
                strength,
                source: src_data,
                target: tgt_data,
                at,
                wit,
            },
        })
    }

    fn functor_payload_2cat(
        &self,
        name: &str,
        line: usize,
        col: usize,
    ) -> Result<(String, FunctorData<Finite2Category>), ParseError> {
        match self.doc.find(name) {
            Some(Item::Functor {
                dom,
                payload: FunctorPayload::TwoCat(data),
                ..
            }) => Ok((dom.clone(), data.clone())),
            Some(Item::Functor { .. }) => Err(ParseError::ValidationFailed {
                line,
                col,
                message: format!("functor {name} is Cat-valued; use a cone declaration"),
            }),
            _ => Err(ParseError::UnresolvedName {
                line,
                col,
                name: name.to_string(),
            }),
        }
    }

    fn functor_cod(&self, name: &str) -> String {
        match self.doc.find(name) {
            Some(Item::Functor { cod, .. }) => cod.clone(),
            _ => String::new(),
        }
    }

    fn modification_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("modification")?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.expect(Tok::Colon)?;
        let (sname, sl, sc) = self.ident()?;
        self.expect(Tok::DArrow)?;
        let (tname, tl, tc) = self.ident()?;
        let src = match self.doc.find(&sname) {
            Some(Item::Transformation { data, .. }) => data.clone(),
            _ => {
                return Err(ParseError::UnresolvedName {
                    line: sl,
                    col: sc,
                    name: sname,
                })
            }
        };
        let (tgt, tgt_of) = match self.doc.find(&tname) {
            Some(Item::Transformation { data, src: fsrc, .. }) => (data.clone(), fsrc.clone()),
            _ => {
                return Err(ParseError::UnresolvedName {
                    line: tl,
                    col: tc,
                    name: tname,
                })
            }
        };
        let dom_name = match self.doc.find(&tgt_of) {
            Some(Item::Functor { dom, .. }) => dom.clone(),
            _ => return self.validation(line, col, "transformation source functor missing"),
        };
        let dom = self.lookup_twocat(&dom_name, line, col)?.clone();
        let cod_name = self.functor_cod(&tgt_of);
        let cod = self.lookup_twocat(&cod_name, line, col)?.clone();
        self.expect(Tok::LBrace)?;
        let mut at = vec![usize::MAX; dom.objects.len()];
        while self.more_entries() {
            self.keyword("at")?;
            let (o, ol, oc) = self.ident()?;
            self.expect(Tok::Equals)?;
            let (v, vl, vc) = self.ident()?;
            let oi = dom.object_index(&o).ok_or(ParseError::UnresolvedName {
                line: ol,
                col: oc,
                name: o,
            })?;
            at[oi] = cod.cell2_index(&v).ok_or(ParseError::UnresolvedName {
                line: vl,
                col: vc,
                name: v,
            })?;
        }
        self.expect(Tok::RBrace)?;
        // default component: identity on the source component
        for (x, a) in at.iter_mut().enumerate() {
            if *a == usize::MAX {
                *a = cod.id2[src.at[x]];
            }
        }
        Ok(Item::Modification {
            name,
            src: sname,
            tgt: tname,
            data: ModificationData {
                source: src,
                target: tgt,
                at,
            },
        })
    }

    fn cone_decl(&mut self) -> Result<Item, ParseError> {
        self.keyword("cone")?;
        let strength = self.strength()?;
        let (name, line, col) = self.ident()?;
        self.check_unique(&name, line, col)?;
        self.keyword("over")?;
        let (fname, fl, fc) = self.ident()?;
        let (dom_name, fdata) = match self.doc.find(&fname) {
            Some(Item::Functor {
                dom,
                payload: FunctorPayload::Cat(data),
                ..
            }) => (dom.clone(), data.clone()),
            Some(Item::Functor { .. }) => {
                return self.validation(fl, fc, "cones are over Cat-valued functors")
            }
            _ => {
                return Err(ParseError::UnresolvedName {
                    line: fl,
                    col: fc,
                    name: fname,
                })
            }
        };
        let dom = self.lookup_twocat(&dom_name, line, col)?.clone();
        self.keyword("apex")?;
        let (aname, al, ac) = self.ident()?;
        let apex = self.lookup_category(&aname, al, ac)?.clone();
        self.expect(Tok::LBrace)?;
        let mut legs: Vec<Option<CatFunctor>> = vec![None; dom.objects.len()];
        let mut cells: Vec<Option<CatNatTrans>> = vec![None; dom.cells1.len()];
        while self.more_entries() {
            let (word, ..) = self.ident()?;
            match word.as_str() {
                "at" => {
                    let (o, ol, oc) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let oi = dom.object_index(&o).ok_or(ParseError::UnresolvedName {
                        line: ol,
                        col: oc,
                        name: o,
                    })?;
                    legs[oi] = Some(self.cat_one_ref()?);
                }
                "wit" => {
                    let (f, fl2, fc2) = self.ident()?;
                    self.expect(Tok::Equals)?;
                    let fi = dom.cell1_index(&f).ok_or(ParseError::UnresolvedName {
                        line: fl2,
                        col: fc2,
                        name: f,
                    })?;
                    cells[fi] = Some(self.cat_two_ref()?);
                }
                _ => return self.err_here("`at` or `wit`"),
            }
        }
        self.expect(Tok::RBrace)?;
        let legs: Vec<CatFunctor> = match legs.into_iter().collect::<Option<_>>() {
            Some(v) => v,
            None => return self.validation(line, col, "every indexing object needs an `at` leg"),
        };
        let w = CatWorld;
        let cells: Vec<CatNatTrans> = cells
            .into_iter()
            .enumerate()
            .map(|(f, c)| match c {
                Some(c) => Ok(c),
                None => {
                    let x = dom.one_src(f);
                    match w.comp1(&fdata.one[f], &legs[x]) {
                        Some(composite) => Ok(CatNatTrans::identity(&composite)),
                        None => Err(ParseError::ValidationFailed {
                            line,
                            col,
                            message: format!(
                                "cone cell for {} cannot default; give a `wit` entry",
                                dom.cells1[f].name
                            ),
                        }),
                    }
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(Item::Cone {
            name,
            over: fname,
            apex: aname,
            cone: Cone {
                strength,
                apex,
                legs,
                cells,
            },
        })
    }

    // ---- commands ------------------------------------------------------------

    fn command(&mut self) -> Result<Command, ParseError> {
        let (verb, ..) = self.ident()?;
        let cmd = match verb.as_str() {
            "check" => Command::Check {
                target: self.ident()?.0,
            },
            "normalize" => Command::Normalize {
                term: self.ident()?.0,
            },
            "eq" => Command::Eq {
                left: self.ident()?.0,
                right: self.ident()?.0,
            },
            "eq3" => {
                let left = self.ident()?.0;
                let right = self.ident()?.0;
                self.keyword("budget")?;
                let budget = self.nat()?;
                Command::Eq3 {
                    left,
                    right,
                    budget,
                }
            }
            "compose" => {
                let left = self.ident()?.0;
                let right = self.ident()?.0;
                let order = if self.at_keyword("leftfirst") {
                    self.next();
                    Some(PastingOrder::LeftFirst)
                } else if self.at_keyword("rightfirst") {
                    self.next();
                    Some(PastingOrder::RightFirst)
                } else {
                    None
                };
                let bind = self.opt_bind()?;
                Command::Compose {
                    left,
                    right,
                    order,
                    bind,
                }
            }
            "mediate" => {
                let left = self.ident()?.0;
                let right = self.ident()?.0;
                let bind = self.opt_bind()?;
                Command::Mediate { left, right, bind }
            }
            "homcat" => {
                let strength = self.strength()?;
                let dom = self.ident()?.0;
                let cod = self.ident()?.0;
                let bind = self.opt_bind()?;
                Command::HomCat {
                    strength,
                    dom,
                    cod,
                    bind,
                }
            }
            "limit" => {
                let strength = self.strength()?;
                let (bind, ..) = self.ident()?;
                self.keyword("of")?;
                let of = self.ident()?.0;
                Command::Limit {
                    strength,
                    of,
                    bind,
                }
            }
            "certify" => {
                let limit = self.ident()?.0;
                self.keyword("with")?;
                let mut apexes = vec![self.ident()?.0];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    apexes.push(self.ident()?.0);
                }
                Command::Certify { limit, apexes }
            }
            "render" => {
                let target = self.ident()?.0;
                let format = if self.at_keyword("svg") {
                    self.next();
                    Some(RenderFormat::Svg)
                } else if self.at_keyword("tikz") {
                    self.next();
                    Some(RenderFormat::Tikz)
                } else {
                    None
                };
                Command::Render { target, format }
            }
            _ => return self.err_here("a command"),
        };
        // commands may be terminated with an optional semicolon
        if self.peek().tok == Tok::Semi {
            self.next();
        }
        Ok(cmd)
    }

    fn opt_bind(&mut self) -> Result<Option<String>, ParseError> {
        if self.at_keyword("as") {
            self.next();
            Ok(Some(self.ident()?.0))
        } else {
            Ok(None)
        }
    }
}
