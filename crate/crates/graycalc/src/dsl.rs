//! The document language: parser, resolved AST, and canonical printer.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;

pub use ast::{Command, Document, FunctorPayload, Item, RenderFormat};
pub use parser::parse;
pub use printer::print;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: expected {expected}, found {found}")]
    SyntaxError {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{col}: unresolved name `{name}`")]
    UnresolvedName {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: duplicate name `{name}`")]
    DuplicateName {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: validation failed: {message}")]
    ValidationFailed {
        line: usize,
        col: usize,
        message: String,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_parses_to_empty_document() {
        let doc = parse("").unwrap();
        assert!(doc.items.is_empty());
        let text = print(&doc);
        assert!(text.starts_with('#'));
        assert_eq!(parse(&text).unwrap(), doc);
    }

    #[test]
    fn signature_roundtrip() {
        let src = r#"
signature S {
  0-cell x ;
  0-cell y ;
  1-cell f : x -> y ;
  1-cell g : y -> x ;
  2-cell a : f . g => f . g ;
  3-cell m : [ | a | ] -> [ | a | ]
}
"#;
        let doc = parse(src).unwrap();
        let text = print(&doc);
        let doc2 = parse(&text).unwrap();
        assert_eq!(doc, doc2);
        assert_eq!(print(&doc2), text);
    }

    #[test]
    fn unresolved_reference_has_location() {
        let src = "signature S {\n  1-cell f : x -> y\n}";
        match parse(src) {
            Err(ParseError::ValidationFailed { line: 2, .. }) => {}
            other => panic!("expected validation failure on line 2, got {other:?}"),
        }
    }

    #[test]
    fn term_declarations_resolve_and_typecheck() {
        let src = r#"
signature S {
  0-cell x ;
  1-cell f : x -> x ;
  2-cell a : f => f ;
  2-cell b : f => f
}
term t over S = [ | a | f ] ; [ f | b | ]
term3 m over S = t ; sigma(0) ; sigma_inv(0)
"#;
        let doc = parse(src).unwrap();
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        match doc.find("m") {
            Some(Item::Term3 { term, .. }) => assert_eq!(term.moves.len(), 2),
            other => panic!("missing term3, got {other:?}"),
        }
    }

    #[test]
    fn sigma_direction_is_validated() {
        let src = r#"
signature S {
  0-cell x ;
  1-cell f : x -> x ;
  2-cell a : f => f ;
  2-cell b : f => f
}
term t over S = [ | a | f ] ; [ f | b | ]
term3 m over S = t ; sigma_inv(0)
"#;
        assert!(matches!(
            parse(src),
            Err(ParseError::ValidationFailed { .. })
        ));
    }

    #[test]
    fn diagram_and_movie_roundtrip() {
        let src = r#"
signature S {
  0-cell x ;
  1-cell f : x -> x ;
  2-cell a : f => f ;
  2-cell b : f => f
}
diagram D over S {
  top : f f ;
  slice : a @ 0 ;
  slice : b @ 1
}
movie V over S {
  first : D ;
  move : interchange @ 0 forward
}
"#;
        let doc = parse(src).unwrap();
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        match doc.find("V") {
            Some(Item::Movie { movie, .. }) => assert_eq!(movie.frame_count(), 2),
            other => panic!("missing movie, got {other:?}"),
        }
    }

    #[test]
    fn category_functor_cone_roundtrip() {
        let src = r#"
category C {
  objects : c0 c1 ;
  mor u : c0 -> c1
}
category D {
  objects : d0 d1 d2 ;
  mor v : d0 -> d1
}
catfunctor U : C -> D {
  ob c0 = d0 ;
  ob c1 = d1 ;
  mor u = v
}
2category J {
  objects : a b ;
  1-cell j : a -> b
}
functor strict F : J -> Cat {
  ob a = C ;
  ob b = D ;
  map1 j = U
}
cone lax K over F apex C {
  at a = id(C) ;
  at b = U
}
check K
limit lax L of F
certify L with C
"#;
        let doc = parse(src).unwrap();
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc, "\ncanonical text:\n{text}");
    }

    #[test]
    fn twocategory_and_functor_roundtrip() {
        let src = r#"
2category Z {
  objects : pt ;
  2-cell s : id_pt => id_pt ;
  vcomp s . s = id2_id_pt ;
  hcomp2 s * s = id2_id_pt
}
2category A {
  objects : a0 a1 ;
  1-cell u : a0 -> a1
}
functor pseudo F : A -> Z {
  ob a0 = pt ;
  ob a1 = pt ;
  map1 u = id_pt ;
  comp (id_a1, u) = s ;
  comp (u, id_a0) = s ;
  comp (id_a0, id_a0) = s ;
  comp (id_a1, id_a1) = s ;
  unit a0 = s ;
  unit a1 = s
}
transformation pseudo e : F => F {
  at a0 = id_pt ;
  at a1 = id_pt ;
  wit u = s
}
modification mm : e => e { }
check F
check e
"#;
        let doc = parse(src).unwrap();
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc, "\ncanonical text:\n{text}");
    }

    #[test]
    fn fuzzing_never_panics() {
        // deterministic pseudo-random byte soup plus truncations of a valid
        // document: parse must return, never panic
        let valid = "signature S { 0-cell x ; 1-cell f : x -> x }\nterm t over S = id2(f)";
        for cut in 0..valid.len() {
            let _ = parse(&valid[..cut]);
        }
        let mut state = 0x9e3779b97f4a7c15u64;
        for len in [1usize, 7, 33, 120] {
            for _ in 0..50 {
                let mut s = String::new();
                for _ in 0..len {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let b = (state >> 33) as u8;
                    s.push(b as char);
                }
                let _ = parse(&s);
            }
        }
    }
}
