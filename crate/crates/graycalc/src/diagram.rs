//! Combinatorial layered string diagrams and their term semantics.
//!
//! A 2-cell diagram is a list of generic slices (one vertex per slice) below a
//! top row of wires; a 3-cell is a movie of such diagrams related by moves.
//! Evaluation transcribes slices into layers and layout does the reverse, so
//! the two maps are mutually inverse on generic data by construction. The
//! reading order is fixed: top wire row first, slices applied downward.
//!
//! The top row alone does not determine the left boundary object when it is
//! empty, so diagrams also record `start`, the object at the left end of the
//! top path — the same role `start` plays for [`Path1`].

use crate::signature::{GenName, Signature};
use crate::term::{
    self, interchange_direction, swap_disjoint_layers, Direction, Layer2, Move3, Path1, Term2,
    Term3,
};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unknown generator {name}")]
    UnknownGenerator { name: GenName },
    #[error("malformed slice {0}: {1}")]
    MalformedSlice(usize, String),
    #[error("frame {0} does not match its move descriptor: {1}")]
    FrameMismatch(usize, String),
    #[error("illegal move at step {0}: {1}")]
    IllegalMove(usize, String),
    #[error("ill-typed term: {0}")]
    IllTypedTerm(String),
}

type Result<T> = std::result::Result<T, DiagramError>;

/// A wire, labeled by a 1-generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wire {
    pub label: GenName,
}

impl Wire {
    pub fn new(label: impl Into<GenName>) -> Self {
        Wire {
            label: label.into(),
        }
    }
}

/// One generic slice: input wires, a single vertex, output wires. The vertex's
/// source wires begin at `vertex_position` within the inputs; wires outside
/// that block pass through unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slice {
    pub inputs: Vec<Wire>,
    pub vertex: GenName,
    pub vertex_position: usize,
    pub outputs: Vec<Wire>,
}

/// A layered diagram for a 2-cell: the top wire row plus the slices below it.
/// `start` is the object at the left end of the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram2 {
    pub start: GenName,
    pub top: Vec<Wire>,
    pub slices: Vec<Slice>,
}

impl Diagram2 {
    /// Bottom wire row (outputs of the last slice, or the top row).
    pub fn bottom(&self) -> &[Wire] {
        match self.slices.last() {
            None => &self.top,
            Some(s) => &s.outputs,
        }
    }
}

impl fmt::Display for Diagram2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "top")?;
        for w in &self.top {
            write!(f, " {}", w.label)?;
        }
        for s in &self.slices {
            write!(f, " ; {} @ {}", s.vertex, s.vertex_position)?;
        }
        Ok(())
    }
}

/// A move descriptor in a movie. Positions are slice/wire indices in the frame
/// the move is applied to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MoveDescriptor {
    /// Apply the 3-generator `gen`: its source block starts at slice
    /// `at_slice`, whiskered by `left_width` wires on the left.
    VertexMove {
        gen: GenName,
        at_slice: usize,
        left_width: usize,
    },
    /// Interchange slices `at_slice` and `at_slice + 1`.
    InterchangeMove {
        at_slice: usize,
        direction: Direction,
    },
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveDescriptor::VertexMove {
                gen,
                at_slice,
                left_width,
            } => write!(f, "apply {gen} @ {at_slice} offset {left_width}"),
            MoveDescriptor::InterchangeMove {
                at_slice,
                direction,
            } => write!(f, "interchange @ {at_slice} {direction}"),
        }
    }
}

/// A movie: the first frame plus steps, each step recording both the move and
/// the full resulting frame so the value is re-checkable on its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Movie {
    pub first: Diagram2,
    pub steps: Vec<(MoveDescriptor, Diagram2)>,
}

impl Movie {
    pub fn frames(&self) -> impl Iterator<Item = &Diagram2> {
        std::iter::once(&self.first).chain(self.steps.iter().map(|(_, d)| d))
    }

    pub fn frame_count(&self) -> usize {
        1 + self.steps.len()
    }
}

fn wires_to_path(sig: &Signature, start: &GenName, wires: &[Wire]) -> Result<Path1> {
    let p = Path1::new(start.clone(), wires.iter().map(|w| w.label.clone()));
    term::typecheck_path(sig, &p).map_err(|e| match e {
        term::TermError::UnknownGenerator { name } => DiagramError::UnknownGenerator { name },
        other => DiagramError::IllTypedTerm(other.to_string()),
    })?;
    Ok(p)
}

fn path_to_wires(p: &Path1) -> Vec<Wire> {
    p.segments.iter().map(|s| Wire::new(s.clone())).collect()
}

/// Transcribe a diagram into a 2-term, one layer per slice, validating every
/// slice against the signature along the way.
pub fn evaluate2(sig: &Signature, d: &Diagram2) -> Result<Term2> {
    let top = wires_to_path(sig, &d.start, &d.top)?;
    let mut layers = Vec::with_capacity(d.slices.len());
    let mut current = top.clone();
    for (i, slice) in d.slices.iter().enumerate() {
        let inputs = wires_to_path(sig, &d.start, &slice.inputs)?;
        if inputs != current {
            return Err(DiagramError::MalformedSlice(
                i,
                format!("slice inputs are {inputs}, expected {current}"),
            ));
        }
        let (vsrc, _vtgt) = sig
            .surface_paths(&slice.vertex)
            .map(|(s, t)| (s.clone(), t.clone()))
            .ok_or_else(|| DiagramError::UnknownGenerator {
                name: slice.vertex.clone(),
            })?;
        let pos = slice.vertex_position;
        if pos + vsrc.len() > slice.inputs.len() {
            return Err(DiagramError::MalformedSlice(
                i,
                format!(
                    "vertex {} at position {pos} does not fit in {} input wires",
                    slice.vertex,
                    slice.inputs.len()
                ),
            ));
        }
        let left = inputs
            .slice(sig, 0..pos)
            .map_err(|e| DiagramError::MalformedSlice(i, e.to_string()))?;
        let consumed = inputs
            .slice(sig, pos..pos + vsrc.len())
            .map_err(|e| DiagramError::MalformedSlice(i, e.to_string()))?;
        if consumed != vsrc {
            return Err(DiagramError::MalformedSlice(
                i,
                format!(
                    "wires {consumed} under vertex {} do not spell its source {vsrc}",
                    slice.vertex
                ),
            ));
        }
        let right = inputs
            .slice(sig, pos + vsrc.len()..inputs.len())
            .map_err(|e| DiagramError::MalformedSlice(i, e.to_string()))?;
        let layer = Layer2::new(left, slice.vertex.clone(), right);
        let expected_out = layer
            .target(sig)
            .map_err(|e| DiagramError::MalformedSlice(i, e.to_string()))?;
        let outputs = wires_to_path(sig, &d.start, &slice.outputs)?;
        if outputs != expected_out {
            return Err(DiagramError::MalformedSlice(
                i,
                format!("slice outputs are {outputs}, expected {expected_out}"),
            ));
        }
        layers.push(layer);
        current = expected_out;
    }
    let t = Term2::new(top, layers);
    term::typecheck_term2(sig, &t).map_err(|e| DiagramError::IllTypedTerm(e.to_string()))?;
    Ok(t)
}

/// Lay a 2-term out as a diagram, one slice per layer.
pub fn layout2(sig: &Signature, t: &Term2) -> Result<Diagram2> {
    term::typecheck_term2(sig, t).map_err(|e| DiagramError::IllTypedTerm(e.to_string()))?;
    let mut slices = Vec::with_capacity(t.layers.len());
    let mut current = t.source.clone();
    for layer in &t.layers {
        let inputs = path_to_wires(&current);
        let outputs_path = layer
            .target(sig)
            .map_err(|e| DiagramError::IllTypedTerm(e.to_string()))?;
        slices.push(Slice {
            inputs,
            vertex: layer.core.clone(),
            vertex_position: layer.position(),
            outputs: path_to_wires(&outputs_path),
        });
        current = outputs_path;
    }
    Ok(Diagram2 {
        start: t.source.start.clone(),
        top: path_to_wires(&t.source),
        slices,
    })
}

/// Apply a move descriptor to a frame, returning the next frame.
pub fn apply_move(sig: &Signature, frame: &Diagram2, mv: &MoveDescriptor) -> Result<Diagram2> {
    let current = evaluate2(sig, frame)?;
    let next_term = match mv {
        MoveDescriptor::InterchangeMove {
            at_slice,
            direction,
        } => {
            if at_slice + 1 >= current.layers.len() {
                return Err(DiagramError::IllegalMove(
                    *at_slice,
                    format!("no adjacent pair at slice {at_slice}"),
                ));
            }
            let a = &current.layers[*at_slice];
            let b = &current.layers[*at_slice + 1];
            let actual = interchange_direction(sig, a, b)
                .map_err(|e| DiagramError::IllegalMove(*at_slice, e.to_string()))?;
            if actual != *direction {
                return Err(DiagramError::IllegalMove(
                    *at_slice,
                    format!("pair swaps {actual}, descriptor says {direction}"),
                ));
            }
            let (b_first, a_second) = swap_disjoint_layers(sig, a, b)
                .map_err(|e| DiagramError::IllegalMove(*at_slice, e.to_string()))?;
            let mut layers = current.layers.clone();
            layers[*at_slice] = b_first;
            layers[*at_slice + 1] = a_second;
            Term2::new(current.source.clone(), layers)
        }
        MoveDescriptor::VertexMove {
            gen,
            at_slice,
            left_width,
        } => {
            let (gsrc, gtgt) = sig
                .volume_terms(gen)
                .map(|(s, t)| (s.clone(), t.clone()))
                .ok_or_else(|| DiagramError::UnknownGenerator { name: gen.clone() })?;
            let height = gsrc.layers.len();
            if at_slice + height > current.layers.len() {
                return Err(DiagramError::IllegalMove(
                    *at_slice,
                    format!("source of {gen} does not fit at slice {at_slice}"),
                ));
            }
            let window_src = current
                .slice(sig, *at_slice..*at_slice + height)
                .map_err(|e| DiagramError::IllegalMove(*at_slice, e.to_string()))?;
            let win_boundary = window_src.source.clone();
            if *left_width + gsrc.source.len() > win_boundary.len() {
                return Err(DiagramError::IllegalMove(
                    *at_slice,
                    format!("offset {left_width} too wide for {gen}"),
                ));
            }
            let left = win_boundary
                .slice(sig, 0..*left_width)
                .map_err(|e| DiagramError::IllegalMove(*at_slice, e.to_string()))?;
            let right = win_boundary
                .slice(sig, *left_width + gsrc.source.len()..win_boundary.len())
                .map_err(|e| DiagramError::IllegalMove(*at_slice, e.to_string()))?;
            let expect_src = term::whisker_both(sig, &left, &gsrc, &right)
                .map_err(|e| DiagramError::IllegalMove(*at_slice, e.to_string()))?;
            if expect_src != window_src {
                return Err(DiagramError::IllegalMove(
                    *at_slice,
                    format!("window does not spell the source of {gen}"),
                ));
            }
            let replaced = term::whisker_both(sig, &left, &gtgt, &right)
                .map_err(|e| DiagramError::IllegalMove(*at_slice, e.to_string()))?;
            let mut layers: Vec<Layer2> = current.layers[0..*at_slice].to_vec();
            layers.extend(replaced.layers.iter().cloned());
            layers.extend(current.layers[*at_slice + height..].iter().cloned());
            Term2::new(current.source.clone(), layers)
        }
    };
    layout2(sig, &next_term)
}

/// Transcribe a movie into a 3-term, one move per step, checking every frame
/// against its descriptor.
pub fn evaluate3(sig: &Signature, m: &Movie) -> Result<Term3> {
    let source = evaluate2(sig, &m.first)?;
    let mut t3 = Term3::identity(source);
    let mut frame = m.first.clone();
    for (i, (descriptor, next_frame)) in m.steps.iter().enumerate() {
        let computed = apply_move(sig, &frame, descriptor)
            .map_err(|e| DiagramError::IllegalMove(i, e.to_string()))?;
        if computed != *next_frame {
            return Err(DiagramError::FrameMismatch(
                i,
                format!("stored frame is {next_frame}, move produces {computed}"),
            ));
        }
        let current = evaluate2(sig, &frame)?;
        let mv = match descriptor {
            MoveDescriptor::InterchangeMove {
                at_slice,
                direction,
            } => {
                let above = current
                    .slice(sig, 0..*at_slice)
                    .map_err(|e| DiagramError::IllegalMove(i, e.to_string()))?;
                let below = current
                    .slice(sig, *at_slice + 2..current.layers.len())
                    .map_err(|e| DiagramError::IllegalMove(i, e.to_string()))?;
                Move3::Interchanger {
                    a: current.layers[*at_slice].clone(),
                    b: current.layers[*at_slice + 1].clone(),
                    direction: *direction,
                    above,
                    below,
                }
            }
            MoveDescriptor::VertexMove {
                gen,
                at_slice,
                left_width,
            } => {
                let (gsrc, _) = sig
                    .volume_terms(gen)
                    .map(|(s, t)| (s.clone(), t.clone()))
                    .ok_or_else(|| DiagramError::UnknownGenerator { name: gen.clone() })?;
                let height = gsrc.layers.len();
                let window_src = current
                    .slice(sig, *at_slice..*at_slice + height)
                    .map_err(|e| DiagramError::IllegalMove(i, e.to_string()))?;
                let boundary = window_src.source.clone();
                let left = boundary
                    .slice(sig, 0..*left_width)
                    .map_err(|e| DiagramError::IllegalMove(i, e.to_string()))?;
                let right = boundary
                    .slice(sig, *left_width + gsrc.source.len()..boundary.len())
                    .map_err(|e| DiagramError::IllegalMove(i, e.to_string()))?;
                let above = current
                    .slice(sig, 0..*at_slice)
                    .map_err(|e| DiagramError::IllegalMove(i, e.to_string()))?;
                let below = current
                    .slice(sig, *at_slice + height..current.layers.len())
                    .map_err(|e| DiagramError::IllegalMove(i, e.to_string()))?;
                Move3::Gen3 {
                    left,
                    core: gen.clone(),
                    right,
                    above,
                    below,
                }
            }
        };
        t3.moves.push(mv);
        frame = next_frame.clone();
    }
    term::typecheck_term3(sig, &t3).map_err(|e| DiagramError::IllTypedTerm(e.to_string()))?;
    Ok(t3)
}

/// Build a movie by applying move descriptors starting from a first frame,
/// storing every computed intermediate frame.
pub fn build_movie(sig: &Signature, first: Diagram2, moves: &[MoveDescriptor]) -> Result<Movie> {
    let mut steps = Vec::with_capacity(moves.len());
    let mut frame = first.clone();
    for mv in moves {
        let next = apply_move(sig, &frame, mv)?;
        steps.push((mv.clone(), next.clone()));
        frame = next;
    }
    Ok(Movie { first, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::CellGenerator;

    fn n(s: &str) -> GenName {
        GenName::from(s)
    }

    fn p(start: &str, segs: &[&str]) -> Path1 {
        Path1::new(n(start), segs.iter().map(|s| n(s)))
    }

    fn sig() -> Signature {
        Signature::from_generators([
            CellGenerator::object("x"),
            CellGenerator::arrow("f", "x", "x"),
            CellGenerator::surface("a", p("x", &["f"]), p("x", &["f"])),
            CellGenerator::surface("b", p("x", &["f"]), p("x", &["f"])),
        ])
        .unwrap()
    }

    #[test]
    fn zero_slice_diagram_evaluates_to_identity() {
        let s = sig();
        let d = Diagram2 {
            start: n("x"),
            top: vec![Wire::new("f"), Wire::new("f")],
            slices: vec![],
        };
        let t = evaluate2(&s, &d).unwrap();
        assert_eq!(t, Term2::identity(p("x", &["f", "f"])));
    }

    #[test]
    fn empty_diagram_keeps_its_basepoint() {
        let s = sig();
        let t = Term2::identity(Path1::identity(n("x")));
        let d = layout2(&s, &t).unwrap();
        assert_eq!(d.start, n("x"));
        assert!(d.top.is_empty());
        assert_eq!(evaluate2(&s, &d).unwrap(), t);
    }

    #[test]
    fn one_slice_transcription() {
        let s = sig();
        let d = Diagram2 {
            start: n("x"),
            top: vec![Wire::new("f"), Wire::new("f")],
            slices: vec![Slice {
                inputs: vec![Wire::new("f"), Wire::new("f")],
                vertex: n("a"),
                vertex_position: 0,
                outputs: vec![Wire::new("f"), Wire::new("f")],
            }],
        };
        let t = evaluate2(&s, &d).unwrap();
        assert_eq!(t.layers.len(), 1);
        assert_eq!(t.layers[0].core, n("a"));
        assert_eq!(t.layers[0].left, Path1::identity(n("x")));
        assert_eq!(t.layers[0].right, p("x", &["f"]));
    }

    #[test]
    fn malformed_slice_reports_index() {
        let s = sig();
        let d = Diagram2 {
            start: n("x"),
            top: vec![Wire::new("f")],
            slices: vec![Slice {
                inputs: vec![Wire::new("f")],
                vertex: n("a"),
                vertex_position: 0,
                // wrong outputs: vertex a preserves f, not f.f
                outputs: vec![Wire::new("f"), Wire::new("f")],
            }],
        };
        assert!(matches!(
            evaluate2(&s, &d),
            Err(DiagramError::MalformedSlice(0, _))
        ));
    }

    #[test]
    fn roundtrip_on_a_two_layer_term() {
        let s = sig();
        let l0 = Layer2::new(Path1::identity(n("x")), "a", p("x", &["f"]));
        let l1 = Layer2::new(p("x", &["f"]), "b", Path1::identity(n("x")));
        let t = Term2::new(p("x", &["f", "f"]), vec![l0, l1]);
        let d = layout2(&s, &t).unwrap();
        assert_eq!(evaluate2(&s, &d).unwrap(), t);
        let d2 = layout2(&s, &evaluate2(&s, &d).unwrap()).unwrap();
        assert_eq!(d2, d);
    }

    #[test]
    fn empty_movie_is_identity_term3() {
        let s = sig();
        let d = Diagram2 {
            start: n("x"),
            top: vec![Wire::new("f")],
            slices: vec![],
        };
        let m = Movie {
            first: d.clone(),
            steps: vec![],
        };
        let t3 = evaluate3(&s, &m).unwrap();
        assert!(t3.moves.is_empty());
        assert_eq!(t3.source, evaluate2(&s, &d).unwrap());
    }

    #[test]
    fn interchange_movie_roundtrips_through_term() {
        let s = sig();
        let l0 = Layer2::new(Path1::identity(n("x")), "a", p("x", &["f"]));
        let l1 = Layer2::new(p("x", &["f"]), "b", Path1::identity(n("x")));
        let t = Term2::new(p("x", &["f", "f"]), vec![l0, l1]);
        let first = layout2(&s, &t).unwrap();
        let movie = build_movie(
            &s,
            first,
            &[MoveDescriptor::InterchangeMove {
                at_slice: 0,
                direction: Direction::Forward,
            }],
        )
        .unwrap();
        assert_eq!(movie.frame_count(), 2);
        let t3 = evaluate3(&s, &movie).unwrap();
        assert_eq!(t3.moves.len(), 1);
        assert!(matches!(t3.moves[0], Move3::Interchanger { .. }));
        // boundaries of the 3-term match the evaluation of first/last frames
        let (src, tgt) = term::typecheck_term3(&s, &t3).unwrap();
        assert_eq!(src, evaluate2(&s, &movie.first).unwrap());
        assert_eq!(tgt, evaluate2(&s, &movie.steps[0].1).unwrap());
    }

    #[test]
    fn frame_mismatch_detected() {
        let s = sig();
        let l0 = Layer2::new(Path1::identity(n("x")), "a", p("x", &["f"]));
        let l1 = Layer2::new(p("x", &["f"]), "b", Path1::identity(n("x")));
        let t = Term2::new(p("x", &["f", "f"]), vec![l0, l1]);
        let first = layout2(&s, &t).unwrap();
        let movie = Movie {
            first: first.clone(),
            steps: vec![(
                MoveDescriptor::InterchangeMove {
                    at_slice: 0,
                    direction: Direction::Forward,
                },
                first.clone(), // wrong: the frame after the swap differs
            )],
        };
        assert!(matches!(
            evaluate3(&s, &movie),
            Err(DiagramError::FrameMismatch(0, _))
        ));
    }

    #[test]
    fn wrong_direction_is_an_illegal_move() {
        let s = sig();
        let l0 = Layer2::new(Path1::identity(n("x")), "a", p("x", &["f"]));
        let l1 = Layer2::new(p("x", &["f"]), "b", Path1::identity(n("x")));
        let t = Term2::new(p("x", &["f", "f"]), vec![l0, l1]);
        let first = layout2(&s, &t).unwrap();
        let err = build_movie(
            &s,
            first,
            &[MoveDescriptor::InterchangeMove {
                at_slice: 0,
                direction: Direction::Backward,
            }],
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::IllegalMove(0, _)));
    }

    #[test]
    fn vertex_move_in_a_movie() {
        let pfx = p("x", &["f"]);
        let layer = Layer2::new(Path1::identity(n("x")), "a", Path1::identity(n("x")));
        let a_term = Term2::new(pfx.clone(), vec![layer]);
        let s = sig()
            .with_generator(CellGenerator::volume(
                "m",
                a_term.clone(),
                Term2::identity(pfx.clone()),
            ))
            .unwrap();
        // frame: a whiskered by f on the right, i.e. two wires
        let start_term =
            term::whisker(&s, term::WhiskerSide::Right, &p("x", &["f"]), &a_term).unwrap();
        let first = layout2(&s, &start_term).unwrap();
        let movie = build_movie(
            &s,
            first,
            &[MoveDescriptor::VertexMove {
                gen: n("m"),
                at_slice: 0,
                left_width: 0,
            }],
        )
        .unwrap();
        let t3 = evaluate3(&s, &movie).unwrap();
        assert_eq!(t3.moves.len(), 1);
        assert!(matches!(t3.moves[0], Move3::Gen3 { .. }));
        let (_, tgt) = term::typecheck_term3(&s, &t3).unwrap();
        assert_eq!(tgt, Term2::identity(p("x", &["f", "f"])));
    }
}
