//! Free composites over a signature.
//!
//! 1-cells are paths of generators. 2-cells are kept in generic form: an
//! ordered list of layers, each holding exactly one 2-generator with 1-cell
//! whiskers on both sides. 3-cells are move sequences rewriting one 2-term
//! into the next; the moves are whiskered 3-generators and interchangers.
//! Horizontal composition of general 2-terms is deliberately not a primitive:
//! callers choose one of the two layered orders, and the interchanger is the
//! 3-cell mediating between them.
//!
//! Identity cells are empty lists (empty path, empty layer list, empty move
//! list), so strict units hold definitionally.

use crate::signature::{GenName, Signature};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("unknown generator {name}")]
    UnknownGenerator { name: GenName },
    #[error("path does not compose at segment {index}: {detail}")]
    NonComposablePath { index: usize, detail: String },
    #[error("layer {0} does not meet the previous layer: {1}")]
    LayerMismatch(usize, String),
    #[error("move {0} does not start at the previous move's result: {1}")]
    MoveMismatch(usize, String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("layers have overlapping horizontal support")]
    OverlappingSupport,
    #[error("layers are not vertically adjacent")]
    NotAdjacent,
    #[error("index {index} out of range ({len} available)")]
    IndexOutOfRange { index: usize, len: usize },
}

type Result<T> = std::result::Result<T, TermError>;

/// A path of composable 1-generators. The empty path is the identity 1-cell
/// at `start`; for nonempty paths `start` must equal the source of the first
/// segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path1 {
    pub start: GenName,
    pub segments: Vec<GenName>,
}

impl Path1 {
    pub fn new(start: GenName, segments: impl IntoIterator<Item = GenName>) -> Self {
        Path1 {
            start,
            segments: segments.into_iter().collect(),
        }
    }

    pub fn identity(at: GenName) -> Self {
        Path1 {
            start: at,
            segments: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// End object, looked up through the signature.
    pub fn end(&self, sig: &Signature) -> Result<GenName> {
        match self.segments.last() {
            None => Ok(self.start.clone()),
            Some(last) => {
                let (_, tgt) = sig
                    .arrow_ends(last)
                    .ok_or_else(|| TermError::UnknownGenerator { name: last.clone() })?;
                Ok(tgt.clone())
            }
        }
    }

    /// Concatenation `self` then `other`; requires end(self) = other.start.
    pub fn then(&self, sig: &Signature, other: &Path1) -> Result<Path1> {
        let end = typecheck_path(sig, self)?.1;
        if end != other.start {
            return Err(TermError::NonComposablePath {
                index: self.segments.len(),
                detail: format!("path ends at {end} but continuation starts at {}", other.start),
            });
        }
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        Ok(Path1 {
            start: self.start.clone(),
            segments,
        })
    }

    /// Contiguous subpath covering `range`, with the correct start object.
    pub fn slice(&self, sig: &Signature, range: std::ops::Range<usize>) -> Result<Path1> {
        if range.end > self.segments.len() || range.start > range.end {
            return Err(TermError::IndexOutOfRange {
                index: range.end,
                len: self.segments.len(),
            });
        }
        let start = if range.start == 0 {
            self.start.clone()
        } else {
            let prev = &self.segments[range.start - 1];
            sig.arrow_ends(prev)
                .ok_or_else(|| TermError::UnknownGenerator { name: prev.clone() })?
                .1
                .clone()
        };
        Ok(Path1 {
            start,
            segments: self.segments[range].to_vec(),
        })
    }
}

impl fmt::Display for Path1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "id({})", self.start);
        }
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Check a path: start exists, every segment exists, consecutive segments
/// compose. Returns the (start, end) objects.
pub fn typecheck_path(sig: &Signature, p: &Path1) -> Result<(GenName, GenName)> {
    if sig.object(&p.start).is_none() {
        return Err(TermError::UnknownGenerator {
            name: p.start.clone(),
        });
    }
    let mut at = p.start.clone();
    for (i, seg) in p.segments.iter().enumerate() {
        let (src, tgt) = sig
            .arrow_ends(seg)
            .ok_or_else(|| TermError::UnknownGenerator { name: seg.clone() })?;
        if *src != at {
            return Err(TermError::NonComposablePath {
                index: i,
                detail: format!("segment {seg} starts at {src}, expected {at}"),
            });
        }
        at = tgt.clone();
    }
    Ok((p.start.clone(), at))
}

/// One generic layer of a 2-term: a single 2-generator with whiskers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer2 {
    pub left: Path1,
    pub core: GenName,
    pub right: Path1,
}

impl Layer2 {
    pub fn new(left: Path1, core: impl Into<GenName>, right: Path1) -> Self {
        Layer2 {
            left,
            core: core.into(),
            right,
        }
    }

    /// Horizontal position of the core: number of wires to its left.
    pub fn position(&self) -> usize {
        self.left.len()
    }

    /// Whiskered source path: left . src(core) . right.
    pub fn source(&self, sig: &Signature) -> Result<Path1> {
        let (src, _) = self.core_paths(sig)?;
        self.left.then(sig, &src)?.then(sig, &self.right)
    }

    /// Whiskered target path: left . tgt(core) . right.
    pub fn target(&self, sig: &Signature) -> Result<Path1> {
        let (_, tgt) = self.core_paths(sig)?;
        self.left.then(sig, &tgt)?.then(sig, &self.right)
    }

    fn core_paths(&self, sig: &Signature) -> Result<(Path1, Path1)> {
        let (src, tgt) = sig
            .surface_paths(&self.core)
            .ok_or_else(|| TermError::UnknownGenerator {
                name: self.core.clone(),
            })?;
        Ok((src.clone(), tgt.clone()))
    }

    /// Widths (source, target) of the core.
    pub fn core_widths(&self, sig: &Signature) -> Result<(usize, usize)> {
        let (src, tgt) = self.core_paths(sig)?;
        Ok((src.len(), tgt.len()))
    }
}

impl fmt::Display for Layer2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left = if self.left.is_identity() {
            String::new()
        } else {
            format!("{} ", self.left)
        };
        let right = if self.right.is_identity() {
            String::new()
        } else {
            format!(" {}", self.right)
        };
        write!(f, "[{left}| {} |{right}]", self.core)
    }
}

/// A 2-term in generic form: a boundary source path and a stack of layers,
/// read top to bottom. The empty stack is the identity 2-cell on `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term2 {
    pub source: Path1,
    pub layers: Vec<Layer2>,
}

impl Term2 {
    pub fn new(source: Path1, layers: Vec<Layer2>) -> Self {
        Term2 { source, layers }
    }

    pub fn identity(on: Path1) -> Self {
        Term2 {
            source: on,
            layers: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.layers.is_empty()
    }

    /// Target path (the last layer's whiskered target).
    pub fn target(&self, sig: &Signature) -> Result<Path1> {
        match self.layers.last() {
            None => Ok(self.source.clone()),
            Some(layer) => layer.target(sig),
        }
    }

    /// The sub-term spanning `range`, with the correct boundary source.
    pub fn slice(&self, sig: &Signature, range: std::ops::Range<usize>) -> Result<Term2> {
        if range.end > self.layers.len() || range.start > range.end {
            return Err(TermError::IndexOutOfRange {
                index: range.end,
                len: self.layers.len(),
            });
        }
        let source = if range.start == 0 {
            self.source.clone()
        } else {
            self.layers[range.start - 1].target(sig)?
        };
        Ok(Term2 {
            source,
            layers: self.layers[range].to_vec(),
        })
    }
}

impl fmt::Display for Term2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "id2({})", self.source);
        }
        for (i, l) in self.layers.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Check a 2-term: the first layer's whiskered source must equal `source`,
/// and consecutive layers must meet. Returns the (source, target) paths.
pub fn typecheck_term2(sig: &Signature, t: &Term2) -> Result<(Path1, Path1)> {
    typecheck_path(sig, &t.source)?;
    let mut at = t.source.clone();
    for (i, layer) in t.layers.iter().enumerate() {
        let src = layer
            .source(sig)
            .map_err(|e| TermError::LayerMismatch(i, e.to_string()))?;
        if src != at {
            return Err(TermError::LayerMismatch(
                i,
                format!("layer source is {src}, expected {at}"),
            ));
        }
        at = layer.target(sig)?;
    }
    Ok((t.source.clone(), at))
}

/// Vertical composite: layer lists concatenate. Requires tgt(a) = src(b).
pub fn compose_vertical(sig: &Signature, a: &Term2, b: &Term2) -> Result<Term2> {
    let (_, a_tgt) = typecheck_term2(sig, a)?;
    let (b_src, _) = typecheck_term2(sig, b)?;
    if a_tgt != b_src {
        return Err(TermError::BoundaryMismatch(format!(
            "first term ends at {a_tgt}, second starts at {b_src}"
        )));
    }
    let mut layers = a.layers.clone();
    layers.extend(b.layers.iter().cloned());
    Ok(Term2 {
        source: a.source.clone(),
        layers,
    })
}

/// Which side to whisker on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhiskerSide {
    Left,
    Right,
}

/// Extend every layer of `t` by the path `p` on the given side.
pub fn whisker(sig: &Signature, side: WhiskerSide, p: &Path1, t: &Term2) -> Result<Term2> {
    typecheck_path(sig, p)?;
    let (t_src, _) = typecheck_term2(sig, t)?;
    let source = match side {
        WhiskerSide::Left => p.then(sig, &t_src)?,
        WhiskerSide::Right => t_src.then(sig, p)?,
    };
    let layers = t
        .layers
        .iter()
        .map(|l| {
            Ok(match side {
                WhiskerSide::Left => Layer2 {
                    left: p.then(sig, &l.left)?,
                    core: l.core.clone(),
                    right: l.right.clone(),
                },
                WhiskerSide::Right => Layer2 {
                    left: l.left.clone(),
                    core: l.core.clone(),
                    right: l.right.then(sig, p)?,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Term2 { source, layers })
}

/// Whisker on both sides at once: left . t . right.
pub fn whisker_both(sig: &Signature, left: &Path1, t: &Term2, right: &Path1) -> Result<Term2> {
    let r = whisker(sig, WhiskerSide::Right, right, t)?;
    whisker(sig, WhiskerSide::Left, left, &r)
}

/// Swap two vertically adjacent layers with disjoint horizontal support.
/// Returns the re-whiskered pair `(b', a')` so that `a; b` and `b'; a'` are
/// parallel 2-terms holding the same two cores in the opposite vertical order.
pub fn swap_disjoint_layers(sig: &Signature, a: &Layer2, b: &Layer2) -> Result<(Layer2, Layer2)> {
    let a_tgt = a.target(sig)?;
    let b_src = b.source(sig)?;
    if a_tgt != b_src {
        return Err(TermError::NotAdjacent);
    }
    let (_, t_a) = a.core_widths(sig)?;
    let (s_b, _) = b.core_widths(sig)?;
    let i = a.position();
    let j = b.position();
    // mid = the shared wire list between the two layers
    let mid = &a_tgt;
    if i + t_a <= j {
        // a's core lies strictly left of b's: b fires first on a's source.
        // left of b on the input: left(a) . src(core a) . gap, where gap is
        // the stretch of mid between a's output block and b's core.
        let gap = mid.slice(sig, i + t_a..j)?;
        let (src_a, _) = a.core_paths(sig)?;
        let b_left = a.left.then(sig, &src_a)?.then(sig, &gap)?;
        let b_first = Layer2 {
            left: b_left,
            core: b.core.clone(),
            right: b.right.clone(),
        };
        // a fires second; its right whisker now contains b's target block.
        let (_, tgt_b) = b.core_paths(sig)?;
        let a_right = gap.then(sig, &tgt_b)?.then(sig, &b.right)?;
        let a_second = Layer2 {
            left: a.left.clone(),
            core: a.core.clone(),
            right: a_right,
        };
        Ok((b_first, a_second))
    } else if j + s_b <= i {
        // b's core lies strictly left of a's: b fires first with its left
        // whisker unchanged; its right whisker swaps a's target block for
        // a's source block.
        let gap = mid.slice(sig, j + s_b..i)?;
        let (src_a, _) = a.core_paths(sig)?;
        let b_right = gap.then(sig, &src_a)?.then(sig, &a.right)?;
        let b_first = Layer2 {
            left: b.left.clone(),
            core: b.core.clone(),
            right: b_right,
        };
        // a fires second; its left whisker now contains b's target block.
        let (_, tgt_b) = b.core_paths(sig)?;
        let a_left = b.left.then(sig, &tgt_b)?.then(sig, &gap)?;
        let a_second = Layer2 {
            left: a_left,
            core: a.core.clone(),
            right: a.right.clone(),
        };
        Ok((b_first, a_second))
    } else {
        Err(TermError::OverlappingSupport)
    }
}

/// True when two adjacent layers have disjoint horizontal support.
pub fn layers_disjoint(sig: &Signature, a: &Layer2, b: &Layer2) -> Result<bool> {
    let a_tgt = a.target(sig)?;
    let b_src = b.source(sig)?;
    if a_tgt != b_src {
        return Err(TermError::NotAdjacent);
    }
    let (_, t_a) = a.core_widths(sig)?;
    let (s_b, _) = b.core_widths(sig)?;
    Ok(a.position() + t_a <= b.position() || b.position() + s_b <= a.position())
}

/// Orientation of an interchanger. `Forward` swaps a left-core-first pair
/// into right-core-first; `Backward` is its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Forward => write!(f, "forward"),
            Direction::Backward => write!(f, "backward"),
        }
    }
}

/// One move of a 3-term, stored with full context so the value is
/// self-contained and re-checkable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move3 {
    /// A whiskered 3-generator, sandwiched between untouched context terms.
    Gen3 {
        left: Path1,
        core: GenName,
        right: Path1,
        above: Term2,
        below: Term2,
    },
    /// Swap of the adjacent disjoint layers `a; b` (in input order) into the
    /// re-whiskered pair, between untouched context terms.
    Interchanger {
        a: Layer2,
        b: Layer2,
        direction: Direction,
        above: Term2,
        below: Term2,
    },
}

impl Move3 {
    /// The 2-term this move consumes.
    pub fn input(&self, sig: &Signature) -> Result<Term2> {
        match self {
            Move3::Gen3 {
                left,
                core,
                right,
                above,
                below,
            } => {
                let (src, _) = sig
                    .volume_terms(core)
                    .ok_or_else(|| TermError::UnknownGenerator { name: core.clone() })?;
                let block = whisker_both(sig, left, &src.clone(), right)?;
                sandwich(sig, above, &block, below)
            }
            Move3::Interchanger {
                a, b, above, below, ..
            } => {
                let block = Term2 {
                    source: a.source(sig)?,
                    layers: vec![a.clone(), b.clone()],
                };
                sandwich(sig, above, &block, below)
            }
        }
    }

    /// The 2-term this move produces.
    pub fn output(&self, sig: &Signature) -> Result<Term2> {
        match self {
            Move3::Gen3 {
                left,
                core,
                right,
                above,
                below,
            } => {
                let (_, tgt) = sig
                    .volume_terms(core)
                    .ok_or_else(|| TermError::UnknownGenerator { name: core.clone() })?;
                let block = whisker_both(sig, left, &tgt.clone(), right)?;
                sandwich(sig, above, &block, below)
            }
            Move3::Interchanger {
                a, b, above, below, ..
            } => {
                let (b_first, a_second) = swap_disjoint_layers(sig, a, b)?;
                let block = Term2 {
                    source: a.source(sig)?,
                    layers: vec![b_first, a_second],
                };
                sandwich(sig, above, &block, below)
            }
        }
    }

    /// Layer index where the rewritten window begins.
    pub fn window_start(&self) -> usize {
        match self {
            Move3::Gen3 { above, .. } | Move3::Interchanger { above, .. } => above.layers.len(),
        }
    }

    /// (input height, output height) of the rewritten window.
    pub fn window_heights(&self, sig: &Signature) -> Result<(usize, usize)> {
        match self {
            Move3::Gen3 { core, .. } => {
                let (src, tgt) = sig
                    .volume_terms(core)
                    .ok_or_else(|| TermError::UnknownGenerator { name: core.clone() })?;
                Ok((src.layers.len(), tgt.layers.len()))
            }
            Move3::Interchanger { .. } => Ok((2, 2)),
        }
    }
}

fn sandwich(sig: &Signature, above: &Term2, block: &Term2, below: &Term2) -> Result<Term2> {
    let top = compose_vertical(sig, above, block)?;
    compose_vertical(sig, &top, below)
}

/// A 3-term: a source 2-term and a sequence of moves, each consuming the
/// previous move's output. The empty sequence is the identity 3-cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term3 {
    pub source: Term2,
    pub moves: Vec<Move3>,
}

impl Term3 {
    pub fn identity(on: Term2) -> Self {
        Term3 {
            source: on,
            moves: Vec::new(),
        }
    }

    /// Target 2-term (the last move's output).
    pub fn target(&self, sig: &Signature) -> Result<Term2> {
        match self.moves.last() {
            None => Ok(self.source.clone()),
            Some(m) => m.output(sig),
        }
    }
}

/// Check a 3-term: every move's input must equal the running 2-term, and the
/// interchanger direction tags must match the layer configuration. Returns the
/// (source, target) 2-terms.
pub fn typecheck_term3(sig: &Signature, t: &Term3) -> Result<(Term2, Term2)> {
    typecheck_term2(sig, &t.source)?;
    let mut at = t.source.clone();
    for (i, m) in t.moves.iter().enumerate() {
        let input = m
            .input(sig)
            .map_err(|e| TermError::MoveMismatch(i, e.to_string()))?;
        if input != at {
            return Err(TermError::MoveMismatch(
                i,
                format!("move expects {input}, current term is {at}"),
            ));
        }
        if let Move3::Interchanger { a, b, direction, .. } = m {
            let expected = interchange_direction(sig, a, b)?;
            if *direction != expected {
                return Err(TermError::MoveMismatch(
                    i,
                    format!("interchanger tagged {direction} but the pair swaps {expected}"),
                ));
            }
        }
        at = m
            .output(sig)
            .map_err(|e| TermError::MoveMismatch(i, e.to_string()))?;
        typecheck_term2(sig, &at).map_err(|e| TermError::MoveMismatch(i, e.to_string()))?;
    }
    Ok((t.source.clone(), at))
}

/// The orientation of the swap taking `a; b` to its re-whiskered reverse:
/// `Forward` when a's core lies left of b's, `Backward` otherwise.
pub fn interchange_direction(sig: &Signature, a: &Layer2, b: &Layer2) -> Result<Direction> {
    let (_, t_a) = a.core_widths(sig)?;
    let (s_b, _) = b.core_widths(sig)?;
    if a.position() + t_a <= b.position() {
        Ok(Direction::Forward)
    } else if b.position() + s_b <= a.position() {
        Ok(Direction::Backward)
    } else {
        Err(TermError::OverlappingSupport)
    }
}

/// Build the single-move 3-term interchanging two adjacent disjoint layers,
/// in the vertical context `above; a; b; below`.
pub fn interchanger(
    sig: &Signature,
    a: &Layer2,
    b: &Layer2,
    above: &Term2,
    below: &Term2,
) -> Result<Term3> {
    let direction = interchange_direction(sig, a, b)?;
    let mv = Move3::Interchanger {
        a: a.clone(),
        b: b.clone(),
        direction,
        above: above.clone(),
        below: below.clone(),
    };
    let source = mv.input(sig)?;
    let t = Term3 {
        source,
        moves: vec![mv],
    };
    typecheck_term3(sig, &t)?;
    Ok(t)
}

/// Build the interchanger swapping layers `at` and `at + 1` of a 2-term.
pub fn interchanger_at(sig: &Signature, t: &Term2, at: usize) -> Result<Term3> {
    if at + 1 >= t.layers.len() {
        return Err(TermError::IndexOutOfRange {
            index: at + 1,
            len: t.layers.len(),
        });
    }
    typecheck_term2(sig, t)?;
    let above = t.slice(sig, 0..at)?;
    let below = t.slice(sig, at + 2..t.layers.len())?;
    interchanger(sig, &t.layers[at], &t.layers[at + 1], &above, &below)
}

/// Append to `t3` the move applying 3-generator `core` with whiskers at layer
/// window `at` of the current 2-term.
pub fn apply_gen3(
    sig: &Signature,
    t3: &Term3,
    core: &GenName,
    at: usize,
    left: &Path1,
    right: &Path1,
) -> Result<Term3> {
    let current = t3.target(sig)?;
    let (src, _) = sig
        .volume_terms(core)
        .ok_or_else(|| TermError::UnknownGenerator { name: core.clone() })?;
    let height = src.layers.len();
    if at + height > current.layers.len() {
        return Err(TermError::IndexOutOfRange {
            index: at + height,
            len: current.layers.len(),
        });
    }
    let above = current.slice(sig, 0..at)?;
    let below = current.slice(sig, at + height..current.layers.len())?;
    let mv = Move3::Gen3 {
        left: left.clone(),
        core: core.clone(),
        right: right.clone(),
        above,
        below,
    };
    let mut next = t3.clone();
    next.moves.push(mv);
    typecheck_term3(sig, &next)?;
    Ok(next)
}

/// Infer the whisker paths for applying 3-generator `core` at layer window
/// `at`: strips the generator's own whiskers from the first window layer.
/// Fails for identity-source generators, whose whiskers must be given
/// explicitly.
pub fn infer_gen3_whiskers(
    sig: &Signature,
    current: &Term2,
    core: &GenName,
    at: usize,
) -> Result<(Path1, Path1)> {
    let (src, _) = sig
        .volume_terms(core)
        .ok_or_else(|| TermError::UnknownGenerator { name: core.clone() })?;
    let first = src.layers.first().ok_or_else(|| {
        TermError::BoundaryMismatch(format!(
            "3-cell {core} has identity source; whiskers must be explicit"
        ))
    })?;
    let window_first = current.layers.get(at).ok_or(TermError::IndexOutOfRange {
        index: at,
        len: current.layers.len(),
    })?;
    let wl = window_first.left.len();
    let gl = first.left.len();
    let wr = window_first.right.len();
    let gr = first.right.len();
    if wl < gl || wr < gr {
        return Err(TermError::BoundaryMismatch(format!(
            "window layer at {at} is narrower than the source of {core}"
        )));
    }
    let left = window_first.left.slice(sig, 0..wl - gl)?;
    let right = window_first.right.slice(sig, gr..wr)?;
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::CellGenerator;

    fn n(s: &str) -> GenName {
        GenName::from(s)
    }

    /// x, y; f: x->y, g: y->x, h: y->y; alpha: f=>f, beta: g=>g, gamma: h=>h.
    fn two_object_sig() -> Signature {
        let p = |start: &str, segs: &[&str]| Path1::new(n(start), segs.iter().map(|s| n(s)));
        Signature::from_generators([
            CellGenerator::object("x"),
            CellGenerator::object("y"),
            CellGenerator::arrow("f", "x", "y"),
            CellGenerator::arrow("g", "y", "x"),
            CellGenerator::arrow("h", "y", "y"),
            CellGenerator::surface("alpha", p("x", &["f"]), p("x", &["f"])),
            CellGenerator::surface("beta", p("y", &["g"]), p("y", &["g"])),
            CellGenerator::surface("gamma", p("y", &["h"]), p("y", &["h"])),
        ])
        .unwrap()
    }

    /// Width-changing signature: u: f => f.f', v: g => id.
    fn widths_sig() -> Signature {
        let p = |start: &str, segs: &[&str]| Path1::new(n(start), segs.iter().map(|s| n(s)));
        Signature::from_generators([
            CellGenerator::object("x"),
            CellGenerator::arrow("f", "x", "x"),
            CellGenerator::arrow("g", "x", "x"),
            CellGenerator::surface("u", p("x", &["f"]), p("x", &["f", "f"])),
            CellGenerator::surface("v", p("x", &["g"]), Path1::identity(n("x"))),
        ])
        .unwrap()
    }

    fn p(start: &str, segs: &[&str]) -> Path1 {
        Path1::new(n(start), segs.iter().map(|s| n(s)))
    }

    #[test]
    fn identity_term_typechecks_to_its_path() {
        let sig = two_object_sig();
        let fg = p("x", &["f", "g"]);
        let t = Term2::identity(fg.clone());
        let (s, tg) = typecheck_term2(&sig, &t).unwrap();
        assert_eq!(s, fg);
        assert_eq!(tg, fg);
    }

    #[test]
    fn single_whiskered_layer_boundaries() {
        let sig = two_object_sig();
        // (empty | alpha | g): f.g => f.g
        let layer = Layer2::new(Path1::identity(n("x")), "alpha", p("y", &["g"]));
        let t = Term2::new(p("x", &["f", "g"]), vec![layer]);
        let (s, tg) = typecheck_term2(&sig, &t).unwrap();
        assert_eq!(s, p("x", &["f", "g"]));
        assert_eq!(tg, p("x", &["f", "g"]));
    }

    #[test]
    fn layer_mismatch_detected_at_index() {
        let sig = two_object_sig();
        // layer 0 on f.g, then a layer expecting g.f: mismatch at 1
        let l0 = Layer2::new(Path1::identity(n("x")), "alpha", p("y", &["g"]));
        let l1 = Layer2::new(Path1::identity(n("y")), "beta", p("x", &["f"]));
        let t = Term2::new(p("x", &["f", "g"]), vec![l0, l1]);
        match typecheck_term2(&sig, &t) {
            Err(TermError::LayerMismatch(1, _)) => {}
            other => panic!("expected LayerMismatch(1), got {other:?}"),
        }
    }

    #[test]
    fn compose_vertical_is_concatenation_with_units() {
        let sig = two_object_sig();
        let layer = Layer2::new(Path1::identity(n("x")), "alpha", p("y", &["g"]));
        let a = Term2::new(p("x", &["f", "g"]), vec![layer.clone()]);
        let id = Term2::identity(p("x", &["f", "g"]));
        assert_eq!(compose_vertical(&sig, &id, &a).unwrap(), a);
        assert_eq!(compose_vertical(&sig, &a, &id).unwrap(), a);
        let both = compose_vertical(&sig, &a, &a).unwrap();
        assert_eq!(both.layers.len(), 2);
        typecheck_term2(&sig, &both).unwrap();
    }

    #[test]
    fn compose_vertical_rejects_boundary_mismatch() {
        let sig = two_object_sig();
        let a = Term2::identity(p("x", &["f", "g"]));
        let b = Term2::identity(p("x", &["f"]));
        assert!(matches!(
            compose_vertical(&sig, &a, &b),
            Err(TermError::BoundaryMismatch(_))
        ));
    }

    #[test]
    fn whisker_left_identity_is_noop() {
        let sig = two_object_sig();
        let layer = Layer2::new(Path1::identity(n("x")), "alpha", p("y", &["g"]));
        let t = Term2::new(p("x", &["f", "g"]), vec![layer]);
        let w = whisker(&sig, WhiskerSide::Left, &Path1::identity(n("x")), &t).unwrap();
        assert_eq!(w, t);
    }

    #[test]
    fn whisker_right_extends_every_layer() {
        let sig = two_object_sig();
        let layer = Layer2::new(Path1::identity(n("x")), "alpha", Path1::identity(n("y")));
        let t = Term2::new(p("x", &["f"]), vec![layer]);
        let w = whisker(&sig, WhiskerSide::Right, &p("y", &["h"]), &t).unwrap();
        assert_eq!(w.source, p("x", &["f", "h"]));
        assert_eq!(w.layers[0].right, p("y", &["h"]));
        typecheck_term2(&sig, &w).unwrap();
    }

    #[test]
    fn interchanger_swaps_disjoint_layers() {
        let sig = two_object_sig();
        // a = (| alpha | g): f.g => f.g ; b = (f | beta |): f.g => f.g
        let a = Layer2::new(Path1::identity(n("x")), "alpha", p("y", &["g"]));
        let b = Layer2::new(p("x", &["f"]), "beta", Path1::identity(n("x")));
        let above = Term2::identity(p("x", &["f", "g"]));
        let below = Term2::identity(p("x", &["f", "g"]));
        let t3 = interchanger(&sig, &a, &b, &above, &below).unwrap();
        let (src, tgt) = typecheck_term3(&sig, &t3).unwrap();
        assert_eq!(src.layers, vec![a.clone(), b.clone()]);
        // target: beta fires first at position 1 (left whisker f), then alpha
        let b_first = Layer2::new(p("x", &["f"]), "beta", Path1::identity(n("x")));
        let a_second = Layer2::new(Path1::identity(n("x")), "alpha", p("y", &["g"]));
        assert_eq!(tgt.layers, vec![b_first, a_second]);
        assert_ne!(src, tgt);
    }

    #[test]
    fn interchanger_on_width_changing_layers() {
        // u: f => f.f at position 0, v: g => id at position 2 of f.g... wait
        // source path f.g: u consumes f (pos 0), then v consumes g which now
        // sits at position 2.
        let sig = widths_sig();
        let a = Layer2::new(Path1::identity(n("x")), "u", p("x", &["g"]));
        let b = Layer2::new(p("x", &["f", "f"]), "v", Path1::identity(n("x")));
        let above = Term2::identity(p("x", &["f", "g"]));
        let below = Term2::identity(p("x", &["f", "f"]));
        let t3 = interchanger(&sig, &a, &b, &above, &below).unwrap();
        let (src, tgt) = typecheck_term3(&sig, &t3).unwrap();
        assert_eq!(src.layers.len(), 2);
        // after the swap, v fires first at position 1 (left whisker f), then u
        let b_first = Layer2::new(p("x", &["f"]), "v", Path1::identity(n("x")));
        let a_second = Layer2::new(Path1::identity(n("x")), "u", Path1::identity(n("x")));
        assert_eq!(tgt.layers, vec![b_first, a_second]);
    }

    #[test]
    fn overlapping_support_rejected() {
        let sig = two_object_sig();
        // two layers both on the single wire f: overlap
        let a = Layer2::new(Path1::identity(n("x")), "alpha", Path1::identity(n("y")));
        let b = Layer2::new(Path1::identity(n("x")), "alpha", Path1::identity(n("y")));
        assert_eq!(
            swap_disjoint_layers(&sig, &a, &b),
            Err(TermError::OverlappingSupport)
        );
    }

    #[test]
    fn forward_then_backward_interchanger_is_a_loop() {
        let sig = two_object_sig();
        let a = Layer2::new(Path1::identity(n("x")), "alpha", p("y", &["g"]));
        let b = Layer2::new(p("x", &["f"]), "beta", Path1::identity(n("x")));
        let above = Term2::identity(p("x", &["f", "g"]));
        let below = Term2::identity(p("x", &["f", "g"]));
        let fwd = interchanger(&sig, &a, &b, &above, &below).unwrap();
        let mid = fwd.target(&sig).unwrap();
        let back = interchanger_at(&sig, &mid, 0).unwrap();
        // compose: forward then backward
        let mut roundtrip = fwd.clone();
        roundtrip.moves.extend(back.moves);
        let (src, tgt) = typecheck_term3(&sig, &roundtrip).unwrap();
        assert_eq!(src, tgt);
        // and the second move is tagged backward
        match &roundtrip.moves[1] {
            Move3::Interchanger { direction, .. } => assert_eq!(*direction, Direction::Backward),
            other => panic!("expected interchanger, got {other:?}"),
        }
    }

    #[test]
    fn whiskered_terms_always_typecheck() {
        let sig = two_object_sig();
        let layer = Layer2::new(Path1::identity(n("y")), "beta", Path1::identity(n("x")));
        let t = Term2::new(p("y", &["g"]), vec![layer]);
        for pre in [p("x", &["f"]), p("x", &["f", "h"])] {
            // note: f: x->y, h: y->y so f.h ends at y = start of g
            let w = whisker(&sig, WhiskerSide::Left, &pre, &t).unwrap();
            typecheck_term2(&sig, &w).unwrap();
        }
    }

    #[test]
    fn gen3_move_roundtrip() {
        // 3-cell m: (one alpha layer) -> (identity on f)
        let pfx = p("x", &["f"]);
        let layer = Layer2::new(Path1::identity(n("x")), "alpha", Path1::identity(n("y")));
        let alpha_term = Term2::new(pfx.clone(), vec![layer]);
        let sig = two_object_sig()
            .with_generator(CellGenerator::volume(
                "m",
                alpha_term.clone(),
                Term2::identity(pfx.clone()),
            ))
            .unwrap();
        // start term: alpha layer whiskered by g on the right
        let start = whisker(&sig, WhiskerSide::Right, &p("y", &["g"]), &alpha_term).unwrap();
        let t3 = Term3::identity(start.clone());
        let (l, r) = infer_gen3_whiskers(&sig, &start, &n("m"), 0).unwrap();
        assert_eq!(l, Path1::identity(n("x")));
        assert_eq!(r, p("y", &["g"]));
        let applied = apply_gen3(&sig, &t3, &n("m"), 0, &l, &r).unwrap();
        let (src, tgt) = typecheck_term3(&sig, &applied).unwrap();
        assert_eq!(src, start);
        assert_eq!(tgt, Term2::identity(p("x", &["f", "g"])));
    }
}
