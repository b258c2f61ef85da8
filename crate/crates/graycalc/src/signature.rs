//! Presented Gray-categories: finite collections of generating cells.
//!
//! A signature lists generators of dimension 0 through 3. Boundaries of
//! 2-generators are 1-cell paths (composites, not single generators), and
//! boundaries of 3-generators are full 2-cell terms, so composite-boundary
//! figures are directly representable. Globularity is enforced on insertion:
//! for a k-generator with k >= 2, the source and target boundaries must
//! themselves be parallel.

use crate::report::ValidationReport;
use crate::term::{self, Path1, Term2};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Name of a generating cell. Names identify generators within a dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenName(String);

impl GenName {
    pub fn new(s: impl Into<String>) -> Self {
        GenName(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GenName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for GenName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.0)
    }
}

impl From<&str> for GenName {
    fn from(s: &str) -> Self {
        GenName(s.to_string())
    }
}

impl From<String> for GenName {
    fn from(s: String) -> Self {
        GenName(s)
    }
}

/// A generator name together with its dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    pub name: GenName,
    pub dimension: u8,
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-cell {}", self.dimension, self.name)
    }
}

/// Boundary data of a generator, by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// 0-cells have no boundary.
    Object,
    /// 1-cells run between 0-cells.
    Arrow { src: GenName, tgt: GenName },
    /// 2-cells run between parallel 1-cell paths.
    Surface { src: Path1, tgt: Path1 },
    /// 3-cells run between parallel 2-cell terms.
    Volume { src: Box<Term2>, tgt: Box<Term2> },
}

/// A generating cell: a name plus boundary data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellGenerator {
    pub name: GenName,
    pub boundary: Boundary,
}

impl CellGenerator {
    pub fn object(name: impl Into<GenName>) -> Self {
        CellGenerator {
            name: name.into(),
            boundary: Boundary::Object,
        }
    }

    pub fn arrow(
        name: impl Into<GenName>,
        src: impl Into<GenName>,
        tgt: impl Into<GenName>,
    ) -> Self {
        CellGenerator {
            name: name.into(),
            boundary: Boundary::Arrow {
                src: src.into(),
                tgt: tgt.into(),
            },
        }
    }

    pub fn surface(name: impl Into<GenName>, src: Path1, tgt: Path1) -> Self {
        CellGenerator {
            name: name.into(),
            boundary: Boundary::Surface { src, tgt },
        }
    }

    pub fn volume(name: impl Into<GenName>, src: Term2, tgt: Term2) -> Self {
        CellGenerator {
            name: name.into(),
            boundary: Boundary::Volume {
                src: Box::new(src),
                tgt: Box::new(tgt),
            },
        }
    }

    pub fn dimension(&self) -> u8 {
        match self.boundary {
            Boundary::Object => 0,
            Boundary::Arrow { .. } => 1,
            Boundary::Surface { .. } => 2,
            Boundary::Volume { .. } => 3,
        }
    }

    pub fn id(&self) -> GeneratorId {
        GeneratorId {
            name: self.name.clone(),
            dimension: self.dimension(),
        }
    }
}

/// Which boundary of a cell to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("boundary of {cell} mentions unknown generator {unknown}")]
    UnknownBoundaryGenerator { cell: GenName, unknown: GenName },
    #[error("globularity violation in {cell}: {detail}")]
    GlobularityViolation { cell: GenName, detail: String },
    #[error("duplicate {dimension}-cell name {name}")]
    DuplicateName { name: GenName, dimension: u8 },
    #[error("0-cell {0} has no boundary")]
    ZeroCellHasNoBoundary(GenName),
    #[error("boundary of {cell} is not well-typed: {source}")]
    IllTypedBoundary {
        cell: GenName,
        source: term::TermError,
    },
}

/// A presented Gray-category: generators in insertion order, grouped by
/// dimension, with name lookup per dimension.
///
/// Values are immutable; [`Signature::with_generator`] returns an extended
/// copy and leaves the receiver untouched.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    gens: Vec<CellGenerator>,
    index: [BTreeMap<GenName, usize>; 4],
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    /// Build a signature from generators, failing on the first bad one.
    pub fn from_generators<I>(gens: I) -> Result<Self, SignatureError>
    where
        I: IntoIterator<Item = CellGenerator>,
    {
        let mut sig = Signature::new();
        for g in gens {
            sig = sig.with_generator(g)?;
        }
        Ok(sig)
    }

    /// Extend the signature with one generator, checking name uniqueness,
    /// boundary resolution, well-typedness, and globularity.
    pub fn with_generator(&self, gen: CellGenerator) -> Result<Signature, SignatureError> {
        let dim = gen.dimension() as usize;
        if self.index[dim].contains_key(&gen.name) {
            return Err(SignatureError::DuplicateName {
                name: gen.name.clone(),
                dimension: dim as u8,
            });
        }
        self.check_boundary(&gen)?;
        let mut next = self.clone();
        next.index[dim].insert(gen.name.clone(), next.gens.len());
        next.gens.push(gen);
        Ok(next)
    }

    fn check_boundary(&self, gen: &CellGenerator) -> Result<(), SignatureError> {
        let cell = gen.name.clone();
        match &gen.boundary {
            Boundary::Object => Ok(()),
            Boundary::Arrow { src, tgt } => {
                for end in [src, tgt] {
                    if self.object(end).is_none() {
                        return Err(SignatureError::UnknownBoundaryGenerator {
                            cell,
                            unknown: end.clone(),
                        });
                    }
                }
                Ok(())
            }
            Boundary::Surface { src, tgt } => {
                let (s0, s1) = self.typecheck_boundary_path(&cell, src)?;
                let (t0, t1) = self.typecheck_boundary_path(&cell, tgt)?;
                if s0 != t0 || s1 != t1 {
                    return Err(SignatureError::GlobularityViolation {
                        cell,
                        detail: format!(
                            "source runs {s0} -> {s1} but target runs {t0} -> {t1}"
                        ),
                    });
                }
                Ok(())
            }
            Boundary::Volume { src, tgt } => {
                let sb = self.typecheck_boundary_term(&cell, src)?;
                let tb = self.typecheck_boundary_term(&cell, tgt)?;
                if sb != tb {
                    return Err(SignatureError::GlobularityViolation {
                        cell,
                        detail: format!(
                            "source 2-term has boundary ({} => {}) but target has ({} => {})",
                            sb.0, sb.1, tb.0, tb.1
                        ),
                    });
                }
                Ok(())
            }
        }
    }

    fn typecheck_boundary_path(
        &self,
        cell: &GenName,
        p: &Path1,
    ) -> Result<(GenName, GenName), SignatureError> {
        term::typecheck_path(self, p).map_err(|e| match e {
            term::TermError::UnknownGenerator { name } => {
                SignatureError::UnknownBoundaryGenerator {
                    cell: cell.clone(),
                    unknown: name,
                }
            }
            other => SignatureError::IllTypedBoundary {
                cell: cell.clone(),
                source: other,
            },
        })
    }

    fn typecheck_boundary_term(
        &self,
        cell: &GenName,
        t: &Term2,
    ) -> Result<(Path1, Path1), SignatureError> {
        term::typecheck_term2(self, t).map_err(|e| match e {
            term::TermError::UnknownGenerator { name } => {
                SignatureError::UnknownBoundaryGenerator {
                    cell: cell.clone(),
                    unknown: name,
                }
            }
            other => SignatureError::IllTypedBoundary {
                cell: cell.clone(),
                source: other,
            },
        })
    }

    /// Read one boundary of a generator back as term data.
    pub fn boundary_of(
        &self,
        gen: &CellGenerator,
        side: Side,
    ) -> Result<BoundaryTerm, SignatureError> {
        match (&gen.boundary, side) {
            (Boundary::Object, _) => {
                Err(SignatureError::ZeroCellHasNoBoundary(gen.name.clone()))
            }
            (Boundary::Arrow { src, .. }, Side::Source) => Ok(BoundaryTerm::Object(src.clone())),
            (Boundary::Arrow { tgt, .. }, Side::Target) => Ok(BoundaryTerm::Object(tgt.clone())),
            (Boundary::Surface { src, .. }, Side::Source) => Ok(BoundaryTerm::Path(src.clone())),
            (Boundary::Surface { tgt, .. }, Side::Target) => Ok(BoundaryTerm::Path(tgt.clone())),
            (Boundary::Volume { src, .. }, Side::Source) => {
                Ok(BoundaryTerm::Term((**src).clone()))
            }
            (Boundary::Volume { tgt, .. }, Side::Target) => {
                Ok(BoundaryTerm::Term((**tgt).clone()))
            }
        }
    }

    /// Every generator in insertion order.
    pub fn generators(&self) -> &[CellGenerator] {
        &self.gens
    }

    /// Generators of one dimension, in insertion order.
    pub fn generators_of_dim(&self, dim: u8) -> impl Iterator<Item = &CellGenerator> {
        self.gens.iter().filter(move |g| g.dimension() == dim)
    }

    pub fn lookup(&self, dim: u8, name: &GenName) -> Option<&CellGenerator> {
        self.index[dim as usize].get(name).map(|&i| &self.gens[i])
    }

    pub fn object(&self, name: &GenName) -> Option<&CellGenerator> {
        self.lookup(0, name)
    }

    /// Endpoints of a 1-generator.
    pub fn arrow_ends(&self, name: &GenName) -> Option<(&GenName, &GenName)> {
        match self.lookup(1, name)?.boundary {
            Boundary::Arrow { ref src, ref tgt } => Some((src, tgt)),
            _ => None,
        }
    }

    /// Boundary paths of a 2-generator.
    pub fn surface_paths(&self, name: &GenName) -> Option<(&Path1, &Path1)> {
        match self.lookup(2, name)?.boundary {
            Boundary::Surface { ref src, ref tgt } => Some((src, tgt)),
            _ => None,
        }
    }

    /// Boundary terms of a 3-generator.
    pub fn volume_terms(&self, name: &GenName) -> Option<(&Term2, &Term2)> {
        match self.lookup(3, name)?.boundary {
            Boundary::Volume { ref src, ref tgt } => Some((src, tgt)),
            _ => None,
        }
    }

    /// Exhaustive well-formedness scan. The report is empty iff an incremental
    /// rebuild via [`Signature::with_generator`] would accept every generator.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let mut partial = Signature::new();
        for gen in &self.gens {
            match partial.with_generator(gen.clone()) {
                Ok(next) => partial = next,
                Err(e) => {
                    let code = match e {
                        SignatureError::UnknownBoundaryGenerator { .. } => "unknown-boundary",
                        SignatureError::GlobularityViolation { .. } => "globularity",
                        SignatureError::DuplicateName { .. } => "duplicate-name",
                        SignatureError::ZeroCellHasNoBoundary(_) => "zero-cell-boundary",
                        SignatureError::IllTypedBoundary { .. } => "ill-typed-boundary",
                    };
                    report.add(code, gen.id().to_string(), e.to_string());
                }
            }
        }
        report.finish()
    }
}

/// Boundary of a generator, read via [`Signature::boundary_of`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryTerm {
    Object(GenName),
    Path(Path1),
    Term(Term2),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Layer2;

    fn n(s: &str) -> GenName {
        GenName::from(s)
    }

    #[test]
    fn empty_signature_is_valid() {
        let sig = Signature::new();
        assert!(sig.validate().is_empty());
        assert!(sig.generators().is_empty());
    }

    #[test]
    fn add_object_then_endo_cells() {
        let sig = Signature::from_generators([
            CellGenerator::object("x"),
            CellGenerator::arrow("f", "x", "x"),
            CellGenerator::surface(
                "a",
                Path1::new(n("x"), [n("f")]),
                Path1::new(n("x"), [n("f")]),
            ),
        ])
        .unwrap();
        assert!(sig.validate().is_empty());
        assert_eq!(sig.generators().len(), 3);
    }

    #[test]
    fn unknown_boundary_generator_rejected() {
        let sig = Signature::from_generators([
            CellGenerator::object("x"),
            CellGenerator::object("y"),
            CellGenerator::arrow("f", "x", "y"),
        ])
        .unwrap();
        // 2-cell a: f => g with g undeclared
        let bad = CellGenerator::surface(
            "a",
            Path1::new(n("x"), [n("f")]),
            Path1::new(n("x"), [n("g")]),
        );
        let err = sig.with_generator(bad).unwrap_err();
        assert_eq!(
            err,
            SignatureError::UnknownBoundaryGenerator {
                cell: n("a"),
                unknown: n("g"),
            }
        );
    }

    #[test]
    fn globularity_violation_reported_by_validate() {
        // f: x->y, h: x->z, and a 2-cell a: f => h with mismatched ends.
        let sig = Signature::from_generators([
            CellGenerator::object("x"),
            CellGenerator::object("y"),
            CellGenerator::object("z"),
            CellGenerator::arrow("f", "x", "y"),
            CellGenerator::arrow("h", "x", "z"),
        ])
        .unwrap();
        let bad = CellGenerator::surface(
            "a",
            Path1::new(n("x"), [n("f")]),
            Path1::new(n("x"), [n("h")]),
        );
        assert!(matches!(
            sig.with_generator(bad.clone()),
            Err(SignatureError::GlobularityViolation { .. })
        ));
        // validate on a force-assembled signature reports exactly one entry
        let mut forced = sig.clone();
        forced.index[2].insert(n("a"), forced.gens.len());
        forced.gens.push(bad);
        let report = forced.validate();
        assert_eq!(report.len(), 1);
        assert!(report.has_code("globularity"));
    }

    #[test]
    fn duplicate_names_rejected_per_dimension() {
        let sig = Signature::from_generators([CellGenerator::object("x")]).unwrap();
        let err = sig.with_generator(CellGenerator::object("x")).unwrap_err();
        assert!(matches!(err, SignatureError::DuplicateName { .. }));
        // same name in another dimension is fine
        sig.with_generator(CellGenerator::arrow("x", "x", "x"))
            .unwrap();
    }

    #[test]
    fn boundary_accessors() {
        let sig = Signature::from_generators([
            CellGenerator::object("x"),
            CellGenerator::object("y"),
            CellGenerator::arrow("f", "x", "y"),
        ])
        .unwrap();
        let f = sig.lookup(1, &n("f")).unwrap();
        assert_eq!(
            sig.boundary_of(f, Side::Source).unwrap(),
            BoundaryTerm::Object(n("x"))
        );
        let x = sig.object(&n("x")).unwrap();
        assert_eq!(
            sig.boundary_of(x, Side::Source),
            Err(SignatureError::ZeroCellHasNoBoundary(n("x")))
        );
    }

    #[test]
    fn insertion_order_insensitive_among_independent_generators() {
        let a = Signature::from_generators([
            CellGenerator::object("x"),
            CellGenerator::object("y"),
            CellGenerator::arrow("f", "x", "y"),
            CellGenerator::arrow("g", "y", "x"),
        ])
        .unwrap();
        let b = Signature::from_generators([
            CellGenerator::object("y"),
            CellGenerator::object("x"),
            CellGenerator::arrow("g", "y", "x"),
            CellGenerator::arrow("f", "x", "y"),
        ])
        .unwrap();
        for dim in 0..=3u8 {
            let mut ga: Vec<_> = a.generators_of_dim(dim).cloned().collect();
            let mut gb: Vec<_> = b.generators_of_dim(dim).cloned().collect();
            ga.sort_by(|p, q| p.name.cmp(&q.name));
            gb.sort_by(|p, q| p.name.cmp(&q.name));
            assert_eq!(ga, gb);
        }
    }

    #[test]
    fn three_generator_globularity_checked() {
        let sig = Signature::from_generators([
            CellGenerator::object("x"),
            CellGenerator::arrow("f", "x", "x"),
            CellGenerator::surface(
                "a",
                Path1::new(n("x"), [n("f")]),
                Path1::new(n("x"), [n("f")]),
            ),
        ])
        .unwrap();
        let fx = Path1::new(n("x"), [n("f")]);
        let layer = Layer2::new(Path1::identity(n("x")), n("a"), Path1::identity(n("x")));
        let one_layer = Term2::new(fx.clone(), vec![layer]);
        let idf = Term2::identity(fx.clone());
        // source a-layer, target identity on f: parallel, fine
        let good = CellGenerator::volume("m", one_layer.clone(), idf);
        sig.with_generator(good).unwrap();
        // target on f.f is not parallel to source on f
        let ff = Path1::new(n("x"), [n("f"), n("f")]);
        let bad = CellGenerator::volume("m2", one_layer, Term2::identity(ff));
        assert!(matches!(
            sig.with_generator(bad),
            Err(SignatureError::GlobularityViolation { .. })
        ));
    }
}
