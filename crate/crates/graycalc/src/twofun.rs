//! Finite strict 2-categories and the three strengths of functor,
//! transformation, and modification data, with exhaustive coherence checkers,
//! whiskered composites and their mediating modification, and hom-2-category
//! assembly.

pub mod check;
pub mod compose;
pub mod data;
pub mod finite_cat;
pub mod fixtures;
pub mod homcat;
pub mod two_cat;
pub mod world;

pub use check::{check_functor, check_modification, check_transformation};
pub use compose::{
    compose_functors, compose_transformations, hcompose_modifications, invert_modification,
    mediating_modification, vcompose_modifications, vcompose_transformations, PastingOrder,
};
pub use data::{
    identity_functor, identity_modification, identity_transformation, FunctorData,
    ModificationData, Strength, TransformationData,
};
pub use finite_cat::{CatFunctor, CatNatTrans, FiniteCategory};
pub use homcat::{
    enumerate_functors, enumerate_modifications, enumerate_transformations, hom_2category,
};
pub use two_cat::{Builder, Finite2Category};
pub use world::{CatWorld, TwoWorld};

use crate::report::ValidationReport;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum TwoFunError {
    #[error("middle functor mismatch: {0}")]
    MiddleFunctorMismatch(String),
    #[error("composite fails coherence:\n{0}")]
    CompositeNotCoherent(ValidationReport),
    #[error("operation requires pseudo data: {0}")]
    NotPseudo(String),
    #[error("size guard exceeded: search space {needed} over limit {guard}")]
    SizeGuardExceeded { needed: u128, guard: u64 },
    #[error("malformed data: {0}")]
    Malformed(String),
}

/// Limits on brute-force enumeration. `max_search` bounds the number of
/// candidate tuples examined per enumeration; the two object bounds gate the
/// limit constructions. Overridable via `GRAYCALC_SIZE_GUARD`.
#[derive(Debug, Clone)]
pub struct SizeGuard {
    pub max_search: u64,
    pub max_indexing_objects: usize,
    pub max_value_objects: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_search: 250_000,
            max_indexing_objects: 4,
            max_value_objects: 6,
        }
    }
}

impl SizeGuard {
    /// Default guard, with `GRAYCALC_SIZE_GUARD=<n>` overriding `max_search`.
    pub fn from_env() -> SizeGuard {
        let mut guard = SizeGuard::default();
        if let Ok(v) = std::env::var("GRAYCALC_SIZE_GUARD") {
            if let Ok(n) = v.trim().parse::<u64>() {
                guard.max_search = n;
            }
        }
        guard
    }

    /// Whether a 2-category is small enough to index a limit construction.
    pub fn admits_indexing(&self, c: &Finite2Category) -> bool {
        c.objects.len() <= self.max_indexing_objects
    }
}

/// Exhaustive verification of all strict 2-category laws; empty iff valid.
pub fn check_2category(c: &Finite2Category) -> ValidationReport {
    c.validate()
}

/// Exhaustive verification of all category laws; empty iff valid.
pub fn check_category(c: &FiniteCategory) -> ValidationReport {
    c.validate()
}
