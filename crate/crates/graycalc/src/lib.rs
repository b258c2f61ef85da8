//! Executable diagram calculus for presented Gray-categories.
//!
//! The crate is organized around the pipeline a diagram travels through:
//!
//! * [`signature`] — presented Gray-categories: generating 0/1/2/3-cells with
//!   globular boundary data.
//! * [`term`] — free composites over a signature: 1-cell paths, layered 2-cell
//!   terms, and 3-cell move sequences including interchangers.
//! * [`diagram`] — combinatorial layered string diagrams and movies, with the
//!   evaluation (diagram → term) and layout (term → diagram) maps.
//! * [`rewrite`] — the commutation/cancellation move system on terms: normal
//!   forms, equality of 2-terms, bounded-search equivalence of 3-terms.
//! * [`twofun`] — finite strict 2-categories, lax/pseudo/strict functors,
//!   transformations and modifications with exhaustive axiom checkers, the
//!   whiskered composites of transformations and their mediating modification,
//!   and hom-2-category assembly.
//! * [`limits`] — lax/pseudo/strict limits of 2-functors valued in finite
//!   categories, with brute-force universal-property certification.
//! * [`dsl`], [`run`], [`render`] — the textual front end, command runner, and
//!   SVG/TikZ renderer behind the `graycalc` binary.

pub mod diagram;
pub mod dsl;
pub mod limits;
pub mod render;
pub mod report;
pub mod rewrite;
pub mod run;
pub mod signature;
pub mod term;
pub mod twofun;

pub use report::{ValidationEntry, ValidationReport};
pub use signature::{CellGenerator, GenName, GeneratorId, Signature};
pub use term::{Layer2, Path1, Term2, Term3};
