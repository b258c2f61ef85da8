//! The resolved document model.
//!
//! A parsed document holds fully resolved values: names are bound in
//! declaration order, terms are typechecked against their signatures,
//! diagrams are evaluated, and movies carry every computed frame. Law-level
//! checking of categories, 2-categories, functors, transformations, cones,
//! and modifications is deliberately deferred to the `check` command so that
//! documents can exercise failing checks.

use crate::diagram::{Diagram2, Movie};
use crate::limits::Cone;
use crate::signature::Signature;
use crate::term::{Term2, Term3};
use crate::twofun::data::{FunctorData, ModificationData, Strength, TransformationData};
use crate::twofun::finite_cat::{CatFunctor, CatNatTrans, FiniteCategory};
use crate::twofun::two_cat::Finite2Category;
use crate::twofun::world::CatWorld;
use crate::twofun::PastingOrder;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub items: Vec<Item>,
}

impl Document {
    pub fn empty() -> Document {
        Document { items: Vec::new() }
    }

    /// Find a declaration by name and kind discriminator.
    pub fn find(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name() == Some(name))
    }
}

/// Functor data resolved against either a finite 2-category codomain or the
/// 2-category of finite categories.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctorPayload {
    TwoCat(FunctorData<Finite2Category>),
    Cat(FunctorData<CatWorld>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Signature {
        name: String,
        sig: Signature,
    },
    Term2 {
        name: String,
        sig: String,
        term: Term2,
    },
    Term3 {
        name: String,
        sig: String,
        term: Term3,
    },
    Diagram {
        name: String,
        sig: String,
        diagram: Diagram2,
    },
    Movie {
        name: String,
        sig: String,
        first: String,
        movie: Movie,
    },
    Category {
        name: String,
        category: Arc<FiniteCategory>,
    },
    CatFunctor {
        name: String,
        dom: String,
        cod: String,
        functor: CatFunctor,
    },
    CatTrans {
        name: String,
        src: String,
        tgt: String,
        trans: CatNatTrans,
    },
    TwoCategory {
        name: String,
        cat: Finite2Category,
    },
    Functor {
        name: String,
        dom: String,
        /// Codomain 2-category name, or "Cat".
        cod: String,
        payload: FunctorPayload,
    },
    Transformation {
        name: String,
        src: String,
        tgt: String,
        data: TransformationData<Finite2Category>,
    },
    Modification {
        name: String,
        src: String,
        tgt: String,
        data: ModificationData<Finite2Category>,
    },
    Cone {
        name: String,
        over: String,
        apex: String,
        cone: Cone,
    },
    Command(Command),
}

impl Item {
    pub fn name(&self) -> Option<&str> {
        match self {
            Item::Signature { name, .. }
            | Item::Term2 { name, .. }
            | Item::Term3 { name, .. }
            | Item::Diagram { name, .. }
            | Item::Movie { name, .. }
            | Item::Category { name, .. }
            | Item::CatFunctor { name, .. }
            | Item::CatTrans { name, .. }
            | Item::TwoCategory { name, .. }
            | Item::Functor { name, .. }
            | Item::Transformation { name, .. }
            | Item::Modification { name, .. }
            | Item::Cone { name, .. } => Some(name),
            Item::Command(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Tikz,
}

impl std::fmt::Display for RenderFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RenderFormat::Svg => write!(f, "svg"),
            RenderFormat::Tikz => write!(f, "tikz"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Check {
        target: String,
    },
    Normalize {
        term: String,
    },
    Eq {
        left: String,
        right: String,
    },
    Eq3 {
        left: String,
        right: String,
        budget: usize,
    },
    Compose {
        left: String,
        right: String,
        order: Option<PastingOrder>,
        bind: Option<String>,
    },
    Mediate {
        left: String,
        right: String,
        bind: Option<String>,
    },
    HomCat {
        strength: Strength,
        dom: String,
        cod: String,
        bind: Option<String>,
    },
    Limit {
        strength: Strength,
        of: String,
        bind: String,
    },
    Certify {
        limit: String,
        apexes: Vec<String>,
    },
    Render {
        target: String,
        format: Option<RenderFormat>,
    },
}
