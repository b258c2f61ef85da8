//! Functor, transformation, and modification data over an ambient world.
//!
//! These records carry components and comparison cells only; none of their
//! axioms are assumed. The checkers in [`super::check`] verify everything
//! exhaustively over the finite domain.

use super::two_cat::Finite2Category;
use super::world::TwoWorld;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// How strictly structure is preserved: comparison cells must be identities
/// (strict), invertible (pseudo), or arbitrary (lax).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strength {
    Strict,
    Pseudo,
    Lax,
}

impl Strength {
    /// The weakest of two strengths (lax absorbs pseudo absorbs strict).
    pub fn join(self, other: Strength) -> Strength {
        self.max(other)
    }
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strength::Strict => write!(f, "strict"),
            Strength::Pseudo => write!(f, "pseudo"),
            Strength::Lax => write!(f, "lax"),
        }
    }
}

impl FromStr for Strength {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Strength::Strict),
            "pseudo" => Ok(Strength::Pseudo),
            "lax" => Ok(Strength::Lax),
            other => Err(format!("unknown strength {other}")),
        }
    }
}

/// Data of a lax/pseudo/strict functor from a finite 2-category into a world
/// `W`. Vectors are indexed by the domain's cell indices; `comp` is keyed by
/// composable domain 1-cell pairs `(g, f)`.
#[derive(Debug)]
pub struct FunctorData<W: TwoWorld> {
    pub strength: Strength,
    pub ob: Vec<W::Ob>,
    pub one: Vec<W::One>,
    pub two: Vec<W::Two>,
    /// Comparison cells φ(g,f): F(g)∘F(f) ⇒ F(g∘f).
    pub comp: BTreeMap<(usize, usize), W::Two>,
    /// Unit cells φ(x): id_{F(x)} ⇒ F(id_x).
    pub unit: Vec<W::Two>,
}

impl<W: TwoWorld> Clone for FunctorData<W> {
    fn clone(&self) -> Self {
        FunctorData {
            strength: self.strength,
            ob: self.ob.clone(),
            one: self.one.clone(),
            two: self.two.clone(),
            comp: self.comp.clone(),
            unit: self.unit.clone(),
        }
    }
}

impl<W: TwoWorld> PartialEq for FunctorData<W> {
    fn eq(&self, other: &Self) -> bool {
        self.strength == other.strength
            && self.ob == other.ob
            && self.one == other.one
            && self.two == other.two
            && self.comp == other.comp
            && self.unit == other.unit
    }
}

impl<W: TwoWorld> Eq for FunctorData<W> {}

impl<W: TwoWorld> FunctorData<W> {
    /// The strict functor with the given cell maps: all comparison cells are
    /// identities. Fails (None) when the maps do not strictly commute with
    /// composition in `w`, in which case no strict functor has these maps.
    pub fn strict(
        dom: &Finite2Category,
        w: &W,
        ob: Vec<W::Ob>,
        one: Vec<W::One>,
        two: Vec<W::Two>,
    ) -> Option<FunctorData<W>> {
        let mut comp = BTreeMap::new();
        for (&(g, f), &gf) in &dom.hcomp1 {
            let img = w.comp1(one.get(g)?, one.get(f)?)?;
            if img != *one.get(gf)? {
                return None;
            }
            comp.insert((g, f), w.id2(&img));
        }
        let mut unit = Vec::new();
        for (x, fx) in ob.iter().enumerate() {
            let idx = w.id1(fx);
            if idx != *one.get(dom.id1[x])? {
                return None;
            }
            unit.push(w.id2(&idx));
        }
        Some(FunctorData {
            strength: Strength::Strict,
            ob,
            one,
            two,
            comp,
            unit,
        })
    }
}

/// The identity functor on a finite 2-category, as data over itself.
pub fn identity_functor(c: &Finite2Category) -> FunctorData<Finite2Category> {
    FunctorData::strict(
        c,
        c,
        (0..c.objects.len()).collect(),
        (0..c.cells1.len()).collect(),
        (0..c.cells2.len()).collect(),
    )
    .expect("identity maps commute with composition")
}

/// Data of a lax/pseudo/strict transformation between two functors with the
/// same domain. `at[x]` is the component 1-cell at object x, and `wit[f]` is
/// the naturality witness G(f)∘η(x) ⇒ η(y)∘F(f) for f: x→y.
#[derive(Debug)]
pub struct TransformationData<W: TwoWorld> {
    pub strength: Strength,
    pub source: FunctorData<W>,
    pub target: FunctorData<W>,
    pub at: Vec<W::One>,
    pub wit: Vec<W::Two>,
}

impl<W: TwoWorld> Clone for TransformationData<W> {
    fn clone(&self) -> Self {
        TransformationData {
            strength: self.strength,
            source: self.source.clone(),
            target: self.target.clone(),
            at: self.at.clone(),
            wit: self.wit.clone(),
        }
    }
}

impl<W: TwoWorld> PartialEq for TransformationData<W> {
    fn eq(&self, other: &Self) -> bool {
        self.strength == other.strength
            && self.source == other.source
            && self.target == other.target
            && self.at == other.at
            && self.wit == other.wit
    }
}

impl<W: TwoWorld> Eq for TransformationData<W> {}

/// The identity transformation on a functor.
pub fn identity_transformation<W: TwoWorld>(
    dom: &Finite2Category,
    w: &W,
    f: &FunctorData<W>,
) -> TransformationData<W> {
    let at: Vec<W::One> = f.ob.iter().map(|x| w.id1(x)).collect();
    let wit = (0..dom.cells1.len()).map(|j| w.id2(&f.one[j])).collect();
    TransformationData {
        strength: Strength::Strict,
        source: f.clone(),
        target: f.clone(),
        at,
        wit,
    }
}

/// Data of a modification between two parallel transformations: one 2-cell
/// component per domain object.
#[derive(Debug)]
pub struct ModificationData<W: TwoWorld> {
    pub source: TransformationData<W>,
    pub target: TransformationData<W>,
    pub at: Vec<W::Two>,
}

impl<W: TwoWorld> Clone for ModificationData<W> {
    fn clone(&self) -> Self {
        ModificationData {
            source: self.source.clone(),
            target: self.target.clone(),
            at: self.at.clone(),
        }
    }
}

impl<W: TwoWorld> PartialEq for ModificationData<W> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.at == other.at
    }
}

impl<W: TwoWorld> Eq for ModificationData<W> {}

/// The identity modification on a transformation.
pub fn identity_modification<W: TwoWorld>(
    w: &W,
    t: &TransformationData<W>,
) -> ModificationData<W> {
    ModificationData {
        source: t.clone(),
        target: t.clone(),
        at: t.at.iter().map(|c| w.id2(c)).collect(),
    }
}
