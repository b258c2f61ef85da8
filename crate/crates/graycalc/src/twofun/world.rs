//! The ambient-2-category interface.
//!
//! Functor, transformation, and modification data live over some strict
//! 2-category of values: either a [`Finite2Category`] (cells are indices into
//! its tables) or the 2-category of finite categories (cells are category,
//! functor, and natural-transformation values). The coherence checkers and
//! composition constructions only need the operations below, so they are
//! written once against this trait.

use super::finite_cat::{CatFunctor, CatNatTrans, FiniteCategory};
use super::two_cat::Finite2Category;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

pub trait TwoWorld {
    type Ob: Clone + Eq + Hash + Debug;
    type One: Clone + Eq + Hash + Debug;
    type Two: Clone + Eq + Hash + Debug;

    fn src1(&self, f: &Self::One) -> Self::Ob;
    fn tgt1(&self, f: &Self::One) -> Self::Ob;
    fn src2(&self, u: &Self::Two) -> Self::One;
    fn tgt2(&self, u: &Self::Two) -> Self::One;

    fn id1(&self, x: &Self::Ob) -> Self::One;
    fn id2(&self, f: &Self::One) -> Self::Two;

    /// Horizontal composite of 1-cells, `g` after `f`.
    fn comp1(&self, g: &Self::One, f: &Self::One) -> Option<Self::One>;
    /// Vertical composite of 2-cells, `v` after `u`.
    fn vcomp(&self, v: &Self::Two, u: &Self::Two) -> Option<Self::Two>;
    /// Horizontal composite of 2-cells, `v ∗ u` with `u` on the source side.
    fn hcomp(&self, v: &Self::Two, u: &Self::Two) -> Option<Self::Two>;
    /// Vertical inverse of a 2-cell, when one exists.
    fn inverse2(&self, u: &Self::Two) -> Option<Self::Two>;

    fn describe_ob(&self, x: &Self::Ob) -> String {
        format!("{x:?}")
    }
    fn describe_one(&self, f: &Self::One) -> String {
        format!("{f:?}")
    }
    fn describe_two(&self, u: &Self::Two) -> String {
        format!("{u:?}")
    }

    /// True when `u` is the identity 2-cell on its source 1-cell.
    fn is_id2(&self, u: &Self::Two) -> bool {
        self.src2(u) == self.tgt2(u) && *u == self.id2(&self.src2(u))
    }
}

impl TwoWorld for Finite2Category {
    type Ob = usize;
    type One = usize;
    type Two = usize;

    fn src1(&self, f: &usize) -> usize {
        self.cells1[*f].src
    }

    fn tgt1(&self, f: &usize) -> usize {
        self.cells1[*f].tgt
    }

    fn src2(&self, u: &usize) -> usize {
        self.cells2[*u].src
    }

    fn tgt2(&self, u: &usize) -> usize {
        self.cells2[*u].tgt
    }

    fn id1(&self, x: &usize) -> usize {
        self.id1[*x]
    }

    fn id2(&self, f: &usize) -> usize {
        self.id2[*f]
    }

    fn comp1(&self, g: &usize, f: &usize) -> Option<usize> {
        self.hcomp1.get(&(*g, *f)).copied()
    }

    fn vcomp(&self, v: &usize, u: &usize) -> Option<usize> {
        self.vcomp.get(&(*v, *u)).copied()
    }

    fn hcomp(&self, v: &usize, u: &usize) -> Option<usize> {
        self.hcomp2.get(&(*v, *u)).copied()
    }

    fn inverse2(&self, u: &usize) -> Option<usize> {
        Finite2Category::inverse2(self, *u)
    }

    fn describe_ob(&self, x: &usize) -> String {
        self.objects.get(*x).cloned().unwrap_or_else(|| format!("?{x}"))
    }

    fn describe_one(&self, f: &usize) -> String {
        self.cells1
            .get(*f)
            .map(|c| c.name.clone())
            .unwrap_or_else(|| format!("?{f}"))
    }

    fn describe_two(&self, u: &usize) -> String {
        self.cells2
            .get(*u)
            .map(|c| c.name.clone())
            .unwrap_or_else(|| format!("?{u}"))
    }
}

/// The 2-category of finite categories: objects are category values, 1-cells
/// are functors, 2-cells are natural transformations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CatWorld;

impl TwoWorld for CatWorld {
    type Ob = Arc<FiniteCategory>;
    type One = CatFunctor;
    type Two = CatNatTrans;

    fn src1(&self, f: &CatFunctor) -> Arc<FiniteCategory> {
        f.dom.clone()
    }

    fn tgt1(&self, f: &CatFunctor) -> Arc<FiniteCategory> {
        f.cod.clone()
    }

    fn src2(&self, u: &CatNatTrans) -> CatFunctor {
        u.src.clone()
    }

    fn tgt2(&self, u: &CatNatTrans) -> CatFunctor {
        u.tgt.clone()
    }

    fn id1(&self, x: &Arc<FiniteCategory>) -> CatFunctor {
        CatFunctor::identity(x)
    }

    fn id2(&self, f: &CatFunctor) -> CatNatTrans {
        CatNatTrans::identity(f)
    }

    fn comp1(&self, g: &CatFunctor, f: &CatFunctor) -> Option<CatFunctor> {
        g.after(f)
    }

    fn vcomp(&self, v: &CatNatTrans, u: &CatNatTrans) -> Option<CatNatTrans> {
        v.after(u)
    }

    fn hcomp(&self, v: &CatNatTrans, u: &CatNatTrans) -> Option<CatNatTrans> {
        v.beside(u)
    }

    fn inverse2(&self, u: &CatNatTrans) -> Option<CatNatTrans> {
        u.inverse()
    }

    fn describe_ob(&self, x: &Arc<FiniteCategory>) -> String {
        x.to_string()
    }

    fn describe_one(&self, _f: &CatFunctor) -> String {
        "functor".to_string()
    }

    fn describe_two(&self, _u: &CatNatTrans) -> String {
        "nat-trans".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twofun::two_cat::sign_cell_2category;

    #[test]
    fn finite_2category_world_ops() {
        let z = sign_cell_2category();
        let s = z.cell2_index("s").unwrap();
        let one = z.cell2_index("id2_id_pt").unwrap();
        assert_eq!(TwoWorld::vcomp(&z, &s, &s), Some(one));
        assert_eq!(TwoWorld::hcomp(&z, &s, &one), Some(s));
        assert_eq!(TwoWorld::inverse2(&z, &s), Some(s));
        assert!(z.is_id2(&one));
        assert!(!z.is_id2(&s));
    }

    #[test]
    fn cat_world_ops() {
        let w = CatWorld;
        let c = Arc::new(FiniteCategory::terminal());
        let idf = w.id1(&c);
        let idt = w.id2(&idf);
        assert_eq!(w.vcomp(&idt, &idt), Some(idt.clone()));
        assert_eq!(w.hcomp(&idt, &idt), Some(idt.clone()));
        assert!(w.is_id2(&idt));
    }
}
