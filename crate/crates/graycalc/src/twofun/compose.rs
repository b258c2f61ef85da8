//! Composition of functors and transformations.
//!
//! Vertical composition of transformations along a shared middle functor is
//! strict: the two naturality squares paste in a single order and the result
//! always satisfies the axioms when the inputs do.
//!
//! Composing transformations across functor composition is where the Gray
//! phenomenon lives: for η: F ⇒ G: A → B and θ: F′ ⇒ G′: B → C there are two
//! whiskered composites F′F ⇒ G′G, one routing θ's component through F and
//! one through G. They differ in general, and for pseudo inputs they are
//! connected by an invertible mediating modification whose components are θ's
//! witnesses taken at η's components. Building either composite decomposes
//! G′(η(y) ∘ F(f)) (resp. F′(...)) into a composite image, which needs an
//! inverse comparison cell — for lax functors that inverse may not exist, and
//! the failure is reported rather than papered over.

use super::check::{check_modification, check_transformation};
use super::data::{FunctorData, ModificationData, Strength, TransformationData};
use super::two_cat::Finite2Category;
use super::world::TwoWorld;
use super::TwoFunError;

/// Composite of functor data: `second` applied after `first`.
/// `first` maps `a` into `b`; `second` maps `b` into the world `w`.
pub fn compose_functors<W: TwoWorld>(
    a: &Finite2Category,
    b: &Finite2Category,
    first: &FunctorData<Finite2Category>,
    w: &W,
    second: &FunctorData<W>,
) -> Result<FunctorData<W>, TwoFunError> {
    if first.ob.len() != a.objects.len() || second.ob.len() != b.objects.len() {
        return Err(TwoFunError::Malformed(
            "functor tables do not match the stated domains".to_string(),
        ));
    }
    let ob: Vec<W::Ob> = first.ob.iter().map(|&x| second.ob[x].clone()).collect();
    let one: Vec<W::One> = first.one.iter().map(|&f| second.one[f].clone()).collect();
    let two: Vec<W::Two> = first.two.iter().map(|&u| second.two[u].clone()).collect();
    let mut comp = std::collections::BTreeMap::new();
    for (&(g, f), phi1) in &first.comp {
        let phi2 = second
            .comp
            .get(&(first.one[g], first.one[f]))
            .ok_or_else(|| TwoFunError::Malformed("missing comparison cell".to_string()))?;
        let cell = w
            .vcomp(&second.two[*phi1], phi2)
            .ok_or_else(|| TwoFunError::Malformed("comparison cells do not paste".to_string()))?;
        comp.insert((g, f), cell);
    }
    let mut unit = Vec::new();
    for (x, u1) in first.unit.iter().enumerate() {
        let u2 = &second.unit[first.ob[x]];
        let cell = w
            .vcomp(&second.two[*u1], u2)
            .ok_or_else(|| TwoFunError::Malformed("unit cells do not paste".to_string()))?;
        unit.push(cell);
    }
    Ok(FunctorData {
        strength: first.strength.join(second.strength),
        ob,
        one,
        two,
        comp,
        unit,
    })
}

/// Vertical composite of transformations along a shared middle functor:
/// η: F ⇒ G then θ: G ⇒ H gives θ·η: F ⇒ H with components θ(x)∘η(x).
pub fn vcompose_transformations<W: TwoWorld>(
    dom: &Finite2Category,
    w: &W,
    eta: &TransformationData<W>,
    theta: &TransformationData<W>,
) -> Result<TransformationData<W>, TwoFunError> {
    if eta.target != theta.source {
        return Err(TwoFunError::MiddleFunctorMismatch(
            "target functor of the first transformation differs from the source of the second"
                .to_string(),
        ));
    }
    let mut at = Vec::new();
    for x in 0..dom.objects.len() {
        at.push(w.comp1(&theta.at[x], &eta.at[x]).ok_or_else(|| {
            TwoFunError::Malformed(format!("components do not compose at {}", dom.objects[x]))
        })?);
    }
    let mut wit = Vec::new();
    for (j, c) in dom.cells1.iter().enumerate() {
        let x = c.src;
        let y = c.tgt;
        let lower = w
            .hcomp(&w.id2(&theta.at[y]), &eta.wit[j])
            .and_then(|upper| {
                w.hcomp(&theta.wit[j], &w.id2(&eta.at[x]))
                    .and_then(|first| w.vcomp(&upper, &first))
            });
        wit.push(lower.ok_or_else(|| {
            TwoFunError::Malformed(format!("witnesses do not paste at {}", c.name))
        })?);
    }
    Ok(TransformationData {
        strength: eta.strength.join(theta.strength),
        source: eta.source.clone(),
        target: theta.target.clone(),
        at,
        wit,
    })
}

/// Horizontal composite of modifications over vertically composed
/// transformations: components compose horizontally in the world.
pub fn hcompose_modifications<W: TwoWorld>(
    dom: &Finite2Category,
    w: &W,
    inner: &ModificationData<W>,
    outer: &ModificationData<W>,
) -> Result<ModificationData<W>, TwoFunError> {
    let source = vcompose_transformations(dom, w, &inner.source, &outer.source)?;
    let target = vcompose_transformations(dom, w, &inner.target, &outer.target)?;
    let at = inner
        .at
        .iter()
        .zip(&outer.at)
        .map(|(i, o)| w.hcomp(o, i))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| TwoFunError::Malformed("components do not compose".to_string()))?;
    Ok(ModificationData { source, target, at })
}

/// Which whiskered route a cross-hom composite takes: `LeftFirst` fires θ at
/// the source end (components G′(η(x)) ∘ θ(F(x))), `RightFirst` fires it at
/// the target end (components θ(G(x)) ∘ F′(η(x))).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PastingOrder {
    LeftFirst,
    RightFirst,
}

impl std::fmt::Display for PastingOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PastingOrder::LeftFirst => write!(f, "leftfirst"),
            PastingOrder::RightFirst => write!(f, "rightfirst"),
        }
    }
}

fn middle_check(
    a: &Finite2Category,
    b: &Finite2Category,
    eta: &TransformationData<Finite2Category>,
    theta: &TransformationData<Finite2Category>,
) -> Result<(), TwoFunError> {
    let eta_fits = eta.at.len() == a.objects.len()
        && eta.source.ob.len() == a.objects.len()
        && eta.source.ob.iter().all(|&x| x < b.objects.len())
        && eta.at.iter().all(|&f| f < b.cells1.len());
    let theta_fits = theta.at.len() == b.objects.len() && theta.source.ob.len() == b.objects.len();
    if !eta_fits || !theta_fits {
        return Err(TwoFunError::MiddleFunctorMismatch(
            "the first transformation's codomain is not the second's domain".to_string(),
        ));
    }
    Ok(())
}

/// One of the two whiskered composites of η: F ⇒ G: A → B with
/// θ: F′ ⇒ G′: B → C, a transformation F′F ⇒ G′G: A → C.
///
/// The result is re-checked; a lax functor whose comparison cell cannot be
/// inverted, or a composite failing any axiom, is returned as
/// `CompositeNotCoherent` with the full report.
pub fn compose_transformations(
    a: &Finite2Category,
    b: &Finite2Category,
    c: &Finite2Category,
    eta: &TransformationData<Finite2Category>,
    theta: &TransformationData<Finite2Category>,
    order: PastingOrder,
) -> Result<TransformationData<Finite2Category>, TwoFunError> {
    middle_check(a, b, eta, theta)?;
    let f = &eta.source;
    let g = &eta.target;
    let fp = &theta.source;
    let gp = &theta.target;
    let source = compose_functors(a, b, f, c, fp)?;
    let target = compose_functors(a, b, g, c, gp)?;
    let strength = eta
        .strength
        .join(theta.strength)
        .join(fp.strength)
        .join(gp.strength);

    let vc = |v: Option<usize>, u: Option<usize>| -> Option<usize> {
        c.vcomp.get(&(v?, u?)).copied()
    };
    let hc = |v: Option<usize>, u: Option<usize>| -> Option<usize> {
        c.hcomp2.get(&(v?, u?)).copied()
    };

    let mut at = Vec::new();
    let mut wit = Vec::new();
    for x in 0..a.objects.len() {
        let comp = match order {
            PastingOrder::LeftFirst => c.hcomp1.get(&(gp.one[eta.at[x]], theta.at[f.ob[x]])),
            PastingOrder::RightFirst => c.hcomp1.get(&(theta.at[g.ob[x]], fp.one[eta.at[x]])),
        };
        at.push(*comp.ok_or_else(|| {
            TwoFunError::Malformed(format!("components do not compose at {}", a.objects[x]))
        })?);
    }
    let mut report = crate::report::ValidationReport::new();
    for (j, cellj) in a.cells1.iter().enumerate() {
        let x = cellj.src;
        let y = cellj.tgt;
        let gj = g.one[j];
        let fj = f.one[j];
        let ex = eta.at[x];
        let ey = eta.at[y];
        let composite = match order {
            PastingOrder::LeftFirst => {
                let th_fx = theta.at[f.ob[x]];
                let idth = Some(c.id2[th_fx]);
                let s1 = hc(gp.comp.get(&(gj, ex)).copied(), idth);
                let s2 = hc(Some(gp.two[eta.wit[j]]), idth);
                let dec = gp.comp.get(&(ey, fj)).and_then(|&phi| c.inverse2(phi));
                if dec.is_none() {
                    report.add(
                        "missing-inverse",
                        format!("1-cell {}", cellj.name),
                        "comparison cell of the outer target functor is not invertible",
                    );
                }
                let s3 = hc(dec, idth);
                let s4 = hc(Some(c.id2[gp.one[ey]]), Some(theta.wit[fj]));
                vc(s4, vc(s3, vc(s2, s1)))
            }
            PastingOrder::RightFirst => {
                let th_gy = theta.at[g.ob[y]];
                let idth = Some(c.id2[th_gy]);
                let s1 = hc(Some(theta.wit[gj]), Some(c.id2[fp.one[ex]]));
                let s2 = hc(idth, fp.comp.get(&(gj, ex)).copied());
                let s3 = hc(idth, Some(fp.two[eta.wit[j]]));
                let dec = fp.comp.get(&(ey, fj)).and_then(|&phi| c.inverse2(phi));
                if dec.is_none() {
                    report.add(
                        "missing-inverse",
                        format!("1-cell {}", cellj.name),
                        "comparison cell of the outer source functor is not invertible",
                    );
                }
                let s4 = hc(idth, dec);
                vc(s4, vc(s3, vc(s2, s1)))
            }
        };
        match composite {
            Some(cell) => wit.push(cell),
            None => {
                report.add(
                    "witness-pasting",
                    format!("1-cell {}", cellj.name),
                    "witness pasting does not evaluate",
                );
                wit.push(0);
            }
        }
    }
    if !report.is_empty() {
        return Err(TwoFunError::CompositeNotCoherent(report.finish()));
    }
    let result = TransformationData {
        strength,
        source,
        target,
        at,
        wit,
    };
    let recheck = check_transformation(a, c, &result);
    if !recheck.is_empty() {
        return Err(TwoFunError::CompositeNotCoherent(recheck));
    }
    Ok(result)
}

/// The invertible modification from the `LeftFirst` to the `RightFirst`
/// composite of two pseudo transformations, with components θ's witnesses at
/// η's components.
pub fn mediating_modification(
    a: &Finite2Category,
    b: &Finite2Category,
    c: &Finite2Category,
    eta: &TransformationData<Finite2Category>,
    theta: &TransformationData<Finite2Category>,
) -> Result<ModificationData<Finite2Category>, TwoFunError> {
    if eta.strength == Strength::Lax || theta.strength == Strength::Lax {
        return Err(TwoFunError::NotPseudo(
            "mediating modification requires pseudo (or strict) transformations".to_string(),
        ));
    }
    let left = compose_transformations(a, b, c, eta, theta, PastingOrder::LeftFirst)?;
    let right = compose_transformations(a, b, c, eta, theta, PastingOrder::RightFirst)?;
    let at: Vec<usize> = (0..a.objects.len())
        .map(|x| theta.wit[eta.at[x]])
        .collect();
    let m = ModificationData {
        source: left,
        target: right,
        at,
    };
    let recheck = check_modification(a, c, &m);
    if !recheck.is_empty() {
        return Err(TwoFunError::CompositeNotCoherent(recheck));
    }
    Ok(m)
}

/// Componentwise vertical inverse of a modification whose components are all
/// invertible.
pub fn invert_modification<W: TwoWorld>(
    w: &W,
    m: &ModificationData<W>,
) -> Option<ModificationData<W>> {
    let at = m
        .at
        .iter()
        .map(|c| w.inverse2(c))
        .collect::<Option<Vec<_>>>()?;
    Some(ModificationData {
        source: m.target.clone(),
        target: m.source.clone(),
        at,
    })
}

/// Componentwise vertical composite of modifications η ⇛ θ ⇛ ρ.
pub fn vcompose_modifications<W: TwoWorld>(
    w: &W,
    first: &ModificationData<W>,
    second: &ModificationData<W>,
) -> Option<ModificationData<W>> {
    if first.target != second.source {
        return None;
    }
    let at = first
        .at
        .iter()
        .zip(&second.at)
        .map(|(u, v)| w.vcomp(v, u))
        .collect::<Option<Vec<_>>>()?;
    Some(ModificationData {
        source: first.source.clone(),
        target: second.target.clone(),
        at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twofun::check::check_functor;
    use crate::twofun::data::{identity_functor, identity_transformation};
    use crate::twofun::fixtures::{
        arrow_to_sign_functor, arrow_to_sign_transformation, sign_endofunctor,
        sign_transformation,
    };
    use crate::twofun::two_cat::{sign_cell_2category, walking_arrow_2category};

    #[test]
    fn functor_composition_preserves_coherence() {
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let f = arrow_to_sign_functor(true, false);
        let e = sign_endofunctor(true, true);
        let ef = compose_functors(&a, &z, &f, &z, &e).unwrap();
        assert!(check_functor(&a, &z, &ef).is_empty());
    }

    #[test]
    fn vertical_composite_with_identity_is_unchanged() {
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let f = arrow_to_sign_functor(true, true);
        let eta = arrow_to_sign_transformation(&f, &f, true);
        let idf = identity_transformation(&a, &z, &f);
        let left = vcompose_transformations(&a, &z, &idf, &eta).unwrap();
        assert_eq!(left.at, eta.at);
        assert_eq!(left.wit, eta.wit);
        let right = vcompose_transformations(&a, &z, &eta, &idf).unwrap();
        assert_eq!(right.at, eta.at);
        assert_eq!(right.wit, eta.wit);
    }

    #[test]
    fn vertical_composite_of_two_pseudo_transformations_passes() {
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let f = arrow_to_sign_functor(false, false);
        let g = arrow_to_sign_functor(true, true);
        let eta = arrow_to_sign_transformation(&f, &g, true);
        let theta = arrow_to_sign_transformation(&g, &f, false);
        let comp = vcompose_transformations(&a, &z, &eta, &theta).unwrap();
        assert!(check_transformation(&a, &z, &comp).is_empty());
    }

    #[test]
    fn middle_functor_mismatch_detected() {
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let f = arrow_to_sign_functor(false, false);
        let g = arrow_to_sign_functor(true, true);
        let eta = arrow_to_sign_transformation(&f, &g, false);
        let err = vcompose_transformations(&a, &z, &eta, &eta).unwrap_err();
        assert!(matches!(err, TwoFunError::MiddleFunctorMismatch(_)));
    }

    #[test]
    fn both_whiskered_composites_pass_for_pseudo_inputs() {
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let f = arrow_to_sign_functor(true, true);
        let eta = arrow_to_sign_transformation(&f, &f, true);
        let fp = sign_endofunctor(true, false);
        let gp = sign_endofunctor(true, true);
        let theta = sign_transformation(&fp, &gp);
        for order in [PastingOrder::LeftFirst, PastingOrder::RightFirst] {
            let comp = compose_transformations(&a, &z, &z, &eta, &theta, order).unwrap();
            assert!(check_transformation(&a, &z, &comp).is_empty());
        }
    }

    #[test]
    fn whiskered_composite_with_identity_keeps_components() {
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let f = arrow_to_sign_functor(true, true);
        let eta = arrow_to_sign_transformation(&f, &f, true);
        let idz = identity_functor(&z);
        let idt = identity_transformation(&z, &z, &idz);
        let comp =
            compose_transformations(&a, &z, &z, &eta, &idt, PastingOrder::LeftFirst).unwrap();
        assert_eq!(comp.at, eta.at);
        assert_eq!(comp.wit, eta.wit);
    }

    #[test]
    fn strict_inputs_give_a_strict_composite() {
        // strict transformations between strict functors on the walking arrow
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let f = {
            let mut f = arrow_to_sign_functor(false, false);
            f.strength = Strength::Strict;
            f
        };
        let eta = {
            let mut t = arrow_to_sign_transformation(&f, &f, false);
            t.strength = Strength::Strict;
            t
        };
        assert!(check_transformation(&a, &z, &eta).is_empty());
        let idz = {
            let mut g = identity_functor(&z);
            g.strength = Strength::Strict;
            g
        };
        let theta = identity_transformation(&z, &z, &idz);
        let comp =
            compose_transformations(&a, &z, &z, &eta, &theta, PastingOrder::RightFirst).unwrap();
        assert_eq!(comp.strength, Strength::Strict);
        assert!(check_transformation(&a, &z, &comp).is_empty());
    }

    #[test]
    fn mediating_modification_is_invertible_and_cancels() {
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let s = z.cell2_index("s").unwrap();
        let f = arrow_to_sign_functor(true, true);
        let eta = arrow_to_sign_transformation(&f, &f, true);
        let fp = sign_endofunctor(true, false);
        let gp = sign_endofunctor(true, true);
        let theta = sign_transformation(&fp, &gp);
        let m = mediating_modification(&a, &z, &z, &eta, &theta).unwrap();
        // the walking-arrow example has genuinely non-identity components
        assert_eq!(m.at, vec![s, s]);
        assert!(check_modification(&a, &z, &m).is_empty());
        let inv = invert_modification(&z, &m).unwrap();
        assert!(check_modification(&a, &z, &inv).is_empty());
        let round = vcompose_modifications(&z, &m, &inv).unwrap();
        let idm = super::super::data::identity_modification(&z, &m.source);
        assert_eq!(round, idm);
    }

    #[test]
    fn mediator_of_a_strict_outer_transformation_is_identity() {
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let f = arrow_to_sign_functor(true, true);
        let eta = arrow_to_sign_transformation(&f, &f, true);
        let fp = sign_endofunctor(true, false);
        let theta = sign_transformation(&fp, &fp);
        // equal unit cells force the identity witness, hence identity mediator
        let m = mediating_modification(&a, &z, &z, &eta, &theta).unwrap();
        assert!(m.at.iter().all(|&c| z.is_id2(&c)));
    }

    #[test]
    fn lax_data_rejected_by_mediator() {
        let a = walking_arrow_2category();
        let z = sign_cell_2category();
        let f = arrow_to_sign_functor(true, true);
        let mut eta = arrow_to_sign_transformation(&f, &f, true);
        eta.strength = Strength::Lax;
        let fp = sign_endofunctor(true, false);
        let theta = sign_transformation(&fp, &fp);
        assert!(matches!(
            mediating_modification(&a, &z, &z, &eta, &theta),
            Err(TwoFunError::NotPseudo(_))
        ));
    }
}
