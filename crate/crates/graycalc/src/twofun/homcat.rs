//! Enumeration of functors, transformations, and modifications between two
//! finite 2-categories, and assembly of the hom-2-category.
//!
//! Everything is brute force behind a size guard: candidate tuples are
//! generated by boundary-compatible choice per slot and filtered through the
//! exhaustive checkers, so the enumerations are correct by construction.

use super::check::{check_functor, check_modification, check_transformation};
use super::compose::{hcompose_modifications, vcompose_transformations};
use super::data::{
    identity_modification, identity_transformation, FunctorData, ModificationData, Strength,
    TransformationData,
};
use super::two_cat::{Cell1, Cell2, Finite2Category};

use super::{SizeGuard, TwoFunError};
use std::collections::BTreeMap;

/// Odometer over per-slot candidate lists.
struct Choices<'a> {
    cands: &'a [Vec<usize>],
    pick: Vec<usize>,
    started: bool,
    empty: bool,
}

impl<'a> Choices<'a> {
    fn new(cands: &'a [Vec<usize>]) -> Choices<'a> {
        Choices {
            cands,
            pick: vec![0; cands.len()],
            started: false,
            empty: cands.iter().any(|c| c.is_empty()),
        }
    }

    fn space(&self) -> u128 {
        self.cands.iter().map(|c| c.len() as u128).product()
    }
}

impl<'a> Iterator for Choices<'a> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.empty {
            return None;
        }
        if !self.started {
            self.started = true;
        } else {
            let mut i = 0;
            loop {
                if i == self.pick.len() {
                    return None;
                }
                self.pick[i] += 1;
                if self.pick[i] < self.cands[i].len() {
                    break;
                }
                self.pick[i] = 0;
                i += 1;
            }
        }
        Some(
            self.pick
                .iter()
                .zip(self.cands)
                .map(|(&i, c)| c[i])
                .collect(),
        )
    }
}

fn charge(guard: &SizeGuard, used: &mut u128, amount: u128) -> Result<(), TwoFunError> {
    *used = used.saturating_add(amount);
    if *used > guard.max_search as u128 {
        return Err(TwoFunError::SizeGuardExceeded {
            needed: *used,
            guard: guard.max_search,
        });
    }
    Ok(())
}

/// All functors `a -> b` of the given strength, in a deterministic order.
pub fn enumerate_functors(
    a: &Finite2Category,
    b: &Finite2Category,
    strength: Strength,
    guard: &SizeGuard,
) -> Result<Vec<FunctorData<Finite2Category>>, TwoFunError> {
    let mut out = Vec::new();
    let mut used: u128 = 0;
    let ob_cands: Vec<Vec<usize>> = (0..a.objects.len())
        .map(|_| (0..b.objects.len()).collect())
        .collect();
    for ob in Choices::new(&ob_cands) {
        let one_cands: Vec<Vec<usize>> = a
            .cells1
            .iter()
            .map(|c| b.hom1(ob[c.src], ob[c.tgt]))
            .collect();
        let one_choices = Choices::new(&one_cands);
        charge(guard, &mut used, one_choices.space().max(1))?;
        for one in one_choices {
            let two_cands: Vec<Vec<usize>> = a
                .cells2
                .iter()
                .map(|c| b.hom2(one[c.src], one[c.tgt]))
                .collect();
            let two_choices = Choices::new(&two_cands);
            charge(guard, &mut used, two_choices.space().max(1))?;
            for two in two_choices {
                match strength {
                    Strength::Strict => {
                        if let Some(f) =
                            FunctorData::strict(a, b, ob.clone(), one.clone(), two.clone())
                        {
                            if check_functor(a, b, &f).is_empty() {
                                out.push(f);
                            }
                        }
                    }
                    Strength::Pseudo | Strength::Lax => {
                        let keys: Vec<(usize, usize)> = a.hcomp1.keys().copied().collect();
                        let comp_cands: Vec<Vec<usize>> = keys
                            .iter()
                            .map(|&(g, f)| match b.hcomp1.get(&(one[g], one[f])) {
                                Some(&img) => {
                                    let composite = one[a.hcomp1[&(g, f)]];
                                    b.hom2(img, composite)
                                        .into_iter()
                                        .filter(|&u| {
                                            strength == Strength::Lax
                                                || b.inverse2(u).is_some()
                                        })
                                        .collect()
                                }
                                None => Vec::new(),
                            })
                            .collect();
                        let unit_cands: Vec<Vec<usize>> = (0..a.objects.len())
                            .map(|x| {
                                b.hom2(b.id1[ob[x]], one[a.id1[x]])
                                    .into_iter()
                                    .filter(|&u| {
                                        strength == Strength::Lax || b.inverse2(u).is_some()
                                    })
                                    .collect()
                            })
                            .collect();
                        let comp_choices = Choices::new(&comp_cands);
                        let unit_space = Choices::new(&unit_cands).space().max(1);
                        charge(
                            guard,
                            &mut used,
                            comp_choices.space().max(1).saturating_mul(unit_space),
                        )?;
                        for comp_pick in comp_choices {
                            for unit in Choices::new(&unit_cands) {
                                let comp: BTreeMap<(usize, usize), usize> =
                                    keys.iter().copied().zip(comp_pick.iter().copied()).collect();
                                let f = FunctorData {
                                    strength,
                                    ob: ob.clone(),
                                    one: one.clone(),
                                    two: two.clone(),
                                    comp,
                                    unit: unit.clone(),
                                };
                                if check_functor(a, b, &f).is_empty() {
                                    out.push(f);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All transformations `f ⇒ g` of the given strength.
pub fn enumerate_transformations(
    a: &Finite2Category,
    b: &Finite2Category,
    f: &FunctorData<Finite2Category>,
    g: &FunctorData<Finite2Category>,
    strength: Strength,
    guard: &SizeGuard,
) -> Result<Vec<TransformationData<Finite2Category>>, TwoFunError> {
    let mut out = Vec::new();
    let mut used: u128 = 0;
    let at_cands: Vec<Vec<usize>> = (0..a.objects.len())
        .map(|x| b.hom1(f.ob[x], g.ob[x]))
        .collect();
    let at_choices = Choices::new(&at_cands);
    charge(guard, &mut used, at_choices.space().max(1))?;
    for at in at_choices {
        let wit_cands: Vec<Vec<usize>> = a
            .cells1
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let src = b.hcomp1.get(&(g.one[j], at[c.src]));
                let tgt = b.hcomp1.get(&(at[c.tgt], f.one[j]));
                match (src, tgt) {
                    (Some(&s), Some(&t)) => b
                        .hom2(s, t)
                        .into_iter()
                        .filter(|&u| match strength {
                            Strength::Lax => true,
                            Strength::Pseudo => b.inverse2(u).is_some(),
                            Strength::Strict => u == b.id2[s] && s == t,
                        })
                        .collect(),
                    _ => Vec::new(),
                }
            })
            .collect();
        let wit_choices = Choices::new(&wit_cands);
        charge(guard, &mut used, wit_choices.space().max(1))?;
        for wit in wit_choices {
            let t = TransformationData {
                strength,
                source: f.clone(),
                target: g.clone(),
                at: at.clone(),
                wit,
            };
            if check_transformation(a, b, &t).is_empty() {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// All modifications `s ⇛ t`.
pub fn enumerate_modifications(
    a: &Finite2Category,
    b: &Finite2Category,
    s: &TransformationData<Finite2Category>,
    t: &TransformationData<Finite2Category>,
    guard: &SizeGuard,
) -> Result<Vec<ModificationData<Finite2Category>>, TwoFunError> {
    let mut out = Vec::new();
    let mut used: u128 = 0;
    let cands: Vec<Vec<usize>> = (0..a.objects.len())
        .map(|x| b.hom2(s.at[x], t.at[x]))
        .collect();
    let choices = Choices::new(&cands);
    charge(guard, &mut used, choices.space().max(1))?;
    for at in choices {
        let m = ModificationData {
            source: s.clone(),
            target: t.clone(),
            at,
        };
        if check_modification(a, b, &m).is_empty() {
            out.push(m);
        }
    }
    Ok(out)
}

/// The hom-2-category hom(a, b): objects are functors of the given strength,
/// 1-cells transformations, 2-cells modifications, with vertical composition
/// of transformations as horizontal composition of 1-cells.
pub fn hom_2category(
    a: &Finite2Category,
    b: &Finite2Category,
    strength: Strength,
    guard: &SizeGuard,
) -> Result<Finite2Category, TwoFunError> {
    if strength == Strength::Lax {
        return Err(TwoFunError::NotPseudo(
            "hom-2-category is assembled for strict or pseudo strength only".to_string(),
        ));
    }
    let functors = enumerate_functors(a, b, strength, guard)?;
    // 1-cells: transformations grouped by (source functor, target functor)
    let mut trans: Vec<(usize, usize, TransformationData<Finite2Category>)> = Vec::new();
    for (i, fi) in functors.iter().enumerate() {
        for (j, fj) in functors.iter().enumerate() {
            for t in enumerate_transformations(a, b, fi, fj, strength, guard)? {
                trans.push((i, j, t));
            }
        }
    }
    // 2-cells: modifications grouped by parallel transformation pairs
    let mut mods: Vec<(usize, usize, ModificationData<Finite2Category>)> = Vec::new();
    for (p, (ps, pt, s)) in trans.iter().enumerate() {
        for (q, (qs, qt, t)) in trans.iter().enumerate() {
            if ps != qs || pt != qt {
                continue;
            }
            for m in enumerate_modifications(a, b, s, t, guard)? {
                mods.push((p, q, m));
            }
        }
    }

    let find_trans = |t: &TransformationData<Finite2Category>| -> Result<usize, TwoFunError> {
        trans
            .iter()
            .position(|(_, _, u)| u == t)
            .ok_or_else(|| TwoFunError::Malformed("composite transformation not enumerated".into()))
    };
    let find_mod = |m: &ModificationData<Finite2Category>| -> Result<usize, TwoFunError> {
        mods.iter()
            .position(|(_, _, u)| u == m)
            .ok_or_else(|| TwoFunError::Malformed("composite modification not enumerated".into()))
    };
    let with_strength = |mut t: TransformationData<Finite2Category>| {
        t.strength = strength;
        t
    };

    let mut result = Finite2Category {
        objects: (0..functors.len()).map(|i| format!("F{i}")).collect(),
        cells1: trans
            .iter()
            .enumerate()
            .map(|(i, (s, t, _))| Cell1 {
                name: format!("t{i}"),
                src: *s,
                tgt: *t,
            })
            .collect(),
        cells2: mods
            .iter()
            .enumerate()
            .map(|(i, (s, t, _))| Cell2 {
                name: format!("m{i}"),
                src: *s,
                tgt: *t,
            })
            .collect(),
        ..Default::default()
    };

    for f in &functors {
        let id = with_strength(identity_transformation(a, b, f));
        result.id1.push(find_trans(&id)?);
    }
    for (_, _, t) in &trans {
        let id = identity_modification(b, t);
        result.id2.push(find_mod(&id)?);
    }
    // vertical composition of 2-cells: modifications along shared transformations
    for (q, (_, _, m2)) in mods.iter().enumerate() {
        for (p, (_, _, m1)) in mods.iter().enumerate() {
            if m1.target != m2.source {
                continue;
            }
            let composite = super::compose::vcompose_modifications(b, m1, m2)
                .ok_or_else(|| TwoFunError::Malformed("modifications do not compose".into()))?;
            result.vcomp.insert((q, p), find_mod(&composite)?);
        }
    }
    // horizontal composition of 1-cells: vertical composition of transformations
    for (j, (js, _, t2)) in trans.iter().enumerate() {
        for (i, (_, it, t1)) in trans.iter().enumerate() {
            if it != js {
                continue;
            }
            let composite = with_strength(vcompose_transformations(a, b, t1, t2)?);
            result.hcomp1.insert((j, i), find_trans(&composite)?);
        }
    }
    // horizontal composition of 2-cells
    for (q, (qs, _, m2)) in mods.iter().enumerate() {
        for (p, (_, pt, m1)) in mods.iter().enumerate() {
            let (p_src_tgt, q_src_src) = (trans[*pt].1, trans[*qs].0);
            if p_src_tgt != q_src_src {
                continue;
            }
            let mut composite = hcompose_modifications(a, b, m1, m2)?;
            composite.source = with_strength(composite.source);
            composite.target = with_strength(composite.target);
            result.hcomp2.insert((q, p), find_mod(&composite)?);
        }
    }
    Ok(result)
}
