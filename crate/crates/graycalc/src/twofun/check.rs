//! Exhaustive coherence checkers.
//!
//! Every axiom equation is evaluated on every instance over the finite
//! domain. A report is empty iff every instance holds; nothing is assumed
//! from the data's declared strength beyond the strength-specific extras
//! (identity comparison cells for strict, invertible for pseudo).

use super::data::{FunctorData, ModificationData, Strength, TransformationData};
use super::two_cat::Finite2Category;
use super::world::TwoWorld;
use crate::report::ValidationReport;

fn vc<W: TwoWorld>(w: &W, v: Option<W::Two>, u: Option<W::Two>) -> Option<W::Two> {
    w.vcomp(&v?, &u?)
}

fn hc<W: TwoWorld>(w: &W, v: Option<W::Two>, u: Option<W::Two>) -> Option<W::Two> {
    w.hcomp(&v?, &u?)
}

fn expect_eq<W: TwoWorld>(
    r: &mut ValidationReport,
    w: &W,
    code: &str,
    subject: String,
    lhs: Option<W::Two>,
    rhs: Option<W::Two>,
) {
    match (lhs, rhs) {
        (Some(a), Some(b)) => {
            if a != b {
                r.add(
                    code,
                    subject,
                    format!(
                        "sides differ: {} vs {}",
                        w.describe_two(&a),
                        w.describe_two(&b)
                    ),
                );
            }
        }
        _ => r.add(code, subject, "a side does not evaluate (non-composable cells)"),
    }
}

/// Verify all lax-functor axioms of `f` over the finite domain, plus the
/// strength-specific conditions on the comparison cells.
pub fn check_functor<W: TwoWorld>(
    dom: &Finite2Category,
    w: &W,
    f: &FunctorData<W>,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    if f.ob.len() != dom.objects.len()
        || f.one.len() != dom.cells1.len()
        || f.two.len() != dom.cells2.len()
        || f.unit.len() != dom.objects.len()
    {
        r.add("functor-tables", "functor", "cell map tables have wrong lengths");
        return r.finish();
    }
    for key in dom.hcomp1.keys() {
        if !f.comp.contains_key(key) {
            r.add(
                "functor-tables",
                format!(
                    "comparison ({}, {})",
                    dom.cells1[key.0].name, dom.cells1[key.1].name
                ),
                "missing comparison cell",
            );
        }
    }
    if !r.is_empty() {
        return r.finish();
    }

    // cell maps respect boundaries
    for (j, c) in dom.cells1.iter().enumerate() {
        if w.src1(&f.one[j]) != f.ob[c.src] || w.tgt1(&f.one[j]) != f.ob[c.tgt] {
            r.add(
                "functor-boundaries",
                c.name.clone(),
                "image 1-cell has wrong endpoints",
            );
        }
    }
    for (u, c) in dom.cells2.iter().enumerate() {
        if w.src2(&f.two[u]) != f.one[c.src] || w.tgt2(&f.two[u]) != f.one[c.tgt] {
            r.add(
                "functor-boundaries",
                c.name.clone(),
                "image 2-cell has wrong endpoints",
            );
        }
    }
    for (&(g, j), phi) in &f.comp {
        let gf = dom.hcomp1[&(g, j)];
        match w.comp1(&f.one[g], &f.one[j]) {
            None => r.add(
                "functor-boundaries",
                format!("comparison ({}, {})", dom.cells1[g].name, dom.cells1[j].name),
                "images do not compose",
            ),
            Some(src) => {
                if w.src2(phi) != src || w.tgt2(phi) != f.one[gf] {
                    r.add(
                        "functor-boundaries",
                        format!("comparison ({}, {})", dom.cells1[g].name, dom.cells1[j].name),
                        "comparison cell has wrong endpoints",
                    );
                }
            }
        }
    }
    for (x, u) in f.unit.iter().enumerate() {
        let idfx = w.id1(&f.ob[x]);
        if w.src2(u) != idfx || w.tgt2(u) != f.one[dom.id1[x]] {
            r.add(
                "functor-boundaries",
                format!("unit {}", dom.objects[x]),
                "unit cell has wrong endpoints",
            );
        }
    }
    if !r.is_empty() {
        // boundary failures poison the equation checks below
        return r.finish();
    }

    // the 2-cell map is a functor on hom-categories
    for (j, &i2) in dom.id2.iter().enumerate() {
        if f.two[i2] != w.id2(&f.one[j]) {
            r.add(
                "functoriality",
                format!("id2 {}", dom.cells1[j].name),
                "identity 2-cell not preserved",
            );
        }
    }
    for (&(v, u), &vu) in &dom.vcomp {
        expect_eq(
            &mut r,
            w,
            "functoriality",
            format!("{} . {}", dom.cells2[v].name, dom.cells2[u].name),
            Some(f.two[vu].clone()),
            vc(w, Some(f.two[v].clone()), Some(f.two[u].clone())),
        );
    }

    // naturality of the comparison cells in both arguments
    for (&(v, u), &vu) in &dom.hcomp2 {
        let g = dom.two_src(v);
        let gp = dom.two_tgt(v);
        let j = dom.two_src(u);
        let jp = dom.two_tgt(u);
        let lhs = vc(
            w,
            f.comp.get(&(gp, jp)).cloned(),
            hc(w, Some(f.two[v].clone()), Some(f.two[u].clone())),
        );
        let rhs = vc(w, Some(f.two[vu].clone()), f.comp.get(&(g, j)).cloned());
        expect_eq(
            &mut r,
            w,
            "comparison-naturality",
            format!("{} * {}", dom.cells2[v].name, dom.cells2[u].name),
            lhs,
            rhs,
        );
    }

    // associativity coherence on composable triples
    for h in 0..dom.cells1.len() {
        for g in 0..dom.cells1.len() {
            if dom.one_tgt(g) != dom.one_src(h) {
                continue;
            }
            let hg = dom.hcomp1[&(h, g)];
            for j in 0..dom.cells1.len() {
                if dom.one_tgt(j) != dom.one_src(g) {
                    continue;
                }
                let gj = dom.hcomp1[&(g, j)];
                let lhs = vc(
                    w,
                    f.comp.get(&(h, gj)).cloned(),
                    hc(
                        w,
                        Some(w.id2(&f.one[h])),
                        f.comp.get(&(g, j)).cloned(),
                    ),
                );
                let rhs = vc(
                    w,
                    f.comp.get(&(hg, j)).cloned(),
                    hc(
                        w,
                        f.comp.get(&(h, g)).cloned(),
                        Some(w.id2(&f.one[j])),
                    ),
                );
                expect_eq(
                    &mut r,
                    w,
                    "assoc-coherence",
                    format!(
                        "{} * {} * {}",
                        dom.cells1[h].name, dom.cells1[g].name, dom.cells1[j].name
                    ),
                    lhs,
                    rhs,
                );
            }
        }
    }

    // unit coherence
    for (j, c) in dom.cells1.iter().enumerate() {
        let ida = dom.id1[c.src];
        let idb = dom.id1[c.tgt];
        let idfj = w.id2(&f.one[j]);
        let left = vc(
            w,
            f.comp.get(&(idb, j)).cloned(),
            hc(w, Some(f.unit[c.tgt].clone()), Some(idfj.clone())),
        );
        expect_eq(
            &mut r,
            w,
            "unit-coherence",
            format!("left unit at {}", c.name),
            left,
            Some(idfj.clone()),
        );
        let right = vc(
            w,
            f.comp.get(&(j, ida)).cloned(),
            hc(w, Some(idfj.clone()), Some(f.unit[c.src].clone())),
        );
        expect_eq(
            &mut r,
            w,
            "unit-coherence",
            format!("right unit at {}", c.name),
            right,
            Some(idfj),
        );
    }

    // strength-specific conditions
    match f.strength {
        Strength::Lax => {}
        Strength::Pseudo => {
            for (&(g, j), phi) in &f.comp {
                if w.inverse2(phi).is_none() {
                    r.add(
                        "strength",
                        format!("comparison ({}, {})", dom.cells1[g].name, dom.cells1[j].name),
                        "pseudo functor has a non-invertible comparison cell",
                    );
                }
            }
            for (x, u) in f.unit.iter().enumerate() {
                if w.inverse2(u).is_none() {
                    r.add(
                        "strength",
                        format!("unit {}", dom.objects[x]),
                        "pseudo functor has a non-invertible unit cell",
                    );
                }
            }
        }
        Strength::Strict => {
            for (&(g, j), phi) in &f.comp {
                if !w.is_id2(phi) {
                    r.add(
                        "strength",
                        format!("comparison ({}, {})", dom.cells1[g].name, dom.cells1[j].name),
                        "strict functor has a non-identity comparison cell",
                    );
                }
            }
            for (x, u) in f.unit.iter().enumerate() {
                if !w.is_id2(u) {
                    r.add(
                        "strength",
                        format!("unit {}", dom.objects[x]),
                        "strict functor has a non-identity unit cell",
                    );
                }
            }
        }
    }
    r.finish()
}

/// Verify all transformation axioms of `t` over the finite domain, plus the
/// strength-specific conditions on the witnesses.
pub fn check_transformation<W: TwoWorld>(
    dom: &Finite2Category,
    w: &W,
    t: &TransformationData<W>,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    let f = &t.source;
    let g = &t.target;
    if t.at.len() != dom.objects.len()
        || t.wit.len() != dom.cells1.len()
        || f.ob.len() != dom.objects.len()
        || g.ob.len() != dom.objects.len()
        || f.one.len() != dom.cells1.len()
        || g.one.len() != dom.cells1.len()
    {
        r.add("transformation-tables", "transformation", "tables have wrong lengths");
        return r.finish();
    }

    for (x, c) in t.at.iter().enumerate() {
        if w.src1(c) != f.ob[x] || w.tgt1(c) != g.ob[x] {
            r.add(
                "transformation-boundaries",
                format!("component {}", dom.objects[x]),
                "component does not run F(x) -> G(x)",
            );
        }
    }
    for (j, c) in dom.cells1.iter().enumerate() {
        let src = w.comp1(&g.one[j], &t.at[c.src]);
        let tgt = w.comp1(&t.at[c.tgt], &f.one[j]);
        match (src, tgt) {
            (Some(s), Some(tg)) => {
                if w.src2(&t.wit[j]) != s || w.tgt2(&t.wit[j]) != tg {
                    r.add(
                        "transformation-boundaries",
                        format!("witness {}", c.name),
                        "witness does not run G(f)∘η(x) => η(y)∘F(f)",
                    );
                }
            }
            _ => r.add(
                "transformation-boundaries",
                format!("witness {}", c.name),
                "witness boundary does not compose",
            ),
        }
    }
    if !r.is_empty() {
        return r.finish();
    }

    // naturality in 2-cells: for α: f ⇒ g,
    // wit(g) ∘ (G(α) ∗ id) = (id ∗ F(α)) ∘ wit(f)
    for (u, c) in dom.cells2.iter().enumerate() {
        let j = c.src;
        let k = c.tgt;
        let x = dom.one_src(j);
        let y = dom.one_tgt(j);
        let lhs = vc(
            w,
            Some(t.wit[k].clone()),
            hc(w, Some(g.two[u].clone()), Some(w.id2(&t.at[x]))),
        );
        let rhs = vc(
            w,
            hc(w, Some(w.id2(&t.at[y])), Some(f.two[u].clone())),
            Some(t.wit[j].clone()),
        );
        expect_eq(&mut r, w, "witness-naturality", c.name.clone(), lhs, rhs);
    }

    // unit axiom: wit(id_x) ∘ (unit_G(x) ∗ id) = id ∗ unit_F(x)
    for x in 0..dom.objects.len() {
        let idx = dom.id1[x];
        let lhs = vc(
            w,
            Some(t.wit[idx].clone()),
            hc(w, Some(g.unit[x].clone()), Some(w.id2(&t.at[x]))),
        );
        let rhs = hc(w, Some(w.id2(&t.at[x])), Some(f.unit[x].clone()));
        expect_eq(
            &mut r,
            w,
            "unit-axiom",
            format!("object {}", dom.objects[x]),
            lhs,
            rhs,
        );
    }

    // composition axiom on composable pairs g∘f:
    // wit(g∘f) ∘ (φ_G(g,f) ∗ id) =
    //   (id ∗ φ_F(g,f)) ∘ (wit(g) ∗ id_{F f}) ∘ (id_{G g} ∗ wit(f))
    for (&(k, j), &kj) in &dom.hcomp1 {
        let x = dom.one_src(j);
        let z = dom.one_tgt(k);
        let lhs = vc(
            w,
            Some(t.wit[kj].clone()),
            hc(w, g.comp.get(&(k, j)).cloned(), Some(w.id2(&t.at[x]))),
        );
        let inner = vc(
            w,
            hc(w, Some(t.wit[k].clone()), Some(w.id2(&f.one[j]))),
            hc(w, Some(w.id2(&g.one[k])), Some(t.wit[j].clone())),
        );
        let rhs = vc(
            w,
            hc(w, Some(w.id2(&t.at[z])), f.comp.get(&(k, j)).cloned()),
            inner,
        );
        expect_eq(
            &mut r,
            w,
            "composition-axiom",
            format!("{} . {}", dom.cells1[k].name, dom.cells1[j].name),
            lhs,
            rhs,
        );
    }

    match t.strength {
        Strength::Lax => {}
        Strength::Pseudo => {
            for (j, c) in dom.cells1.iter().enumerate() {
                if w.inverse2(&t.wit[j]).is_none() {
                    r.add(
                        "strength",
                        format!("witness {}", c.name),
                        "pseudo transformation has a non-invertible witness",
                    );
                }
            }
        }
        Strength::Strict => {
            for (j, c) in dom.cells1.iter().enumerate() {
                if !w.is_id2(&t.wit[j]) {
                    r.add(
                        "strength",
                        format!("witness {}", c.name),
                        "strict transformation has a non-identity witness",
                    );
                }
            }
        }
    }
    r.finish()
}

/// Verify the modification square of `m` at every 1-cell of the domain.
pub fn check_modification<W: TwoWorld>(
    dom: &Finite2Category,
    w: &W,
    m: &ModificationData<W>,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    let eta = &m.source;
    let theta = &m.target;
    if eta.source != theta.source || eta.target != theta.target {
        r.add(
            "modification-boundaries",
            "modification",
            "source and target transformations are not parallel",
        );
        return r.finish();
    }
    if m.at.len() != dom.objects.len() {
        r.add("modification-tables", "modification", "wrong component count");
        return r.finish();
    }
    for (x, c) in m.at.iter().enumerate() {
        if w.src2(c) != eta.at[x] || w.tgt2(c) != theta.at[x] {
            r.add(
                "modification-boundaries",
                format!("component {}", dom.objects[x]),
                "component does not run η(x) => θ(x)",
            );
        }
    }
    if !r.is_empty() {
        return r.finish();
    }
    let f = &eta.source;
    let g = &eta.target;
    // θ(f) ∘ (id_{G f} ∗ Ξ(x)) = (Ξ(y) ∗ id_{F f}) ∘ η(f)
    for (j, c) in dom.cells1.iter().enumerate() {
        let x = c.src;
        let y = c.tgt;
        let lhs = vc(
            w,
            Some(theta.wit[j].clone()),
            hc(w, Some(w.id2(&g.one[j])), Some(m.at[x].clone())),
        );
        let rhs = vc(
            w,
            hc(w, Some(m.at[y].clone()), Some(w.id2(&f.one[j]))),
            Some(eta.wit[j].clone()),
        );
        expect_eq(&mut r, w, "modification-square", c.name.clone(), lhs, rhs);
    }
    r.finish()
}
