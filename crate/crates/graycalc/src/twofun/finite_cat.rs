//! Finite categories with explicit composition tables, plus functors and
//! natural transformations between them. These are the values of Cat-valued
//! 2-functors: the codomain world for cones and limits.

use crate::report::ValidationReport;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A morphism entry: name plus endpoints (object indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category presented by explicit tables. `compose[(g, f)]` is the
/// composite g∘f, defined exactly when `tgt(f) = src(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Mor>,
    pub identity: Vec<usize>,
    pub compose: BTreeMap<(usize, usize), usize>,
}

impl FiniteCategory {
    /// Assemble a category from named objects, non-identity morphisms, and
    /// composition entries for non-identity pairs. Identity morphisms named
    /// `id_<object>` and all unit compositions are filled in automatically.
    /// The tables are not validated here; run [`FiniteCategory::validate`].
    pub fn build(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        compositions: &[(&str, &str, &str)],
    ) -> Result<FiniteCategory, String> {
        let mut cat = FiniteCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        };
        let obj_index = |cat: &FiniteCategory, name: &str| {
            cat.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| format!("unknown object {name}"))
        };
        for (i, o) in cat.objects.clone().iter().enumerate() {
            cat.identity.push(cat.morphisms.len());
            cat.morphisms.push(Mor {
                name: format!("id_{o}"),
                src: i,
                tgt: i,
            });
        }
        for (name, src, tgt) in morphisms {
            if cat.morphisms.iter().any(|m| m.name == *name) {
                return Err(format!("duplicate morphism name {name}"));
            }
            let src = obj_index(&cat, src)?;
            let tgt = obj_index(&cat, tgt)?;
            cat.morphisms.push(Mor {
                name: name.to_string(),
                src,
                tgt,
            });
        }
        let mor_index = |cat: &FiniteCategory, name: &str| {
            cat.morphisms
                .iter()
                .position(|m| m.name == name)
                .ok_or_else(|| format!("unknown morphism {name}"))
        };
        for (g, f, gf) in compositions {
            let g = mor_index(&cat, g)?;
            let f = mor_index(&cat, f)?;
            let gf = mor_index(&cat, gf)?;
            cat.compose.insert((g, f), gf);
        }
        // unit compositions
        for m in 0..cat.morphisms.len() {
            let Mor { src, tgt, .. } = cat.morphisms[m];
            cat.compose.insert((cat.identity[tgt], m), m);
            cat.compose.insert((m, cat.identity[src]), m);
        }
        Ok(cat)
    }

    /// The category with one object and its identity.
    pub fn terminal() -> FiniteCategory {
        FiniteCategory::build(&["pt"], &[], &[]).unwrap()
    }

    /// The category with no objects.
    pub fn empty() -> FiniteCategory {
        FiniteCategory::default()
    }

    /// A discrete category on `n` objects.
    pub fn discrete(n: usize) -> FiniteCategory {
        let names: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        FiniteCategory::build(&refs, &[], &[]).unwrap()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identity.contains(&m)
    }

    /// Morphisms from `a` to `b`.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == a && self.morphisms[m].tgt == b)
            .collect()
    }

    /// The two-sided inverse of `m`, when one exists.
    pub fn inverse(&self, m: usize) -> Option<usize> {
        let Mor { src, tgt, .. } = self.morphisms[m];
        self.hom(tgt, src).into_iter().find(|&w| {
            self.comp(w, m) == Some(self.identity[src])
                && self.comp(m, w) == Some(self.identity[tgt])
        })
    }

    /// Exhaustive category-law scan: boundary sanity, totality of the
    /// composition table on composable pairs, units, and associativity.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let n = self.morphisms.len();
        if self.identity.len() != self.objects.len() {
            r.add(
                "identity-table",
                "category",
                format!(
                    "{} identities for {} objects",
                    self.identity.len(),
                    self.objects.len()
                ),
            );
            return r.finish();
        }
        for (o, &i) in self.identity.iter().enumerate() {
            if i >= n || self.morphisms[i].src != o || self.morphisms[i].tgt != o {
                r.add(
                    "identity-table",
                    format!("object {}", self.objects[o]),
                    "identity morphism has wrong endpoints".to_string(),
                );
            }
        }
        for ((g, f), gf) in &self.compose {
            if *g >= n || *f >= n || *gf >= n {
                r.add("composition-range", format!("({g},{f})"), "index out of range");
                continue;
            }
            let (g, f, gf) = (&self.morphisms[*g], &self.morphisms[*f], &self.morphisms[*gf]);
            if f.tgt != g.src {
                r.add(
                    "composition-boundaries",
                    format!("{} . {}", g.name, f.name),
                    "entry for a non-composable pair",
                );
            } else if gf.src != f.src || gf.tgt != g.tgt {
                r.add(
                    "composition-boundaries",
                    format!("{} . {}", g.name, f.name),
                    format!("composite {} has wrong endpoints", gf.name),
                );
            }
        }
        for g in 0..n {
            for f in 0..n {
                if self.morphisms[f].tgt != self.morphisms[g].src {
                    continue;
                }
                if self.comp(g, f).is_none() {
                    r.add(
                        "composition-totality",
                        format!("{} . {}", self.morphisms[g].name, self.morphisms[f].name),
                        "missing composition entry",
                    );
                }
            }
        }
        for m in 0..n {
            let Mor { src, tgt, .. } = self.morphisms[m];
            if src >= self.objects.len() || tgt >= self.objects.len() {
                r.add(
                    "morphism-boundaries",
                    self.morphisms[m].name.clone(),
                    "endpoint object out of range",
                );
                continue;
            }
            if self.comp(self.identity[tgt], m) != Some(m)
                || self.comp(m, self.identity[src]) != Some(m)
            {
                r.add("unit-law", self.morphisms[m].name.clone(), "identity does not act trivially");
            }
        }
        // associativity over all composable triples
        for h in 0..n {
            for g in 0..n {
                if self.morphisms[g].tgt != self.morphisms[h].src {
                    continue;
                }
                for f in 0..n {
                    if self.morphisms[f].tgt != self.morphisms[g].src {
                        continue;
                    }
                    let left = self.comp(g, f).and_then(|gf| self.comp(h, gf));
                    let right = self.comp(h, g).and_then(|hg| self.comp(hg, f));
                    if left != right || left.is_none() {
                        r.add(
                            "associativity",
                            format!(
                                "{} . {} . {}",
                                self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                            ),
                            "the two triple composites disagree",
                        );
                    }
                }
            }
        }
        r.finish()
    }
}

impl fmt::Display for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "category({} objects, {} morphisms)",
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

/// A functor between finite categories, with its endpoints embedded so the
/// value is self-contained.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CatFunctor {
    pub dom: Arc<FiniteCategory>,
    pub cod: Arc<FiniteCategory>,
    pub ob: Vec<usize>,
    pub mor: Vec<usize>,
}

impl CatFunctor {
    pub fn identity(c: &Arc<FiniteCategory>) -> CatFunctor {
        CatFunctor {
            dom: c.clone(),
            cod: c.clone(),
            ob: (0..c.objects.len()).collect(),
            mor: (0..c.morphisms.len()).collect(),
        }
    }

    /// Composite `self` after `first`.
    pub fn after(&self, first: &CatFunctor) -> Option<CatFunctor> {
        if first.cod != self.dom {
            return None;
        }
        Some(CatFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            ob: first.ob.iter().map(|&o| self.ob[o]).collect(),
            mor: first.mor.iter().map(|&m| self.mor[m]).collect(),
        })
    }

    pub fn apply_ob(&self, o: usize) -> usize {
        self.ob[o]
    }

    pub fn apply_mor(&self, m: usize) -> usize {
        self.mor[m]
    }

    /// Functor laws: boundary preservation, identities, composition.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        if self.ob.len() != self.dom.objects.len() || self.mor.len() != self.dom.morphisms.len() {
            r.add("functor-tables", "functor", "map tables have wrong lengths");
            return r.finish();
        }
        for (m, &fm) in self.mor.iter().enumerate() {
            if fm >= self.cod.morphisms.len() {
                r.add("functor-range", self.dom.morphisms[m].name.clone(), "image out of range");
                continue;
            }
            let dm = &self.dom.morphisms[m];
            let im = &self.cod.morphisms[fm];
            if self.ob.get(dm.src) != Some(&im.src) || self.ob.get(dm.tgt) != Some(&im.tgt) {
                r.add(
                    "functor-boundaries",
                    dm.name.clone(),
                    format!("image {} has wrong endpoints", im.name),
                );
            }
        }
        for (o, &i) in self.dom.identity.iter().enumerate() {
            if self.mor[i] != self.cod.identity[self.ob[o]] {
                r.add(
                    "functor-identities",
                    self.dom.objects[o].clone(),
                    "identity not preserved",
                );
            }
        }
        for (&(g, f), &gf) in &self.dom.compose {
            let lhs = self.cod.comp(self.mor[g], self.mor[f]);
            if lhs != Some(self.mor[gf]) {
                r.add(
                    "functor-composition",
                    format!(
                        "{} . {}",
                        self.dom.morphisms[g].name, self.dom.morphisms[f].name
                    ),
                    "composite not preserved",
                );
            }
        }
        r.finish()
    }
}

/// A natural transformation between functors, with components indexed by the
/// domain's objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CatNatTrans {
    pub src: CatFunctor,
    pub tgt: CatFunctor,
    pub at: Vec<usize>,
}

impl CatNatTrans {
    pub fn identity(f: &CatFunctor) -> CatNatTrans {
        CatNatTrans {
            src: f.clone(),
            tgt: f.clone(),
            at: f.ob.iter().map(|&o| f.cod.identity[o]).collect(),
        }
    }

    /// Vertical composite `self` after `first`.
    pub fn after(&self, first: &CatNatTrans) -> Option<CatNatTrans> {
        if first.tgt != self.src {
            return None;
        }
        let cod = &self.src.cod;
        let at = first
            .at
            .iter()
            .zip(&self.at)
            .map(|(&a, &b)| cod.comp(b, a))
            .collect::<Option<Vec<_>>>()?;
        Some(CatNatTrans {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            at,
        })
    }

    /// Horizontal composite `self * first`; `first: F ⇒ G: C→D`,
    /// `self: H ⇒ K: D→E`. Component at c: self_{G c} ∘ H(first_c).
    pub fn beside(&self, first: &CatNatTrans) -> Option<CatNatTrans> {
        if first.src.cod != self.src.dom {
            return None;
        }
        let e = &self.src.cod;
        let at = (0..first.src.dom.objects.len())
            .map(|c| {
                let whisker = self.src.apply_mor(first.at[c]);
                let comp_at = self.at[first.tgt.apply_ob(c)];
                e.comp(comp_at, whisker)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(CatNatTrans {
            src: self.src.after(&first.src)?,
            tgt: self.tgt.after(&first.tgt)?,
            at,
        })
    }

    /// Componentwise inverse, when every component is invertible.
    pub fn inverse(&self) -> Option<CatNatTrans> {
        let cod = &self.src.cod;
        let at = self
            .at
            .iter()
            .map(|&m| cod.inverse(m))
            .collect::<Option<Vec<_>>>()?;
        Some(CatNatTrans {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            at,
        })
    }

    /// Boundary compatibility and naturality squares.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        if self.src.dom != self.tgt.dom || self.src.cod != self.tgt.cod {
            r.add("nat-boundaries", "transformation", "functors are not parallel");
            return r.finish();
        }
        let dom = &self.src.dom;
        let cod = &self.src.cod;
        if self.at.len() != dom.objects.len() {
            r.add("nat-components", "transformation", "wrong component count");
            return r.finish();
        }
        for (o, &a) in self.at.iter().enumerate() {
            let m = &cod.morphisms[a];
            if m.src != self.src.ob[o] || m.tgt != self.tgt.ob[o] {
                r.add(
                    "nat-components",
                    dom.objects[o].clone(),
                    "component has wrong endpoints",
                );
            }
        }
        for (m, dm) in dom.morphisms.iter().enumerate() {
            let lhs = cod.comp(self.at[dm.tgt], self.src.mor[m]);
            let rhs = cod.comp(self.tgt.mor[m], self.at[dm.src]);
            if lhs != rhs || lhs.is_none() {
                r.add(
                    "naturality",
                    dm.name.clone(),
                    "naturality square does not commute",
                );
            }
        }
        r.finish()
    }
}

/// Enumerate all functors from `dom` to `cod`.
pub fn all_functors(dom: &Arc<FiniteCategory>, cod: &Arc<FiniteCategory>) -> Vec<CatFunctor> {
    let mut out = Vec::new();
    let nobj = dom.objects.len();
    let mut ob = vec![0usize; nobj];
    if cod.objects.is_empty() && nobj > 0 {
        return out;
    }
    loop {
        // candidate morphism images per domain morphism
        let cands: Vec<Vec<usize>> = dom
            .morphisms
            .iter()
            .map(|m| cod.hom(ob[m.src], ob[m.tgt]))
            .collect();
        if cands.iter().all(|c| !c.is_empty()) {
            let mut pick = vec![0usize; cands.len()];
            'mor: loop {
                let f = CatFunctor {
                    dom: dom.clone(),
                    cod: cod.clone(),
                    ob: ob.clone(),
                    mor: pick.iter().zip(&cands).map(|(&i, c)| c[i]).collect(),
                };
                if f.validate().is_empty() {
                    out.push(f);
                }
                // advance morphism picks
                for i in 0..pick.len() {
                    pick[i] += 1;
                    if pick[i] < cands[i].len() {
                        continue 'mor;
                    }
                    pick[i] = 0;
                }
                break;
            }
        }
        // advance object map
        let mut done = true;
        for i in 0..nobj {
            ob[i] += 1;
            if ob[i] < cod.objects.len() {
                done = false;
                break;
            }
            ob[i] = 0;
        }
        if done {
            break;
        }
    }
    out
}

/// Enumerate all natural transformations between two parallel functors.
pub fn all_nat_trans(f: &CatFunctor, g: &CatFunctor) -> Vec<CatNatTrans> {
    if f.dom != g.dom || f.cod != g.cod {
        return Vec::new();
    }
    let cands: Vec<Vec<usize>> = (0..f.dom.objects.len())
        .map(|o| f.cod.hom(f.ob[o], g.ob[o]))
        .collect();
    let mut out = Vec::new();
    if cands.iter().any(|c| c.is_empty()) {
        return out;
    }
    let mut pick = vec![0usize; cands.len()];
    'outer: loop {
        let t = CatNatTrans {
            src: f.clone(),
            tgt: g.clone(),
            at: pick.iter().zip(&cands).map(|(&i, c)| c[i]).collect(),
        };
        if t.validate().is_empty() {
            out.push(t);
        }
        for i in 0..pick.len() {
            pick[i] += 1;
            if pick[i] < cands[i].len() {
                continue 'outer;
            }
            pick[i] = 0;
        }
        break;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walking_arrow_cat() -> FiniteCategory {
        FiniteCategory::build(&["0", "1"], &[("u", "0", "1")], &[]).unwrap()
    }

    #[test]
    fn build_fills_units() {
        let c = walking_arrow_cat();
        assert!(c.validate().is_empty());
        assert_eq!(c.morphisms.len(), 3);
        let u = c.morphism_index("u").unwrap();
        let id0 = c.morphism_index("id_0").unwrap();
        assert_eq!(c.comp(u, id0), Some(u));
    }

    #[test]
    fn corrupt_composition_is_reported() {
        let mut c = FiniteCategory::build(
            &["a"],
            &[("e", "a", "a"), ("e2", "a", "a")],
            &[("e", "e", "e2"), ("e", "e2", "e"), ("e2", "e", "e"), ("e2", "e2", "e2")],
        )
        .unwrap();
        assert!(c.validate().is_empty());
        // break a unit composition: e ∘ id = e2
        let e = c.morphism_index("e").unwrap();
        let e2 = c.morphism_index("e2").unwrap();
        let id = c.morphism_index("id_a").unwrap();
        c.compose.insert((e, id), e2);
        let report = c.validate();
        assert!(report.has_code("unit-law") || report.has_code("associativity"));
    }

    #[test]
    fn identity_functor_and_nat_trans_validate() {
        let c = Arc::new(walking_arrow_cat());
        let f = CatFunctor::identity(&c);
        assert!(f.validate().is_empty());
        let t = CatNatTrans::identity(&f);
        assert!(t.validate().is_empty());
        assert_eq!(t.inverse(), Some(t.clone()));
    }

    #[test]
    fn functor_enumeration_counts() {
        let one = Arc::new(FiniteCategory::terminal());
        let arrow = Arc::new(walking_arrow_cat());
        // functors 1 -> arrow = objects of arrow
        assert_eq!(all_functors(&one, &arrow).len(), 2);
        // functors arrow -> arrow: pick images of 0,1 and a morphism
        // (0,0)->id, (0,1)->u, (1,1)->id: 3 functors
        assert_eq!(all_functors(&arrow, &arrow).len(), 3);
        // empty domain
        let empty = Arc::new(FiniteCategory::empty());
        assert_eq!(all_functors(&empty, &arrow).len(), 1);
    }

    #[test]
    fn nat_trans_enumeration_on_arrow() {
        let arrow = Arc::new(walking_arrow_cat());
        let id = CatFunctor::identity(&arrow);
        // id => id: components (id_0 or u?, ...) — component at 0 must be
        // 0 -> 0 (only id_0), at 1 only id_1: a single transformation
        assert_eq!(all_nat_trans(&id, &id).len(), 1);
        let fs = all_functors(&arrow, &arrow);
        // const_0 => const_1 has exactly one transformation with component u
        let c0 = fs.iter().find(|f| f.ob == vec![0, 0]).unwrap();
        let c1 = fs.iter().find(|f| f.ob == vec![1, 1]).unwrap();
        assert_eq!(all_nat_trans(c0, c1).len(), 1);
        assert_eq!(all_nat_trans(c1, c0).len(), 0);
    }

    #[test]
    fn horizontal_composite_of_nat_trans() {
        let arrow = Arc::new(walking_arrow_cat());
        let fs = all_functors(&arrow, &arrow);
        let c0 = fs.iter().find(|f| f.ob == vec![0, 0]).unwrap();
        let c1 = fs.iter().find(|f| f.ob == vec![1, 1]).unwrap();
        let t = &all_nat_trans(c0, c1)[0];
        let id_id = CatNatTrans::identity(&CatFunctor::identity(&arrow));
        let w = t.beside(&id_id).unwrap();
        assert!(w.validate().is_empty());
        assert_eq!(w.src, c0.after(&CatFunctor::identity(&arrow)).unwrap());
    }
}
