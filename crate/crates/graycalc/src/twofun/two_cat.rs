//! Finite strict 2-categories presented by explicit cell lists and
//! composition tables, with an exhaustive law checker.

use crate::report::ValidationReport;
use std::collections::BTreeMap;
use std::fmt;

/// A 1-cell: name plus 0-cell endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell1 {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A 2-cell: name plus parallel 1-cell endpoints (indices into `cells1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell2 {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite strict 2-category. All composition tables are total on composable
/// pairs; `vcomp[(v, u)]` is v∘u (u first), `hcomp1[(g, f)]` is g∗f (f first,
/// f's target matching g's source), and `hcomp2` likewise on 2-cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Finite2Category {
    pub objects: Vec<String>,
    pub cells1: Vec<Cell1>,
    pub cells2: Vec<Cell2>,
    pub id1: Vec<usize>,
    pub id2: Vec<usize>,
    pub vcomp: BTreeMap<(usize, usize), usize>,
    pub hcomp1: BTreeMap<(usize, usize), usize>,
    pub hcomp2: BTreeMap<(usize, usize), usize>,
}

impl Finite2Category {
    /// The 2-category with one object, its identity 1-cell, and the identity
    /// 2-cell.
    pub fn terminal() -> Finite2Category {
        Builder::new(&["pt"]).finish()
    }

    pub fn one_src(&self, f: usize) -> usize {
        self.cells1[f].src
    }

    pub fn one_tgt(&self, f: usize) -> usize {
        self.cells1[f].tgt
    }

    pub fn two_src(&self, u: usize) -> usize {
        self.cells2[u].src
    }

    pub fn two_tgt(&self, u: usize) -> usize {
        self.cells2[u].tgt
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn cell1_index(&self, name: &str) -> Option<usize> {
        self.cells1.iter().position(|c| c.name == name)
    }

    pub fn cell2_index(&self, name: &str) -> Option<usize> {
        self.cells2.iter().position(|c| c.name == name)
    }

    /// 1-cells from `a` to `b`.
    pub fn hom1(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.cells1.len())
            .filter(|&f| self.cells1[f].src == a && self.cells1[f].tgt == b)
            .collect()
    }

    /// 2-cells from 1-cell `f` to 1-cell `g`.
    pub fn hom2(&self, f: usize, g: usize) -> Vec<usize> {
        (0..self.cells2.len())
            .filter(|&u| self.cells2[u].src == f && self.cells2[u].tgt == g)
            .collect()
    }

    /// The vertical inverse of a 2-cell, when one exists.
    pub fn inverse2(&self, u: usize) -> Option<usize> {
        let Cell2 { src, tgt, .. } = self.cells2[u];
        self.hom2(tgt, src).into_iter().find(|&w| {
            self.vcomp.get(&(w, u)) == Some(&self.id2[src])
                && self.vcomp.get(&(u, w)) == Some(&self.id2[tgt])
        })
    }

    /// Exhaustive strict-2-category law scan: hom-categories, horizontal
    /// units and associativity, functoriality of horizontal composition
    /// (including the interchange law).
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        self.check_shapes(&mut r);
        if !r.is_empty() {
            return r.finish();
        }
        self.check_hom_categories(&mut r);
        self.check_horizontal_units(&mut r);
        self.check_horizontal_assoc(&mut r);
        self.check_interchange(&mut r);
        r.finish()
    }

    fn check_shapes(&self, r: &mut ValidationReport) {
        if self.id1.len() != self.objects.len() {
            r.add("identity-table", "2category", "id1 table has wrong length");
        }
        if self.id2.len() != self.cells1.len() {
            r.add("identity-table", "2category", "id2 table has wrong length");
        }
        for c in &self.cells1 {
            if c.src >= self.objects.len() || c.tgt >= self.objects.len() {
                r.add("cell-boundaries", c.name.clone(), "endpoint out of range");
            }
        }
        for c in &self.cells2 {
            if c.src >= self.cells1.len() || c.tgt >= self.cells1.len() {
                r.add("cell-boundaries", c.name.clone(), "endpoint out of range");
            } else {
                let f = &self.cells1[c.src];
                let g = &self.cells1[c.tgt];
                if f.src != g.src || f.tgt != g.tgt {
                    r.add(
                        "cell-boundaries",
                        c.name.clone(),
                        "source and target 1-cells are not parallel",
                    );
                }
            }
        }
        for (o, &i) in self.id1.iter().enumerate() {
            if i >= self.cells1.len() || self.cells1[i].src != o || self.cells1[i].tgt != o {
                r.add(
                    "identity-table",
                    self.objects.get(o).cloned().unwrap_or_default(),
                    "identity 1-cell has wrong endpoints",
                );
            }
        }
        for (f, &i) in self.id2.iter().enumerate() {
            if i >= self.cells2.len() || self.cells2[i].src != f || self.cells2[i].tgt != f {
                r.add(
                    "identity-table",
                    self.cells1.get(f).map(|c| c.name.clone()).unwrap_or_default(),
                    "identity 2-cell has wrong endpoints",
                );
            }
        }
    }

    fn check_hom_categories(&self, r: &mut ValidationReport) {
        let n2 = self.cells2.len();
        for v in 0..n2 {
            for u in 0..n2 {
                if self.cells2[u].tgt != self.cells2[v].src {
                    continue;
                }
                match self.vcomp.get(&(v, u)) {
                    None => r.add(
                        "vcomp-totality",
                        format!("{} . {}", self.cells2[v].name, self.cells2[u].name),
                        "missing vertical composition entry",
                    ),
                    Some(&vu) => {
                        if vu >= n2
                            || self.cells2[vu].src != self.cells2[u].src
                            || self.cells2[vu].tgt != self.cells2[v].tgt
                        {
                            r.add(
                                "vcomp-boundaries",
                                format!("{} . {}", self.cells2[v].name, self.cells2[u].name),
                                "vertical composite has wrong endpoints",
                            );
                        }
                    }
                }
            }
        }
        for u in 0..n2 {
            let Cell2 { src, tgt, .. } = self.cells2[u];
            if self.vcomp.get(&(self.id2[tgt], u)) != Some(&u)
                || self.vcomp.get(&(u, self.id2[src])) != Some(&u)
            {
                r.add("vcomp-unit", self.cells2[u].name.clone(), "identity does not act trivially");
            }
        }
        for w in 0..n2 {
            for v in 0..n2 {
                if self.cells2[v].tgt != self.cells2[w].src {
                    continue;
                }
                for u in 0..n2 {
                    if self.cells2[u].tgt != self.cells2[v].src {
                        continue;
                    }
                    let left = self
                        .vcomp
                        .get(&(v, u))
                        .and_then(|&vu| self.vcomp.get(&(w, vu)));
                    let right = self
                        .vcomp
                        .get(&(w, v))
                        .and_then(|&wv| self.vcomp.get(&(wv, u)));
                    if left != right || left.is_none() {
                        r.add(
                            "vcomp-associativity",
                            format!(
                                "{} . {} . {}",
                                self.cells2[w].name, self.cells2[v].name, self.cells2[u].name
                            ),
                            "the two triple composites disagree",
                        );
                    }
                }
            }
        }
    }

    fn check_horizontal_units(&self, r: &mut ValidationReport) {
        for f in 0..self.cells1.len() {
            let Cell1 { src, tgt, .. } = self.cells1[f];
            if self.hcomp1.get(&(self.id1[tgt], f)) != Some(&f)
                || self.hcomp1.get(&(f, self.id1[src])) != Some(&f)
            {
                r.add(
                    "hcomp-unit",
                    self.cells1[f].name.clone(),
                    "identity 1-cell does not act trivially",
                );
            }
        }
        for u in 0..self.cells2.len() {
            let f = self.cells2[u].src;
            let a = self.cells1[f].src;
            let b = self.cells1[f].tgt;
            if self.hcomp2.get(&(self.id2[self.id1[b]], u)) != Some(&u)
                || self.hcomp2.get(&(u, self.id2[self.id1[a]])) != Some(&u)
            {
                r.add(
                    "hcomp-unit",
                    self.cells2[u].name.clone(),
                    "identity 2-cell on an identity 1-cell does not act trivially",
                );
            }
        }
    }

    fn check_horizontal_assoc(&self, r: &mut ValidationReport) {
        let n1 = self.cells1.len();
        for g in 0..n1 {
            for f in 0..n1 {
                if self.cells1[f].tgt != self.cells1[g].src {
                    continue;
                }
                match self.hcomp1.get(&(g, f)) {
                    None => r.add(
                        "hcomp-totality",
                        format!("{} * {}", self.cells1[g].name, self.cells1[f].name),
                        "missing horizontal composition entry",
                    ),
                    Some(&gf) => {
                        if self.cells1[gf].src != self.cells1[f].src
                            || self.cells1[gf].tgt != self.cells1[g].tgt
                        {
                            r.add(
                                "hcomp-boundaries",
                                format!("{} * {}", self.cells1[g].name, self.cells1[f].name),
                                "horizontal composite has wrong endpoints",
                            );
                        }
                    }
                }
            }
        }
        for h in 0..n1 {
            for g in 0..n1 {
                if self.cells1[g].tgt != self.cells1[h].src {
                    continue;
                }
                for f in 0..n1 {
                    if self.cells1[f].tgt != self.cells1[g].src {
                        continue;
                    }
                    let left = self
                        .hcomp1
                        .get(&(g, f))
                        .and_then(|&gf| self.hcomp1.get(&(h, gf)));
                    let right = self
                        .hcomp1
                        .get(&(h, g))
                        .and_then(|&hg| self.hcomp1.get(&(hg, f)));
                    if left != right || left.is_none() {
                        r.add(
                            "hcomp-associativity",
                            format!(
                                "{} * {} * {}",
                                self.cells1[h].name, self.cells1[g].name, self.cells1[f].name
                            ),
                            "the two triple composites disagree",
                        );
                    }
                }
            }
        }
        // associativity of hcomp2 over composable 2-cell triples
        let n2 = self.cells2.len();
        for w in 0..n2 {
            for v in 0..n2 {
                if !self.h_composable(v, w) {
                    continue;
                }
                for u in 0..n2 {
                    if !self.h_composable(u, v) {
                        continue;
                    }
                    let left = self
                        .hcomp2
                        .get(&(v, u))
                        .and_then(|&vu| self.hcomp2.get(&(w, vu)));
                    let right = self
                        .hcomp2
                        .get(&(w, v))
                        .and_then(|&wv| self.hcomp2.get(&(wv, u)));
                    if left != right || left.is_none() {
                        r.add(
                            "hcomp2-associativity",
                            format!(
                                "{} * {} * {}",
                                self.cells2[w].name, self.cells2[v].name, self.cells2[u].name
                            ),
                            "the two triple composites disagree",
                        );
                    }
                }
            }
        }
    }

    /// u then v horizontally: u's 0-target equals v's 0-source.
    fn h_composable(&self, u: usize, v: usize) -> bool {
        self.cells1[self.cells2[u].src].tgt == self.cells1[self.cells2[v].src].src
    }

    fn check_interchange(&self, r: &mut ValidationReport) {
        let n2 = self.cells2.len();
        // totality, boundaries, and preservation of identities
        for v in 0..n2 {
            for u in 0..n2 {
                if !self.h_composable(u, v) {
                    continue;
                }
                match self.hcomp2.get(&(v, u)) {
                    None => r.add(
                        "hcomp2-totality",
                        format!("{} * {}", self.cells2[v].name, self.cells2[u].name),
                        "missing horizontal composition entry",
                    ),
                    Some(&vu) => {
                        let src = self.hcomp1.get(&(self.cells2[v].src, self.cells2[u].src));
                        let tgt = self.hcomp1.get(&(self.cells2[v].tgt, self.cells2[u].tgt));
                        if src != Some(&self.cells2[vu].src) || tgt != Some(&self.cells2[vu].tgt) {
                            r.add(
                                "hcomp2-boundaries",
                                format!("{} * {}", self.cells2[v].name, self.cells2[u].name),
                                "horizontal composite has wrong endpoints",
                            );
                        }
                    }
                }
            }
        }
        for g in 0..self.cells1.len() {
            for f in 0..self.cells1.len() {
                if self.cells1[f].tgt != self.cells1[g].src {
                    continue;
                }
                let gf = match self.hcomp1.get(&(g, f)) {
                    Some(&gf) => gf,
                    None => continue,
                };
                if self.hcomp2.get(&(self.id2[g], self.id2[f])) != Some(&self.id2[gf]) {
                    r.add(
                        "hcomp2-identities",
                        format!("{} * {}", self.cells1[g].name, self.cells1[f].name),
                        "identity 2-cells do not compose to an identity",
                    );
                }
            }
        }
        // interchange: (v'∘v) * (u'∘u) = (v'*u') ∘ (v*u)
        for v2 in 0..n2 {
            for v1 in 0..n2 {
                if self.cells2[v1].tgt != self.cells2[v2].src {
                    continue;
                }
                for u2 in 0..n2 {
                    if !self.h_composable(u2, v2) {
                        continue;
                    }
                    for u1 in 0..n2 {
                        if self.cells2[u1].tgt != self.cells2[u2].src
                            || !self.h_composable(u1, v1)
                        {
                            continue;
                        }
                        let left = match (self.vcomp.get(&(v2, v1)), self.vcomp.get(&(u2, u1))) {
                            (Some(&vv), Some(&uu)) => self.hcomp2.get(&(vv, uu)).copied(),
                            _ => None,
                        };
                        let right = match (self.hcomp2.get(&(v2, u2)), self.hcomp2.get(&(v1, u1)))
                        {
                            (Some(&a), Some(&b)) => self.vcomp.get(&(a, b)).copied(),
                            _ => None,
                        };
                        if left != right || left.is_none() {
                            r.add(
                                "interchange",
                                format!(
                                    "({} . {}) * ({} . {})",
                                    self.cells2[v2].name,
                                    self.cells2[v1].name,
                                    self.cells2[u2].name,
                                    self.cells2[u1].name
                                ),
                                "interchange law fails",
                            );
                        }
                    }
                }
            }
        }
    }
}

impl fmt::Display for Finite2Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2category({} objects, {} 1-cells, {} 2-cells)",
            self.objects.len(),
            self.cells1.len(),
            self.cells2.len()
        )
    }
}

/// Incremental builder. Identity 1-cells (`id_<object>`) and identity 2-cells
/// (`id2_<1-cell>`) are created automatically, as are all composition entries
/// forced by the strict unit laws and by functoriality of horizontal
/// composition on identity 2-cells.
#[derive(Debug, Clone)]
pub struct Builder {
    cat: Finite2Category,
}

impl Builder {
    pub fn new(objects: &[&str]) -> Builder {
        let mut b = Builder {
            cat: Finite2Category {
                objects: objects.iter().map(|s| s.to_string()).collect(),
                ..Default::default()
            },
        };
        for (i, o) in b.cat.objects.clone().iter().enumerate() {
            b.cat.id1.push(b.cat.cells1.len());
            b.push_cell1(format!("id_{o}"), i, i);
        }
        b
    }

    /// Add a 1-cell and its identity 2-cell, keeping `id2` aligned.
    fn push_cell1(&mut self, name: String, src: usize, tgt: usize) {
        let f = self.cat.cells1.len();
        self.cat.cells1.push(Cell1 { name: name.clone(), src, tgt });
        self.cat.id2.push(self.cat.cells2.len());
        self.cat.cells2.push(Cell2 {
            name: format!("id2_{name}"),
            src: f,
            tgt: f,
        });
    }

    pub fn cell1(mut self, name: &str, src: &str, tgt: &str) -> Result<Builder, String> {
        let src = self
            .cat
            .object_index(src)
            .ok_or_else(|| format!("unknown object {src}"))?;
        let tgt = self
            .cat
            .object_index(tgt)
            .ok_or_else(|| format!("unknown object {tgt}"))?;
        if self.cat.cell1_index(name).is_some() {
            return Err(format!("duplicate 1-cell name {name}"));
        }
        self.push_cell1(name.to_string(), src, tgt);
        Ok(self)
    }

    pub fn cell2(mut self, name: &str, src: &str, tgt: &str) -> Result<Builder, String> {
        let src = self
            .cat
            .cell1_index(src)
            .ok_or_else(|| format!("unknown 1-cell {src}"))?;
        let tgt = self
            .cat
            .cell1_index(tgt)
            .ok_or_else(|| format!("unknown 1-cell {tgt}"))?;
        if self.cat.cell2_index(name).is_some() {
            return Err(format!("duplicate 2-cell name {name}"));
        }
        self.cat.cells2.push(Cell2 {
            name: name.to_string(),
            src,
            tgt,
        });
        Ok(self)
    }

    pub fn vcomp(mut self, v: &str, u: &str, result: &str) -> Result<Builder, String> {
        let v = self.cell2_ref(v)?;
        let u = self.cell2_ref(u)?;
        let result = self.cell2_ref(result)?;
        self.cat.vcomp.insert((v, u), result);
        Ok(self)
    }

    pub fn hcomp1(mut self, g: &str, f: &str, result: &str) -> Result<Builder, String> {
        let g = self.cell1_ref(g)?;
        let f = self.cell1_ref(f)?;
        let result = self.cell1_ref(result)?;
        self.cat.hcomp1.insert((g, f), result);
        Ok(self)
    }

    pub fn hcomp2(mut self, v: &str, u: &str, result: &str) -> Result<Builder, String> {
        let v = self.cell2_ref(v)?;
        let u = self.cell2_ref(u)?;
        let result = self.cell2_ref(result)?;
        self.cat.hcomp2.insert((v, u), result);
        Ok(self)
    }

    fn cell1_ref(&self, name: &str) -> Result<usize, String> {
        self.cat
            .cell1_index(name)
            .ok_or_else(|| format!("unknown 1-cell {name}"))
    }

    fn cell2_ref(&self, name: &str) -> Result<usize, String> {
        self.cat
            .cell2_index(name)
            .ok_or_else(|| format!("unknown 2-cell {name}"))
    }

    /// Fill every composition entry forced by strict units.
    /// User-specified entries are kept.
    pub fn finish(mut self) -> Finite2Category {
        let cat = &mut self.cat;
        // vertical units
        for u in 0..cat.cells2.len() {
            let Cell2 { src, tgt, .. } = cat.cells2[u];
            cat.vcomp.entry((cat.id2[tgt], u)).or_insert(u);
            cat.vcomp.entry((u, cat.id2[src])).or_insert(u);
        }
        // horizontal units on 1-cells
        for f in 0..cat.cells1.len() {
            let Cell1 { src, tgt, .. } = cat.cells1[f];
            cat.hcomp1.entry((cat.id1[tgt], f)).or_insert(f);
            cat.hcomp1.entry((f, cat.id1[src])).or_insert(f);
        }
        // horizontal units on 2-cells (whiskering by identity 1-cells)
        for u in 0..cat.cells2.len() {
            let f = cat.cells2[u].src;
            let a = cat.cells1[f].src;
            let b = cat.cells1[f].tgt;
            cat.hcomp2.entry((cat.id2[cat.id1[b]], u)).or_insert(u);
            cat.hcomp2.entry((u, cat.id2[cat.id1[a]])).or_insert(u);
        }
        // identity 2-cells compose to identity 2-cells over hcomp1
        for (&(g, f), &gf) in cat.hcomp1.clone().iter() {
            cat.hcomp2.entry((cat.id2[g], cat.id2[f])).or_insert(cat.id2[gf]);
        }
        self.cat
    }
}

/// The one-object 2-category whose only 1-cell is the identity and whose
/// 2-cells form the sign group {1, s | s∘s = 1}. Horizontal and vertical
/// composition of sign cells agree. A small codomain with a genuinely
/// non-identity invertible 2-cell; used across the test suites.
pub fn sign_cell_2category() -> Finite2Category {
    Builder::new(&["pt"])
        .cell2("s", "id_pt", "id_pt")
        .unwrap()
        .vcomp("s", "s", "id2_id_pt")
        .unwrap()
        .hcomp2("s", "s", "id2_id_pt")
        .unwrap()
        .hcomp2("s", "id2_id_pt", "s")
        .unwrap()
        .hcomp2("id2_id_pt", "s", "s")
        .unwrap()
        .finish()
}

/// The walking arrow as a 2-category: two objects, one non-identity 1-cell,
/// only identity 2-cells.
pub fn walking_arrow_2category() -> Finite2Category {
    Builder::new(&["0", "1"])
        .cell1("u", "0", "1")
        .unwrap()
        .finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_2category_is_valid() {
        let t = Finite2Category::terminal();
        assert!(t.validate().is_empty());
        assert_eq!(t.objects.len(), 1);
        assert_eq!(t.cells1.len(), 1);
        assert_eq!(t.cells2.len(), 1);
    }

    #[test]
    fn walking_arrow_is_valid() {
        let w = walking_arrow_2category();
        assert!(w.validate().is_empty());
        assert_eq!(w.cells1.len(), 3);
        assert_eq!(w.cells2.len(), 3);
    }

    #[test]
    fn sign_cell_2category_is_valid() {
        let z = sign_cell_2category();
        assert!(z.validate().is_empty());
        let s = z.cell2_index("s").unwrap();
        assert_eq!(z.inverse2(s), Some(s));
    }

    #[test]
    fn monoid_hom_2category_is_valid() {
        // one object, hom = the 2-element monoid {id, e | ee = e} viewed as a
        // one-object category placed as endo-2-cells of the identity 1-cell
        let m = Builder::new(&["pt"])
            .cell2("e", "id_pt", "id_pt")
            .unwrap()
            .vcomp("e", "e", "e")
            .unwrap()
            .hcomp2("e", "e", "e")
            .unwrap()
            .hcomp2("e", "id2_id_pt", "e")
            .unwrap()
            .hcomp2("id2_id_pt", "e", "e")
            .unwrap()
            .finish();
        assert!(m.validate().is_empty());
    }

    #[test]
    fn corrupting_a_table_entry_is_reported() {
        let mut z = sign_cell_2category();
        let s = z.cell2_index("s").unwrap();
        // s∘s = s breaks associativity/inverse structure
        z.vcomp.insert((s, s), s);
        let report = z.validate();
        assert!(!report.is_empty());
        assert!(report.has_code("vcomp-associativity") || report.has_code("interchange"));
    }

    #[test]
    fn missing_hcomp2_entry_is_reported() {
        let mut z = sign_cell_2category();
        let s = z.cell2_index("s").unwrap();
        z.hcomp2.remove(&(s, s));
        assert!(z.validate().has_code("hcomp2-totality"));
    }
}
