//! Independent oracles shared by the integration suites. Everything here
//! recomputes expected answers from raw data, without calling the library
//! paths under test.

#![allow(dead_code)]

use graycalc::signature::{Boundary, CellGenerator, GenName, Signature};
use graycalc::term::{Layer2, Path1, Term2};
use graycalc::twofun::finite_cat::{FiniteCategory, Mor};
use std::collections::BTreeMap;
use std::sync::Arc;

// ---- signature oracle -------------------------------------------------------

/// Minimal generator table for the oracle: name -> (dimension, raw boundary).
#[derive(Default)]
pub struct OracleTable {
    pub objects: Vec<String>,
    pub arrows: BTreeMap<String, (String, String)>,
    pub surfaces: BTreeMap<String, (Vec<String>, Vec<String>)>,
}

impl OracleTable {
    pub fn from_signature(sig: &Signature) -> OracleTable {
        let mut t = OracleTable::default();
        for g in sig.generators() {
            match &g.boundary {
                Boundary::Object => t.objects.push(g.name.as_str().to_string()),
                Boundary::Arrow { src, tgt } => {
                    t.arrows.insert(
                        g.name.as_str().to_string(),
                        (src.as_str().to_string(), tgt.as_str().to_string()),
                    );
                }
                Boundary::Surface { src, tgt } => {
                    t.surfaces.insert(
                        g.name.as_str().to_string(),
                        (
                            src.segments.iter().map(|s| s.as_str().to_string()).collect(),
                            tgt.segments.iter().map(|s| s.as_str().to_string()).collect(),
                        ),
                    );
                }
                Boundary::Volume { .. } => {}
            }
        }
        t
    }

    /// Walk a path by hand: check each segment exists and chains, returning
    /// the endpoints.
    pub fn walk_path(&self, p: &Path1) -> Option<(String, String)> {
        let start = p.start.as_str().to_string();
        if !self.objects.contains(&start) {
            return None;
        }
        let mut at = start.clone();
        for seg in &p.segments {
            let (src, tgt) = self.arrows.get(seg.as_str())?;
            if *src != at {
                return None;
            }
            at = tgt.clone();
        }
        Some((start, at))
    }

    /// Recompute the whiskered boundary paths of a 2-term by hand.
    pub fn walk_term(&self, t: &Term2) -> Option<(Vec<String>, Vec<String>)> {
        self.walk_path(&t.source)?;
        let mut current: Vec<String> = t
            .source
            .segments
            .iter()
            .map(|s| s.as_str().to_string())
            .collect();
        let top = current.clone();
        for layer in &t.layers {
            self.walk_path(&layer.left)?;
            self.walk_path(&layer.right)?;
            let (csrc, ctgt) = self.surfaces.get(layer.core.as_str())?;
            let mut expect: Vec<String> =
                layer.left.segments.iter().map(|s| s.as_str().to_string()).collect();
            expect.extend(csrc.iter().cloned());
            expect.extend(layer.right.segments.iter().map(|s| s.as_str().to_string()));
            if expect != current {
                return None;
            }
            let mut next: Vec<String> =
                layer.left.segments.iter().map(|s| s.as_str().to_string()).collect();
            next.extend(ctgt.iter().cloned());
            next.extend(layer.right.segments.iter().map(|s| s.as_str().to_string()));
            // chain the next wire row to make sure it still composes
            current = next;
        }
        Some((top, current))
    }

    /// Decide by direct recomputation whether a generator may extend the
    /// table: names resolve, paths chain, boundaries are parallel.
    pub fn admits(&self, gen: &CellGenerator) -> bool {
        let name = gen.name.as_str().to_string();
        match &gen.boundary {
            Boundary::Object => !self.objects.contains(&name),
            Boundary::Arrow { src, tgt } => {
                !self.arrows.contains_key(&name)
                    && self.objects.contains(&src.as_str().to_string())
                    && self.objects.contains(&tgt.as_str().to_string())
            }
            Boundary::Surface { src, tgt } => {
                if self.surfaces.contains_key(&name) {
                    return false;
                }
                match (self.walk_path(src), self.walk_path(tgt)) {
                    (Some(a), Some(b)) => a == b,
                    _ => false,
                }
            }
            Boundary::Volume { src, tgt } => {
                let (a, b) = match (self.walk_term(src), self.walk_term(tgt)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return false,
                };
                // parallel as 2-cells: equal top and bottom wire rows, and
                // equal start objects
                a == b && src.source.start == tgt.source.start
            }
        }
    }
}

// ---- term universe ----------------------------------------------------------

/// The fixed four-generator test signature: one object, one endo-arrow, two
/// parallel 2-cells on it.
pub fn test_signature() -> Signature {
    let p = |n: usize| Path1::new(GenName::from("x"), (0..n).map(|_| GenName::from("f")));
    Signature::from_generators([
        CellGenerator::object("x"),
        CellGenerator::arrow("f", "x", "x"),
        CellGenerator::surface("a", p(1), p(1)),
        CellGenerator::surface("b", p(1), p(1)),
    ])
    .unwrap()
}

/// Every generic 2-term over [`test_signature`] with boundary width `width`
/// and exactly `layers` layers.
pub fn terms_of(width: usize, layers: usize) -> Vec<Term2> {
    let f = GenName::from("f");
    let x = GenName::from("x");
    let path = |n: usize| Path1::new(x.clone(), (0..n).map(|_| f.clone()));
    let mut out = vec![Vec::new()];
    for _ in 0..layers {
        let mut next = Vec::new();
        for partial in &out {
            for pos in 0..width {
                for core in ["a", "b"] {
                    let mut t: Vec<Layer2> = partial.clone();
                    t.push(Layer2::new(
                        path(pos),
                        core,
                        path(width - pos - 1),
                    ));
                    next.push(t);
                }
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|layers| Term2::new(path(width), layers))
        .collect()
}

/// All generic 2-terms with width <= `max_width` and at most `max_layers`
/// layers (identity terms included).
pub fn term_universe(max_width: usize, max_layers: usize) -> Vec<Term2> {
    let mut out = Vec::new();
    for width in 0..=max_width {
        for layers in 0..=max_layers {
            if width == 0 && layers > 0 {
                continue;
            }
            out.extend(terms_of(width, layers));
        }
    }
    out
}

// ---- category oracles -------------------------------------------------------

/// Direct product category construction.
pub fn product_category(c: &FiniteCategory, d: &FiniteCategory) -> FiniteCategory {
    let mut objects = Vec::new();
    for a in &c.objects {
        for b in &d.objects {
            objects.push(format!("({a},{b})"));
        }
    }
    let oi = |a: usize, b: usize| a * d.objects.len() + b;
    let mut morphisms = Vec::new();
    let mut pair_of = Vec::new();
    for (mc, m) in c.morphisms.iter().enumerate() {
        for (md, n) in d.morphisms.iter().enumerate() {
            pair_of.push((mc, md));
            morphisms.push(Mor {
                name: format!("({},{})", m.name, n.name),
                src: oi(m.src, n.src),
                tgt: oi(m.tgt, n.tgt),
            });
        }
    }
    let mi = |a: usize, b: usize| a * d.morphisms.len() + b;
    let identity = {
        let mut v = Vec::new();
        for a in 0..c.objects.len() {
            for b in 0..d.objects.len() {
                v.push(mi(c.identity[a], d.identity[b]));
            }
        }
        v
    };
    let mut compose = BTreeMap::new();
    for (g, &(gc, gd)) in pair_of.iter().enumerate() {
        for (f, &(fc, fd)) in pair_of.iter().enumerate() {
            if let (Some(hc), Some(hd)) = (c.comp(gc, fc), d.comp(gd, fd)) {
                compose.insert((g, f), mi(hc, hd));
            }
        }
    }
    FiniteCategory {
        objects,
        morphisms,
        identity,
        compose,
    }
}

/// Direct comma category construction for a functor given by raw object and
/// morphism maps u: C -> D: objects are (c, d, m: u(c) -> d).
pub fn comma_category(
    c: &FiniteCategory,
    d: &FiniteCategory,
    u_ob: &[usize],
    u_mor: &[usize],
) -> FiniteCategory {
    let mut objects = Vec::new();
    let mut obj_data = Vec::new();
    for co in 0..c.objects.len() {
        for do_ in 0..d.objects.len() {
            for m in d.hom(u_ob[co], do_) {
                obj_data.push((co, do_, m));
                objects.push(format!("({co},{do_},{m})"));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_data = Vec::new();
    for (i, &(c0, d0, m0)) in obj_data.iter().enumerate() {
        for (j, &(c1, d1, m1)) in obj_data.iter().enumerate() {
            for h in 0..c.morphisms.len() {
                if c.morphisms[h].src != c0 || c.morphisms[h].tgt != c1 {
                    continue;
                }
                for k in 0..d.morphisms.len() {
                    if d.morphisms[k].src != d0 || d.morphisms[k].tgt != d1 {
                        continue;
                    }
                    // square: k ∘ m0 = m1 ∘ u(h)
                    if d.comp(k, m0) == d.comp(m1, u_mor[h]) && d.comp(k, m0).is_some() {
                        mor_data.push((i, j, h, k));
                        morphisms.push(Mor {
                            name: format!("m{}", morphisms.len()),
                            src: i,
                            tgt: j,
                        });
                    }
                }
            }
        }
    }
    let identity = obj_data
        .iter()
        .enumerate()
        .map(|(i, &(c0, d0, _))| {
            mor_data
                .iter()
                .position(|&(s, t, h, k)| {
                    s == i && t == i && h == c.identity[c0] && k == d.identity[d0]
                })
                .expect("identity square exists")
        })
        .collect();
    let mut compose = BTreeMap::new();
    for (g, &(gs, gt, gh, gk)) in mor_data.iter().enumerate() {
        for (f, &(fs, ft, fh, fk)) in mor_data.iter().enumerate() {
            if ft != gs {
                continue;
            }
            let h = c.comp(gh, fh).expect("composable");
            let k = d.comp(gk, fk).expect("composable");
            let idx = mor_data
                .iter()
                .position(|&(s, t, h2, k2)| s == fs && t == gt && h2 == h && k2 == k)
                .expect("composite square exists");
            compose.insert((g, f), idx);
        }
    }
    FiniteCategory {
        objects,
        morphisms,
        identity,
        compose,
    }
}

/// Walking arrow category: two objects, one non-identity morphism.
pub fn arrow_category() -> Arc<FiniteCategory> {
    Arc::new(FiniteCategory::build(&["0", "1"], &[("u", "0", "1")], &[]).unwrap())
}

/// Three objects a, b, c with a single morphism a -> b.
pub fn three_object_category() -> Arc<FiniteCategory> {
    Arc::new(FiniteCategory::build(&["a", "b", "c"], &[("v", "a", "b")], &[]).unwrap())
}

// ---- sign-cell coherence oracle ----------------------------------------------

/// Functor data over the walking arrow into the sign-cell 2-category, reduced
/// to parity bits. `two[u]` is indexed by walking-arrow 2-cells, `comp` by its
/// composable 1-cell pairs, `unit` by its objects.
#[derive(Debug, Clone)]
pub struct SignFunctor {
    pub two: Vec<bool>,
    pub comp: BTreeMap<(usize, usize), bool>,
    pub unit: Vec<bool>,
}

/// Direct evaluation of both sides of every lax-functor axiom over the
/// walking arrow with sign-cell values: all cells are parities and both kinds
/// of composition are xor. Returns the list of violated equations.
pub fn sign_functor_violations(
    arrow: &graycalc::twofun::two_cat::Finite2Category,
    f: &SignFunctor,
) -> Vec<String> {
    let mut bad = Vec::new();
    // identity 2-cells map to identities
    for (onecell, &i2) in arrow.id2.iter().enumerate() {
        if f.two[i2] {
            bad.push(format!("functoriality id2 of 1-cell {onecell}"));
        }
    }
    // comparison naturality over identity 2-cells reduces to functoriality
    // of the 2-cell map, covered above
    // associativity coherence
    for h in 0..arrow.cells1.len() {
        for g in 0..arrow.cells1.len() {
            if arrow.one_tgt(g) != arrow.one_src(h) {
                continue;
            }
            let hg = arrow.hcomp1[&(h, g)];
            for j in 0..arrow.cells1.len() {
                if arrow.one_tgt(j) != arrow.one_src(g) {
                    continue;
                }
                let gj = arrow.hcomp1[&(g, j)];
                let lhs = f.comp[&(h, gj)] ^ f.comp[&(g, j)];
                let rhs = f.comp[&(hg, j)] ^ f.comp[&(h, g)];
                if lhs != rhs {
                    bad.push(format!("assoc at ({h},{g},{j})"));
                }
            }
        }
    }
    // unit coherence
    for (j, c) in arrow.cells1.iter().enumerate() {
        let ida = arrow.id1[c.src];
        let idb = arrow.id1[c.tgt];
        if f.comp[&(idb, j)] ^ f.unit[c.tgt] {
            bad.push(format!("left unit at {j}"));
        }
        if f.comp[&(j, ida)] ^ f.unit[c.src] {
            bad.push(format!("right unit at {j}"));
        }
    }
    bad
}

/// Transformation data between two sign functors, as parities.
#[derive(Debug, Clone)]
pub struct SignTransformation {
    pub wit: Vec<bool>,
}

/// Direct evaluation of both sides of every transformation axiom in the same
/// parity model.
pub fn sign_transformation_violations(
    arrow: &graycalc::twofun::two_cat::Finite2Category,
    f: &SignFunctor,
    g: &SignFunctor,
    t: &SignTransformation,
) -> Vec<String> {
    let mut bad = Vec::new();
    // 2-cell naturality over identity 2-cells: G2(id) = F2(id)
    for (u, c) in arrow.cells2.iter().enumerate() {
        let lhs = t.wit[c.tgt] ^ g.two[u];
        let rhs = f.two[u] ^ t.wit[c.src];
        if lhs != rhs {
            bad.push(format!("naturality at 2-cell {u}"));
        }
    }
    // unit axiom
    for x in 0..arrow.objects.len() {
        let idx = arrow.id1[x];
        if t.wit[idx] ^ g.unit[x] != f.unit[x] {
            bad.push(format!("unit at object {x}"));
        }
    }
    // composition axiom
    for (&(k, j), &kj) in &arrow.hcomp1 {
        let lhs = t.wit[kj] ^ g.comp[&(k, j)];
        let rhs = f.comp[&(k, j)] ^ t.wit[k] ^ t.wit[j];
        if lhs != rhs {
            bad.push(format!("composition at ({k},{j})"));
        }
    }
    bad
}

// ---- XML well-formedness ------------------------------------------------------

/// Parse with a real XML parser; any error means the SVG is malformed.
pub fn xml_well_formed(text: &str) -> bool {
    roxmltree::Document::parse(text).is_ok()
}
