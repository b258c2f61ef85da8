//! Lax, pseudo, and strict limits of 2-functors valued in finite categories,
//! with brute-force certification of the universal property.
//!
//! The limit of F: J → Cat is computed pointwise: an object is a family of
//! objects x_a ∈ F(a) together with connecting morphisms ξ_f: F(f)(x_a) → x_b
//! per 1-cell f of J, subject to equations generated mechanically from F's
//! comparison cells (one per identity, one per composable pair, one per
//! 2-cell of J). Strength tightens ξ: invertible for pseudo, identity for
//! strict. A morphism is a family commuting with every ξ.
//!
//! Certification enumerates, for each test apex A, every cone A ⇒ F at the
//! limit's strength and every functor A → lim, and checks that composing with
//! the universal cone is bijective on objects and fully faithful on cone
//! morphisms. Both halves of the 2-dimensional property are reported
//! separately.

use crate::report::ValidationReport;
use crate::twofun::check::check_transformation;
use crate::twofun::data::{FunctorData, Strength, TransformationData};
use crate::twofun::finite_cat::{all_functors, all_nat_trans, CatFunctor, CatNatTrans, FiniteCategory, Mor};
use crate::twofun::two_cat::Finite2Category;
use crate::twofun::world::CatWorld;
use crate::twofun::SizeGuard;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub mod iso;

#[derive(Debug, Clone, Error)]
pub enum LimitError {
    #[error("size guard exceeded: search space {needed} over limit {guard}")]
    SizeGuardExceeded { needed: u128, guard: u64 },
    #[error("malformed limit data: {0}")]
    Malformed(String),
}

/// A 2-functor from a finite indexing 2-category into the 2-category of
/// finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram2Functor {
    pub indexing: Finite2Category,
    pub value: FunctorData<CatWorld>,
}

impl Diagram2Functor {
    /// The coherence report of the underlying functor data.
    pub fn check(&self) -> ValidationReport {
        crate::twofun::check::check_functor(&self.indexing, &CatWorld, &self.value)
    }

    fn values(&self) -> &[Arc<FiniteCategory>] {
        &self.value.ob
    }
}

/// A cone over a diagram: an apex category, one leg functor per indexing
/// object, and one cone cell F(f)∘p(a) ⇒ p(b) per indexing 1-cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub strength: Strength,
    pub apex: Arc<FiniteCategory>,
    pub legs: Vec<CatFunctor>,
    pub cells: Vec<CatNatTrans>,
}

/// The constant Cat-valued 2-functor at an apex.
pub fn const_functor(j: &Finite2Category, apex: &Arc<FiniteCategory>) -> FunctorData<CatWorld> {
    let idf = CatFunctor::identity(apex);
    let idt = CatNatTrans::identity(&idf);
    let comp: BTreeMap<(usize, usize), CatNatTrans> =
        j.hcomp1.keys().map(|&k| (k, idt.clone())).collect();
    FunctorData {
        strength: Strength::Strict,
        ob: vec![apex.clone(); j.objects.len()],
        one: vec![idf; j.cells1.len()],
        two: vec![idt.clone(); j.cells2.len()],
        comp,
        unit: vec![idt; j.objects.len()],
    }
}

/// View a cone as transformation data from the constant functor at its apex
/// to the diagram. Cone checking delegates to the transformation checker.
pub fn cone_to_transformation(f: &Diagram2Functor, c: &Cone) -> TransformationData<CatWorld> {
    TransformationData {
        strength: c.strength,
        source: const_functor(&f.indexing, &c.apex),
        target: f.value.clone(),
        at: c.legs.clone(),
        wit: c.cells.clone(),
    }
}

/// Exhaustively verify the cone axioms at the cone's declared strength.
pub fn check_cone(f: &Diagram2Functor, c: &Cone) -> ValidationReport {
    check_transformation(&f.indexing, &CatWorld, &cone_to_transformation(f, c))
}

/// One object of a computed limit: the object family and the connecting
/// morphism family, indexed by the indexing category's objects and 1-cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitObject {
    pub x: Vec<usize>,
    pub xi: Vec<usize>,
}

/// A computed limit: the limit category, its presentation by families, and
/// the universal cone.
#[derive(Debug, Clone)]
pub struct LimitResult {
    pub strength: Strength,
    pub limit: Arc<FiniteCategory>,
    /// Family presentation of each limit object, aligned with `limit.objects`.
    pub objects: Vec<LimitObject>,
    /// Component families of each limit morphism, aligned with
    /// `limit.morphisms`.
    pub morphisms: Vec<Vec<usize>>,
    pub cone: Cone,
}

fn charge(guard: &SizeGuard, used: &mut u128, amount: u128) -> Result<(), LimitError> {
    *used = used.saturating_add(amount);
    if *used > guard.max_search as u128 {
        return Err(LimitError::SizeGuardExceeded {
            needed: *used,
            guard: guard.max_search,
        });
    }
    Ok(())
}

struct Odometer<'a> {
    cands: &'a [Vec<usize>],
    pick: Vec<usize>,
    started: bool,
    empty: bool,
}

impl<'a> Odometer<'a> {
    fn new(cands: &'a [Vec<usize>]) -> Odometer<'a> {
        Odometer {
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

impl<'a> Iterator for Odometer<'a> {
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
        Some(self.pick.iter().zip(self.cands).map(|(&i, c)| c[i]).collect())
    }
}

/// Compute the limit of `f` at the given strength.
pub fn limit(
    f: &Diagram2Functor,
    strength: Strength,
    guard: &SizeGuard,
) -> Result<LimitResult, LimitError> {
    let j = &f.indexing;
    if j.objects.len() > guard.max_indexing_objects {
        return Err(LimitError::SizeGuardExceeded {
            needed: j.objects.len() as u128,
            guard: guard.max_indexing_objects as u64,
        });
    }
    for v in f.values() {
        if v.objects.len() > guard.max_value_objects {
            return Err(LimitError::SizeGuardExceeded {
                needed: v.objects.len() as u128,
                guard: guard.max_value_objects as u64,
            });
        }
    }
    let vals = f.values();
    let mut used: u128 = 0;

    // enumerate object families
    let x_cands: Vec<Vec<usize>> = vals.iter().map(|v| (0..v.objects.len()).collect()).collect();
    let mut objects: Vec<LimitObject> = Vec::new();
    let x_iter = Odometer::new(&x_cands);
    charge(guard, &mut used, x_iter.space().max(1))?;
    for x in x_iter {
        let xi_cands: Vec<Vec<usize>> = j
            .cells1
            .iter()
            .enumerate()
            .map(|(jj, c)| {
                let val_tgt = &vals[c.tgt];
                let fx = f.value.one[jj].apply_ob(x[c.src]);
                val_tgt
                    .hom(fx, x[c.tgt])
                    .into_iter()
                    .filter(|&m| match strength {
                        Strength::Lax => true,
                        Strength::Pseudo => val_tgt.inverse(m).is_some(),
                        Strength::Strict => val_tgt.is_identity(m),
                    })
                    .collect()
            })
            .collect();
        let xi_iter = Odometer::new(&xi_cands);
        charge(guard, &mut used, xi_iter.space().max(1))?;
        'xi: for xi in xi_iter {
            // identity compatibility: ξ(id_a) ∘ unit_a(x_a) = id(x_a)
            for a in 0..j.objects.len() {
                let v = &vals[a];
                let lhs = v.comp(xi[j.id1[a]], f.value.unit[a].at[x[a]]);
                if lhs != Some(v.identity[x[a]]) {
                    continue 'xi;
                }
            }
            // composite compatibility:
            // ξ(k∘j) ∘ φ(k,j)(x) = ξ(k) ∘ F(k)(ξ(j))
            for (&(k, jj), &kj) in &j.hcomp1 {
                let a = j.one_src(jj);
                let c = j.one_tgt(k);
                let v = &vals[c];
                let lhs = v.comp(xi[kj], f.value.comp[&(k, jj)].at[x[a]]);
                let rhs = v.comp(xi[k], f.value.one[k].apply_mor(xi[jj]));
                if lhs != rhs || lhs.is_none() {
                    continue 'xi;
                }
            }
            // 2-cell compatibility: ξ(g) ∘ F(α)(x) = ξ(f) for α: f ⇒ g
            for (u, c2) in j.cells2.iter().enumerate() {
                let a = j.one_src(c2.src);
                let b = j.one_tgt(c2.src);
                let v = &vals[b];
                let lhs = v.comp(xi[c2.tgt], f.value.two[u].at[x[a]]);
                if lhs != Some(xi[c2.src]) {
                    continue 'xi;
                }
            }
            objects.push(LimitObject { x: x.clone(), xi });
        }
    }

    // enumerate morphism families between each pair of limit objects
    let mut morphisms: Vec<Mor> = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut identity: Vec<usize> = vec![usize::MAX; objects.len()];
    for (si, so) in objects.iter().enumerate() {
        for (ti, to) in objects.iter().enumerate() {
            let h_cands: Vec<Vec<usize>> = vals
                .iter()
                .enumerate()
                .map(|(a, v)| v.hom(so.x[a], to.x[a]))
                .collect();
            let h_iter = Odometer::new(&h_cands);
            charge(guard, &mut used, h_iter.space().max(1))?;
            'h: for h in h_iter {
                for (jj, c) in j.cells1.iter().enumerate() {
                    let v = &vals[c.tgt];
                    let lhs = v.comp(to.xi[jj], f.value.one[jj].apply_mor(h[c.src]));
                    let rhs = v.comp(h[c.tgt], so.xi[jj]);
                    if lhs != rhs || lhs.is_none() {
                        continue 'h;
                    }
                }
                let is_id = si == ti && h.iter().enumerate().all(|(a, &m)| m == vals[a].identity[so.x[a]]);
                if is_id {
                    identity[si] = morphisms.len();
                }
                morphisms.push(Mor {
                    name: format!("h{}", morphisms.len()),
                    src: si,
                    tgt: ti,
                });
                components.push(h);
            }
        }
    }
    if identity.iter().any(|&i| i == usize::MAX) {
        return Err(LimitError::Malformed(
            "identity family missing from enumerated morphisms".to_string(),
        ));
    }

    // componentwise composition table
    let mut compose = BTreeMap::new();
    for (gi, g) in morphisms.iter().enumerate() {
        for (fi, fm) in morphisms.iter().enumerate() {
            if fm.tgt != g.src {
                continue;
            }
            let gf: Option<Vec<usize>> = components[gi]
                .iter()
                .zip(&components[fi])
                .enumerate()
                .map(|(a, (&gm, &fmm))| vals[a].comp(gm, fmm))
                .collect();
            let gf = gf.ok_or_else(|| {
                LimitError::Malformed("componentwise composite does not exist".to_string())
            })?;
            let idx = components
                .iter()
                .enumerate()
                .position(|(i, c)| {
                    *c == gf && morphisms[i].src == fm.src && morphisms[i].tgt == g.tgt
                })
                .ok_or_else(|| {
                    LimitError::Malformed("composite family not among morphisms".to_string())
                })?;
            compose.insert((gi, fi), idx);
        }
    }

    let limit_cat = Arc::new(FiniteCategory {
        objects: (0..objects.len()).map(|i| format!("L{i}")).collect(),
        morphisms,
        identity,
        compose,
    });

    // universal cone: projections, with cells read off the ξ families
    let legs: Vec<CatFunctor> = (0..j.objects.len())
        .map(|a| CatFunctor {
            dom: limit_cat.clone(),
            cod: vals[a].clone(),
            ob: objects.iter().map(|o| o.x[a]).collect(),
            mor: components.iter().map(|h| h[a]).collect(),
        })
        .collect();
    let cells: Vec<CatNatTrans> = j
        .cells1
        .iter()
        .enumerate()
        .map(|(jj, c)| {
            let src = f.value.one[jj]
                .after(&legs[c.src])
                .ok_or_else(|| LimitError::Malformed("leg does not compose".to_string()))?;
            Ok(CatNatTrans {
                src,
                tgt: legs[c.tgt].clone(),
                at: objects.iter().map(|o| o.xi[jj]).collect(),
            })
        })
        .collect::<Result<_, LimitError>>()?;

    Ok(LimitResult {
        strength,
        limit: limit_cat.clone(),
        objects,
        morphisms: components,
        cone: Cone {
            strength,
            apex: limit_cat,
            legs,
            cells,
        },
    })
}

impl LimitResult {
    /// The limit with one object (and its incident morphisms) deleted: the
    /// mutation used by the certification failure suite.
    pub fn delete_object(&self, f: &Diagram2Functor, k: usize) -> LimitResult {
        let j = &f.indexing;
        let keep_obj: Vec<usize> = (0..self.limit.objects.len()).filter(|&i| i != k).collect();
        let obj_map: BTreeMap<usize, usize> = keep_obj
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let keep_mor: Vec<usize> = (0..self.limit.morphisms.len())
            .filter(|&m| {
                let mm = &self.limit.morphisms[m];
                mm.src != k && mm.tgt != k
            })
            .collect();
        let mor_map: BTreeMap<usize, usize> = keep_mor
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let limit = Arc::new(FiniteCategory {
            objects: keep_obj.iter().map(|&o| self.limit.objects[o].clone()).collect(),
            morphisms: keep_mor
                .iter()
                .map(|&m| {
                    let mm = &self.limit.morphisms[m];
                    Mor {
                        name: mm.name.clone(),
                        src: obj_map[&mm.src],
                        tgt: obj_map[&mm.tgt],
                    }
                })
                .collect(),
            identity: keep_obj.iter().map(|&o| mor_map[&self.limit.identity[o]]).collect(),
            compose: self
                .limit
                .compose
                .iter()
                .filter_map(|(&(g, fm), &gf)| {
                    Some(((*mor_map.get(&g)?, *mor_map.get(&fm)?), *mor_map.get(&gf)?))
                })
                .collect(),
        });
        let legs: Vec<CatFunctor> = self
            .cone
            .legs
            .iter()
            .map(|leg| CatFunctor {
                dom: limit.clone(),
                cod: leg.cod.clone(),
                ob: keep_obj.iter().map(|&o| leg.ob[o]).collect(),
                mor: keep_mor.iter().map(|&m| leg.mor[m]).collect(),
            })
            .collect();
        let cells: Vec<CatNatTrans> = j
            .cells1
            .iter()
            .enumerate()
            .map(|(jj, c)| CatNatTrans {
                src: f.value.one[jj]
                    .after(&legs[c.src])
                    .expect("legs compose with diagram functors"),
                tgt: legs[c.tgt].clone(),
                at: keep_obj.iter().map(|&o| self.cone.cells[jj].at[o]).collect(),
            })
            .collect();
        LimitResult {
            strength: self.strength,
            limit: limit.clone(),
            objects: keep_obj.iter().map(|&o| self.objects[o].clone()).collect(),
            morphisms: keep_mor.iter().map(|&m| self.morphisms[m].clone()).collect(),
            cone: Cone {
                strength: self.strength,
                apex: limit,
                legs,
                cells,
            },
        }
    }
}

/// Certification outcome for one test apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexCertification {
    pub apex: String,
    pub cone_count: usize,
    pub functor_count: usize,
    pub object_bijection: bool,
    pub fully_faithful: bool,
}

impl ApexCertification {
    pub fn passed(&self) -> bool {
        self.object_bijection && self.fully_faithful
    }
}

/// Report of a universal-property certification over a list of apexes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UniversalityReport {
    pub per_apex: Vec<ApexCertification>,
}

impl UniversalityReport {
    pub fn passed(&self) -> bool {
        self.per_apex.iter().all(|a| a.passed())
    }
}

impl fmt::Display for UniversalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.per_apex {
            writeln!(
                f,
                "apex {}: cones {} functors {} bijective {} fully-faithful {}",
                a.apex, a.cone_count, a.functor_count, a.object_bijection, a.fully_faithful
            )?;
        }
        Ok(())
    }
}

/// All cones from `apex` over `f` at the given strength.
pub fn enumerate_cones(
    f: &Diagram2Functor,
    apex: &Arc<FiniteCategory>,
    strength: Strength,
    guard: &SizeGuard,
) -> Result<Vec<Cone>, LimitError> {
    let j = &f.indexing;
    let vals = f.values();
    let mut used: u128 = 0;
    let leg_cands: Vec<Vec<CatFunctor>> =
        vals.iter().map(|v| all_functors(apex, v)).collect();
    let leg_idx: Vec<Vec<usize>> = leg_cands.iter().map(|c| (0..c.len()).collect()).collect();
    let leg_iter = Odometer::new(&leg_idx);
    charge(guard, &mut used, leg_iter.space().max(1))?;
    let mut out = Vec::new();
    for pick in leg_iter {
        let legs: Vec<CatFunctor> = pick
            .iter()
            .enumerate()
            .map(|(a, &i)| leg_cands[a][i].clone())
            .collect();
        // candidate cells per indexing 1-cell
        let cell_cands: Vec<Vec<CatNatTrans>> = j
            .cells1
            .iter()
            .enumerate()
            .map(|(jj, c)| {
                let src = match f.value.one[jj].after(&legs[c.src]) {
                    Some(s) => s,
                    None => return Vec::new(),
                };
                all_nat_trans(&src, &legs[c.tgt])
                    .into_iter()
                    .filter(|t| match strength {
                        Strength::Lax => true,
                        Strength::Pseudo => t.inverse().is_some(),
                        Strength::Strict => t
                            .at
                            .iter()
                            .all(|&m| t.src.cod.is_identity(m)),
                    })
                    .collect()
            })
            .collect();
        let cell_idx: Vec<Vec<usize>> = cell_cands.iter().map(|c| (0..c.len()).collect()).collect();
        let cell_iter = Odometer::new(&cell_idx);
        charge(guard, &mut used, cell_iter.space().max(1))?;
        for cpick in cell_iter {
            let cells: Vec<CatNatTrans> = cpick
                .iter()
                .enumerate()
                .map(|(jj, &i)| cell_cands[jj][i].clone())
                .collect();
            let cone = Cone {
                strength,
                apex: apex.clone(),
                legs: legs.clone(),
                cells,
            };
            if check_cone(f, &cone).is_empty() {
                out.push(cone);
            }
        }
    }
    Ok(out)
}

/// Compose the universal cone of `l` with a functor into the limit.
pub fn restrict_cone(l: &LimitResult, u: &CatFunctor) -> Option<Cone> {
    let idu = CatNatTrans::identity(u);
    let legs: Vec<CatFunctor> = l
        .cone
        .legs
        .iter()
        .map(|p| p.after(u))
        .collect::<Option<_>>()?;
    let cells: Vec<CatNatTrans> = l
        .cone
        .cells
        .iter()
        .map(|c| c.beside(&idu))
        .collect::<Option<_>>()?;
    Some(Cone {
        strength: l.strength,
        apex: u.dom.clone(),
        legs,
        cells,
    })
}

/// Morphisms of cones sharing an apex: families of natural transformations
/// between the legs, compatible with the cone cells.
fn cone_morphisms(
    f: &Diagram2Functor,
    from: &Cone,
    to: &Cone,
    guard: &SizeGuard,
    used: &mut u128,
) -> Result<Vec<Vec<CatNatTrans>>, LimitError> {
    let j = &f.indexing;
    let mu_cands: Vec<Vec<CatNatTrans>> = from
        .legs
        .iter()
        .zip(&to.legs)
        .map(|(p, q)| all_nat_trans(p, q))
        .collect();
    let mu_idx: Vec<Vec<usize>> = mu_cands.iter().map(|c| (0..c.len()).collect()).collect();
    let mu_iter = Odometer::new(&mu_idx);
    charge(guard, used, mu_iter.space().max(1))?;
    let mut out = Vec::new();
    'mu: for pick in mu_iter {
        let mu: Vec<CatNatTrans> = pick
            .iter()
            .enumerate()
            .map(|(a, &i)| mu_cands[a][i].clone())
            .collect();
        // square at every indexing 1-cell, componentwise over apex objects
        for (jj, c) in j.cells1.iter().enumerate() {
            let v = &f.value.ob[c.tgt];
            let fj = &f.value.one[jj];
            for alpha in 0..from.apex.objects.len() {
                let lhs = v.comp(to.cells[jj].at[alpha], fj.apply_mor(mu[c.src].at[alpha]));
                let rhs = v.comp(mu[c.tgt].at[alpha], from.cells[jj].at[alpha]);
                if lhs != rhs || lhs.is_none() {
                    continue 'mu;
                }
            }
        }
        out.push(mu);
    }
    Ok(out)
}

/// Certify the universal property of a computed limit against test apexes.
pub fn certify_universal(
    l: &LimitResult,
    f: &Diagram2Functor,
    apexes: &[(String, Arc<FiniteCategory>)],
    guard: &SizeGuard,
) -> Result<UniversalityReport, LimitError> {
    let mut report = UniversalityReport::default();
    for (name, apex) in apexes {
        let mut used: u128 = 0;
        let cones = enumerate_cones(f, apex, l.strength, guard)?;
        let functors = all_functors(apex, &l.limit);
        charge(guard, &mut used, (functors.len() as u128).max(1))?;
        // object level: u ↦ universal cone ∘ u is a bijection onto cones
        let mut images: Vec<Cone> = Vec::new();
        let mut object_bijection = true;
        for u in &functors {
            match restrict_cone(l, u) {
                Some(c) => images.push(c),
                None => {
                    object_bijection = false;
                }
            }
        }
        // injectivity
        for i in 0..images.len() {
            for k in i + 1..images.len() {
                if images[i] == images[k] {
                    object_bijection = false;
                }
            }
        }
        // surjectivity and co-injectivity via set equality
        if images.len() != cones.len() {
            object_bijection = false;
        } else {
            for c in &cones {
                if !images.contains(c) {
                    object_bijection = false;
                }
            }
        }
        // 2-dimensional level: whiskering is bijective on hom-sets
        let mut fully_faithful = true;
        for (ui, u) in functors.iter().enumerate() {
            for (vi, v) in functors.iter().enumerate() {
                let nats = all_nat_trans(u, v);
                charge(guard, &mut used, (nats.len() as u128).max(1))?;
                let (cu, cv) = (&images[ui], &images[vi]);
                let cmors = cone_morphisms(f, cu, cv, guard, &mut used)?;
                // image of each natural transformation under whiskering
                let mut whiskered: Vec<Vec<CatNatTrans>> = Vec::new();
                for n in &nats {
                    let img: Option<Vec<CatNatTrans>> = l
                        .cone
                        .legs
                        .iter()
                        .map(|p| CatNatTrans::identity(p).beside(n))
                        .collect();
                    match img {
                        Some(w) => whiskered.push(w),
                        None => fully_faithful = false,
                    }
                }
                // faithful: injective; full: surjective onto cone morphisms
                for i in 0..whiskered.len() {
                    for k in i + 1..whiskered.len() {
                        if whiskered[i] == whiskered[k] {
                            fully_faithful = false;
                        }
                    }
                }
                if whiskered.len() != cmors.len() {
                    fully_faithful = false;
                } else {
                    for m in &cmors {
                        if !whiskered.contains(m) {
                            fully_faithful = false;
                        }
                    }
                }
            }
        }
        report.per_apex.push(ApexCertification {
            apex: name.clone(),
            cone_count: cones.len(),
            functor_count: functors.len(),
            object_bijection,
            fully_faithful,
        });
    }
    Ok(report)
}

/// Strict Cat-valued diagram data from object values and 1-cell functors,
/// with 2-cell images forced to identity transformations. The indexing may
/// only have identity 2-cells; comparison and unit cells are identities,
/// which requires the 1-cell assignment to be strictly functorial.
pub fn strict_cat_diagram(
    j: &Finite2Category,
    ob: Vec<Arc<FiniteCategory>>,
    mut one_for: impl FnMut(usize) -> Option<CatFunctor>,
) -> Result<Diagram2Functor, LimitError> {
    let one: Vec<CatFunctor> = (0..j.cells1.len())
        .map(|f| {
            if j.id1.contains(&f) {
                let x = j.one_src(f);
                Some(CatFunctor::identity(&ob[x]))
            } else {
                one_for(f)
            }
        })
        .collect::<Option<_>>()
        .ok_or_else(|| LimitError::Malformed("missing 1-cell assignment".to_string()))?;
    let two: Vec<CatNatTrans> = (0..j.cells2.len())
        .map(|u| {
            let f = j.two_src(u);
            if f == j.two_tgt(u) {
                Some(CatNatTrans::identity(&one[f]))
            } else {
                None
            }
        })
        .collect::<Option<_>>()
        .ok_or_else(|| {
            LimitError::Malformed("non-identity 2-cells need explicit images".to_string())
        })?;
    let value = FunctorData::strict(j, &CatWorld, ob, one, two)
        .ok_or_else(|| LimitError::Malformed("assignment is not strictly functorial".to_string()))?;
    Ok(Diagram2Functor {
        indexing: j.clone(),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twofun::two_cat::{walking_arrow_2category, Builder};

    fn discrete_indexing(n: usize) -> Finite2Category {
        let names: Vec<String> = (0..n).map(|i| format!("j{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Builder::new(&refs).finish()
    }

    fn arrow_cat() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::build(&["0", "1"], &[("u", "0", "1")], &[]).unwrap())
    }

    fn three_obj_cat() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::build(&["a", "b", "c"], &[("f", "a", "b")], &[]).unwrap())
    }

    #[test]
    fn limit_over_terminal_indexing_is_the_value() {
        let j = Finite2Category::terminal();
        let c = arrow_cat();
        let f = strict_cat_diagram(&j, vec![c.clone()], |_| None).unwrap();
        assert!(f.check().is_empty());
        for strength in [Strength::Lax, Strength::Pseudo, Strength::Strict] {
            let l = limit(&f, strength, &SizeGuard::default()).unwrap();
            assert!(check_cone(&f, &l.cone).is_empty());
            let isof = iso::find_isomorphism(&l.limit, &c);
            assert!(isof.is_some(), "{strength} limit not isomorphic to value");
        }
    }

    #[test]
    fn limit_over_discrete_indexing_is_the_product() {
        let j = discrete_indexing(2);
        let c = arrow_cat();
        let d = three_obj_cat();
        let f = strict_cat_diagram(&j, vec![c.clone(), d.clone()], |_| None).unwrap();
        assert!(f.check().is_empty());
        for strength in [Strength::Lax, Strength::Strict] {
            let l = limit(&f, strength, &SizeGuard::default()).unwrap();
            assert_eq!(l.limit.objects.len(), c.objects.len() * d.objects.len());
            assert_eq!(
                l.limit.morphisms.len(),
                c.morphisms.len() * d.morphisms.len()
            );
            assert!(l.limit.validate().is_empty());
            assert!(check_cone(&f, &l.cone).is_empty());
        }
    }

    #[test]
    fn lax_limit_over_walking_arrow_counts_comma_objects() {
        let j = walking_arrow_2category();
        let c = arrow_cat();
        let d = three_obj_cat();
        // u: C -> D sending 0 -> a, 1 -> b, u -> f
        let u_functor = CatFunctor {
            dom: c.clone(),
            cod: d.clone(),
            ob: vec![0, 1],
            mor: vec![
                d.identity[0],
                d.identity[1],
                d.morphism_index("f").unwrap(),
            ],
        };
        assert!(u_functor.validate().is_empty());
        let uu = j.cell1_index("u").unwrap();
        let f = strict_cat_diagram(&j, vec![c.clone(), d.clone()], |f1| {
            (f1 == uu).then(|| u_functor.clone())
        })
        .unwrap();
        assert!(f.check().is_empty());
        let l = limit(&f, Strength::Lax, &SizeGuard::default()).unwrap();
        // comma objects: (x0, x1, m: u(x0) -> x1); u(0)=a, u(1)=b:
        // x0=0: hom(a, a)=1, hom(a,b)=2 (id? no: morphisms a->b = {f}), so
        // count = sum over (x0, x1) of |hom(u(x0), x1)|
        let mut expected = 0;
        for x0 in 0..c.objects.len() {
            for x1 in 0..d.objects.len() {
                expected += d.hom(u_functor.ob[x0], x1).len();
            }
        }
        assert_eq!(l.limit.objects.len(), expected);
        assert!(l.limit.validate().is_empty());
        assert!(check_cone(&f, &l.cone).is_empty());
        // strict limit is strictly smaller: u not surjective on objects
        let ls = limit(&f, Strength::Strict, &SizeGuard::default()).unwrap();
        assert!(ls.limit.objects.len() < l.limit.objects.len());
    }

    #[test]
    fn strength_monotonicity_on_objects() {
        let j = walking_arrow_2category();
        let c = arrow_cat();
        let d = three_obj_cat();
        let uu = j.cell1_index("u").unwrap();
        let u_functor = CatFunctor {
            dom: c.clone(),
            cod: d.clone(),
            ob: vec![0, 1],
            mor: vec![
                d.identity[0],
                d.identity[1],
                d.morphism_index("f").unwrap(),
            ],
        };
        let f = strict_cat_diagram(&j, vec![c, d], |f1| (f1 == uu).then(|| u_functor.clone()))
            .unwrap();
        let strict = limit(&f, Strength::Strict, &SizeGuard::default()).unwrap();
        let pseudo = limit(&f, Strength::Pseudo, &SizeGuard::default()).unwrap();
        let lax = limit(&f, Strength::Lax, &SizeGuard::default()).unwrap();
        assert!(strict.limit.objects.len() <= pseudo.limit.objects.len());
        assert!(pseudo.limit.objects.len() <= lax.limit.objects.len());
        // strict objects embed: every strict family is a pseudo family
        for o in &strict.objects {
            assert!(pseudo.objects.contains(o));
        }
        for o in &pseudo.objects {
            assert!(lax.objects.contains(o));
        }
    }

    #[test]
    fn certification_passes_and_mutation_fails() {
        let j = discrete_indexing(2);
        let c = arrow_cat();
        let d = Arc::new(FiniteCategory::discrete(2));
        let f = strict_cat_diagram(&j, vec![c, d], |_| None).unwrap();
        let l = limit(&f, Strength::Lax, &SizeGuard::default()).unwrap();
        let apexes = vec![
            ("empty".to_string(), Arc::new(FiniteCategory::empty())),
            ("terminal".to_string(), Arc::new(FiniteCategory::terminal())),
        ];
        let report = certify_universal(&l, &f, &apexes, &SizeGuard::default()).unwrap();
        assert!(report.passed(), "{report}");
        // the empty apex admits exactly one cone and one functor
        assert_eq!(report.per_apex[0].cone_count, 1);
        assert_eq!(report.per_apex[0].functor_count, 1);
        // terminal apex: cones = limit objects
        assert_eq!(report.per_apex[1].cone_count, l.limit.objects.len());
        // deleting any object breaks certification
        for k in 0..l.limit.objects.len() {
            let broken = l.delete_object(&f, k);
            let r = certify_universal(&broken, &f, &apexes, &SizeGuard::default()).unwrap();
            assert!(!r.passed(), "deleting object {k} kept certification green");
        }
    }
}
