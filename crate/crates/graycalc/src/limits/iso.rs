//! Isomorphism search between finite categories by canonical-form
//! backtracking. Categories here are tiny, so the search assigns objects
//! first (pruned by hom-profile) and then morphisms hom-set by hom-set,
//! verifying identities and the full composition table at the end.

use crate::twofun::finite_cat::FiniteCategory;

/// An isomorphism: object and morphism bijections from `a` to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatIso {
    pub ob: Vec<usize>,
    pub mor: Vec<usize>,
}

fn profile(c: &FiniteCategory, o: usize) -> (usize, usize, usize) {
    let outs = (0..c.morphisms.len())
        .filter(|&m| c.morphisms[m].src == o)
        .count();
    let ins = (0..c.morphisms.len())
        .filter(|&m| c.morphisms[m].tgt == o)
        .count();
    let endos = c.hom(o, o).len();
    (outs, ins, endos)
}

/// Search for an isomorphism of categories.
pub fn find_isomorphism(a: &FiniteCategory, b: &FiniteCategory) -> Option<CatIso> {
    if a.objects.len() != b.objects.len() || a.morphisms.len() != b.morphisms.len() {
        return None;
    }
    let n = a.objects.len();
    let pa: Vec<_> = (0..n).map(|o| profile(a, o)).collect();
    let pb: Vec<_> = (0..n).map(|o| profile(b, o)).collect();
    let mut ob = vec![usize::MAX; n];
    let mut used = vec![false; n];
    assign_objects(a, b, &pa, &pb, 0, &mut ob, &mut used)
}

fn assign_objects(
    a: &FiniteCategory,
    b: &FiniteCategory,
    pa: &[(usize, usize, usize)],
    pb: &[(usize, usize, usize)],
    at: usize,
    ob: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<CatIso> {
    if at == a.objects.len() {
        return assign_morphisms(a, b, ob);
    }
    for cand in 0..b.objects.len() {
        if used[cand] || pa[at] != pb[cand] {
            continue;
        }
        // hom-set size compatibility with already-assigned objects
        let compatible = (0..at).all(|prev| {
            a.hom(prev, at).len() == b.hom(ob[prev], cand).len()
                && a.hom(at, prev).len() == b.hom(cand, ob[prev]).len()
        });
        if !compatible {
            continue;
        }
        ob[at] = cand;
        used[cand] = true;
        if let Some(iso) = assign_objects(a, b, pa, pb, at + 1, ob, used) {
            return Some(iso);
        }
        used[cand] = false;
        ob[at] = usize::MAX;
    }
    None
}

fn assign_morphisms(a: &FiniteCategory, b: &FiniteCategory, ob: &[usize]) -> Option<CatIso> {
    let m = a.morphisms.len();
    let mut mor = vec![usize::MAX; m];
    let mut used = vec![false; m];
    // identities are forced
    for (o, &i) in a.identity.iter().enumerate() {
        let img = b.identity[ob[o]];
        mor[i] = img;
        used[img] = true;
    }
    backtrack_morphisms(a, b, ob, 0, &mut mor, &mut used)
}

fn backtrack_morphisms(
    a: &FiniteCategory,
    b: &FiniteCategory,
    ob: &[usize],
    at: usize,
    mor: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<CatIso> {
    if at == a.morphisms.len() {
        // full composition check
        for (&(g, f), &gf) in &a.compose {
            if b.comp(mor[g], mor[f]) != Some(mor[gf]) {
                return None;
            }
        }
        return Some(CatIso {
            ob: ob.to_vec(),
            mor: mor.clone(),
        });
    }
    if mor[at] != usize::MAX {
        return backtrack_morphisms(a, b, ob, at + 1, mor, used);
    }
    let src = ob[a.morphisms[at].src];
    let tgt = ob[a.morphisms[at].tgt];
    for cand in b.hom(src, tgt) {
        if used[cand] {
            continue;
        }
        // partial composition consistency with already-assigned morphisms
        let ok = a.compose.iter().all(|(&(g, f), &gf)| {
            let lookup = |x: usize| -> Option<usize> {
                if x == at {
                    Some(cand)
                } else if mor[x] != usize::MAX {
                    Some(mor[x])
                } else {
                    None
                }
            };
            match (lookup(g), lookup(f), lookup(gf)) {
                (Some(bg), Some(bf), Some(bgf)) => b.comp(bg, bf) == Some(bgf),
                _ => true,
            }
        });
        if !ok {
            continue;
        }
        mor[at] = cand;
        used[cand] = true;
        if let Some(iso) = backtrack_morphisms(a, b, ob, at + 1, mor, used) {
            return Some(iso);
        }
        used[cand] = false;
        mor[at] = usize::MAX;
    }
    None
}
