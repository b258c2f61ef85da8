//! Small concrete functor/transformation fixtures over the walking-arrow and
//! sign-cell 2-categories. The sign-cell hom is the group {1, s}, so every
//! comparison cell and witness is a boolean choice and coherence reduces to
//! parity equations; that makes these the smallest examples with genuinely
//! non-identity comparison data. Used by the test suites and the golden
//! documents.

use super::data::{FunctorData, Strength, TransformationData};
use super::two_cat::{sign_cell_2category, walking_arrow_2category, Finite2Category};
use std::collections::BTreeMap;

fn sign_cell(z: &Finite2Category, s: bool) -> usize {
    if s {
        z.cell2_index("s").unwrap()
    } else {
        z.cell2_index("id2_id_pt").unwrap()
    }
}

/// A pseudo functor from the walking arrow into the sign-cell 2-category,
/// determined by its two unit-cell parities. Comparison cells are forced by
/// unit coherence: φ(u, id_0) = φ(id_0, id_0) = φ(0), φ(id_1, u) =
/// φ(id_1, id_1) = φ(1).
pub fn arrow_to_sign_functor(unit0: bool, unit1: bool) -> FunctorData<Finite2Category> {
    let a = walking_arrow_2category();
    let z = sign_cell_2category();
    let idp = z.cell1_index("id_pt").unwrap();
    let id0 = a.cell1_index("id_0").unwrap();
    let id1 = a.cell1_index("id_1").unwrap();
    let u = a.cell1_index("u").unwrap();
    let mut comp = BTreeMap::new();
    comp.insert((id0, id0), sign_cell(&z, unit0));
    comp.insert((u, id0), sign_cell(&z, unit0));
    comp.insert((id1, id1), sign_cell(&z, unit1));
    comp.insert((id1, u), sign_cell(&z, unit1));
    FunctorData {
        strength: Strength::Pseudo,
        ob: vec![0, 0],
        one: vec![idp; a.cells1.len()],
        two: vec![sign_cell(&z, false); a.cells2.len()],
        comp,
        unit: vec![sign_cell(&z, unit0), sign_cell(&z, unit1)],
    }
}

/// A pseudo transformation between two walking-arrow-to-sign functors. The
/// witnesses at identity 1-cells are forced by the unit axiom (the parity
/// difference of the unit cells); the witness at `u` is the free choice
/// `wit_u`.
pub fn arrow_to_sign_transformation(
    f: &FunctorData<Finite2Category>,
    g: &FunctorData<Finite2Category>,
    wit_u: bool,
) -> TransformationData<Finite2Category> {
    let a = walking_arrow_2category();
    let z = sign_cell_2category();
    let idp = z.cell1_index("id_pt").unwrap();
    let s = z.cell2_index("s").unwrap();
    let id0 = a.cell1_index("id_0").unwrap();
    let id1 = a.cell1_index("id_1").unwrap();
    let u = a.cell1_index("u").unwrap();
    let mut wit = vec![0usize; a.cells1.len()];
    wit[id0] = sign_cell(&z, (f.unit[0] == s) != (g.unit[0] == s));
    wit[id1] = sign_cell(&z, (f.unit[1] == s) != (g.unit[1] == s));
    wit[u] = sign_cell(&z, wit_u);
    TransformationData {
        strength: Strength::Pseudo,
        source: f.clone(),
        target: g.clone(),
        at: vec![idp, idp],
        wit,
    }
}

/// A pseudo endofunctor of the sign-cell 2-category: `send_s` fixes the image
/// of the sign 2-cell (s itself or the identity), `unit_s` the parity of the
/// unit cell. The single comparison cell is forced equal to the unit cell.
pub fn sign_endofunctor(send_s: bool, unit_s: bool) -> FunctorData<Finite2Category> {
    let z = sign_cell_2category();
    let idp = z.cell1_index("id_pt").unwrap();
    let s = z.cell2_index("s").unwrap();
    let one_cell = z.cell2_index("id2_id_pt").unwrap();
    let mut comp = BTreeMap::new();
    comp.insert((idp, idp), sign_cell(&z, unit_s));
    FunctorData {
        strength: Strength::Pseudo,
        ob: vec![0],
        one: vec![idp],
        two: vec![one_cell, if send_s { s } else { one_cell }],
        comp,
        unit: vec![sign_cell(&z, unit_s)],
    }
}

/// The pseudo transformation between two sign-cell endofunctors that agree on
/// 2-cells. Its only witness is forced by the unit axiom to the parity
/// difference of the two unit cells, so it is non-identity exactly when the
/// unit cells differ.
pub fn sign_transformation(
    f: &FunctorData<Finite2Category>,
    g: &FunctorData<Finite2Category>,
) -> TransformationData<Finite2Category> {
    let z = sign_cell_2category();
    let idp = z.cell1_index("id_pt").unwrap();
    let s = z.cell2_index("s").unwrap();
    let forced = (f.unit[0] == s) != (g.unit[0] == s);
    TransformationData {
        strength: Strength::Pseudo,
        source: f.clone(),
        target: g.clone(),
        at: vec![idp],
        wit: vec![sign_cell(&z, forced)],
    }
}
