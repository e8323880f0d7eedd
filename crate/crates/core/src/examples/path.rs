use std::collections::HashMap;
use std::sync::Arc;

use crate::catcore::{FinCat, MorId};
use crate::double::{validate_flat_double, FlatDoubleCat, Square, SquaresCat};
use crate::error::{Error, Result};
use crate::simplicial::{check_segal, SegalDegree, TruncSSet};

/// Composition through a 2-Segal bijection at level 3: the composite of
/// `first` and `second` is `d_mid x` for the unique `x` with
/// `d_a x = first` and `d_b x = second`.
fn composition_table(x: &TruncSSet, a: usize, b: usize, mid: usize) -> Result<HashMap<(usize, usize), usize>> {
    let mut table = HashMap::new();
    for s in 0..x.size(3) {
        let key = (x.face(3, a, s), x.face(3, b, s));
        if table.insert(key, x.face(3, mid, s)).is_some() {
            return Err(Error::Precondition(format!(
                "two 3-simplices share the faces d_{a} and d_{b} of {}",
                x.names[3][s]
            )));
        }
    }
    Ok(table)
}

/// The flat double category of a 2-Segal set: objects are 1-simplices,
/// a 2-simplex `τ` is a horizontal morphism `d_2 τ ↣ d_1 τ` and a vertical
/// morphism `d_1 τ ↠ d_0 τ`, and a 3-simplex `x` is a square with top
/// `d_1 x`, left `d_3 x`, right `d_2 x` and bottom `d_0 x`.
pub fn segal_double_category(x: &TruncSSet) -> Result<FlatDoubleCat> {
    if x.bound() < 3 {
        return Err(Error::InsufficientBound { needed: 3, have: x.bound() });
    }
    let segal = check_segal(&x.truncate(3), SegalDegree::Two);
    if let Some(item) = segal.first_failure() {
        return Err(Error::Precondition(format!(
            "2-Segal condition fails at {}: {}",
            item.label, item.detail
        )));
    }
    let h_comp = composition_table(x, 3, 1, 2)?;
    let v_comp = composition_table(x, 2, 0, 1)?;
    let build = |src_face: usize, dst_face: usize, id_degen: usize, table: &HashMap<(usize, usize), usize>| {
        let mut c = FinCat::new();
        for name in &x.names[1] {
            c.add_object(name.clone());
        }
        for t in 0..x.size(2) {
            c.add_morphism(x.names[2][t].clone(), x.face(2, src_face, t), x.face(2, dst_face, t));
        }
        for a in 0..x.size(1) {
            c.set_identity(a, x.degen(1, id_degen, a));
        }
        c.fill_composites(|_, g: MorId, f: MorId| {
            table[&(f, g)]
        });
        c
    };
    let h = build(2, 1, 1, &h_comp);
    let v = build(1, 0, 0, &v_comp);
    let squares = (0..x.size(3))
        .map(|s| Square::new(x.face(3, 1, s), x.face(3, 3, s), x.face(3, 2, s), x.face(3, 0, s)))
        .collect();
    let d = FlatDoubleCat::new(Arc::new(h), Arc::new(v), squares);
    let r = validate_flat_double(&d);
    if let Some(viol) = r.violations.first() {
        return Err(Error::Precondition(format!("the induced double category is invalid: {viol}")));
    }
    Ok(d)
}

/// The pointed double category of a reduced 2-Segal set; the basepoint is
/// the degenerate 1-simplex.
pub fn path_double_category(x: &TruncSSet) -> Result<SquaresCat> {
    if x.size(0) != 1 {
        return Err(Error::Precondition(format!(
            "input is not reduced: {} vertices",
            x.size(0)
        )));
    }
    let d = segal_double_category(x)?;
    let o = x.degen(0, 0, 0);
    let sq = SquaresCat::new(d, o);
    let r = crate::double::validate_squares_category(&sq);
    if let Some(viol) = r.violations.first() {
        return Err(Error::Precondition(format!("pointing fails: {viol}")));
    }
    Ok(sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::monoid_category;
    use crate::double::{check_isostable, validate_squares_category, CompletionData, CompletionMode};
    use crate::simplicial::nerve;

    #[test]
    fn point_gives_point() {
        let d = path_double_category(&TruncSSet::point(3)).unwrap();
        assert_eq!(d.n_objects(), 1);
    }

    #[test]
    fn group_of_order_two() {
        let c = monoid_category(&["e", "g"], &[vec![0, 1], vec![1, 0]]);
        let d = path_double_category(&nerve(&c, 4)).unwrap();
        assert_eq!(d.n_objects(), 2);
        assert_eq!(d.h().n_morphisms(), 4);
        assert_eq!(d.v().n_morphisms(), 4);
        assert_eq!(d.squares().len(), 8);
        assert!(validate_squares_category(&d).passed());
        let comp = CompletionData::search(&d, CompletionMode::Stable);
        let r = check_isostable(&d, &comp).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn rejects_unreduced() {
        let c = crate::catcore::poset_category(2, |a, b| a <= b);
        assert!(matches!(path_double_category(&nerve(&c, 3)), Err(Error::Precondition(_))));
    }
}
