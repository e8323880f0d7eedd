use crate::double::SquaresCat;
use crate::error::{Error, Result};
use crate::simplicial::{nerve_partial_monoid, PartialMonoid};

use super::path::path_double_category;

/// Objects are the elements; `(a,b)` is a horizontal morphism `a ↣ a*b`
/// and a vertical morphism `a*b ↠ b`; squares are triples `(c,a,b)` with
/// top `(c*a,b)`, left `(c,a)`, right `(c,a*b)` and bottom `(a,b)`.
pub fn partial_monoid_squares(m: &PartialMonoid) -> Result<SquaresCat> {
    let r = m.validate();
    if let Some(v) = r.violations.first() {
        return Err(Error::Precondition(format!("not a partial monoid: {v}")));
    }
    path_double_category(&nerve_partial_monoid(m, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::{validate_squares_category, weak_equivalences};

    #[test]
    fn trivial_is_point() {
        let d = partial_monoid_squares(&PartialMonoid::trivial()).unwrap();
        assert_eq!(d.n_objects(), 1);
    }

    #[test]
    fn one_x() {
        let d = partial_monoid_squares(&PartialMonoid::one_x()).unwrap();
        assert_eq!(d.n_objects(), 2);
        assert_eq!(d.h().n_morphisms(), 3);
        assert!(validate_squares_category(&d).passed());
        assert_eq!(d.object_name(d.o()), "1");
        let w = weak_equivalences(&d);
        assert!(w.hweq.keys().all(|&f| d.h().is_identity(f)));
        assert!(w.vweq.keys().all(|&u| d.v().is_identity(u)));
        let sq = d.squares().iter().find(|s| d.h().morphism_name(s.top) == "(x,1)").unwrap();
        assert_eq!(d.v().morphism_name(sq.left), "(1,x)");
    }
}
