use crate::catcore::{FinCat, ObjId};
use crate::double::FlatDoubleCat;
use crate::error::Result;
use crate::simplicial::nerve;

use super::path::segal_double_category;

/// Objects are the morphisms of `c`; `(f,g)` is a horizontal morphism
/// `f ↣ g∘f` and a vertical morphism `g∘f ↠ g`. There is no global
/// basepoint, so the identity on the first object is returned as a marker.
pub fn twisted_arrow_squares(c: &FinCat) -> Result<(FlatDoubleCat, ObjId)> {
    let d = segal_double_category(&nerve(c, 3))?;
    let marked = c.objects().next().map(|o| c.id(o)).unwrap_or(0);
    Ok((d, marked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{poset_category, terminal_category};

    #[test]
    fn terminal_gives_one_object() {
        let (d, m) = twisted_arrow_squares(&terminal_category()).unwrap();
        assert_eq!(d.n_objects(), 1);
        assert_eq!(m, 0);
    }

    #[test]
    fn objects_are_morphisms() {
        let c = poset_category(3, |a, b| a <= b);
        let (d, _) = twisted_arrow_squares(&c).unwrap();
        assert_eq!(d.n_objects(), c.n_morphisms());
    }
}
