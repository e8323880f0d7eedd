//! The nerve-style constructions of a squares category and the comparison
//! functors between them.

mod levels;
mod shape;
mod witness;

pub use levels::{
    double_nerve_diag, ob_s, s_simplicial, t_plus_level, t_plus_simplicial, t_simplicial, weq_category, Ladder,
    ShapeComplex, Staircase,
};
pub use shape::{
    enumerate_diagrams, is_transformation, reindex, transformations, Cell, Diagram, Pos, Shape, ShapeCat, ShapeKind,
};
pub use witness::{comparison_witnesses, forgetful_equivalence, hv_level, Direction, HvLevel};
