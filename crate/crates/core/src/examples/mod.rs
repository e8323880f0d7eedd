//! Builders for the worked examples.

mod concrete;
mod finset;
mod graphs;
mod intervals;
mod path;
mod pmonoid;
mod twisted;

pub use finset::finset_squares;
pub use graphs::{graph_squares, GraphData, GraphInput, GraphVariant};
pub use intervals::{interval_polytopes, interval_polytopes_with};
pub use path::{path_double_category, segal_double_category};
pub use pmonoid::partial_monoid_squares;
pub use twisted::twisted_arrow_squares;
