use std::collections::BTreeMap;

use super::shape::{
    codegeneracy, coface, enumerate_diagrams, operator_positions, reindex, Diagram, Shape, ShapeCat, ShapeKind,
};
use crate::catcore::{FinCat, MorId, ObjId};
use crate::double::{weak_equivalences, SquaresCat};
use crate::simplicial::{assemble_scat, TruncSCat, TruncSSet};

/// A simplicial category whose levels are diagram categories of one shape
/// kind, kept together with the diagrams.
#[derive(Debug, Clone)]
pub struct ShapeComplex {
    pub kind: ShapeKind,
    pub levels: Vec<ShapeCat>,
    pub scat: TruncSCat,
}

impl ShapeComplex {
    pub fn build(d: &SquaresCat, kind: ShapeKind, bound: usize) -> ShapeComplex {
        let levels: Vec<ShapeCat> = (0..=bound)
            .map(|n| ShapeCat::build(d, Shape::new(kind, n), None))
            .collect();
        let functor_maps = |from: usize, to: usize, theta: &dyn Fn(usize) -> usize| {
            let f = levels[from]
                .pullback_functor(d, &levels[to], operator_positions(kind, theta))
                .expect("simplicial operators preserve diagrams");
            (f.obj_map, f.mor_map)
        };
        let scat = assemble_scat(
            levels.iter().map(|l| l.cat.clone()).collect(),
            |n, i| functor_maps(n, n - 1, &coface(i)),
            |n, i| functor_maps(n, n + 1, &codegeneracy(i)),
        );
        ShapeComplex { kind, levels, scat }
    }

    pub fn level(&self, n: usize) -> &ShapeCat {
        &self.levels[n]
    }
}

/// Level `n` is the category of horizontal chains of length `n` with
/// ladders of squares as morphisms.
pub fn t_simplicial(d: &SquaresCat, bound: usize) -> TruncSCat {
    ShapeComplex::build(d, ShapeKind::Chain, bound).scat
}

/// Level `n` is the category of staircases with `O` on the diagonal and
/// vertical natural transformations as morphisms.
pub fn s_simplicial(d: &SquaresCat, bound: usize) -> TruncSCat {
    ShapeComplex::build(d, ShapeKind::Staircase, bound).scat
}

/// Level `n` is the category of top rows with staircases of cofibres.
pub fn t_plus_simplicial(d: &SquaresCat, bound: usize) -> TruncSCat {
    ShapeComplex::build(d, ShapeKind::TPlus, bound).scat
}

pub fn t_plus_level(d: &SquaresCat, n: usize) -> FinCat {
    let c = ShapeCat::build(d, Shape::new(ShapeKind::TPlus, n), None);
    (*c.cat).clone()
}

/// The simplicial set of diagrams of one kind, with structure maps acting
/// by reindexing.
fn diagram_sset(d: &SquaresCat, kind: ShapeKind, bound: usize) -> TruncSSet {
    let shapes: Vec<Shape> = (0..=bound + 1).map(|n| Shape::new(kind, n)).collect();
    let levels: Vec<Vec<(usize, Diagram)>> = (0..=bound)
        .map(|n| enumerate_diagrams(d, &shapes[n]).into_iter().map(|x| (n, x)).collect())
        .collect();
    TruncSSet::from_tuples(
        levels,
        |n, i, (_, x)| (n - 1, reindex(d, &shapes[n], x, &shapes[n - 1], &operator_positions(kind, coface(i)))),
        |n, i, (_, x)| (n + 1, reindex(d, &shapes[n], x, &shapes[n + 1], &operator_positions(kind, codegeneracy(i)))),
        |_, (_, x)| x.name(d),
    )
}

/// The diagonal of the double nerve: level `n` is the set of
/// `(n+1)×(n+1)` grids of pasted squares.
pub fn double_nerve_diag(d: &SquaresCat, bound: usize) -> TruncSSet {
    diagram_sset(d, ShapeKind::Grid, bound)
}

/// Objects of the staircase construction.
pub fn ob_s(d: &SquaresCat, bound: usize) -> TruncSSet {
    diagram_sset(d, ShapeKind::Staircase, bound)
}

/// The category with the objects of `d` and its vertical weak equivalences.
pub fn weq_category(d: &SquaresCat) -> FinCat {
    let w = weak_equivalences(d);
    let mut c = FinCat::new();
    for o in d.objects() {
        c.add_object(d.object_name(o).to_string());
    }
    let mut ids = BTreeMap::new();
    for u in d.v().morphisms().filter(|&u| w.is_vweq(u)) {
        let m = c.add_morphism(d.v().morphism_name(u).to_string(), d.v().src(u), d.v().dst(u));
        ids.insert(u, m);
        if d.v().is_identity(u) {
            c.set_identity(d.v().src(u), m);
        }
    }
    let back: Vec<MorId> = ids.keys().copied().collect();
    c.fill_composites(|_, g, f| ids[&d.v().comp(back[g], back[f])]);
    c
}

/// A staircase diagram `A_{ij}`, `0 ≤ i ≤ j ≤ n`, with `O` on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    pub n: usize,
    pub entries: BTreeMap<(usize, usize), ObjId>,
    /// `(i,j) ↣ (i,j+1)`.
    pub hmaps: BTreeMap<(usize, usize), MorId>,
    /// `(i,j) ↠ (i+1,j)`.
    pub vmaps: BTreeMap<(usize, usize), MorId>,
}

impl Staircase {
    pub fn from_diagram(shape: &Shape, x: &Diagram) -> Staircase {
        let entries = shape.positions.iter().zip(&x.objs).map(|(&p, &o)| (p, o)).collect();
        let hmaps = shape
            .h_edges
            .iter()
            .zip(&x.h)
            .map(|(&(a, _), &m)| (shape.positions[a], m))
            .collect();
        let vmaps = shape
            .v_edges
            .iter()
            .zip(&x.v)
            .map(|(&(a, _), &m)| (shape.positions[a], m))
            .collect();
        Staircase { n: shape.n, entries, hmaps, vmaps }
    }

    /// Diagonal entries are `O` and every elementary cell is a square.
    pub fn is_valid(&self, d: &SquaresCat) -> bool {
        let n = self.n;
        let diag = (0..=n).all(|i| self.entries.get(&(i, i)) == Some(&d.o()));
        let cells = (0..n).all(|i| {
            (i + 1..n).all(|j| {
                match (
                    self.hmaps.get(&(i, j)),
                    self.vmaps.get(&(i, j)),
                    self.vmaps.get(&(i, j + 1)),
                    self.hmaps.get(&(i + 1, j)),
                ) {
                    (Some(&t), Some(&l), Some(&r), Some(&b)) => d.has_square(t, l, r, b),
                    _ => false,
                }
            })
        });
        diag && cells
    }
}

/// A morphism of horizontal chains: two chains and the rungs between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    pub top: Vec<MorId>,
    pub bottom: Vec<MorId>,
    pub rungs: Vec<MorId>,
}

impl Ladder {
    /// The ladder of morphism `m` in a chain level.
    pub fn from_level(level: &ShapeCat, m: MorId) -> Ladder {
        let src = &level.diagrams[level.cat.src(m)];
        let dst = &level.diagrams[level.cat.dst(m)];
        Ladder {
            top: src.h.clone(),
            bottom: dst.h.clone(),
            rungs: level.components[m].clone(),
        }
    }

    pub fn is_valid(&self, d: &SquaresCat) -> bool {
        self.top.len() == self.bottom.len()
            && self.rungs.len() == self.top.len() + 1
            && (0..self.top.len()).all(|k| d.has_square(self.top[k], self.rungs[k], self.rungs[k + 1], self.bottom[k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{is_groupoid, validate_category};
    use crate::examples::finset_squares;
    use crate::simplicial::{validate_truncated, validate_truncated_cat};

    #[test]
    fn point_levels_are_terminal() {
        let d = SquaresCat::point();
        let t = t_simplicial(&d, 3);
        assert!(t.levels.iter().all(|c| c.n_objects() == 1 && c.n_morphisms() == 1));
        assert_eq!(double_nerve_diag(&d, 3).sizes(), vec![1; 4]);
    }

    #[test]
    fn t_one_of_finset_one() {
        let (d, _) = finset_squares(1);
        let t = t_simplicial(&d, 2);
        assert_eq!(t.level(1).n_objects(), 3);
        assert!(validate_truncated_cat(&t).passed());
    }

    #[test]
    fn staircases_of_finset_two() {
        let (d, _) = finset_squares(2);
        let s = ShapeComplex::build(&d, ShapeKind::Staircase, 3);
        let r = validate_truncated_cat(&s.scat);
        assert!(r.passed(), "{r}");
        for c in &s.scat.levels {
            assert!(validate_category(c).passed());
            assert!(is_groupoid(c).is_groupoid);
        }
        let lvl = s.level(2);
        for x in &lvl.diagrams {
            assert!(Staircase::from_diagram(&lvl.shape, x).is_valid(&d));
        }
        assert!(validate_truncated(&ob_s(&d, 3)).passed());
    }
}
