//! Diagrams of grid shape in a squares category and the categories of
//! vertical natural transformations between them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::catcore::{FinCat, Functor, MorId, ObjId};
use crate::double::{Square, SquaresCat, WeqSets};

pub type Pos = (usize, usize);

/// An elementary cell, as indices into the edge lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub top: usize,
    pub left: usize,
    pub right: usize,
    pub bottom: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    /// `A_0 ↣ ⋯ ↣ A_n`.
    Chain,
    /// Positions `(i,j)`, `i ≤ j ≤ n`, with `O` on the diagonal.
    Staircase,
    /// A top row over a staircase, indexed on `[n+1]` without `(0,0)`.
    TPlus,
    /// `O ↣ A_1 ↣ ⋯ ↣ A_n`.
    TopRow,
    /// `A_0 ↠ ⋯ ↠ A_{n-1} ↠ O`.
    RightColumn,
    /// An `(n+1)×(n+1)` grid of squares; column indices grow right to left.
    Grid,
}

#[derive(Debug, Clone)]
pub struct Shape {
    pub kind: ShapeKind,
    pub n: usize,
    pub positions: Vec<Pos>,
    pub zero: Vec<bool>,
    pub h_edges: Vec<(usize, usize)>,
    pub v_edges: Vec<(usize, usize)>,
    pub cells: Vec<Cell>,
    index: HashMap<Pos, usize>,
    h_out: Vec<Option<usize>>,
    v_out: Vec<Option<usize>>,
    order: Vec<usize>,
}

impl Shape {
    pub fn new(kind: ShapeKind, n: usize) -> Shape {
        let mut positions = Vec::new();
        match kind {
            ShapeKind::Chain => positions.extend((0..=n).map(|j| (0, j))),
            ShapeKind::Staircase => {
                for p in 0..=n {
                    positions.extend((p..=n).map(|q| (p, q)));
                }
            }
            ShapeKind::TPlus => {
                for p in 0..=n + 1 {
                    positions.extend((p.max(1)..=n + 1).map(|q| (p, q)).filter(|&(a, b)| a <= b));
                }
            }
            ShapeKind::TopRow => positions.extend((0..=n).map(|q| (0, q))),
            ShapeKind::RightColumn => positions.extend((0..=n).map(|p| (p, n))),
            ShapeKind::Grid => {
                for i in 0..=n {
                    positions.extend((0..=n).rev().map(|j| (i, j)));
                }
            }
        }
        let index: HashMap<Pos, usize> = positions.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let zero = positions
            .iter()
            .map(|&(p, q)| match kind {
                ShapeKind::Chain | ShapeKind::Grid => false,
                ShapeKind::Staircase | ShapeKind::TPlus | ShapeKind::TopRow | ShapeKind::RightColumn => p == q,
            })
            .collect();
        let h_next = |(p, q): Pos| -> Option<Pos> {
            match kind {
                ShapeKind::Grid => q.checked_sub(1).map(|q| (p, q)),
                ShapeKind::RightColumn => None,
                _ => Some((p, q + 1)),
            }
        };
        let v_next = |(p, q): Pos| -> Option<Pos> {
            match kind {
                ShapeKind::Chain | ShapeKind::TopRow => None,
                ShapeKind::Grid => Some((p + 1, q)),
                _ => (p < q).then_some((p + 1, q)),
            }
        };
        let mut h_edges = Vec::new();
        let mut v_edges = Vec::new();
        let mut h_out = vec![None; positions.len()];
        let mut v_out = vec![None; positions.len()];
        for (k, &p) in positions.iter().enumerate() {
            if let Some(&t) = h_next(p).and_then(|x| index.get(&x)) {
                h_out[k] = Some(h_edges.len());
                h_edges.push((k, t));
            }
            if let Some(&t) = v_next(p).and_then(|x| index.get(&x)) {
                v_out[k] = Some(v_edges.len());
                v_edges.push((k, t));
            }
        }
        let mut cells = Vec::new();
        for (top, &(a, b)) in h_edges.iter().enumerate() {
            let (Some(left), Some(right)) = (v_out[a], v_out[b]) else {
                continue;
            };
            let (c, d) = (v_edges[left].1, v_edges[right].1);
            if let Some(bottom) = h_out[c].filter(|&e| h_edges[e].1 == d) {
                cells.push(Cell { top, left, right, bottom });
            }
        }
        let mut indeg = vec![0usize; positions.len()];
        for &(_, t) in h_edges.iter().chain(&v_edges) {
            indeg[t] += 1;
        }
        let mut order = Vec::new();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..positions.len()).filter(|&k| indeg[k] == 0).collect();
        while let Some(k) = ready.pop_first() {
            order.push(k);
            for e in [h_out[k].map(|e| h_edges[e].1), v_out[k].map(|e| v_edges[e].1)].into_iter().flatten() {
                indeg[e] -= 1;
                if indeg[e] == 0 {
                    ready.insert(e);
                }
            }
        }
        Shape { kind, n, positions, zero, h_edges, v_edges, cells, index, h_out, v_out, order }
    }

    pub fn node(&self, p: Pos) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn h_edge_into(&self, k: usize) -> Option<usize> {
        self.h_edges.iter().position(|&(_, t)| t == k)
    }

    pub fn v_edge_into(&self, k: usize) -> Option<usize> {
        self.v_edges.iter().position(|&(_, t)| t == k)
    }

    pub fn h_edge_from(&self, k: usize) -> Option<usize> {
        self.h_out[k]
    }

    pub fn v_edge_from(&self, k: usize) -> Option<usize> {
        self.v_out[k]
    }

    /// Nodes in an order where every edge points forward.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    fn cell_ending_at(&self, k: usize) -> Option<Cell> {
        self.cells.iter().copied().find(|c| self.h_edges[c.bottom].1 == k)
    }

    /// Horizontal path between two nodes in one row.
    pub fn h_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = from;
        while cur != to {
            let e = self.h_out[cur].expect("horizontal path leaves the shape");
            out.push(e);
            cur = self.h_edges[e].1;
        }
        out
    }

    pub fn v_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = from;
        while cur != to {
            let e = self.v_out[cur].expect("vertical path leaves the shape");
            out.push(e);
            cur = self.v_edges[e].1;
        }
        out
    }
}

/// A diagram of a given shape: objects at nodes, morphisms on edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub objs: Vec<ObjId>,
    pub h: Vec<MorId>,
    pub v: Vec<MorId>,
}

impl Diagram {
    pub fn name(&self, d: &SquaresCat) -> String {
        if self.h.is_empty() && self.v.is_empty() {
            let parts: Vec<&str> = self.objs.iter().map(|&o| d.object_name(o)).collect();
            return parts.join(",");
        }
        let mut parts: Vec<&str> = self.h.iter().map(|&m| d.h().morphism_name(m)).collect();
        let vs: Vec<&str> = self.v.iter().map(|&m| d.v().morphism_name(m)).collect();
        if !vs.is_empty() {
            parts.push("|");
            parts.extend(vs);
        }
        parts.join(" ")
    }

    pub fn cell_square(&self, c: &Cell) -> Square {
        Square::new(self.h[c.top], self.v[c.left], self.v[c.right], self.h[c.bottom])
    }
}

/// Every diagram of `shape` in `d` whose cells are squares.
pub fn enumerate_diagrams(d: &SquaresCat, shape: &Shape) -> Vec<Diagram> {
    let nn = shape.positions.len();
    let mut out = Vec::new();
    let mut cur = Diagram {
        objs: vec![usize::MAX; nn],
        h: vec![usize::MAX; shape.h_edges.len()],
        v: vec![usize::MAX; shape.v_edges.len()],
    };
    extend(d, shape, 0, &mut cur, &mut out);
    out.sort();
    out
}

fn extend(d: &SquaresCat, shape: &Shape, step: usize, cur: &mut Diagram, out: &mut Vec<Diagram>) {
    if step == shape.order.len() {
        out.push(cur.clone());
        return;
    }
    let k = shape.order[step];
    let o = d.o();
    let zero_ok = |x: ObjId| !shape.zero[k] || x == o;
    let hin = shape.h_edge_into(k);
    let vin = shape.v_edge_into(k);
    match (hin, vin) {
        (Some(he), Some(ve)) => {
            if let Some(cell) = shape.cell_ending_at(k) {
                let top = cur.h[cell.top];
                let left = cur.v[cell.left];
                for s in d.completions_of_span(top, left) {
                    let x = d.v().dst(s.right);
                    if zero_ok(x) {
                        cur.objs[k] = x;
                        cur.v[cell.right] = s.right;
                        cur.h[cell.bottom] = s.bottom;
                        extend(d, shape, step + 1, cur, out);
                    }
                }
            } else {
                let a = cur.objs[shape.h_edges[he].0];
                let b = cur.objs[shape.v_edges[ve].0];
                for &f in d.h().out_of(a) {
                    let x = d.h().dst(f);
                    if !zero_ok(x) {
                        continue;
                    }
                    for &u in d.v().hom(b, x) {
                        cur.objs[k] = x;
                        cur.h[he] = f;
                        cur.v[ve] = u;
                        extend(d, shape, step + 1, cur, out);
                    }
                }
            }
        }
        (Some(he), None) => {
            let a = cur.objs[shape.h_edges[he].0];
            for &f in d.h().out_of(a) {
                let x = d.h().dst(f);
                if zero_ok(x) {
                    cur.objs[k] = x;
                    cur.h[he] = f;
                    extend(d, shape, step + 1, cur, out);
                }
            }
        }
        (None, Some(ve)) => {
            let b = cur.objs[shape.v_edges[ve].0];
            for &u in d.v().out_of(b) {
                let x = d.v().dst(u);
                if zero_ok(x) {
                    cur.objs[k] = x;
                    cur.v[ve] = u;
                    extend(d, shape, step + 1, cur, out);
                }
            }
        }
        (None, None) => {
            for x in d.objects() {
                if zero_ok(x) {
                    cur.objs[k] = x;
                    extend(d, shape, step + 1, cur, out);
                }
            }
        }
    }
}

/// Pulls a diagram back along a map of node positions. Edges become the
/// composites of the paths between the images of their endpoints.
pub fn reindex(
    d: &SquaresCat,
    src: &Shape,
    x: &Diagram,
    tgt: &Shape,
    pos: &impl Fn(Pos) -> Pos,
) -> Diagram {
    let node_map = node_map(src, tgt, pos);
    let objs = node_map.iter().map(|&k| x.objs[k]).collect();
    let compose = |c: &FinCat, start: ObjId, path: Vec<usize>, edges: &[MorId]| -> MorId {
        path.iter().fold(c.id(start), |acc, &e| c.comp(edges[e], acc))
    };
    let h = tgt
        .h_edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (node_map[a], node_map[b]);
            compose(d.h(), x.objs[a], src.h_path(a, b), &x.h)
        })
        .collect();
    let v = tgt
        .v_edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (node_map[a], node_map[b]);
            compose(d.v(), x.objs[a], src.v_path(a, b), &x.v)
        })
        .collect();
    Diagram { objs, h, v }
}

pub fn node_map(src: &Shape, tgt: &Shape, pos: &impl Fn(Pos) -> Pos) -> Vec<usize> {
    tgt.positions
        .iter()
        .map(|&p| src.node(pos(p)).unwrap_or_else(|| panic!("position {:?} is not in the source shape", pos(p))))
        .collect()
}

/// Diagrams of one shape with vertical natural transformations between them.
#[derive(Debug, Clone)]
pub struct ShapeCat {
    pub shape: Shape,
    pub diagrams: Vec<Diagram>,
    pub cat: Arc<FinCat>,
    /// Components of each morphism, one per node.
    pub components: Vec<Vec<MorId>>,
    pub weq_only: bool,
    diag_index: HashMap<Diagram, ObjId>,
    mor_index: HashMap<(ObjId, ObjId, Vec<MorId>), MorId>,
}

impl ShapeCat {
    /// Enumerates all diagrams of `shape` and all morphisms between them.
    /// With `weq_only`, every component must be a vertical weak equivalence.
    pub fn build(d: &SquaresCat, shape: Shape, weq: Option<&WeqSets>) -> ShapeCat {
        let diagrams = enumerate_diagrams(d, &shape);
        ShapeCat::from_diagrams(d, shape, diagrams, weq)
    }

    pub fn from_diagrams(d: &SquaresCat, shape: Shape, diagrams: Vec<Diagram>, weq: Option<&WeqSets>) -> ShapeCat {
        let mut cat = FinCat::new();
        let mut diag_index = HashMap::new();
        for (i, x) in diagrams.iter().enumerate() {
            cat.add_object(x.name(d));
            diag_index.insert(x.clone(), i);
        }
        let mut components = Vec::new();
        let mut mor_index = HashMap::new();
        for (i, x) in diagrams.iter().enumerate() {
            for (j, y) in diagrams.iter().enumerate() {
                for comps in transformations(d, &shape, x, y, weq) {
                    let names: Vec<&str> = comps.iter().map(|&c| d.v().morphism_name(c)).collect();
                    let m = cat.add_morphism(format!("[{}]:{i}->{j}", names.join(",")), i, j);
                    if i == j && comps.iter().all(|&c| d.v().is_identity(c)) {
                        cat.set_identity(i, m);
                    }
                    mor_index.insert((i, j, comps.clone()), m);
                    components.push(comps);
                }
            }
        }
        let ends: Vec<(ObjId, ObjId)> = cat.morphisms().map(|m| (cat.src(m), cat.dst(m))).collect();
        cat.fill_composites(|_, g, f| {
            let comps: Vec<MorId> = components[f]
                .iter()
                .zip(&components[g])
                .map(|(&a, &b)| d.v().comp(b, a))
                .collect();
            mor_index[&(ends[f].0, ends[g].1, comps)]
        });
        ShapeCat {
            shape,
            diagrams,
            cat: Arc::new(cat),
            components,
            weq_only: weq.is_some(),
            diag_index,
            mor_index,
        }
    }

    pub fn n(&self) -> usize {
        self.shape.n
    }

    pub fn find(&self, x: &Diagram) -> Option<ObjId> {
        self.diag_index.get(x).copied()
    }

    pub fn find_morphism(&self, src: ObjId, dst: ObjId, comps: &[MorId]) -> Option<MorId> {
        self.mor_index.get(&(src, dst, comps.to_vec())).copied()
    }

    /// The functor induced by pulling diagrams back along `pos`, a map from
    /// positions of `target` to positions of `self`. `None` when some image
    /// is not in `target`.
    pub fn pullback_functor(&self, d: &SquaresCat, target: &ShapeCat, pos: impl Fn(Pos) -> Pos) -> Option<Functor> {
        let nm = node_map(&self.shape, &target.shape, &pos);
        let obj_map = self
            .diagrams
            .iter()
            .map(|x| target.find(&reindex(d, &self.shape, x, &target.shape, &pos)))
            .collect::<Option<Vec<ObjId>>>()?;
        let mor_map = self
            .cat
            .morphisms()
            .map(|m| {
                let comps: Vec<MorId> = nm.iter().map(|&k| self.components[m][k]).collect();
                target.find_morphism(obj_map[self.cat.src(m)], obj_map[self.cat.dst(m)], &comps)
            })
            .collect::<Option<Vec<MorId>>>()?;
        Some(Functor {
            source: self.cat.clone(),
            target: target.cat.clone(),
            obj_map,
            mor_map,
        })
    }
}

/// All vertical natural transformations `x ⇒ y`.
pub fn transformations(
    d: &SquaresCat,
    shape: &Shape,
    x: &Diagram,
    y: &Diagram,
    weq: Option<&WeqSets>,
) -> Vec<Vec<MorId>> {
    let nn = shape.positions.len();
    let allowed = |m: MorId| weq.is_none_or(|w| w.is_vweq(m));
    let mut candidates = Vec::with_capacity(nn);
    for k in 0..nn {
        let c: Vec<MorId> = d.v().hom(x.objs[k], y.objs[k]).iter().copied().filter(|&m| allowed(m)).collect();
        if c.is_empty() {
            return Vec::new();
        }
        candidates.push(c);
    }
    let mut out = Vec::new();
    let mut cur = vec![usize::MAX; nn];
    let mut assigned = vec![false; nn];
    fn go(
        d: &SquaresCat,
        shape: &Shape,
        x: &Diagram,
        y: &Diagram,
        cands: &[Vec<MorId>],
        step: usize,
        cur: &mut Vec<MorId>,
        assigned: &mut Vec<bool>,
        out: &mut Vec<Vec<MorId>>,
    ) {
        if step == shape.order.len() {
            out.push(cur.clone());
            return;
        }
        let k = shape.order[step];
        for &c in &cands[k] {
            cur[k] = c;
            assigned[k] = true;
            let ok = consistent(d, shape, x, y, cur, assigned, k);
            if ok {
                go(d, shape, x, y, cands, step + 1, cur, assigned, out);
            }
            assigned[k] = false;
        }
    }
    go(d, shape, x, y, &candidates, 0, &mut cur, &mut assigned, &mut out);
    out.sort();
    out
}

fn consistent(
    d: &SquaresCat,
    shape: &Shape,
    x: &Diagram,
    y: &Diagram,
    comps: &[MorId],
    assigned: &[bool],
    k: usize,
) -> bool {
    for (e, &(a, b)) in shape.h_edges.iter().enumerate() {
        if (a == k || b == k) && assigned[a] && assigned[b] && !d.has_square(x.h[e], comps[a], comps[b], y.h[e]) {
            return false;
        }
    }
    for (e, &(a, b)) in shape.v_edges.iter().enumerate() {
        if (a == k || b == k) && assigned[a] && assigned[b] && d.v().comp(comps[b], x.v[e]) != d.v().comp(y.v[e], comps[a]) {
            return false;
        }
    }
    true
}

/// Checks that `comps` is a vertical natural transformation `x ⇒ y`.
pub fn is_transformation(d: &SquaresCat, shape: &Shape, x: &Diagram, y: &Diagram, comps: &[MorId]) -> bool {
    let all = vec![true; comps.len()];
    comps.len() == shape.positions.len()
        && comps
            .iter()
            .enumerate()
            .all(|(k, &c)| d.v().src(c) == x.objs[k] && d.v().dst(c) == y.objs[k])
        && (0..comps.len()).all(|k| consistent(d, shape, x, y, comps, &all, k))
}

/// Face map `δ_i: [n-1] → [n]`.
pub fn coface(i: usize) -> impl Fn(usize) -> usize {
    move |k| if k < i { k } else { k + 1 }
}

/// Degeneracy map `σ_i: [n+1] → [n]`.
pub fn codegeneracy(i: usize) -> impl Fn(usize) -> usize {
    move |k| if k <= i { k } else { k - 1 }
}

/// Position map induced by a simplicial operator on a shape kind.
pub fn operator_positions(kind: ShapeKind, theta: impl Fn(usize) -> usize) -> impl Fn(Pos) -> Pos {
    move |(p, q)| match kind {
        ShapeKind::Chain => (0, theta(q)),
        ShapeKind::TPlus => {
            let plus = |k: usize| if k == 0 { 0 } else { theta(k - 1) + 1 };
            (plus(p), plus(q))
        }
        _ => (theta(p), theta(q)),
    }
}
