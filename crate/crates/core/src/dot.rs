//! Graphviz export of squares, staircases and ladders.
//!
//! Horizontal morphisms are solid edges and vertical morphisms dashed ones.
//! Nodes joined by an identity are drawn once and self-loops are dropped.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::constructions::{Ladder, Staircase};
use crate::double::{Square, SquaresCat};

/// Something [`export_dot`] can draw.
#[derive(Debug, Clone, Copy)]
pub enum DotObject<'a> {
    Square(&'a Square),
    Staircase(&'a Staircase),
    Ladder(&'a Ladder),
    /// Every square of the category, each drawn separately.
    AllSquares,
}

#[derive(Default)]
struct Sketch {
    labels: Vec<String>,
    parent: Vec<usize>,
    /// `(src, dst, label, vertical)`
    edges: Vec<(usize, usize, String, bool)>,
    cells: Vec<[usize; 4]>,
}

impl Sketch {
    fn node(&mut self, label: &str) -> usize {
        self.labels.push(label.to_string());
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn root(&self, mut k: usize) -> usize {
        while self.parent[k] != k {
            k = self.parent[k];
        }
        k
    }

    fn edge(&mut self, d: &SquaresCat, a: usize, b: usize, m: usize, vertical: bool) {
        let c = if vertical { d.v() } else { d.h() };
        if c.is_identity(m) {
            let (ra, rb) = (self.root(a), self.root(b));
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
        self.edges.push((a, b, c.morphism_name(m).to_string(), vertical));
    }

    fn square(&mut self, d: &SquaresCat, s: &Square) {
        let [a, b, c, dd] = d.corners(s);
        let ids = [a, b, c, dd].map(|o| self.node(d.object_name(o)));
        self.edge(d, ids[0], ids[1], s.top, false);
        self.edge(d, ids[0], ids[2], s.left, true);
        self.edge(d, ids[1], ids[3], s.right, true);
        self.edge(d, ids[2], ids[3], s.bottom, false);
        self.cells.push(ids);
    }

    fn render(&self) -> String {
        let roots: BTreeSet<usize> = (0..self.labels.len()).map(|k| self.root(k)).collect();
        let mut out = String::from("digraph squares {\n  node [shape=plaintext];\n");
        for &r in &roots {
            let _ = writeln!(out, "  n{r} [label=\"{}\"];", escape(&self.labels[r]));
        }
        let mut seen = BTreeSet::new();
        for (a, b, label, vertical) in &self.edges {
            let (ra, rb) = (self.root(*a), self.root(*b));
            if ra == rb || !seen.insert((ra, rb, label.clone(), *vertical)) {
                continue;
            }
            let style = if *vertical { "dashed" } else { "solid" };
            let _ = writeln!(out, "  n{ra} -> n{rb} [label=\"{}\", style={style}];", escape(label));
        }
        for (i, cell) in self.cells.iter().enumerate() {
            let members: BTreeSet<usize> = cell.iter().map(|&k| self.root(k)).collect();
            let list: Vec<String> = members.iter().map(|r| format!("n{r};")).collect();
            let _ = writeln!(out, "  subgraph cluster_sq_{i} {{ label=\"sq_{i}\"; {} }}", list.join(" "));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text for `obj`; one cluster `cluster_sq_<i>` per elementary square.
pub fn export_dot(d: &SquaresCat, obj: DotObject<'_>) -> String {
    let mut g = Sketch::default();
    match obj {
        DotObject::Square(s) => g.square(d, s),
        DotObject::AllSquares => {
            for s in d.squares() {
                g.square(d, s);
            }
        }
        DotObject::Staircase(st) => {
            let mut ids = std::collections::BTreeMap::new();
            for (&p, &o) in &st.entries {
                ids.insert(p, g.node(d.object_name(o)));
            }
            for (&(i, j), &m) in &st.hmaps {
                g.edge(d, ids[&(i, j)], ids[&(i, j + 1)], m, false);
            }
            for (&(i, j), &m) in &st.vmaps {
                g.edge(d, ids[&(i, j)], ids[&(i + 1, j)], m, true);
            }
            for i in 0..st.n {
                for j in i + 1..st.n {
                    g.cells.push([ids[&(i, j)], ids[&(i, j + 1)], ids[&(i + 1, j)], ids[&(i + 1, j + 1)]]);
                }
            }
        }
        DotObject::Ladder(l) => {
            let v = d.v();
            let top: Vec<usize> = l.rungs.iter().map(|&r| g.node(d.object_name(v.src(r)))).collect();
            let bottom: Vec<usize> = l.rungs.iter().map(|&r| g.node(d.object_name(v.dst(r)))).collect();
            for (k, &m) in l.top.iter().enumerate() {
                g.edge(d, top[k], top[k + 1], m, false);
            }
            for (k, &m) in l.bottom.iter().enumerate() {
                g.edge(d, bottom[k], bottom[k + 1], m, false);
            }
            for (k, &r) in l.rungs.iter().enumerate() {
                g.edge(d, top[k], bottom[k], r, true);
            }
            for k in 0..l.top.len() {
                g.cells.push([top[k], top[k + 1], bottom[k], bottom[k + 1]]);
            }
        }
    }
    g.render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_square_on_basepoint() {
        let d = SquaresCat::point();
        let s = d.squares()[0];
        let text = export_dot(&d, DotObject::Square(&s));
        assert_eq!(text.matches("[label=").count(), 1, "{text}");
        assert!(!text.contains("->"));
        assert!(text.contains("cluster_sq_0"));
    }
}
