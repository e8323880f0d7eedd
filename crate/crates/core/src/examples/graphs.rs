use serde::{Deserialize, Serialize};

use super::concrete::{build, injections, map_label, PointData, PointMor, SquareRule};
use crate::double::SquaresCat;
use crate::error::{Error, Result};

/// A finite simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphData {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphData {
    pub fn single_edge() -> GraphData {
        GraphData {
            vertices: vec!["a".into(), "b".into()],
            edges: vec![(0, 1)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut seen = std::collections::BTreeSet::new();
        for &(x, y) in &self.edges {
            if x >= n || y >= n {
                return Err(Error::Invalid(format!("edge ({x},{y}) references a missing vertex")));
            }
            if x == y {
                return Err(Error::Invalid(format!("loop at vertex {x}")));
            }
            if !seen.insert((x.min(y), x.max(y))) {
                return Err(Error::Invalid(format!("repeated edge ({x},{y})")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphVariant {
    /// Subgraphs of a fixed ambient graph, full inclusions.
    Ambient,
    /// Graphs on `{0..k}`, full embeddings, vertex pushouts.
    VertexPushout,
    /// Graphs on `{0..k}`, all embeddings, pushouts of graphs.
    GraphPushout,
}

pub enum GraphInput<'a> {
    Ambient(&'a GraphData),
    Bound(usize),
}

const MAX_AMBIENT_VERTICES: usize = 5;
const MAX_BOUND: usize = 4;

struct Obj {
    name: String,
    /// Vertex labels, ambient ids for the ambient variant.
    verts: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

fn has_edge(edges: &[(usize, usize)], x: usize, y: usize) -> bool {
    edges.contains(&(x.min(y), x.max(y)))
}

fn ambient_objects(g: &GraphData) -> Vec<Obj> {
    let n = g.vertices.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let inner: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(x, y)| (x.min(y), x.max(y)))
            .filter(|&(x, y)| mask & (1 << x) != 0 && mask & (1 << y) != 0)
            .collect();
        for emask in 0u32..(1 << inner.len()) {
            let es: Vec<(usize, usize)> = (0..inner.len())
                .filter(|i| emask & (1 << i) != 0)
                .map(|i| inner[i])
                .collect();
            let local: Vec<(usize, usize)> = es
                .iter()
                .map(|&(x, y)| {
                    let p = |v| verts.iter().position(|&w| w == v).unwrap();
                    (p(x), p(y))
                })
                .collect();
            let vs: Vec<&str> = verts.iter().map(|&v| g.vertices[v].as_str()).collect();
            let en: Vec<String> = es
                .iter()
                .map(|&(x, y)| format!("{}{}", g.vertices[x], g.vertices[y]))
                .collect();
            out.push(Obj {
                name: format!("{{{}|{}}}", vs.join(","), en.join(",")),
                verts: verts.clone(),
                edges: local,
            });
        }
    }
    out.sort_by_key(|o| (o.verts.len(), o.edges.len()));
    out
}

fn labelled_objects(bound: usize) -> Vec<Obj> {
    let mut out = Vec::new();
    for k in 0..=bound {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| (x + 1..k).map(move |y| (x, y))).collect();
        for emask in 0u32..(1 << pairs.len()) {
            let es: Vec<(usize, usize)> = (0..pairs.len())
                .filter(|i| emask & (1 << i) != 0)
                .map(|i| pairs[i])
                .collect();
            let en: Vec<String> = es.iter().map(|&(x, y)| format!("{}{}", x + 1, y + 1)).collect();
            out.push(Obj {
                name: format!("G{k}[{}]", en.join(",")),
                verts: (0..k).collect(),
                edges: es,
            });
        }
    }
    out
}

/// Squares categories of graphs in three flavours. The basepoint is the
/// empty graph.
pub fn graph_squares(variant: GraphVariant, input: GraphInput<'_>) -> Result<SquaresCat> {
    let objs = match (variant, input) {
        (GraphVariant::Ambient, GraphInput::Ambient(g)) => {
            g.validate()?;
            if g.vertices.len() > MAX_AMBIENT_VERTICES {
                return Err(Error::Precondition(format!(
                    "ambient graph has {} vertices, at most {MAX_AMBIENT_VERTICES} are supported",
                    g.vertices.len()
                )));
            }
            ambient_objects(g)
        }
        (GraphVariant::Ambient, GraphInput::Bound(_)) => {
            return Err(Error::Precondition("the ambient variant needs a graph".into()))
        }
        (_, GraphInput::Bound(b)) => {
            if b > MAX_BOUND {
                return Err(Error::Precondition(format!(
                    "vertex bound {b} exceeds {MAX_BOUND}"
                )));
            }
            labelled_objects(b)
        }
        (_, GraphInput::Ambient(_)) => {
            return Err(Error::Precondition("this variant takes a vertex bound".into()))
        }
    };
    let mut mors = Vec::new();
    let mut h_names = Vec::new();
    let mut v_names = Vec::new();
    for (i, a) in objs.iter().enumerate() {
        for (j, b) in objs.iter().enumerate() {
            for map in injections(a.verts.len(), b.verts.len()) {
                let ok = match variant {
                    GraphVariant::Ambient => {
                        map.iter().zip(&a.verts).all(|(&m, &v)| b.verts[m] == v)
                            && full(a, b, &map)
                    }
                    GraphVariant::VertexPushout => full(a, b, &map),
                    GraphVariant::GraphPushout => a
                        .edges
                        .iter()
                        .all(|&(x, y)| has_edge(&b.edges, map[x], map[y])),
                };
                if !ok {
                    continue;
                }
                let label = if variant == GraphVariant::Ambient {
                    String::new()
                } else {
                    format!("[{}]", map_label(&map))
                };
                h_names.push(format!("{}>{}{label}", a.name, b.name));
                v_names.push(format!("{}>>{}{label}", b.name, a.name));
                mors.push(PointMor { src: i, dst: j, map, sign: 1 });
            }
        }
    }
    let rule = match variant {
        GraphVariant::GraphPushout => {
            SquareRule::GraphPushout(objs.iter().map(|o| o.edges.clone()).collect())
        }
        _ => SquareRule::Pushout,
    };
    let data = PointData {
        objects: objs.iter().map(|o| o.name.clone()).collect(),
        sizes: objs.iter().map(|o| o.verts.len()).collect(),
        mors,
        h_names,
        v_names,
    };
    Ok(build(data, rule, 0).sq)
}

fn full(a: &Obj, b: &Obj, map: &[usize]) -> bool {
    (0..a.verts.len()).all(|x| {
        (x + 1..a.verts.len())
            .all(|y| has_edge(&a.edges, x, y) == has_edge(&b.edges, map[x], map[y]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::{validate_squares_category, weak_equivalences};

    #[test]
    fn single_edge_has_five_subgraphs() {
        let g = GraphData::single_edge();
        let d = graph_squares(GraphVariant::Ambient, GraphInput::Ambient(&g)).unwrap();
        assert_eq!(d.n_objects(), 5);
        let r = validate_squares_category(&d);
        assert!(r.passed(), "{r}");
        let w = weak_equivalences(&d);
        assert!(w.vweq.keys().all(|&u| d.v().is_identity(u)));
        assert!(w.hweq.keys().all(|&f| d.h().is_identity(f)));
    }

    #[test]
    fn vertex_pushout_weqs_are_isomorphisms() {
        let d = graph_squares(GraphVariant::VertexPushout, GraphInput::Bound(3)).unwrap();
        assert!(validate_squares_category(&d).passed());
        let w = weak_equivalences(&d);
        assert!(w.vweq.keys().all(|&u| d.v().is_invertible(u)));
        let isos = d.v().morphisms().filter(|&u| d.v().is_invertible(u)).count();
        assert_eq!(w.vweq.len(), isos);
        assert!(w.vweq.keys().any(|&u| !d.v().is_identity(u)));
    }

    #[test]
    fn graph_pushout_variant_validates() {
        let d = graph_squares(GraphVariant::GraphPushout, GraphInput::Bound(2)).unwrap();
        let r = validate_squares_category(&d);
        assert!(r.passed(), "{r}");
    }
}
