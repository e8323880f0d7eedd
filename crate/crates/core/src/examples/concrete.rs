//! Squares categories whose horizontal morphisms are injections of finite
//! point sets and whose vertical morphisms are their opposites.

use std::collections::HashMap;
use std::sync::Arc;

use crate::catcore::{FinCat, MorId, ObjId};
use crate::double::{FlatDoubleCat, Square, SquaresCat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PointMor {
    pub src: ObjId,
    pub dst: ObjId,
    pub map: Vec<usize>,
    /// Orientation; always `1` for maps out of an empty object.
    pub sign: i8,
}

pub(crate) enum SquareRule {
    /// The codomain of the top map is the union of the two images, which
    /// meet exactly in the image of the corner.
    Pushout,
    /// As `Pushout`, and every edge of the pushout corner comes from one of
    /// the two images.
    GraphPushout(Vec<Vec<(usize, usize)>>),
}

pub(crate) struct PointData {
    pub objects: Vec<String>,
    pub sizes: Vec<usize>,
    /// Every horizontal morphism, identities included; closed under
    /// composition.
    pub mors: Vec<PointMor>,
    pub h_names: Vec<String>,
    pub v_names: Vec<String>,
}

pub(crate) struct Built {
    pub sq: SquaresCat,
    pub mors: Vec<PointMor>,
    pub lookup: HashMap<(ObjId, ObjId, Vec<usize>, i8), MorId>,
}

impl Built {
    pub fn find(&self, src: ObjId, dst: ObjId, map: &[usize], sign: i8) -> Option<MorId> {
        self.lookup.get(&(src, dst, map.to_vec(), sign)).copied()
    }
}

fn key(m: &PointMor) -> (ObjId, ObjId, Vec<usize>, i8) {
    (m.src, m.dst, m.map.clone(), m.sign)
}

pub(crate) fn build(data: PointData, rule: SquareRule, basepoint: ObjId) -> Built {
    let mut h = FinCat::new();
    for o in &data.objects {
        h.add_object(o.clone());
    }
    let mut lookup = HashMap::new();
    for (m, name) in data.mors.iter().zip(&data.h_names) {
        let id = h.add_morphism(name.clone(), m.src, m.dst);
        lookup.insert(key(m), id);
        if m.src == m.dst && m.sign == 1 && m.map.iter().enumerate().all(|(i, &x)| i == x) {
            h.set_identity(m.src, id);
        }
    }
    let mors = data.mors;
    let sizes = data.sizes;
    h.fill_composites(|_, g, f| {
        let (mf, mg) = (&mors[f], &mors[g]);
        let map: Vec<usize> = mf.map.iter().map(|&i| mg.map[i]).collect();
        let sign = if sizes[mf.src] == 0 { 1 } else { mf.sign * mg.sign };
        lookup[&(mf.src, mg.dst, map, sign)]
    });
    let v = h.opposite_named(|m, _| data.v_names[m].clone());
    let mut squares = Vec::new();
    for f in h.morphisms() {
        let (a, b) = (h.src(f), h.dst(f));
        let mf = &mors[f];
        for &u in h.into_obj(a) {
            let c = h.src(u);
            let mu = &mors[u];
            let fu: Vec<usize> = mu.map.iter().map(|&i| mf.map[i]).collect();
            for &vm in h.into_obj(b) {
                let dd = h.src(vm);
                let mv = &mors[vm];
                let mut inv = vec![usize::MAX; sizes[b]];
                for (i, &x) in mv.map.iter().enumerate() {
                    inv[x] = i;
                }
                let Some(gmap) = fu.iter().map(|&x| (inv[x] != usize::MAX).then_some(inv[x])).collect::<Option<Vec<_>>>() else {
                    continue;
                };
                let candidates: Vec<MorId> = if sizes[c] == 0 {
                    h.hom(c, dd).to_vec()
                } else {
                    let sign = mf.sign * mu.sign * mv.sign;
                    lookup.get(&(c, dd, gmap, sign)).into_iter().copied().collect()
                };
                for g in candidates {
                    if square_holds(&rule, &sizes, mf, mv, &fu, b) {
                        squares.push(Square::new(f, u, vm, g));
                    }
                }
            }
        }
    }
    let base = FlatDoubleCat::new(Arc::new(h), Arc::new(v), squares);
    Built {
        sq: SquaresCat::new(base, basepoint),
        mors,
        lookup,
    }
}

fn square_holds(
    rule: &SquareRule,
    sizes: &[usize],
    f: &PointMor,
    v: &PointMor,
    fu: &[usize],
    b: ObjId,
) -> bool {
    let n = sizes[b];
    let mut in_f = vec![false; n];
    let mut in_v = vec![false; n];
    for &x in &f.map {
        in_f[x] = true;
    }
    for &x in &v.map {
        in_v[x] = true;
    }
    let mut in_fu = vec![false; n];
    for &x in fu {
        in_fu[x] = true;
    }
    let vertex_ok = (0..n).all(|x| (in_f[x] || in_v[x]) && ((in_f[x] && in_v[x]) == in_fu[x]));
    if !vertex_ok {
        return false;
    }
    match rule {
        SquareRule::Pushout => true,
        SquareRule::GraphPushout(edges) => {
            let norm = |x: usize, y: usize| (x.min(y), x.max(y));
            let mut covered: Vec<(usize, usize)> = edges[f.src]
                .iter()
                .map(|&(x, y)| norm(f.map[x], f.map[y]))
                .chain(edges[v.src].iter().map(|&(x, y)| norm(v.map[x], v.map[y])))
                .collect();
            covered.sort_unstable();
            edges[b].iter().all(|&(x, y)| covered.binary_search(&norm(x, y)).is_ok())
        }
    }
}

/// All injective maps `0..a → 0..b`, in lexicographic order.
pub(crate) fn injections(a: usize, b: usize) -> Vec<Vec<usize>> {
    fn go(a: usize, b: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for x in 0..b {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(a, b, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a <= b {
        go(a, b, &mut Vec::new(), &mut vec![false; b], &mut out);
    }
    out
}

pub(crate) fn map_label(map: &[usize]) -> String {
    map.iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}
