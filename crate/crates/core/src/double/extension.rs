use std::collections::HashMap;
use std::sync::Arc;

use super::{FlatDoubleCat, Square, SquaresCat};
use crate::catcore::{FinCat, MorId};

/// Which faces a morphism between squares must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionVariant {
    /// Same-direction faces commute; mixed faces are unconstrained.
    Pointwise,
    /// Additionally every mixed face must be a square.
    Strict,
}

type Quad = [MorId; 4];

struct MorTable {
    cat: FinCat,
    comps: Vec<Quad>,
    lookup: HashMap<(usize, Quad), Vec<(usize, MorId)>>,
    exact: HashMap<(usize, usize, Quad), MorId>,
}

fn build_direction(
    d: &SquaresCat,
    horizontal: bool,
    variant: ExtensionVariant,
) -> MorTable {
    let (h, v) = (d.h(), d.v());
    let cat_of = if horizontal { h } else { v };
    let sq = d.squares();
    let mut cat = FinCat::new();
    for s in sq {
        cat.add_object(d.square_name(s));
    }
    let mut comps = Vec::new();
    let mut lookup: HashMap<(usize, Quad), Vec<(usize, MorId)>> = HashMap::new();
    let mut exact = HashMap::new();
    for (i, s1) in sq.iter().enumerate() {
        let c1 = d.corners(s1);
        for (j, s2) in sq.iter().enumerate() {
            let c2 = d.corners(s2);
            let homs: Vec<&[MorId]> = (0..4).map(|p| cat_of.hom(c1[p], c2[p])).collect();
            if homs.iter().any(|x| x.is_empty()) {
                continue;
            }
            for &x0 in homs[0] {
                for &x1 in homs[1] {
                    for &x2 in homs[2] {
                        for &x3 in homs[3] {
                            let q = [x0, x1, x2, x3];
                            if !admissible(d, horizontal, variant, s1, s2, &q) {
                                continue;
                            }
                            let name = q
                                .iter()
                                .map(|&m| cat_of.morphism_name(m))
                                .collect::<Vec<_>>()
                                .join(",");
                            let m = cat.add_morphism(format!("[{name}]:{i}->{j}"), i, j);
                            comps.push(q);
                            lookup.entry((i, q)).or_default().push((j, m));
                            exact.insert((i, j, q), m);
                            if i == j && q.iter().zip(c1).all(|(&x, o)| x == cat_of.id(o)) {
                                cat.set_identity(i, m);
                            }
                        }
                    }
                }
            }
        }
    }
    let ends: Vec<(usize, usize)> = cat.morphisms().map(|m| (cat.src(m), cat.dst(m))).collect();
    cat.fill_composites(|_, g, f| {
        let q: Quad = std::array::from_fn(|p| cat_of.comp(comps[g][p], comps[f][p]));
        exact[&(ends[f].0, ends[g].1, q)]
    });
    MorTable { cat, comps, lookup, exact }
}

fn admissible(
    d: &SquaresCat,
    horizontal: bool,
    variant: ExtensionVariant,
    s1: &Square,
    s2: &Square,
    q: &Quad,
) -> bool {
    let (h, v) = (d.h(), d.v());
    let [a, b, c, dd] = *q;
    if horizontal {
        let same = h.comp(b, s1.top) == h.comp(s2.top, a)
            && h.comp(dd, s1.bottom) == h.comp(s2.bottom, c);
        same && (variant == ExtensionVariant::Pointwise
            || (d.has_square(a, s1.left, s2.left, c) && d.has_square(b, s1.right, s2.right, dd)))
    } else {
        let same = v.comp(c, s1.left) == v.comp(s2.left, a)
            && v.comp(dd, s1.right) == v.comp(s2.right, b);
        same && (variant == ExtensionVariant::Pointwise
            || (d.has_square(s1.top, a, b, s2.top) && d.has_square(s1.bottom, c, dd, s2.bottom)))
    }
}

/// The squares category whose objects are the squares of `d`, with
/// componentwise morphisms and pointwise squares.
pub fn extension_category(d: &SquaresCat) -> SquaresCat {
    extension_category_with(d, ExtensionVariant::Pointwise)
}

/// As [`extension_category`] with a choice of morphism condition. The result
/// is not validated; the strict variant need not be pointed.
pub fn extension_category_with(d: &SquaresCat, variant: ExtensionVariant) -> SquaresCat {
    let ht = build_direction(d, true, variant);
    let vt = build_direction(d, false, variant);
    let mut squares = Vec::new();
    for t in ht.cat.morphisms() {
        let s1 = ht.cat.src(t);
        let s2 = ht.cat.dst(t);
        for &l in vt.cat.out_of(s1) {
            let s3 = vt.cat.dst(l);
            let options: Vec<Vec<Square>> = (0..4)
                .map(|p| d.completions_of_span(ht.comps[t][p], vt.comps[l][p]))
                .collect();
            if options.iter().any(|o| o.is_empty()) {
                continue;
            }
            for a in &options[0] {
                for b in &options[1] {
                    for c in &options[2] {
                        for e in &options[3] {
                            let r = [a.right, b.right, c.right, e.right];
                            let bq = [a.bottom, b.bottom, c.bottom, e.bottom];
                            let Some(rs) = vt.lookup.get(&(s2, r)) else {
                                continue;
                            };
                            for &(s4, rm) in rs {
                                if let Some(&bm) = ht.exact.get(&(s3, s4, bq)) {
                                    squares.push(Square::new(t, l, rm, bm));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let o = d.o();
    let (ih, iv) = (d.h().id(o), d.v().id(o));
    let basepoint = d
        .square_index(&Square::new(ih, iv, iv, ih))
        .expect("identity square on the basepoint");
    let base = FlatDoubleCat::new(Arc::new(ht.cat), Arc::new(vt.cat), squares);
    SquaresCat::new(base, basepoint)
}
