use super::pmonoid::PartialMonoid;
use super::sset::{need_bound, TruncSSet};
use crate::catcore::{FinCat, MorId};
use crate::error::Result;

fn chains(c: &FinCat, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return c.objects().map(|o| vec![o]).collect();
    }
    let mut out: Vec<Vec<usize>> = c.morphisms().map(|m| vec![m]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for ch in &out {
            let last = *ch.last().unwrap();
            let mut ext: Vec<MorId> = c.out_of(c.dst(last)).to_vec();
            ext.sort_unstable();
            for m in ext {
                let mut e = ch.clone();
                e.push(m);
                next.push(e);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// The nerve of `c` truncated at `bound`. An `n`-simplex is a chain
/// `(f_1, …, f_n)` with `f_{k+1}` composable after `f_k`.
pub fn nerve(c: &FinCat, bound: usize) -> TruncSSet {
    let levels: Vec<Vec<Vec<usize>>> = (0..=bound).map(|n| chains(c, n)).collect();
    TruncSSet::from_tuples(
        levels,
        |n, i, t| {
            if n == 1 {
                return vec![if i == 0 { c.dst(t[0]) } else { c.src(t[0]) }];
            }
            let mut t = t.clone();
            if i == 0 {
                t.remove(0);
            } else if i == n {
                t.pop();
            } else {
                let g = t.remove(i);
                t[i - 1] = c.comp(g, t[i - 1]);
            }
            t
        },
        |n, i, t| {
            if n == 0 {
                return vec![c.id(t[0])];
            }
            let obj = if i < n { c.src(t[i]) } else { c.dst(t[n - 1]) };
            let mut t = t.clone();
            t.insert(i, c.id(obj));
            t
        },
        |n, t| {
            if n == 0 {
                c.object_name(t[0]).to_string()
            } else if n == 1 {
                c.morphism_name(t[0]).to_string()
            } else {
                let parts: Vec<&str> = t.iter().map(|&m| c.morphism_name(m)).collect();
                format!("({})", parts.join(","))
            }
        },
    )
}

/// The nerve of a partial monoid: `k`-simplices are the tuples whose
/// left-to-right products are all defined.
pub fn nerve_partial_monoid(m: &PartialMonoid, bound: usize) -> TruncSSet {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    let mut prods: Vec<Option<usize>> = vec![Some(m.unit)];
    let mut cur = vec![vec![]];
    for _ in 1..=bound {
        let mut next = Vec::new();
        let mut next_prods = Vec::new();
        for (t, p) in cur.iter().zip(&prods) {
            for a in 0..m.len() {
                if let Some(q) = p.and_then(|p| m.mul(p, a)) {
                    let mut e = t.clone();
                    e.push(a);
                    next.push(e);
                    next_prods.push(Some(q));
                }
            }
        }
        levels.push(next.clone());
        cur = next;
        prods = next_prods;
    }
    TruncSSet::from_tuples(
        levels,
        |n, i, t| {
            let mut t = t.clone();
            if i == 0 {
                t.remove(0);
            } else if i == n {
                t.pop();
            } else {
                let b = t.remove(i);
                t[i - 1] = m.mul(t[i - 1], b).expect("tuple products are defined");
            }
            t
        },
        |_, i, t| {
            let mut t = t.clone();
            t.insert(i, m.unit);
            t
        },
        |n, t| {
            if n == 0 {
                "*".into()
            } else if n == 1 {
                m.name(t[0]).to_string()
            } else {
                let parts: Vec<&str> = t.iter().map(|&a| m.name(a)).collect();
                format!("({})", parts.join(","))
            }
        },
    )
}

/// Level `n` is level `2n+1` of the input, with vertex `i` paired with
/// vertex `2n+1-i`.
pub fn edgewise_subdivision(x: &TruncSSet) -> Result<TruncSSet> {
    need_bound(x.bound(), 1)?;
    let bound = (x.bound() - 1) / 2;
    let names = (0..=bound).map(|n| x.names[2 * n + 1].clone()).collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=bound {
        let top = 2 * n + 1;
        let fs = (0..=n)
            .map(|i| {
                (0..x.size(top))
                    .map(|s| x.face(top - 1, i, x.face(top, top - i, s)))
                    .collect()
            })
            .collect();
        faces.push(fs);
    }
    let mut degens = Vec::new();
    for n in 0..bound {
        let top = 2 * n + 1;
        let ds = (0..=n)
            .map(|i| {
                (0..x.size(top))
                    .map(|s| x.degen(top + 1, i, x.degen(top, top - i, s)))
                    .collect()
            })
            .collect();
        degens.push(ds);
    }
    Ok(TruncSSet { names, faces, degens })
}

/// Objects are the morphisms of `c`; a morphism `f → g` is a pair `(p, q)`
/// with `f = q∘g∘p`.
pub fn twisted_arrow_category(c: &FinCat) -> FinCat {
    let mut tw = FinCat::new();
    for f in c.morphisms() {
        tw.add_object(c.morphism_name(f).to_string());
    }
    let mut pairs = Vec::new();
    let mut lookup = std::collections::HashMap::new();
    for f in c.morphisms() {
        for g in c.morphisms() {
            for &p in c.hom(c.src(f), c.src(g)) {
                for &q in c.hom(c.dst(g), c.dst(f)) {
                    if c.comp(q, c.comp(g, p)) == f {
                        let name = format!("<{},{}>:{}", c.morphism_name(p), c.morphism_name(q), c.morphism_name(f));
                        let m = tw.add_morphism(name, f, g);
                        lookup.insert((f, g, p, q), m);
                        pairs.push((p, q));
                        if c.is_identity(p) && c.is_identity(q) && f == g {
                            tw.set_identity(f, m);
                        }
                    }
                }
            }
        }
    }
    let ends: Vec<_> = tw.morphisms().map(|m| (tw.src(m), tw.dst(m))).collect();
    tw.fill_composites(|_, b, a| {
        let (p, q) = pairs[a];
        let (p2, q2) = pairs[b];
        lookup[&(ends[a].0, ends[b].1, c.comp(p2, p), c.comp(q, q2))]
    });
    tw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{monoid_category, terminal_category, validate_category};
    use crate::simplicial::{find_isomorphism, validate_truncated};

    fn z2() -> FinCat {
        monoid_category(&["e", "g"], &[vec![0, 1], vec![1, 0]])
    }

    #[test]
    fn nerve_sizes() {
        let x = nerve(&z2(), 3);
        assert_eq!(x.sizes(), vec![1, 2, 4, 8]);
        assert!(validate_truncated(&x).passed());
        let p = nerve(&terminal_category(), 3);
        assert_eq!(p.sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn partial_monoid_nerve_sizes() {
        let x = nerve_partial_monoid(&PartialMonoid::one_x(), 4);
        assert_eq!(x.sizes(), vec![1, 2, 3, 4, 5]);
        assert!(validate_truncated(&x).passed());
        let sd = edgewise_subdivision(&x.truncate(3)).unwrap();
        assert_eq!(sd.sizes(), vec![2, 4]);
        assert!(validate_truncated(&sd).passed());
    }

    #[test]
    fn total_monoid_matches_nerve() {
        let x = nerve_partial_monoid(&PartialMonoid::cyclic(2), 3);
        let y = nerve(&z2(), 3);
        assert!(find_isomorphism(&x, &y).is_some());
    }

    #[test]
    fn subdivision_is_twisted_arrows() {
        let c = crate::catcore::poset_category(2, |a, b| a <= b);
        let tw = twisted_arrow_category(&c);
        assert!(validate_category(&tw).passed());
        let sd = edgewise_subdivision(&nerve(&c, 5)).unwrap();
        let n = nerve(&tw, 2);
        assert!(find_isomorphism(&sd, &n).is_some());
    }
}
