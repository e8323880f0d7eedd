use super::concrete::{build, injections, map_label, Built, PointData, PointMor, SquareRule};
use crate::double::{spans, cospans, CompletionData, CompletionMode, Square, SquaresCat};

fn finset_built(n_max: usize) -> Built {
    let mut mors = Vec::new();
    let mut h_names = Vec::new();
    let mut v_names = Vec::new();
    for a in 0..=n_max {
        for b in a..=n_max {
            for map in injections(a, b) {
                let label = map_label(&map);
                h_names.push(format!("{a}>{b}[{label}]"));
                v_names.push(format!("{b}>>{a}[{label}]"));
                mors.push(PointMor { src: a, dst: b, map, sign: 1 });
            }
        }
    }
    let data = PointData {
        objects: (0..=n_max).map(|k| k.to_string()).collect(),
        sizes: (0..=n_max).collect(),
        mors,
        h_names,
        v_names,
    };
    build(data, SquareRule::Pushout, 0)
}

/// Finite sets `{1..k}` for `k ≤ n_max` with injections and their
/// opposites; squares are pushouts of sets. Completions take complements.
pub fn finset_squares(n_max: usize) -> (SquaresCat, CompletionData) {
    let built = finset_built(n_max);
    let comp = complement_completions(&built);
    let comp = comp.completed_by_search(&built.sq, CompletionMode::Stable);
    (built.sq, comp)
}

fn complement_completions(built: &Built) -> CompletionData {
    let d = &built.sq;
    let mut data = CompletionData::default();
    for sp in spans(d) {
        let f = &built.mors[sp.top];
        let u = &built.mors[sp.left];
        let (a, b, c) = (f.src, f.dst, u.src);
        let dd = c + b - a;
        let mut vmap: Vec<usize> = u.map.iter().map(|&i| f.map[i]).collect();
        vmap.extend((0..b).filter(|x| !f.map.contains(x)));
        let gmap: Vec<usize> = (0..c).collect();
        let (Some(v), Some(g)) = (built.find(dd, b, &vmap, 1), built.find(c, dd, &gmap, 1)) else {
            continue;
        };
        let s = Square::new(sp.top, sp.left, v, g);
        if d.is_square(&s) {
            data.span_complete.insert(sp, s);
        }
    }
    for cs in cospans(d) {
        let v = &built.mors[cs.right];
        let g = &built.mors[cs.bottom];
        let (dd, b, c) = (v.src, v.dst, g.src);
        let a = b - dd + c;
        let mut fmap: Vec<usize> = g.map.iter().map(|&i| v.map[i]).collect();
        fmap.extend((0..b).filter(|x| !v.map.contains(x)));
        let umap: Vec<usize> = (0..c).collect();
        let (Some(f), Some(u)) = (built.find(a, b, &fmap, 1), built.find(c, a, &umap, 1)) else {
            continue;
        };
        let s = Square::new(f, u, cs.right, cs.bottom);
        if d.is_square(&s) {
            data.cospan_complete.insert(cs, s);
        }
    }
    data
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::{check_completion_axioms, check_isostable, validate_squares_category, weak_equivalences};

    #[test]
    fn finset_one_counts() {
        let (d, _) = finset_squares(1);
        assert_eq!(d.n_objects(), 2);
        assert_eq!(d.h().n_morphisms(), 3);
        assert_eq!(d.v().n_morphisms(), 3);
        assert!(validate_squares_category(&d).passed());
    }

    #[test]
    fn finset_zero_is_point() {
        let (d, _) = finset_squares(0);
        assert_eq!(d.n_objects(), 1);
        assert_eq!(d.squares().len(), 1);
    }

    #[test]
    fn finset_two_is_isostable() {
        let (d, comp) = finset_squares(2);
        let r = validate_squares_category(&d);
        assert!(r.passed(), "{r}");
        let r = check_completion_axioms(&d, &comp, CompletionMode::Stable).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_isostable(&d, &comp).unwrap();
        assert!(r.passed(), "{r}");
        let w = weak_equivalences(&d);
        for &u in w.vweq.keys() {
            assert_eq!(d.v().src(u), d.v().dst(u));
        }
        assert_eq!(w.vweq.len(), 1 + 1 + 2);
    }
}
