use std::collections::{HashMap, HashSet};

use super::sset::{TruncSCat, TruncSSet};
use crate::catcore::{
    check_functor_equivalence, is_groupoid, pseudo_pullback, strict_pullback, Functor, PullbackMode,
};
use crate::error::{Error, Result};
use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegalDegree {
    One,
    Two,
}

/// The two reduced 2-Segal positions at level `n`: the vertex sets of the
/// two pieces and the positions of the shared edge inside each.
fn positions(n: usize) -> [(String, Vec<usize>, Vec<usize>, [usize; 2], [usize; 2]); 2] {
    let mut b0 = vec![0];
    b0.extend(2..=n);
    let mut a1: Vec<usize> = (0..=n - 2).collect();
    a1.push(n);
    [
        ("(0,2)".into(), vec![0, 1, 2], b0, [0, 2], [0, 1]),
        (format!("({},{})", n - 2, n), a1, vec![n - 2, n - 1, n], [n - 2, n - 1], [0, 2]),
    ]
}

fn spine_tuples(x: &TruncSSet, n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..x.size(1)).map(|e| vec![e]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for t in &out {
            let end = x.face(1, 0, *t.last().unwrap());
            for e in 0..x.size(1) {
                if x.face(1, 1, e) == end {
                    let mut u = t.clone();
                    u.push(e);
                    next.push(u);
                }
            }
        }
        out = next;
    }
    out
}

/// Compares the image of level `n` under `key` with the set `target`.
fn compare_with(
    x: &TruncSSet,
    n: usize,
    key: impl Fn(usize) -> Vec<usize>,
    target: &[Vec<usize>],
    show: impl Fn(&[usize]) -> String,
) -> (bool, String) {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in 0..x.size(n) {
        let k = key(s);
        if let Some(&other) = seen.get(&k) {
            return (
                false,
                format!(
                    "{} and {} have the same image {}",
                    x.names[n][other],
                    x.names[n][s],
                    show(&k)
                ),
            );
        }
        seen.insert(k, s);
    }
    let target_set: HashSet<&Vec<usize>> = target.iter().collect();
    if let Some(s) = seen.iter().find(|(k, _)| !target_set.contains(k)).map(|(_, &s)| s) {
        return (false, format!("{} maps outside the pullback", x.names[n][s]));
    }
    if let Some(missing) = target.iter().find(|t| !seen.contains_key(*t)) {
        return (
            false,
            format!(
                "{} simplices, {} in the pullback; {} is not hit",
                x.size(n),
                target.len(),
                show(missing)
            ),
        );
    }
    (true, format!("{} simplices, bijective", x.size(n)))
}

/// Exact set-level Segal conditions up to the truncation bound.
pub fn check_segal(x: &TruncSSet, degree: SegalDegree) -> CheckReport {
    let bound = x.bound();
    let mut r = match degree {
        SegalDegree::One => CheckReport::new("1-Segal (spine maps)"),
        SegalDegree::Two => CheckReport::new("2-Segal (reduced positions)"),
    };
    r.note("set level: homotopy pullbacks are strict pullbacks");
    r.note(format!("verified up to level {bound}"));
    match degree {
        SegalDegree::One => {
            for n in 2..=bound {
                let target = spine_tuples(x, n);
                let show = |t: &[usize]| {
                    let parts: Vec<&str> = t.iter().map(|&e| x.names[1][e].as_str()).collect();
                    format!("[{}]", parts.join(", "))
                };
                let key = |s| (0..n).map(|k| x.restrict(n, s, &[k, k + 1])).collect();
                let (ok, detail) = compare_with(x, n, key, &target, show);
                r.push(format!("n={n}"), ok, detail);
            }
        }
        SegalDegree::Two => {
            for n in 3..=bound {
                for (label, a, b, ea, eb) in positions(n) {
                    let (la, lb) = (a.len() - 1, b.len() - 1);
                    let mut target = Vec::new();
                    for y in 0..x.size(la) {
                        let e = x.restrict(la, y, &ea);
                        for z in 0..x.size(lb) {
                            if x.restrict(lb, z, &eb) == e {
                                target.push(vec![y, z]);
                            }
                        }
                    }
                    let show = |t: &[usize]| {
                        format!("({}, {})", x.names[la][t[0]], x.names[lb][t[1]])
                    };
                    let key = |s| vec![x.restrict(n, s, &a), x.restrict(n, s, &b)];
                    let (ok, detail) = compare_with(x, n, key, &target, show);
                    r.push(format!("n={n} {label}"), ok, detail);
                }
            }
        }
    }
    r
}

/// Runs the reduced 2-Segal comparisons through pseudo-pullbacks without
/// first requiring the levels to be groupoids.
pub fn check_2segal_comparisons(sc: &TruncSCat, mode: PullbackMode) -> Result<CheckReport> {
    let bound = sc.bound();
    let mut r = CheckReport::new("2-Segal (groupoid level)");
    r.note("groupoid level: homotopy pullbacks are pseudo-pullbacks");
    r.note(format!("verified up to level {bound}"));
    for n in 3..=bound {
        for (label, a, b, ea, eb) in positions(n) {
            let h = sc.restrict(n, &a);
            let k = sc.restrict(n, &b);
            let f = sc.restrict(a.len() - 1, &ea);
            let g = sc.restrict(b.len() - 1, &eb);
            let fh = h.then(&f);
            let gk = k.then(&g);
            if !fh.same_maps(&gk) {
                return Err(Error::Invalid(format!(
                    "restrictions to the shared edge disagree at n={n} {label}"
                )));
            }
            let pb = pseudo_pullback(&f, &g, mode)?;
            let edge_cat = f.target.clone();
            let comparison = pb.induced_functor(&h, &k, |o| edge_cat.id(fh.ob(o)))?;
            let eq = check_functor_equivalence(&comparison);
            r.push(format!("n={n} {label}"), eq.is_equivalence(), eq.to_string());
        }
    }
    Ok(r)
}

/// The reduced 2-Segal comparisons for a levelwise groupoid.
pub fn check_2segal_groupoids(sc: &TruncSCat) -> Result<CheckReport> {
    for (level, c) in sc.levels.iter().enumerate() {
        let v = is_groupoid(c);
        if !v.is_groupoid {
            return Err(Error::NotGroupoid {
                level,
                witness: v.witness.map(|m| c.morphism_name(m).to_string()).unwrap_or_default(),
            });
        }
    }
    check_2segal_comparisons(sc, PullbackMode::Groupoid)
}

/// Strict 1-Segal condition in categories: the spine functor from level `n`
/// into the iterated strict pullback of level 1 over level 0 is an
/// isomorphism, for every `2 ≤ n ≤ bound`.
pub fn check_segal1_in_cat(sc: &TruncSCat) -> CheckReport {
    let mut r = CheckReport::new("1-Segal in categories (strict)");
    r.note(format!("verified up to level {}", sc.bound()));
    let d0 = sc.face(1, 0).clone();
    let d1 = sc.face(1, 1).clone();
    for n in 2..=sc.bound() {
        let mut last = d0.clone();
        let mut spine: Functor = sc.restrict(n, &[0, 1]);
        let mut ok = true;
        for k in 1..n {
            let pb = strict_pullback(&last, &d1);
            let edge = sc.restrict(n, &[k, k + 1]);
            match pb.induced_functor(&spine, &edge) {
                Some(f) => spine = f,
                None => {
                    ok = false;
                    break;
                }
            }
            last = pb.p2.then(&d0);
        }
        let detail = if !ok {
            "spine does not land in the pullback".to_string()
        } else {
            format!(
                "{} objects, {} morphisms against {} and {}",
                spine.source.n_objects(),
                spine.source.n_morphisms(),
                spine.target.n_objects(),
                spine.target.n_morphisms()
            )
        };
        r.push(format!("n={n}"), ok && spine.is_isomorphism(), detail);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{monoid_category, poset_category};
    use crate::simplicial::{nerve, nerve_partial_monoid, PartialMonoid};

    #[test]
    fn nerves_are_segal() {
        let c = poset_category(3, |a, b| a <= b);
        let x = nerve(&c, 4);
        assert!(check_segal(&x, SegalDegree::One).passed());
        assert!(check_segal(&x, SegalDegree::Two).passed());
    }

    #[test]
    fn partial_monoid_is_only_two_segal() {
        let x = nerve_partial_monoid(&PartialMonoid::one_x(), 4);
        let r1 = check_segal(&x, SegalDegree::One);
        assert!(!r1.passed());
        assert_eq!(r1.first_failure().unwrap().label, "n=2");
        assert!(check_segal(&x, SegalDegree::Two).passed());
    }

    #[test]
    fn removing_a_three_simplex_breaks_two_segal() {
        let c = monoid_category(&["e", "g"], &[vec![0, 1], vec![1, 0]]);
        let x = nerve(&c, 3);
        let last = x.size(3) - 1;
        let mut y = x.clone();
        y.names[3].pop();
        for f in &mut y.faces[3] {
            f.pop();
        }
        assert!(y.degens[2].iter().all(|s| !s.contains(&last)));
        let r = check_segal(&y, SegalDegree::Two);
        assert_eq!(r.first_failure().unwrap().label, "n=3 (0,2)");
    }
}
