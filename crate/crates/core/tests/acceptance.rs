#[path = "common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use common::{hermite_rows, in_lattice, rank_and_torsion_order};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqcat::catcore::is_groupoid;
use sqcat::constructions::{
    comparison_witnesses, double_nerve_diag, forgetful_equivalence, ob_s, s_simplicial, t_simplicial, Direction,
};
use sqcat::double::{check_isostable, validate_squares_category, SquaresCat};
use sqcat::examples::{
    finset_squares, graph_squares, interval_polytopes, partial_monoid_squares, path_double_category, GraphData,
    GraphInput, GraphVariant,
};
use sqcat::k0::{check_k0_additivity, k0_group, relation_rows, smith_normal_form, IntMatrix};
use sqcat::simplicial::{
    check_2segal_groupoids, check_segal, check_segal1_in_cat, edgewise_subdivision, find_isomorphism,
    nerve_partial_monoid, PartialMonoid, SegalDegree, TruncSSet,
};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Outcome {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

/// Checked here rather than trusting the search: the bijection commutes
/// with every face and degeneracy.
fn commutes(x: &TruncSSet, y: &TruncSSet, iso: &[Vec<usize>]) -> bool {
    let bijective = (0..=x.bound()).all(|n| {
        let mut seen = vec![false; y.size(n)];
        iso[n].len() == x.size(n) && iso[n].iter().all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
    });
    bijective
        && (1..=x.bound()).all(|n| {
            (0..x.size(n)).all(|s| (0..=n).all(|i| iso[n - 1][x.face(n, i, s)] == y.face(n, i, iso[n][s])))
        })
        && (0..x.bound()).all(|n| {
            (0..x.size(n)).all(|s| (0..=n).all(|i| iso[n + 1][x.degen(n, i, s)] == y.degen(n, i, iso[n][s])))
        })
}

fn pmonoid() -> Result<SquaresCat, String> {
    partial_monoid_squares(&PartialMonoid::one_x()).map_err(|e| e.to_string())
}

fn axiom_suite() -> Outcome {
    let z2 = nerve_partial_monoid(&PartialMonoid::cyclic(2), 4);
    let builders: Vec<(&str, Box<dyn Fn() -> Result<SquaresCat, String>>)> = vec![
        ("finset(2)", Box::new(|| Ok(finset_squares(2).0))),
        ("pmonoid {1,x}", Box::new(pmonoid)),
        (
            "single edge",
            Box::new(|| {
                graph_squares(GraphVariant::Ambient, GraphInput::Ambient(&GraphData::single_edge()))
                    .map_err(|e| e.to_string())
            }),
        ),
        ("intervals(1,2)", Box::new(|| Ok(interval_polytopes(1, 2)))),
        ("path(Z/2)", Box::new(move || path_double_category(&z2).map_err(|e| e.to_string()))),
    ];
    for (name, build) in builders {
        let start = Instant::now();
        let d = build()?;
        let r = validate_squares_category(&d);
        ensure(r.passed(), || format!("{name}: {} violations", r.violations.len()))?;
        within(start, Duration::from_secs(10), name)?;
    }
    Ok(())
}

fn segal_in_cat() -> Outcome {
    let start = Instant::now();
    for (name, d) in [("finset(2)", finset_squares(2).0), ("pmonoid", pmonoid()?)] {
        let r = check_segal1_in_cat(&t_simplicial(&d, 3));
        ensure(r.passed(), || format!("{name}: {r}"))?;
        ensure(r.item("n=2").is_some() && r.item("n=3").is_some(), || format!("{name}: missing levels\n{r}"))?;
    }
    within(start, Duration::from_secs(30), "1-Segal")
}

fn edgewise() -> Outcome {
    let m = PartialMonoid::one_x();
    let d = partial_monoid_squares(&m).map_err(|e| e.to_string())?;
    let diag = double_nerve_diag(&d, 2);
    let sd = edgewise_subdivision(&nerve_partial_monoid(&m, 5)).map_err(|e| e.to_string())?;
    let iso = find_isomorphism(&diag, &sd).ok_or_else(|| format!("sizes {:?} vs {:?}", diag.sizes(), sd.sizes()))?;
    ensure(commutes(&diag, &sd, &iso), || "bijection does not commute".into())
}

fn k0_presentations() -> Outcome {
    let (d, _) = finset_squares(2);
    let k = k0_group(&d);
    let summary = k.summary();
    ensure(summary.contains("free rank 1, torsion none, [2] = 2·[1]"), || summary.clone())?;
    let rows = relation_rows(&d);
    ensure(rank_and_torsion_order(&rows) == (1, 1), || "oracle disagrees on finset(2)".into())?;
    ensure(in_lattice(&hermite_rows(&rows), &[0, 2, -1]), || "oracle: [2] != 2[1]".into())?;

    let d = pmonoid()?;
    let k = k0_group(&d);
    let x = d.h().find_object("x").ok_or("no object x")?;
    ensure(k.free_rank == 1 && k.torsion.is_empty(), || k.summary())?;
    ensure(k.generating_objects().contains(&x), || format!("[x] does not generate: {k}"))?;
    let rows = relation_rows(&d);
    ensure(rank_and_torsion_order(&rows) == (1, 1), || "oracle disagrees on pmonoid".into())?;
    let basis = hermite_rows(&rows);
    let n = d.n_objects();
    let mut ex = vec![0i64; n];
    ex[x] = 1;
    ensure(!in_lattice(&basis, &ex), || "oracle: [x] = 0".into())?;
    for a in d.objects() {
        let multiple = (-4i64..=4).any(|c| {
            let mut z = vec![0i64; n];
            z[a] += 1;
            z[x] -= c;
            in_lattice(&basis, &z)
        });
        ensure(multiple, || format!("oracle: object {a} is not a multiple of [x]"))?;
    }
    Ok(())
}

fn round_trip() -> Outcome {
    let x = nerve_partial_monoid(&PartialMonoid::cyclic(2), 4);
    let d = path_double_category(&x).map_err(|e| e.to_string())?;
    let y = ob_s(&d, 3);
    let x3 = x.truncate(3);
    let iso = find_isomorphism(&y, &x3).ok_or_else(|| format!("sizes {:?} vs {:?}", y.sizes(), x3.sizes()))?;
    ensure(commutes(&y, &x3, &iso), || "bijection does not commute".into())?;
    let r = check_segal(&y, SegalDegree::Two);
    ensure(r.passed(), || r.to_string())
}

fn isostable_pipeline() -> Outcome {
    let start = Instant::now();
    let (d, comp) = finset_squares(2);
    let r = check_isostable(&d, &comp).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.to_string())?;
    let s = s_simplicial(&d, 3);
    for (n, level) in s.levels.iter().enumerate() {
        ensure(is_groupoid(level).is_groupoid, || format!("S_{n} is not a groupoid"))?;
    }
    let r = check_2segal_groupoids(&s).map_err(|e| e.to_string())?;
    for label in ["n=3 (0,2)", "n=3 (1,3)"] {
        ensure(r.item(label).is_some_and(|i| i.passed), || format!("{label}\n{r}"))?;
    }
    within(start, Duration::from_secs(300), "pipeline")
}

fn forgetful() -> Outcome {
    let (d, comp) = finset_squares(2);
    for dir in [Direction::H, Direction::V] {
        let r = forgetful_equivalence(&d, &comp, 2, dir).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.item("U is an equivalence").is_some(), || r.to_string())?;
    }
    Ok(())
}

fn witnesses() -> Outcome {
    let (d, comp) = finset_squares(2);
    for n in 1..=2 {
        let r = comparison_witnesses(&d, &comp, n).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.items.len() >= 9, || r.to_string())?;
    }
    Ok(())
}

fn additivity() -> Outcome {
    let (d, _) = finset_squares(2);
    let r = check_k0_additivity(&d);
    ensure(r.passed() && r.item("maps agree on all generators").is_some(), || r.to_string())
}

fn snf_properties() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let entries: Vec<i64> = (0..16).map(|_| rng.gen_range(-9..=9)).collect();
        let a = IntMatrix::from_i64(4, 4, &entries);
        let r = smith_normal_form(&a);
        ensure(r.verify(&a), || format!("fails on\n{a}"))?;
        ensure(r.u.mul(&a).mul(&r.v) == r.d, || format!("U A V != D on\n{a}"))?;
    }
    within(start, Duration::from_secs(5), "100 matrices")
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axiom suite on five builders", axiom_suite),
        ("strict 1-Segal in Cat for T", segal_in_cat),
        ("diagonal of {1,x} is its edgewise subdivision", edgewise),
        ("K0 presentations against the oracle", k0_presentations),
        ("path round trip on the Z/2 nerve", round_trip),
        ("isostability to groupoidal 2-Segal", isostable_pipeline),
        ("forgetful functors are equivalences", forgetful),
        ("comparison witnesses at n <= 2", witnesses),
        ("K0 additivity on extensions", additivity),
        ("Smith normal form on 100 random matrices", snf_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let t = start.elapsed();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {}", i + 1, why.lines().next().unwrap_or(""));
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
