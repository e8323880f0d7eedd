use std::sync::Arc;

use sqcat::catcore::{poset_category, PullbackMode};
use sqcat::constructions::{ob_s, t_simplicial};
use sqcat::double::{
    check_completion_axioms, check_isostable, opposite_vertical, validate_squares_category, CompletionData,
    CompletionMode, FlatDoubleCat, Square,
};
use sqcat::examples::{finset_squares, graph_squares, interval_polytopes, partial_monoid_squares, GraphInput, GraphVariant};
use sqcat::simplicial::{check_2segal_comparisons, check_2segal_groupoids, check_segal, PartialMonoid, SegalDegree};
use sqcat::Error;

#[test]
fn object_nerve_of_finite_sets_is_not_set_level_two_segal() {
    let (d, _) = finset_squares(2);
    let r = check_segal(&ob_s(&d, 3), SegalDegree::Two);
    assert!(!r.passed());
    let first = r.first_failure().unwrap();
    assert_eq!(first.label, "n=3 (0,2)");
    assert!(first.detail.contains("same image"), "{r}");
}

#[test]
fn chain_levels_are_not_groupoids_but_compare_as_iso_commas() {
    let (d, _) = finset_squares(2);
    let t = t_simplicial(&d, 3);
    match check_2segal_groupoids(&t) {
        Err(Error::NotGroupoid { level, .. }) => assert_eq!(level, 0),
        other => panic!("expected a groupoid failure, got {other:?}"),
    }
    let r = check_2segal_comparisons(&t, PullbackMode::General).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn graph_pushouts_leave_a_span_incomplete() {
    let d = graph_squares(GraphVariant::GraphPushout, GraphInput::Bound(2)).unwrap();
    let top = d.h().find_morphism("G1[]>G2[12][1]").unwrap();
    let left = d.v().find_morphism("G1[]>>G0[][]").unwrap();
    assert!(d.completions_of_span(top, left).is_empty());
    let comp = CompletionData::search(&d, CompletionMode::ProtoWaldhausen);
    assert!(check_completion_axioms(&d, &comp, CompletionMode::ProtoWaldhausen).is_err());
}

#[test]
fn builders_that_are_isostable() {
    let (f, comp) = finset_squares(2);
    assert!(check_isostable(&f, &comp).unwrap().passed());
    let iv = interval_polytopes(1, 2);
    let comp = CompletionData::search(&iv, CompletionMode::Stable);
    assert!(check_isostable(&iv, &comp).unwrap().passed());
    let pm = partial_monoid_squares(&PartialMonoid::one_x()).unwrap();
    let comp = CompletionData::search(&pm, CompletionMode::Stable);
    assert!(check_isostable(&pm, &comp).unwrap().passed());
}

/// Two objects with `0 → 1` in both directions; `0` is initial for both.
#[test]
fn flipping_a_doubly_initial_point() {
    let c = Arc::new(poset_category(2, |a, b| a <= b));
    let mut squares = Vec::new();
    for top in c.morphisms() {
        for left in c.morphisms() {
            for right in c.morphisms() {
                for bottom in c.morphisms() {
                    let ok = c.src(top) == c.src(left)
                        && c.dst(top) == c.src(right)
                        && c.dst(left) == c.src(bottom)
                        && c.dst(right) == c.dst(bottom);
                    if ok {
                        squares.push(Square::new(top, left, right, bottom));
                    }
                }
            }
        }
    }
    let base = FlatDoubleCat::new(c.clone(), c.clone(), squares);
    let flipped = opposite_vertical(&base, 0).unwrap();
    let r = validate_squares_category(&flipped);
    assert!(r.passed(), "{r}");
    assert!(opposite_vertical(&base, 1).is_err());
}
