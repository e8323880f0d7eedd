use proptest::prelude::*;
use sqcat::catcore::{monoid_category, poset_category, validate_category};
use sqcat::constructions::{double_nerve_diag, ob_s};
use sqcat::examples::{finset_squares, partial_monoid_squares, twisted_arrow_squares};
use sqcat::simplicial::{
    check_segal, edgewise_subdivision, find_isomorphism, nerve, nerve_partial_monoid, twisted_arrow_category,
    validate_truncated, PartialMonoid, SegalDegree,
};

/// Random order relations on `n` points given by a subset of `i < j` pairs
/// closed transitively.
fn poset(n: usize, mask: u32) -> impl Fn(usize, usize) -> bool {
    let mut le = vec![vec![false; n]; n];
    let mut bit = 0;
    for i in 0..n {
        le[i][i] = true;
        for j in i + 1..n {
            le[i][j] = mask & (1 << bit) != 0;
            bit += 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    move |a, b| le[a][b]
}

proptest! {
    #[test]
    fn nerves_of_posets_are_simplicial_and_segal(n in 1usize..4, mask in any::<u32>()) {
        let c = poset_category(n, poset(n, mask));
        prop_assert!(validate_category(&c).passed());
        let x = nerve(&c, 4);
        prop_assert!(validate_truncated(&x).passed());
        prop_assert!(check_segal(&x, SegalDegree::One).passed());
        prop_assert!(check_segal(&x, SegalDegree::Two).passed());
        let sd = edgewise_subdivision(&nerve(&c, 5)).unwrap();
        prop_assert!(validate_truncated(&sd).passed());
        let tw = nerve(&twisted_arrow_category(&c), 2);
        prop_assert!(find_isomorphism(&sd, &tw).is_some());
    }

    #[test]
    fn cyclic_nerves_match_group_nerves(n in 1usize..4) {
        let m = PartialMonoid::cyclic(n);
        prop_assert!(m.validate().passed());
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names: Vec<String> = (0..n).map(|k| k.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let c = monoid_category(&refs, &table);
        let x = nerve_partial_monoid(&m, 3);
        prop_assert!(find_isomorphism(&x, &nerve(&c, 3)).is_some());
    }
}

#[test]
fn edgewise_claim_for_one_x() {
    let m = PartialMonoid::one_x();
    let d = partial_monoid_squares(&m).unwrap();
    let diag = double_nerve_diag(&d, 2);
    let sd = edgewise_subdivision(&nerve_partial_monoid(&m, 5)).unwrap();
    assert!(validate_truncated(&diag).passed());
    let iso = find_isomorphism(&diag, &sd).expect("levelwise isomorphism");
    assert!(sqcat::simplicial::is_isomorphism(&diag, &sd, &iso));
}

#[test]
fn twisted_arrow_squares_count_morphisms() {
    let c = poset_category(3, |a, b| a <= b);
    let (t, marked) = twisted_arrow_squares(&c).unwrap();
    assert_eq!(t.n_objects(), c.n_morphisms());
    assert!(marked < t.n_objects());
}

#[test]
fn object_nerves_validate() {
    let (d, _) = finset_squares(2);
    let x = ob_s(&d, 3);
    assert!(validate_truncated(&x).passed());
    assert_eq!(x.sizes(), vec![1, 3, 9, 30]);
}
