mod common;

use common::{hermite_rows, in_lattice, rank_and_torsion_order};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqcat::double::SquaresCat;
use sqcat::examples::{
    finset_squares, graph_squares, interval_polytopes, partial_monoid_squares, path_double_category, GraphData,
    GraphInput, GraphVariant,
};
use sqcat::k0::{k0_group, k0_presented, relation_rows, smith_normal_form, IntMatrix};
use sqcat::simplicial::{nerve_partial_monoid, PartialMonoid};

fn builders() -> Vec<(&'static str, SquaresCat)> {
    vec![
        ("finset", finset_squares(2).0),
        ("pmonoid", partial_monoid_squares(&PartialMonoid::one_x()).unwrap()),
        (
            "graph",
            graph_squares(GraphVariant::Ambient, GraphInput::Ambient(&GraphData::single_edge())).unwrap(),
        ),
        ("graph2", graph_squares(GraphVariant::VertexPushout, GraphInput::Bound(2)).unwrap()),
        ("intervals", interval_polytopes(1, 2)),
        ("path", path_double_category(&nerve_partial_monoid(&PartialMonoid::cyclic(2), 3)).unwrap()),
    ]
}

#[test]
fn k0_matches_hermite_oracle() {
    for (name, d) in builders() {
        let rows = relation_rows(&d);
        let k = k0_group(&d);
        let (rank, order) = rank_and_torsion_order(&rows);
        assert_eq!(k.free_rank, rank, "{name}");
        let product: i128 = k.torsion.iter().map(|t| i128::try_from(t).unwrap()).product();
        assert_eq!(product, order, "{name}");
        let basis = hermite_rows(&rows);
        let n = d.n_objects();
        for a in 0..n {
            for b in 0..n {
                let mut z = vec![0i64; n];
                z[a] += 1;
                z[b] -= 2;
                let ours = k.class_equal(&[(a, 1)], &[(b, 2)]).unwrap();
                assert_eq!(ours, in_lattice(&basis, &z), "{name}: [{a}] vs 2[{b}]");
            }
        }
    }
}

#[test]
fn every_square_relation_holds_in_the_quotient() {
    for (name, d) in builders() {
        let k = k0_group(&d);
        for s in d.squares() {
            let [a, b, c, dd] = d.corners(s);
            assert!(k.class_equal(&[(a, 1), (dd, 1)], &[(b, 1), (c, 1)]).unwrap(), "{name}");
        }
        assert!(k.images[d.o()].is_zero(), "{name}");
    }
}

#[test]
fn finset_classes_are_cardinalities() {
    let (d, _) = finset_squares(2);
    let k = k0_group(&d);
    assert_eq!(k.free_rank, 1);
    assert!(k.torsion.is_empty());
    let g = &k.images[1].free[0];
    for o in d.objects() {
        assert_eq!(k.images[o].free[0], g * o as i64);
    }
}

#[test]
fn partial_monoid_x_is_nonzero() {
    let d = partial_monoid_squares(&PartialMonoid::one_x()).unwrap();
    let k = k0_group(&d);
    let x = d.h().find_object("x").unwrap();
    assert!(!k.class_equal(&[(x, 1)], &[]).unwrap());
    assert!(k.class_equal(&[(d.o(), 1)], &[]).unwrap());
}

#[test]
fn hundred_random_four_by_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let entries: Vec<i64> = (0..16).map(|_| rng.gen_range(-5..=5)).collect();
        let a = IntMatrix::from_i64(4, 4, &entries);
        assert!(smith_normal_form(&a).verify(&a), "{a}");
    }
}

proptest! {
    #[test]
    fn snf_invariants(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-9..=9)).collect();
        let a = IntMatrix::from_i64(rows, cols, &entries);
        let r = smith_normal_form(&a);
        prop_assert!(r.verify(&a));
        prop_assert_eq!(smith_normal_form(&a), r);
    }

    #[test]
    fn k0_invariant_under_relabelling(perm_seed in any::<u64>()) {
        let (d, _) = finset_squares(2);
        let rows = relation_rows(&d);
        let n = d.n_objects();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(perm_seed);
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let permuted: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                let mut p = vec![0; n];
                for (i, &x) in r.iter().enumerate() {
                    p[perm[i]] = x;
                }
                p
            })
            .collect();
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let a = k0_presented(names.clone(), &rows);
        let b = k0_presented(names, &permuted);
        prop_assert_eq!(a.free_rank, b.free_rank);
        prop_assert_eq!(&a.torsion, &b.torsion);
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(
                    a.class_equal(&[(x, 1)], &[(y, 1)]).unwrap(),
                    b.class_equal(&[(perm[x], 1)], &[(perm[y], 1)]).unwrap()
                );
            }
        }
    }
}
