use sqcat::catcore::poset_category;
use sqcat::constructions::{s_simplicial, t_simplicial};
use sqcat::examples::finset_squares;
use sqcat::simplicial::{
    check_2segal_groupoids, check_segal, check_segal1_in_cat, nerve, nerve_partial_monoid, PartialMonoid, SegalDegree,
};

fn main() -> sqcat::Result<()> {
    let chain = nerve(&poset_category(3, |a, b| a <= b), 4);
    print!("nerve of [2], degree one: {}", check_segal(&chain, SegalDegree::One));

    let pm = nerve_partial_monoid(&PartialMonoid::one_x(), 4);
    print!("partial monoid, degree one: {}", check_segal(&pm, SegalDegree::One));
    print!("partial monoid, degree two: {}", check_segal(&pm, SegalDegree::Two));

    let (d, _) = finset_squares(2);
    print!("horizontal chains: {}", check_segal1_in_cat(&t_simplicial(&d, 3)));
    print!("staircases: {}", check_2segal_groupoids(&s_simplicial(&d, 3))?);
    Ok(())
}
