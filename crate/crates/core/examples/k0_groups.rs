use sqcat::examples::{finset_squares, interval_polytopes, partial_monoid_squares};
use sqcat::k0::{check_sum_existence, k0_group};
use sqcat::simplicial::PartialMonoid;

fn main() -> sqcat::Result<()> {
    let (finset, _) = finset_squares(2);
    let k = k0_group(&finset);
    println!("finite sets:\n{k}");
    println!("[2] = 2·[1]: {}", k.class_equal(&[(2, 1)], &[(1, 2)])?);
    print!("{}", check_sum_existence(&finset));

    let pm = partial_monoid_squares(&PartialMonoid::one_x())?;
    println!("\npartial monoid {{1,x}}:\n{}", k0_group(&pm));

    let iv = interval_polytopes(1, 2);
    let k = k0_group(&iv);
    let find = |s: &str| iv.h().find_object(s).expect("object exists");
    let cut = k.class_equal(&[(find("[0,2]"), 1)], &[(find("[0,1]"), 1), (find("[1,2]"), 1)])?;
    println!("\nintervals:\n{k}[0,2] = [0,1] + [1,2]: {cut}");
    Ok(())
}
