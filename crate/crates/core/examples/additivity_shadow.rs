use sqcat::examples::{finset_squares, partial_monoid_squares};
use sqcat::k0::check_k0_additivity;
use sqcat::simplicial::PartialMonoid;

fn main() -> sqcat::Result<()> {
    let (d, _) = finset_squares(2);
    print!("{}", check_k0_additivity(&d));
    let pm = partial_monoid_squares(&PartialMonoid::one_x())?;
    print!("{}", check_k0_additivity(&pm));
    Ok(())
}
