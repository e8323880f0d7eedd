use sqcat::constructions::ob_s;
use sqcat::examples::path_double_category;
use sqcat::simplicial::{check_segal, find_isomorphism, nerve_partial_monoid, PartialMonoid, SegalDegree};

fn main() -> sqcat::Result<()> {
    let x = nerve_partial_monoid(&PartialMonoid::cyclic(2), 4);
    let d = path_double_category(&x)?;
    println!("path construction: {} objects, {} squares", d.n_objects(), d.squares().len());
    let y = ob_s(&d, 3);
    let x3 = x.truncate(3);
    println!("sizes {:?} and {:?}", x3.sizes(), y.sizes());
    println!("isomorphic: {}", find_isomorphism(&y, &x3).is_some());
    print!("{}", check_segal(&y, SegalDegree::Two));
    Ok(())
}
