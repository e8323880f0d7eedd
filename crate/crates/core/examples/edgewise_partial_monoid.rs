use sqcat::constructions::double_nerve_diag;
use sqcat::examples::partial_monoid_squares;
use sqcat::simplicial::{edgewise_subdivision, find_isomorphism, nerve_partial_monoid, PartialMonoid};

fn main() -> sqcat::Result<()> {
    let m = PartialMonoid::one_x();
    let d = partial_monoid_squares(&m)?;
    let diag = double_nerve_diag(&d, 2);
    let sd = edgewise_subdivision(&nerve_partial_monoid(&m, 5))?;
    println!("diagonal sizes {:?}, subdivision sizes {:?}", diag.sizes(), sd.sizes());
    match find_isomorphism(&diag, &sd) {
        Some(iso) => {
            for (n, level) in iso.iter().enumerate() {
                for (x, &y) in level.iter().enumerate() {
                    println!("level {n}: {} -> {}", diag.names[n][x], sd.names[n][y]);
                }
            }
        }
        None => println!("no isomorphism"),
    }
    Ok(())
}
