use sqcat::constructions::{forgetful_equivalence, hv_level, Direction};
use sqcat::examples::finset_squares;

fn main() -> sqcat::Result<()> {
    let (d, comp) = finset_squares(2);
    for dir in [Direction::H, Direction::V] {
        print!("{}", forgetful_equivalence(&d, &comp, 2, dir)?);
        let hv = hv_level(&d, &comp, 2, dir)?;
        println!(
            "{dir:?}_2 has {} chains; the modified face lands in {} chains",
            hv.level.diagrams.len(),
            hv.lower.diagrams.len()
        );
    }
    Ok(())
}
