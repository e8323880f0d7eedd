use sqcat::constructions::comparison_witnesses;
use sqcat::examples::finset_squares;

fn main() -> sqcat::Result<()> {
    let (d, comp) = finset_squares(2);
    for n in 1..=2 {
        print!("{}", comparison_witnesses(&d, &comp, n)?);
    }
    Ok(())
}
