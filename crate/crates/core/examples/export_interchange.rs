use sqcat::examples::partial_monoid_squares;
use sqcat::interchange::{read_squares, write_squares};
use sqcat::simplicial::PartialMonoid;

fn main() -> sqcat::Result<()> {
    let d = partial_monoid_squares(&PartialMonoid::one_x())?;
    let text = write_squares(&d, None);
    println!("{text}");
    let (back, _) = read_squares(&text)?;
    println!("read back {} objects and {} squares", back.n_objects(), back.squares().len());
    Ok(())
}
