use std::time::Instant;

use sqcat::catcore::is_groupoid;
use sqcat::constructions::s_simplicial;
use sqcat::double::check_isostable;
use sqcat::examples::finset_squares;
use sqcat::simplicial::check_2segal_groupoids;

fn main() -> sqcat::Result<()> {
    let start = Instant::now();
    let (d, comp) = finset_squares(2);
    print!("{}", check_isostable(&d, &comp)?);
    let s = s_simplicial(&d, 3);
    for (n, level) in s.levels.iter().enumerate() {
        println!("S_{n}: {} objects, groupoid {}", level.n_objects(), is_groupoid(level).is_groupoid);
    }
    print!("{}", check_2segal_groupoids(&s)?);
    println!("elapsed {:?}", start.elapsed());
    Ok(())
}
