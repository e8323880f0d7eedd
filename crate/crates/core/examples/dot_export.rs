use sqcat::constructions::{Shape, ShapeCat, ShapeKind, Staircase};
use sqcat::dot::{export_dot, DotObject};
use sqcat::examples::finset_squares;

fn main() {
    let (d, _) = finset_squares(2);
    let level = ShapeCat::build(&d, Shape::new(ShapeKind::Staircase, 2), None);
    let x = level
        .diagrams
        .iter()
        .find(|x| x.objs.iter().filter(|&&o| o != d.o()).count() == 3)
        .expect("a staircase without zero entries off the diagonal");
    let st = Staircase::from_diagram(&level.shape, x);
    print!("{}", export_dot(&d, DotObject::Staircase(&st)));
}
