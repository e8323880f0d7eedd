use sqcat::double::{validate_squares_category, SquaresCat};
use sqcat::examples::{
    finset_squares, graph_squares, interval_polytopes, partial_monoid_squares, path_double_category, GraphData,
    GraphInput, GraphVariant,
};
use sqcat::simplicial::{nerve_partial_monoid, PartialMonoid};

fn main() -> sqcat::Result<()> {
    let z2 = nerve_partial_monoid(&PartialMonoid::cyclic(2), 4);
    let builders: Vec<(&str, SquaresCat)> = vec![
        ("finite sets up to 2", finset_squares(2).0),
        ("partial monoid {1,x}", partial_monoid_squares(&PartialMonoid::one_x())?),
        ("subgraphs of an edge", graph_squares(GraphVariant::Ambient, GraphInput::Ambient(&GraphData::single_edge()))?),
        ("intervals in [0,2]", interval_polytopes(1, 2)),
        ("path construction on Z/2", path_double_category(&z2)?),
    ];
    for (name, d) in builders {
        let r = validate_squares_category(&d);
        println!("{name}: {} objects, {} squares", d.n_objects(), d.squares().len());
        print!("{r}");
    }
    Ok(())
}
