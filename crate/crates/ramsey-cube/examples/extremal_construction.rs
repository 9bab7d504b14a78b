//! Lower-bound colourings: no blue H and no red Q_n.
//!
//! `cargo run --example extremal_construction -- [s] [n]`

use ramsey_cube::oracle::{brute_subgraph, red_components, Pattern};
use ramsey_cube::stability::{h_profile, lower_bound_colouring};
use ramsey_cube::{Colour, SmallGraph};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let s = args.first().copied().unwrap_or(3);
    let n = args.get(1).copied().unwrap_or(3);

    let profile = h_profile(&SmallGraph::complete(s)).expect("profile");
    let g = lower_bound_colouring(&profile, n);
    let comps = red_components(&g);
    println!("K_{s} vs Q_{n}: {} vertices, red components {comps:?}", g.n());
    println!("largest red component {} < 2^{n} = {}", comps.iter().max().unwrap_or(&0), 1 << n);

    if g.n() <= 24 {
        let blue = brute_subgraph(&g, &Pattern::Clique(s), Colour::Blue).expect("search");
        let red = brute_subgraph(&g, &Pattern::Cube(n), Colour::Red).expect("search");
        println!("brute force: blue K_{s} {:?}, red Q_{n} {:?}", blue, red);
    }

    // A pattern with a small colour class gives a smaller last part.
    let c5 = SmallGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).expect("C5");
    let p = h_profile(&c5).expect("profile");
    let g = lower_bound_colouring(&p, n);
    println!("C5: chi {} sigma {}, colouring on {} vertices", p.chi, p.sigma, g.n());
}
