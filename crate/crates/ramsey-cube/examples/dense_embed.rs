//! Red Q_n in a nearly all-red colouring via nested dense sets.
//!
//! `cargo run --release --example dense_embed -- [n] [blue_density] [seed]`

use ramsey_cube::dense::{dense_embed, DenseParams, EmbedOutcome};
use ramsey_cube::io::prng::Prng;
use ramsey_cube::oracle::validate_embedding;
use ramsey_cube::{Colour, ColouredGraph};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let n: usize = get(0, "7").parse().expect("n");
    let p: f64 = get(1, "0.002").parse().expect("blue density");
    let seed: u64 = get(2, "1").parse().expect("seed");

    let params = DenseParams::desk(n, 3, 0.5);
    for ineq in params.feasibility() {
        println!("{ineq:?}");
    }
    let size = params.level_size(n, 0);
    let mut rng = Prng::new(seed, 2);
    let g = ColouredGraph::from_fn(size, |_, _| if rng.bernoulli(p) { Colour::Blue } else { Colour::Red });
    println!("{size} vertices, {} blue edges", g.blue_edge_count());
    match dense_embed(&g, n, &params, seed) {
        Ok(EmbedOutcome::Embedding(e)) => println!("red Q_{n}: {}", if validate_embedding(&g, &e).valid { "valid" } else { "INVALID" }),
        Ok(EmbedOutcome::BlueClique(w)) => println!("blue clique {:?}", w.members),
        Err(e) => println!("error: {e}"),
    }
}
