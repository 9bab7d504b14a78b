//! End-to-end certification on perturbed extremal colourings.
//!
//! `cargo run --release --example ramsey_main -- [s] [n] [cross_red] [inner_blue] [seed]`

use ramsey_cube::dense::EmbedOutcome;
use ramsey_cube::oracle::validate_embedding;
use ramsey_cube::stability::{perturbed_extremal, ramsey_main, MainOptions, Perturbation, StabilityParams};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let s: usize = get(0, "3").parse().expect("s");
    let n: usize = get(1, "6").parse().expect("n");
    let noise = Perturbation { cross_red: get(2, "0.02").parse().expect("cross_red"), inner_blue: get(3, "0").parse().expect("inner_blue") };
    let seed: u64 = get(4, "1").parse().expect("seed");

    let g = perturbed_extremal(s, n, noise, seed);
    println!("N = {} vertices, {} blue edges", g.n(), g.blue_edge_count());
    let opts = MainOptions { stability: StabilityParams::desk(s, 0.25), any_size: false };
    let t = Instant::now();
    match ramsey_main(&g, s, n, &opts, seed) {
        Ok(EmbedOutcome::Embedding(e)) => {
            let r = validate_embedding(&g, &e);
            println!("red Q_{n} found, independent check: {}", if r.valid { "valid" } else { "INVALID" });
        }
        Ok(EmbedOutcome::BlueClique(w)) => println!("blue K_{} on {:?}", w.members.len(), w.members),
        Err(e) => println!("error: {e}"),
    }
    println!("{:.2?}", t.elapsed());
}
