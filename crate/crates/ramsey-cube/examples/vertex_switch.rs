//! Repair a cube embedding with a few bad vertices by switching.
//!
//! `cargo run --release --example vertex_switch -- [n] [bad] [seed]`

use ramsey_cube::cube::CubeEmbedding;
use ramsey_cube::io::prng::Prng;
use ramsey_cube::stability::vertex_switch_repair;
use ramsey_cube::{Colour, ColouredGraph};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let n = args.first().copied().unwrap_or(6);
    let bad = args.get(1).copied().unwrap_or(3);
    let seed = args.get(2).copied().unwrap_or(1) as u64;

    // All red except a few spare vertices that are mostly blue to everything.
    let size = 1usize << n;
    let spare = 8;
    let total = size + spare + bad;
    let mut rng = Prng::new(seed, 5);
    let g = ColouredGraph::from_fn(total, |u, v| if u.max(v) >= size + spare && rng.bernoulli(0.9) { Colour::Blue } else { Colour::Red });
    let mut map: Vec<usize> = (0..size).collect();
    for (slot, b) in rng.sample(&(0..size).collect::<Vec<_>>(), bad).into_iter().zip(size + spare..) {
        map[slot] = b;
    }
    let r = vertex_switch_repair(&g, &CubeEmbedding::new(n, map)).expect("repair");
    println!("blue cube edges per step: {:?}", r.history);
    println!("residual {}", r.residual);
}
