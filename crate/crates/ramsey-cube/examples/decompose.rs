//! Sparse-set decomposition of a blue-K_s-free colouring.
//!
//! `cargo run --release --example decompose -- [vertices] [s] [epsilon] [seed]`

use ramsey_cube::decomposition::{decompose, validate_decomposition, DecomposeOptions, SizeSchedule};
use ramsey_cube::io::prng::Prng;
use ramsey_cube::{Colour, ColouredGraph};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let n: usize = get(0, "400").parse().expect("vertices");
    let s: usize = get(1, "3").parse().expect("s");
    let eps: f64 = get(2, "0.9").parse().expect("epsilon");
    let seed: u64 = get(3, "1").parse().expect("seed");

    // Blue (s-1)-partite graph with edge density 0.5: no blue K_s.
    let mut rng = Prng::new(seed, 1);
    let g = ColouredGraph::from_fn(n, |u, v| if u % (s - 1) != v % (s - 1) && rng.bernoulli(0.5) { Colour::Blue } else { Colour::Red });
    let schedule = SizeSchedule::geometric(n, eps);
    println!("schedule {:?}", schedule.a);
    match decompose(&g, eps, s, &schedule, &DecomposeOptions { seed, ..Default::default() }) {
        Ok(d) => {
            for t in &d.trace {
                println!("{}", t.line());
            }
            let report = validate_decomposition(&g, &d.family, &schedule, eps);
            println!("{} sets of size {} at level {}, covering {}", d.family.sets.len(), schedule.a[d.family.level], d.family.level, d.family.sets.iter().map(|s| s.len()).sum::<usize>());
            println!("validator: {}", report.first_failure().unwrap_or_else(|| "passed".into()));
        }
        Err(e) => println!("error: {e}"),
    }
}
