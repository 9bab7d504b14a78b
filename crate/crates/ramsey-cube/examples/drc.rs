//! Dependent random choice: a few vertices with many common blue neighbours.
//!
//! `cargo run --release --example drc -- [n] [sigma] [density] [seed]`

use ramsey_cube::io::prng::Prng;
use ramsey_cube::stability::{dependent_random_choice, DrcOutcome, DrcParams};
use ramsey_cube::{Colour, ColouredGraph, VertexSet};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let n: usize = get(0, "6").parse().expect("n");
    let sigma: usize = get(1, "2").parse().expect("sigma");
    let p: f64 = get(2, "0.6").parse().expect("density");
    let seed: u64 = get(3, "1").parse().expect("seed");

    let (a_len, part) = (60, 40);
    let total = a_len + 2 * part;
    let mut rng = Prng::new(seed, 4);
    let g = ColouredGraph::from_fn(total, |u, v| if (u < a_len) != (v < a_len) && rng.bernoulli(p) { Colour::Blue } else { Colour::Red });
    let a = VertexSet::range(total, 0, a_len);
    let parts = [VertexSet::range(total, a_len, a_len + part), VertexSet::range(total, a_len + part, total)];
    let params = DrcParams { c: 2, t: Some(2), ..DrcParams::desk(n) };
    println!("floor on common neighbourhoods: {:.2}", params.floor());
    match dependent_random_choice(&g, &a, &parts, sigma, &params, seed) {
        Ok(DrcOutcome::Found(x)) => {
            println!("chosen {x:?}");
            for (k, pt) in parts.iter().enumerate() {
                let common = pt.iter().filter(|&w| x.iter().all(|&v| g.is_blue(v, w))).count();
                println!("part {k}: {common} common blue neighbours");
            }
        }
        Ok(DrcOutcome::SmallA) => println!("A is too small for the requested floor"),
        Err(e) => println!("error: {e}"),
    }
}
