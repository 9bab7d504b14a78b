//! Good-pair verdicts and the path-or-partition dichotomy on sparse sets.
//!
//! `cargo run --release --example matching_dichotomy -- [n] [parts] [seed]`

use ramsey_cube::io::prng::Prng;
use ramsey_cube::matching::{matching_dichotomy, DichotomyOutcome, MatchParams, VerdictMatrix, VerdictStatus};
use ramsey_cube::oracle::validate_embedding;
use ramsey_cube::{Colour, ColouredGraph, VertexSet};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let n = args.first().copied().unwrap_or(5);
    let parts = args.get(1).copied().unwrap_or(4);
    let seed = args.get(2).copied().unwrap_or(1) as u64;

    // Two groups of sets, red inside a group and mostly blue across.
    let each = 1usize << (n + 1);
    let total = each * parts;
    let group = |v: usize| (v / each) % 2;
    let mut rng = Prng::new(seed, 3);
    let g = ColouredGraph::from_fn(total, |u, v| {
        let across = group(u) != group(v);
        if across != rng.bernoulli(0.002) { Colour::Blue } else { Colour::Red }
    });
    let sets: Vec<VertexSet> = (0..parts).map(|k| VertexSet::range(total, k * each, (k + 1) * each)).collect();
    let params = MatchParams::desk(3, 0.25);
    let m = VerdictMatrix::compute(&g, &sets, &params).expect("verdicts");
    println!("good {} bad {} undetermined {}", m.count(VerdictStatus::Good), m.count(VerdictStatus::Bad), m.count(VerdictStatus::Undetermined));
    match matching_dichotomy(&g, &sets, n, &params, seed) {
        Ok(DichotomyOutcome::Embedding(e)) => println!("red Q_{n}: {}", if validate_embedding(&g, &e).valid { "valid" } else { "INVALID" }),
        Ok(DichotomyOutcome::BlueClique(w)) => println!("blue clique {:?}", w.members),
        Ok(DichotomyOutcome::Partition(p)) => println!("partition into {} parts with |X| = {}", p.parts.len(), p.x.len()),
        Err(e) => println!("error: {e}"),
    }
}
