//! Exhaustive decision of r(K_s, target) > N for small cases.
//!
//! `cargo run --release --example ramsey_search -- [s] [target] [N]`

use ramsey_cube::io::crg;
use ramsey_cube::oracle::{ramsey_decide, DecideOptions, Target, Verdict};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let s: usize = args.first().map_or(3, |a| a.parse().expect("s"));
    let target = Target::parse(args.get(1).map_or("c4", String::as_str)).expect("target");
    let last: Option<usize> = args.get(2).map(|a| a.parse().expect("N"));

    let range = match last {
        Some(n) => n..=n,
        None => 2..=7,
    };
    for big_n in range {
        let t = Instant::now();
        let d = ramsey_decide(s, target, big_n, &DecideOptions::default()).expect("search");
        match d.verdict {
            Verdict::Holds => println!("N={big_n}: every colouring has blue K_{s} or red target ({} nodes, {:.2?})", d.nodes, t.elapsed()),
            Verdict::Counterexample(g) => {
                println!("N={big_n}: counterexample ({} nodes, {:.2?})", d.nodes, t.elapsed());
                print!("{}", crg::serialize(&g));
            }
        }
    }
}
