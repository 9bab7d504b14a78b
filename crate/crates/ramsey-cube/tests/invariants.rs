mod common;

use common::{blue_matrix, blue_multipartite, blue_sparse_ks_free, embedding_is_red, has_clique};
use proptest::prelude::*;
use ramsey_cube::cube::{layer_count, prefix_adjacent, CubeEmbedding, LayerRange, PrefixVector};
use ramsey_cube::decomposition::{decompose, validate_decomposition, DecomposeOptions, SizeSchedule};
use ramsey_cube::dense::{dense_embed, DenseParams, EmbedOutcome};
use ramsey_cube::graph::zarankiewicz_threshold;
use ramsey_cube::io::crg;
use ramsey_cube::io::prng::Prng;
use ramsey_cube::matching::{judge_pair, layer_split, pack_bicliques, MatchParams, VerdictStatus};
use ramsey_cube::oracle::{brute_subgraph, ramsey_decide, DecideOptions, Pattern, Target, Verdict};
use ramsey_cube::stability::{
    dependent_random_choice, perturbed_extremal, ramsey_main, stability_partition, validate_partition, vertex_switch_repair, DrcOutcome, DrcParams, MainOptions, Perturbation,
    StabilityOutcome, StabilityParams,
};
use ramsey_cube::{Colour, ColouredGraph, Error, VertexSet};

fn random_graph(n: usize, p: f64, seed: u64) -> ColouredGraph {
    let mut rng = Prng::new(seed, 77);
    ColouredGraph::from_fn(n, |_, _| if rng.bernoulli(p) { Colour::Blue } else { Colour::Red })
}

fn subset(n: usize, seed: u64) -> VertexSet {
    let mut rng = Prng::new(seed, 78);
    let members: Vec<usize> = (0..n).filter(|_| rng.bernoulli(0.5)).collect();
    VertexSet::from_slice(n, &members)
}

proptest! {
    #[test]
    fn degrees_split_by_colour(n in 1usize..60, p in 0.0f64..1.0, seed: u64, v_pick: usize) {
        let g = random_graph(n, p, seed);
        let s = subset(n, seed ^ 1);
        let v = v_pick % n;
        let red = g.degree_in(v, &s, Colour::Red).unwrap();
        let blue = g.degree_in(v, &s, Colour::Blue).unwrap();
        prop_assert_eq!(red + blue, s.len() - usize::from(s.contains(v)));
    }

    #[test]
    fn clique_search_agrees_with_enumeration(n in 1usize..=16, p in 0.0f64..1.0, k in 1usize..6, seed: u64) {
        let g = random_graph(n, p, seed);
        let s = subset(n, seed ^ 2);
        let found = g.find_clique(&s, k, Colour::Blue).unwrap();
        let adj = blue_matrix(&g);
        prop_assert_eq!(found.is_some(), has_clique(&adj, &s.to_vec(), k));
        if let Some(w) = found {
            prop_assert!(w.members.iter().all(|&v| s.contains(v)) && g.is_clique(&w.members, Colour::Blue));
        }
    }

    #[test]
    fn dense_bipartite_graphs_contain_bicliques(n1 in 3usize..12, n2 in 3usize..12, t in 2usize..=3, p in 0.5f64..1.0, seed: u64) {
        let total = n1 + n2;
        let mut rng = Prng::new(seed, 3);
        let g = ColouredGraph::from_fn(total, |u, v| if (u < n1) != (v < n1) && rng.bernoulli(p) { Colour::Red } else { Colour::Blue });
        let (x, y) = (VertexSet::range(total, 0, n1), VertexSet::range(total, n1, total));
        if g.cross_count(&x, &y, Colour::Red) as u64 > zarankiewicz_threshold(n1, n2, t) {
            prop_assert!(g.find_biclique(&x, &y, t, Colour::Red).unwrap().is_some());
        }
    }

    #[test]
    fn layer_count_of_full_range(m in 0usize..=20) {
        prop_assert_eq!(layer_count(LayerRange::new(m, 0, m).unwrap()), 1u128 << m);
    }

    #[test]
    fn crg_round_trip(n in 0usize..40, p in 0.0f64..1.0, seed: u64) {
        let g = random_graph(n, p, seed);
        let text = crg::serialize(&g);
        prop_assert_eq!(crg::serialize(&crg::parse(&text).unwrap()), text);
    }

    #[test]
    fn packings_are_disjoint(n in 6usize..30, p in 0.0f64..0.5, t in 1usize..=3, seed: u64) {
        let g = random_graph(2 * n, p, seed);
        let (a, b) = (VertexSet::range(2 * n, 0, n), VertexSet::range(2 * n, n, 2 * n));
        let pack = pack_bicliques(&g, &a, &b, t, n).unwrap();
        let mut seen = std::collections::HashSet::new();
        for w in &pack.found {
            for &v in w.left.iter().chain(&w.right) {
                prop_assert!(seen.insert(v));
            }
            prop_assert!(w.left.iter().all(|&u| w.right.iter().all(|&v| !g.is_blue(u, v))));
        }
    }

    #[test]
    fn layer_split_partitions_layers(sizes in prop::collection::vec(1usize..200, 1..6), n in 3usize..8) {
        let m = 2.min(n);
        if let Ok(split) = layer_split(&sizes, n, m, 0.25) {
            let mut next = 0;
            let mut total = 0u128;
            for &(a, b) in &split {
                prop_assert_eq!(a, next);
                next = b + 1;
                total += layer_count(LayerRange::new(m, a, b).unwrap());
            }
            prop_assert_eq!(next, m + 1);
            prop_assert_eq!(total, 1u128 << m);
        }
    }
}

#[test]
fn adjacent_prefixes_are_disjoint_and_joined() {
    for n in 1..=8usize {
        for d1 in 0..=n {
            for d2 in 0..=n {
                for x in 0..1u64 << d1 {
                    for z in 0..1u64 << d2 {
                        let (px, pz) = (PrefixVector::new(x, d1), PrefixVector::new(z, d2));
                        let adj = prefix_adjacent(px, pz);
                        assert_eq!(adj, prefix_adjacent(pz, px));
                        let inside = |p: PrefixVector, v: u64| (v ^ p.bits) & ((1u64 << p.len) - 1) == 0;
                        let a: Vec<u64> = (0..1u64 << n).filter(|&v| inside(px, v)).collect();
                        let b: Vec<u64> = (0..1u64 << n).filter(|&v| inside(pz, v)).collect();
                        let disjoint = a.iter().all(|v| !b.contains(v));
                        let joined = a.iter().any(|&u| b.iter().any(|&v| (u ^ v).count_ones() == 1));
                        assert_eq!(adj, disjoint && joined, "n={n} x={px:?} z={pz:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn subcube_boundary_degree() {
    for n in 1..=10usize {
        for d in 0..=n {
            let x = PrefixVector::new(0b1011 & ((1 << d) - 1), d);
            let inside = |v: u64| (v ^ x.bits) & ((1u64 << d) - 1) == 0;
            for v in (0..1u64 << n).filter(|&v| inside(v)) {
                let out = (0..n).filter(|&c| !inside(v ^ (1 << c))).count();
                assert_eq!(out, d);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn decomposition_contract(s in 3usize..=5, n in 60usize..400, p in 0.0f64..0.6, sparse: bool, seed: u64) {
        let mut rng = Prng::new(seed, 4);
        let g = if sparse { blue_sparse_ks_free(n, s, p / 10.0, &mut rng) } else { blue_multipartite(n, s - 1, p, &mut rng) };
        let sch = SizeSchedule::geometric(n, 0.9);
        match decompose(&g, 0.9, s, &sch, &DecomposeOptions { seed, ..Default::default() }) {
            Ok(d) => {
                let rep = validate_decomposition(&g, &d.family, &sch, 0.9);
                prop_assert!(rep.passed(), "{:?}", rep);
                prop_assert!(rep.degree_gap_ok);
                let gain = 0.9 * n as f64 / (4.0 * s as f64);
                for t in &d.trace {
                    prop_assert!(t.x_size as f64 <= gain + 0.9 * t.u_size as f64 / 8.0);
                }
                for w in d.trace.windows(2) {
                    prop_assert!(w[0].i_r <= w[1].i_r);
                    prop_assert!(w[0].i_r + w[0].step >= w[1].i_r + w[1].step);
                }
            }
            Err(e) => prop_assert!(matches!(e.root(), Error::DecompositionFailed { .. }), "{}", e),
        }
    }

    #[test]
    fn verdicts_are_sound(n1 in 4usize..12, n2 in 4usize..12, p in 0.0f64..1.0, seed: u64) {
        let total = n1 + n2;
        let mut rng = Prng::new(seed, 5);
        let g = ColouredGraph::from_fn(total, |u, v| if (u < n1) != (v < n1) && rng.bernoulli(p) { Colour::Red } else { Colour::Blue });
        let (x, y) = (VertexSet::range(total, 0, n1), VertexSet::range(total, n1, total));
        let params = MatchParams::desk(3, 0.25);
        let v = judge_pair(&g, &x, &y, &params).unwrap();
        let t = params.t();
        match v.status {
            VerdictStatus::Bad => {
                prop_assert!(v.y1.len() as f64 >= (1.0 - params.gamma) * n1 as f64 - 1e-9);
                prop_assert!(v.y2.len() as f64 >= (1.0 - params.gamma) * n2 as f64 - 1e-9);
                let sub = g.induced(&v.y1.union(&v.y2).to_vec());
                prop_assert!(brute_subgraph(&sub, &Pattern::Biclique(t), Colour::Red).unwrap().is_none());
            }
            VerdictStatus::Good => {
                for k in 0..50u64 {
                    let mut r = Prng::new(seed, 100 + k);
                    let keep = |set: &VertexSet, r: &mut Prng| {
                        let m = ((1.0 - params.gamma) * set.len() as f64).ceil() as usize;
                        VertexSet::from_slice(total, &r.sample(&set.to_vec(), m))
                    };
                    let (a, b) = (keep(&x, &mut r), keep(&y, &mut r));
                    prop_assert!(g.find_biclique(&a, &b, t, Colour::Red).unwrap().is_some());
                }
            }
            VerdictStatus::Undetermined => {}
        }
    }

    #[test]
    fn dense_embeddings_validate(n in 3usize..=8, noise in 0.0f64..0.004, seed: u64) {
        let p = DenseParams::desk(n, 3, 0.5);
        let g = random_graph(p.level_size(n, 0), noise, seed);
        match dense_embed(&g, n, &p, seed) {
            Ok(EmbedOutcome::Embedding(e)) => prop_assert!(embedding_is_red(&g, &e)),
            Ok(EmbedOutcome::BlueClique(w)) => prop_assert!(g.is_clique(&w.members, Colour::Blue) && w.members.len() >= 3),
            Err(_) => {}
        }
    }

    #[test]
    fn stability_partitions_validate(s in 3usize..=4, n in 5usize..=7, level in 0.0f64..1.0, seed: u64) {
        let noise = Perturbation { cross_red: level / (n * n) as f64, inner_blue: 0.0 };
        let g = perturbed_extremal(s, n, noise, seed);
        let params = StabilityParams::desk(s, 0.25);
        if let Ok(StabilityOutcome::Partition(part)) = stability_partition(&g, n, s, &params, seed) {
            prop_assert_eq!(validate_partition(&g, &part, n, 0.25, 1.0 / (n * n) as f64), Ok(()));
        }
    }

    #[test]
    fn ramsey_main_certifies_random_colourings(s in 3usize..=4, n in 4usize..=6, p in 0.0f64..1.0, seed: u64) {
        // Either a cube, a clique, or an error; never an unchecked answer.
        let big = (s - 1) * ((1 << n) - 1) + 1;
        let g = random_graph(big, p * p * 0.05, seed);
        let opts = MainOptions { stability: StabilityParams::desk(s, 0.25), any_size: false };
        match ramsey_main(&g, s, n, &opts, seed) {
            Ok(EmbedOutcome::Embedding(e)) => prop_assert!(embedding_is_red(&g, &e)),
            Ok(EmbedOutcome::BlueClique(w)) => prop_assert!(g.is_clique(&w.members, Colour::Blue) && w.members.len() >= s),
            Err(e) => prop_assert!(!matches!(e.root(), Error::Internal(_)), "{}", e),
        }
    }

    #[test]
    fn switching_strictly_decreases(n in 3usize..=6, noise in 0.0f64..0.3, seed: u64) {
        let size = 1usize << n;
        let g = random_graph(size + 6, noise, seed);
        let mut rng = Prng::new(seed, 6);
        let mut map: Vec<usize> = (0..size + 6).collect();
        rng.shuffle(&mut map);
        map.truncate(size);
        let r = vertex_switch_repair(&g, &CubeEmbedding::new(n, map)).unwrap();
        prop_assert!(r.history.windows(2).all(|w| w[1] < w[0]));
        prop_assert!(r.history.len() - 1 <= r.history[0]);
        prop_assert_eq!(*r.history.last().unwrap(), r.residual);
    }

    #[test]
    fn drc_meets_its_floor(n in 4usize..=8, sigma in 1usize..=3, p in 0.3f64..1.0, seed: u64) {
        let (a_len, part) = (40, 30);
        let total = a_len + 2 * part;
        let mut rng = Prng::new(seed, 7);
        let g = ColouredGraph::from_fn(total, |u, v| if (u < a_len) != (v < a_len) && rng.bernoulli(p) { Colour::Blue } else { Colour::Red });
        let a = VertexSet::range(total, 0, a_len);
        let parts = [VertexSet::range(total, a_len, a_len + part), VertexSet::range(total, a_len + part, total)];
        let params = DrcParams { c: 2, t: Some(2), ..DrcParams::desk(n) };
        if let Ok(DrcOutcome::Found(x)) = dependent_random_choice(&g, &a, &parts, sigma, &params, seed) {
            prop_assert_eq!(x.len(), sigma);
            for pt in &parts {
                let common = pt.iter().filter(|&w| x.iter().all(|&v| g.is_blue(v, w))).count();
                prop_assert!(common as f64 >= params.floor());
            }
        }
    }
}

#[test]
fn search_counterexamples_revalidate() {
    for (s, target, n) in [(3, Target::Cycle4, 5), (3, Target::Cycle4, 6), (4, Target::Cube(1), 3), (3, Target::Cube(2), 5)] {
        if let Verdict::Counterexample(g) = ramsey_decide(s, target, n, &DecideOptions::default()).unwrap().verdict {
            assert!(brute_subgraph(&g, &Pattern::Clique(s), Colour::Blue).unwrap().is_none());
            assert!(brute_subgraph(&g, &Pattern::Graph(target.graph()), Colour::Red).unwrap().is_none());
        }
    }
}
