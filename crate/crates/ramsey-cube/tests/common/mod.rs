//! Instance generators and brute-force checks shared by the integration tests.
#![allow(dead_code)]

use ramsey_cube::io::prng::Prng;
use ramsey_cube::cube::CubeEmbedding;
use ramsey_cube::{Colour, ColouredGraph};

/// Blue edges only between the `parts` classes of a random balanced split,
/// each present with probability `p`. The blue graph is `parts`-partite.
pub fn blue_multipartite(n: usize, parts: usize, p: f64, rng: &mut Prng) -> ColouredGraph {
    let mut class: Vec<usize> = (0..n).map(|v| v % parts).collect();
    rng.shuffle(&mut class);
    ColouredGraph::from_fn(n, |u, v| if class[u] != class[v] && rng.bernoulli(p) { Colour::Blue } else { Colour::Red })
}

/// Random sparse blue graph, each candidate edge kept only while no blue
/// `K_s` appears.
pub fn blue_sparse_ks_free(n: usize, s: usize, p: f64, rng: &mut Prng) -> ColouredGraph {
    let mut g = ColouredGraph::new(n);
    let mut blue: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for v in 1..n {
        for u in 0..v {
            if rng.bernoulli(p) && !closes_clique(&blue, u, v, s) {
                blue[u][v] = true;
                blue[v][u] = true;
                g.set_colour(u, v, Colour::Blue);
            }
        }
    }
    g
}

/// Would adding `uv` complete a `K_s` in `adj`? Plain recursion over common neighbours.
fn closes_clique(adj: &[Vec<bool>], u: usize, v: usize, s: usize) -> bool {
    if s <= 2 {
        return true;
    }
    let common: Vec<usize> = (0..adj.len()).filter(|&w| adj[u][w] && adj[v][w]).collect();
    has_clique(adj, &common, s - 2)
}

pub fn has_clique(adj: &[Vec<bool>], cand: &[usize], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    for (i, &a) in cand.iter().enumerate() {
        let rest: Vec<usize> = cand[i + 1..].iter().copied().filter(|&b| adj[a][b]).collect();
        if rest.len() + 1 >= k && has_clique(adj, &rest, k - 1) {
            return true;
        }
    }
    false
}

pub fn blue_matrix(g: &ColouredGraph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| u != v && g.is_blue(u, v)).collect()).collect()
}

/// Cube-edge check written against the bit definition of `Q_n` only.
pub fn embedding_is_red(g: &ColouredGraph, e: &CubeEmbedding) -> bool {
    let size = 1usize << e.n;
    if e.map.len() != size {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in &e.map {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..size).all(|x| (0..e.n).all(|c| {
        let y = x ^ (1 << c);
        x > y || !g.is_blue(e.map[x], e.map[y])
    }))
}
