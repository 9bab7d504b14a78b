//! Ground truth for small cases and validators that share no code with the
//! constructions they check.

use crate::cube::CubeEmbedding;
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, SmallGraph};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub valid: bool,
    pub reason: Option<String>,
    /// First offending cube edge, as masks.
    pub bad_edge: Option<(u64, u64)>,
}

/// Totality, injectivity and redness of every cube edge.
pub fn validate_embedding(g: &ColouredGraph, e: &CubeEmbedding) -> EmbeddingReport {
    let fail = |reason: String, bad_edge| EmbeddingReport { valid: false, reason: Some(reason), bad_edge };
    let n = e.n;
    if n > 30 || e.map.len() != 1usize << n {
        return fail(format!("map has {} images for Q_{n}", e.map.len()), None);
    }
    let mut owner = vec![u64::MAX; g.n()];
    for (x, &v) in e.map.iter().enumerate() {
        if v >= g.n() {
            return fail(format!("image {v} of {x} is not a host vertex"), None);
        }
        if owner[v] != u64::MAX {
            return fail(format!("cube vertices {} and {x} share image {v}", owner[v]), None);
        }
        owner[v] = x as u64;
    }
    for x in 0..1u64 << n {
        for bit in 0..n {
            let y = x | (1 << bit);
            if y == x {
                continue;
            }
            if g.colour(e.map[x as usize], e.map[y as usize]) != Colour::Red {
                return fail(format!("cube edge {x}-{y} maps to a blue edge"), Some((x, y)));
            }
        }
    }
    EmbeddingReport { valid: true, reason: None, bad_edge: None }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    Cube(usize),
    Biclique(usize),
    Clique(usize),
    Graph(SmallGraph),
}

impl Pattern {
    pub fn graph(&self) -> SmallGraph {
        match self {
            Pattern::Cube(n) => SmallGraph::cube(*n),
            Pattern::Biclique(t) => SmallGraph::complete_bipartite(*t, *t),
            Pattern::Clique(s) => SmallGraph::complete(*s),
            Pattern::Graph(h) => h.clone(),
        }
    }
}

pub const BRUTE_BUDGET: u64 = 50_000_000;

/// Lexicographically least injective map of the pattern (in its vertex order)
/// whose edges all receive `colour`.
pub fn brute_subgraph(g: &ColouredGraph, pattern: &Pattern, colour: Colour) -> Result<Option<Vec<usize>>> {
    let h = pattern.graph();
    if h.n > g.n() {
        return Ok(None);
    }
    let mut map = Vec::with_capacity(h.n);
    let mut used = vec![false; g.n()];
    let mut nodes = 0u64;
    fn rec(g: &ColouredGraph, h: &SmallGraph, colour: Colour, map: &mut Vec<usize>, used: &mut [bool], nodes: &mut u64) -> Result<bool> {
        let p = map.len();
        if p == h.n {
            return Ok(true);
        }
        for v in 0..g.n() {
            if used[v] {
                continue;
            }
            *nodes += 1;
            if *nodes > BRUTE_BUDGET {
                return Err(Error::BudgetExceeded { nodes: *nodes });
            }
            if (0..p).all(|q| !h.has_edge(p, q) || g.colour(map[q], v) == colour) {
                map.push(v);
                used[v] = true;
                if rec(g, h, colour, map, used, nodes)? {
                    return Ok(true);
                }
                used[v] = false;
                map.pop();
            }
        }
        Ok(false)
    }
    Ok(rec(g, &h, colour, &mut map, &mut used, &mut nodes)?.then_some(map))
}

/// Component sizes of the red graph.
pub fn red_components(g: &ColouredGraph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut sizes = Vec::new();
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for v in 0..g.n() {
                if !seen[v] && u != v && g.colour(u, v) == Colour::Red {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

/// Whether `h` embeds in the complete multipartite graph with these part sizes.
pub fn fits_multipartite(h: &SmallGraph, parts: &[usize]) -> bool {
    fn rec(h: &SmallGraph, parts: &[usize], load: &mut [usize], place: &mut Vec<usize>) -> bool {
        let v = place.len();
        if v == h.n {
            return true;
        }
        for p in 0..parts.len() {
            if load[p] < parts[p] && (0..v).all(|u| !h.has_edge(u, v) || place[u] != p) {
                load[p] += 1;
                place.push(p);
                if rec(h, parts, load, place) {
                    return true;
                }
                place.pop();
                load[p] -= 1;
            }
        }
        false
    }
    rec(h, parts, &mut vec![0; parts.len()], &mut Vec::new())
}

/// Brute-force isomorphism of colourings on at most 9 vertices.
pub fn isomorphic(a: &ColouredGraph, b: &ColouredGraph) -> bool {
    let n = a.n();
    if n != b.n() || a.blue_edge_count() != b.blue_edge_count() {
        return false;
    }
    assert!(n <= 9, "isomorphism check is exhaustive");
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(a: &ColouredGraph, b: &ColouredGraph, perm: &mut Vec<usize>, k: usize) -> bool {
        if k == perm.len() {
            return true;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            if (0..k).all(|j| a.colour(j, k) == b.colour(perm[j], perm[k])) && rec(a, b, perm, k + 1) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    rec(a, b, &mut perm, 0)
}

// ============================================================================
// Exhaustive Ramsey decisions
// ============================================================================

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Cube(usize),
    Cycle4,
}

impl Target {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "q1" => Ok(Target::Cube(1)),
            "q2" => Ok(Target::Cube(2)),
            "q3" => Ok(Target::Cube(3)),
            "c4" => Ok(Target::Cycle4),
            _ => Err(Error::Input(format!("unknown target {s:?} (q1, q2, q3, c4)"))),
        }
    }

    /// Targets are arc-transitive, so one anchored edge covers every copy.
    pub fn graph(&self) -> SmallGraph {
        match self {
            Target::Cube(n) => SmallGraph::cube(*n),
            Target::Cycle4 => SmallGraph::cycle(4),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    pub budget: u64,
    /// Vertex count at which partial colourings must be in canonical form; 0 disables.
    pub iso_cutoff: usize,
    /// Edges coloured before the search splits across workers.
    pub split_depth: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { budget: 10_000_000, iso_cutoff: 5, split_depth: 10 }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Holds,
    Counterexample(ColouredGraph),
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub nodes: u64,
}

impl Decision {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::Holds)
    }
}

struct Search<'a> {
    n: usize,
    s: usize,
    target: &'a SmallGraph,
    anchor: usize,
    edges: Vec<(usize, usize)>,
    iso_cutoff: usize,
    perms: Vec<Vec<usize>>,
}

#[derive(Clone)]
struct State {
    blue: Vec<u64>,
    red: Vec<u64>,
    colours: Vec<bool>,
}

impl State {
    fn new(n: usize) -> Self {
        State { blue: vec![0; n], red: vec![0; n], colours: Vec::new() }
    }

    fn push(&mut self, (i, j): (usize, usize), blue: bool) {
        let m = if blue { &mut self.blue } else { &mut self.red };
        m[i] |= 1 << j;
        m[j] |= 1 << i;
        self.colours.push(blue);
    }

    fn pop(&mut self, (i, j): (usize, usize)) {
        let blue = self.colours.pop().unwrap();
        let m = if blue { &mut self.blue } else { &mut self.red };
        m[i] &= !(1 << j);
        m[j] &= !(1 << i);
    }
}

fn clique_in(adj: &[u64], cand: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    let mut c = cand;
    while c != 0 {
        if (c.count_ones() as usize) < need {
            return false;
        }
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        if clique_in(adj, c & adj[v], need - 1) {
            return true;
        }
    }
    false
}

impl Search<'_> {
    /// Does the newest edge complete a blue `K_s` or a red target?
    fn closes(&self, st: &State, (i, j): (usize, usize), blue: bool) -> bool {
        if blue {
            self.s <= 2 || clique_in(&st.blue, st.blue[i] & st.blue[j], self.s - 2)
        } else {
            self.red_target(st, i, j) || self.red_target(st, j, i)
        }
    }

    fn red_target(&self, st: &State, a: usize, b: usize) -> bool {
        let h = self.target;
        let mut map = vec![usize::MAX; h.n];
        map[0] = a;
        map[self.anchor] = b;
        let order: Vec<usize> = (1..h.n).filter(|&p| p != self.anchor).collect();
        fn rec(h: &SmallGraph, red: &[u64], map: &mut [usize], order: &[usize], used: u64) -> bool {
            let Some((&p, rest)) = order.split_first() else { return true };
            let mut cand = !used & ((1u64 << red.len()) - 1);
            for q in 0..h.n {
                if map[q] != usize::MAX && h.has_edge(p, q) {
                    cand &= red[map[q]];
                }
            }
            while cand != 0 {
                let v = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                map[p] = v;
                if rec(h, red, map, rest, used | (1 << v)) {
                    return true;
                }
            }
            map[p] = usize::MAX;
            false
        }
        if h.n == 2 {
            return true;
        }
        rec(h, &st.red, &mut map, &order, (1 << a) | (1 << b))
    }

    /// Whether the colouring of the first `k` vertices is the least in its class.
    fn canonical(&self, st: &State, k: usize) -> bool {
        let code = |perm: &[usize]| -> u64 {
            let mut c = 0u64;
            let mut bit = 0;
            for j in 1..k {
                for i in 0..j {
                    let (a, b) = (perm[i], perm[j]);
                    if (st.blue[a] >> b) & 1 == 1 {
                        c |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            c
        };
        let mine = code(&(0..k).collect::<Vec<_>>());
        self.perms.iter().all(|p| code(p) >= mine)
    }

    fn row_done(&self, depth: usize) -> Option<usize> {
        let (i, j) = self.edges[depth - 1];
        (i + 1 == j).then_some(j + 1)
    }

    /// Depth-first extension; returns `true` when a full colouring survives.
    fn dfs(&self, st: &mut State, nodes: &mut u64, budget: u64, stop_at: usize, frontier: &mut Option<&mut Vec<State>>) -> Result<bool> {
        let depth = st.colours.len();
        if depth == stop_at {
            if let Some(f) = frontier.as_mut() {
                f.push(st.clone());
                return Ok(false);
            }
            return Ok(true);
        }
        let e = self.edges[depth];
        for blue in [false, true] {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExceeded { nodes: *nodes });
            }
            st.push(e, blue);
            let mut alive = !self.closes(st, e, blue);
            if alive && self.iso_cutoff > 0 {
                if let Some(k) = self.row_done(depth + 1) {
                    if k == self.iso_cutoff {
                        alive = self.canonical(st, k);
                    }
                }
            }
            if alive && self.dfs(st, nodes, budget, stop_at, frontier)? {
                return Ok(true);
            }
            st.pop(e);
        }
        Ok(false)
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    fn rec(p: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        if i == p.len() {
            out.push(p.clone());
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            rec(p, i + 1, out);
            p.swap(i, j);
        }
    }
    rec(&mut p, 0, &mut out);
    out
}

/// Does every red/blue colouring of `K_N` contain a blue `K_s` or a red target?
pub fn ramsey_decide(s: usize, target: Target, big_n: usize, opts: &DecideOptions) -> Result<Decision> {
    if big_n > 16 {
        return Err(Error::Capacity { what: "ramsey_decide vertices".into(), needed: big_n as u128, budget: 16 });
    }
    if s == 0 {
        return Err(Error::Input("s must be positive".into()));
    }
    let h = target.graph();
    if big_n < h.n && big_n < s {
        let g = ColouredGraph::monochromatic(big_n, Colour::Blue);
        return Ok(Decision { verdict: Verdict::Counterexample(g), nodes: 0 });
    }
    let edges: Vec<(usize, usize)> = (1..big_n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let iso_cutoff = if opts.iso_cutoff >= 2 && opts.iso_cutoff <= big_n.min(8) { opts.iso_cutoff } else { 0 };
    let search = Search {
        n: big_n,
        s,
        target: &h,
        anchor: (h.adj[0].trailing_zeros()) as usize,
        edges,
        iso_cutoff,
        perms: if iso_cutoff > 0 { permutations(iso_cutoff) } else { vec![] },
    };
    let total = search.edges.len();
    if s == 1 || (big_n >= 1 && h.n == 1) {
        return Ok(Decision { verdict: Verdict::Holds, nodes: 0 });
    }
    let split = opts.split_depth.min(total);
    let mut nodes = 0u64;
    let mut frontier = Vec::new();
    let mut st = State::new(search.n);
    search.dfs(&mut st, &mut nodes, opts.budget, split, &mut Some(&mut frontier))?;
    let results: Vec<Result<(Option<State>, u64)>> = if split == total {
        frontier.into_iter().take(1).map(|st| Ok((Some(st), 0))).collect()
    } else {
        frontier
            .into_par_iter()
            .map(|mut st| {
                let mut sub = 0u64;
                let found = search.dfs(&mut st, &mut sub, opts.budget, total, &mut None)?;
                Ok((found.then_some(st), sub))
            })
            .collect()
    };
    let mut witness = None;
    for r in results {
        let (found, sub) = r?;
        nodes += sub;
        if witness.is_none() {
            witness = found;
        }
    }
    if nodes > opts.budget {
        return Err(Error::BudgetExceeded { nodes });
    }
    Ok(match witness {
        Some(st) => {
            let g = saturate_blue(to_graph(&search, &st), s);
            let blue_clique = brute_subgraph(&g, &Pattern::Clique(s), Colour::Blue)?;
            let red_target = brute_subgraph(&g, &Pattern::Graph(h.clone()), Colour::Red)?;
            if blue_clique.is_some() || red_target.is_some() {
                return Err(Error::Internal("counterexample failed re-validation".into()));
            }
            Decision { verdict: Verdict::Counterexample(g), nodes }
        }
        None => Decision { verdict: Verdict::Holds, nodes },
    })
}

/// Turns red edges blue, in edge order, while no blue `K_s` appears. The
/// witness stays a counterexample and becomes blue-maximal.
fn saturate_blue(mut g: ColouredGraph, s: usize) -> ColouredGraph {
    for j in 1..g.n() {
        for i in 0..j {
            if g.is_blue(i, j) {
                continue;
            }
            g.set_colour(i, j, Colour::Blue);
            let common = g.neighbours(i, Colour::Blue).intersection(&g.neighbours(j, Colour::Blue));
            if s <= 2 || g.find_clique_unchecked(&common, s - 2, Colour::Blue).is_some() {
                g.set_colour(i, j, Colour::Red);
            }
        }
    }
    g
}

fn to_graph(search: &Search, st: &State) -> ColouredGraph {
    let mut g = ColouredGraph::new(search.n);
    for (&(i, j), &blue) in search.edges.iter().zip(&st.colours) {
        if blue {
            g.set_colour(i, j, Colour::Blue);
        }
    }
    g
}
