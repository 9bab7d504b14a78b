//! Stability partition, the final embedding and the end-to-end pipeline,
//! plus the pieces used for a general forbidden blue graph `H`.

use crate::cube::layer_order;
use crate::decomposition::{decompose, DecomposeOptions, SizeSchedule};
use crate::dense::{EmbedOutcome, Inequality};
use crate::error::{Error, Result};
use crate::graph::{binomial, CliqueWitness, Colour, ColouredGraph, SmallGraph, VertexSet};
use crate::io::prng::Prng;
use crate::matching::{matching_dichotomy, DichotomyOutcome, MatchParams};
use crate::cube::CubeEmbedding;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilityParams {
    pub epsilon: f64,
    pub decomposition_epsilon: f64,
    /// `None` uses the geometric schedule from `v(G)`.
    pub schedule: Option<Vec<usize>>,
    pub decompose: DecomposeOptions,
    pub matching: MatchParams,
    /// Cross-part red density bound; `None` means `1/n^2`.
    pub density_threshold: Option<f64>,
    /// Sets with `|X ∩ U| > heavy·|U|` go to `S_0`.
    pub heavy_intersection: f64,
    /// Move `S_0` vertices that are red to all of some `S_j` into it.
    pub absorb: bool,
    /// Node budget for each greedy blue clique search.
    pub greedy_budget: u64,
    pub hot: HotTest,
}

/// What a vertex's red degree is measured against when deciding whether it
/// is "hot" towards another part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HotTest {
    /// Each set `W∖X` of another part, threshold `|W∖X|/n²`.
    PerSet,
    /// The union `T` of another part's trimmed sets, threshold `|T|/n²`.
    /// Sets far below `n²` vertices make the per-set test fire on a single red edge.
    #[default]
    PerPart,
}

impl StabilityParams {
    pub fn desk(s: usize, epsilon: f64) -> Self {
        StabilityParams {
            epsilon,
            decomposition_epsilon: 0.9,
            schedule: None,
            decompose: DecomposeOptions::default(),
            matching: MatchParams::desk(s, epsilon),
            density_threshold: None,
            heavy_intersection: 0.25,
            absorb: true,
            greedy_budget: 200_000,
            hot: HotTest::PerPart,
        }
    }

    fn density(&self, n: usize) -> f64 {
        self.density_threshold.unwrap_or(1.0 / (n * n) as f64)
    }
}

/// `parts[0]` is the exception class, `parts[1..]` the near-cliques.
#[derive(Clone, Debug)]
pub struct StabilityPartition {
    pub parts: Vec<VertexSet>,
    pub margins: Vec<Inequality>,
}

#[derive(Clone, Debug)]
pub enum StabilityOutcome {
    Partition(StabilityPartition),
    Embedding(CubeEmbedding),
    BlueClique(CliqueWitness),
}

/// One vertex from each pool, pairwise blue, extending `start`; depth-first
/// with least-index choices.
fn greedy_blue(g: &ColouredGraph, start: &[usize], pools: &[VertexSet], budget: u64) -> Option<Vec<usize>> {
    fn rec(g: &ColouredGraph, chosen: &mut Vec<usize>, pools: &[VertexSet], depth: usize, nodes: &mut u64, budget: u64) -> bool {
        if depth == pools.len() {
            return true;
        }
        let mut cand = pools[depth].clone();
        for &v in chosen.iter() {
            cand = cand.intersection(&g.neighbours(v, Colour::Blue));
        }
        for v in cand.iter() {
            *nodes += 1;
            if *nodes > budget {
                return false;
            }
            chosen.push(v);
            if rec(g, chosen, pools, depth + 1, nodes, budget) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = start.to_vec();
    let mut nodes = 0;
    rec(g, &mut chosen, pools, 0, &mut nodes, budget).then(|| {
        chosen.sort_unstable();
        chosen
    })
}

fn witness(g: &ColouredGraph, members: Vec<usize>) -> Result<CliqueWitness> {
    if !g.is_clique(&members, Colour::Blue) {
        return Err(Error::Internal("greedy produced a non-clique".into()));
    }
    Ok(CliqueWitness { members, colour: Colour::Blue })
}

pub fn stability_partition(g: &ColouredGraph, n: usize, s: usize, params: &StabilityParams, seed: u64) -> Result<StabilityOutcome> {
    let out = partition_unchecked(g, n, s, params, seed)?;
    if let StabilityOutcome::Partition(p) = &out {
        if let Some(m) = p.margins.iter().find(|m| !m.holds()) {
            return Err(Error::PreconditionViolated { condition: m.name.clone(), have: m.have, need: m.need }.at("stability"));
        }
        validate_partition(g, p, n, params.epsilon, params.density(n)).map_err(|e| Error::Internal(e).at("stability"))?;
    }
    Ok(out)
}

/// The partition before its size and density margins are enforced.
fn partition_unchecked(g: &ColouredGraph, n: usize, s: usize, params: &StabilityParams, seed: u64) -> Result<StabilityOutcome> {
    let big = g.n();
    let cube = (n as f64).exp2();
    let need = (1.0 - 1.0 / (2.0 * s as f64)) * (s - 1) as f64 * cube;
    if (big as f64) < need {
        return Err(Error::PreconditionViolated { condition: "v(G) >= (1-1/2s)(s-1)2^n".into(), have: big as f64, need });
    }
    if s < 2 {
        return Err(Error::Input("stability needs s >= 2".into()));
    }
    if s == 2 {
        if let Some(w) = g.find_clique_unchecked(&g.all(), 2, Colour::Blue) {
            return Ok(StabilityOutcome::BlueClique(w));
        }
        let parts = vec![g.empty_set(), g.all()];
        return Ok(StabilityOutcome::Partition(StabilityPartition { margins: margins(g, &parts, n, params), parts }));
    }

    let schedule = match &params.schedule {
        Some(a) => SizeSchedule::custom(a.clone(), params.decomposition_epsilon),
        None => Ok(SizeSchedule::geometric(big, params.decomposition_epsilon)),
    }
    .map_err(|e| e.at("decompose"))?;
    let opts = DecomposeOptions { seed: Prng::derive(seed, &[1]).next_u64(), ..params.decompose.clone() };
    let dec = match decompose(g, params.decomposition_epsilon, s, &schedule, &opts) {
        Ok(d) => d,
        Err(Error::BlueCliqueFound(w)) => return Ok(StabilityOutcome::BlueClique(w)),
        Err(e) => {
            // A failed decomposition usually means G is not K_s-free after all.
            return match g.find_clique_unchecked(&g.all(), s, Colour::Blue) {
                Some(w) => Ok(StabilityOutcome::BlueClique(w)),
                None => Err(e.at("decompose")),
            };
        }
    };
    let sets = dec.family.sets;
    let split = match matching_dichotomy(g, &sets, n, &params.matching, Prng::derive(seed, &[2]).next_u64()).map_err(|e| e.at("matching"))? {
        DichotomyOutcome::Embedding(e) => return Ok(StabilityOutcome::Embedding(e)),
        DichotomyOutcome::BlueClique(w) => return Ok(StabilityOutcome::BlueClique(w)),
        DichotomyOutcome::Partition(p) => p,
    };
    let x = split.x;

    // Components, minus the sets swamped by the exception set.
    let groups: Vec<Vec<usize>> = split
        .parts
        .iter()
        .map(|part| part.iter().copied().filter(|&i| sets[i].intersection_len(&x) as f64 <= params.heavy_intersection * sets[i].len() as f64).collect::<Vec<_>>())
        .filter(|p: &Vec<usize>| !p.is_empty())
        .collect();
    let mut group_of = vec![usize::MAX; sets.len()];
    for (j, grp) in groups.iter().enumerate() {
        for &i in grp {
            group_of[i] = j;
        }
    }
    let nn = (n * n) as f64;
    let trimmed: Vec<VertexSet> = sets.iter().map(|u| u.difference(&x)).collect();
    let group_union: Vec<VertexSet> = groups.iter().map(|grp| grp.iter().fold(g.empty_set(), |acc, &i| acc.union(&trimmed[i]))).collect();
    let high_red: Vec<VertexSet> = (0..sets.len())
        .map(|i| {
            if group_of[i] == usize::MAX {
                return g.empty_set();
            }
            let mut y = g.empty_set();
            for v in trimmed[i].iter() {
                let hot = match params.hot {
                    HotTest::PerSet => (0..sets.len()).any(|w| {
                        group_of[w] != usize::MAX && group_of[w] != group_of[i] && !trimmed[w].is_empty() && g.red_degree_into(v, &trimmed[w]) as f64 >= trimmed[w].len() as f64 / nn
                    }),
                    HotTest::PerPart => group_union.iter().enumerate().any(|(j, t)| {
                        j != group_of[i] && !t.is_empty() && g.red_degree_into(v, t) as f64 >= t.len() as f64 / nn
                    }),
                };
                if hot {
                    y.insert(v);
                }
            }
            y
        })
        .collect();
    let clean: Vec<VertexSet> = (0..sets.len()).map(|i| trimmed[i].difference(&high_red[i])).collect();

    if groups.len() >= s {
        let pools: Vec<VertexSet> = groups[..s].iter().map(|grp| grp.iter().fold(g.empty_set(), |acc, &i| acc.union(&clean[i]))).collect();
        return match greedy_blue(g, &[], &pools, params.greedy_budget) {
            Some(m) => Ok(StabilityOutcome::BlueClique(witness(g, m)?)),
            None => Err(Error::PreconditionViolated { condition: format!("{} parts but the greedy blue K_s failed", groups.len()), have: groups.len() as f64, need: (s - 1) as f64 }),
        };
    }

    let mut parts: Vec<VertexSet> = vec![g.empty_set(); s];
    for (j, grp) in groups.iter().enumerate() {
        for &i in grp {
            parts[j + 1].union_with(&clean[i]);
        }
    }

    // Blue edges inside a part either grow to a blue K_s or are evicted.
    for j in 1..s {
        while let Some((a, b)) = blue_edge(g, &parts[j]) {
            let pools: Vec<VertexSet> = (1..s).filter(|&i| i != j).map(|i| parts[i].clone()).collect();
            if let Some(m) = greedy_blue(g, &[a, b], &pools, params.greedy_budget) {
                return Ok(StabilityOutcome::BlueClique(witness(g, m)?));
            }
            let da = g.blue_degree_into(a, &parts[j]);
            let db = g.blue_degree_into(b, &parts[j]);
            parts[j].remove(if db > da { b } else { a });
        }
    }

    let mut covered = g.empty_set();
    for p in &parts[1..] {
        covered.union_with(p);
    }
    parts[0] = covered.complement();
    if params.absorb {
        let cap = (1.0 + params.epsilon) * cube;
        for v in parts[0].to_vec() {
            let target = (1..s).find(|&j| (parts[j].len() as f64) < cap && g.red_degree_into(v, &parts[j]) == parts[j].len() && !parts[j].is_empty());
            if let Some(j) = target {
                parts[0].remove(v);
                parts[j].insert(v);
            }
        }
    }

    // A vertex of S_0 blue-heavy into every part starts a blue K_s.
    for v in parts[0].iter() {
        if (1..s).all(|j| g.blue_degree_into(v, &parts[j]) as f64 > parts[j].len() as f64 / nn) {
            let pools: Vec<VertexSet> = parts[1..].to_vec();
            return match greedy_blue(g, &[v], &pools, params.greedy_budget) {
                Some(m) => Ok(StabilityOutcome::BlueClique(witness(g, m)?)),
                None => Err(Error::PreconditionViolated { condition: format!("vertex {v} of S_0 is blue-heavy into every part"), have: 0.0, need: 1.0 }),
            };
        }
    }

    Ok(StabilityOutcome::Partition(StabilityPartition { margins: margins(g, &parts, n, params), parts }))
}

fn blue_edge(g: &ColouredGraph, set: &VertexSet) -> Option<(usize, usize)> {
    set.iter().find_map(|a| g.neighbours(a, Colour::Blue).intersection(set).iter().find(|&b| b > a).map(|b| (a, b)))
}

/// Slack of the size and density conditions, stated as `have >= need`.
fn margins(g: &ColouredGraph, parts: &[VertexSet], n: usize, params: &StabilityParams) -> Vec<Inequality> {
    let cube = (n as f64).exp2();
    let mut out = vec![Inequality { name: "ε2^n >= |S_0|".into(), have: params.epsilon * cube, need: parts[0].len() as f64 }];
    for (j, p) in parts.iter().enumerate().skip(1) {
        out.push(Inequality { name: format!("(1+ε)2^n >= |S_{j}|"), have: (1.0 + params.epsilon) * cube, need: p.len() as f64 });
    }
    for i in 1..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i].is_empty() || parts[j].is_empty() {
                continue;
            }
            let d = g.cross_count(&parts[i], &parts[j], Colour::Red) as f64 / (parts[i].len() * parts[j].len()) as f64;
            out.push(Inequality { name: format!("threshold >= d_R(S_{i}, S_{j})"), have: params.density(n), need: d });
        }
    }
    out
}

/// The four partition conditions, checked from scratch.
pub fn validate_partition(g: &ColouredGraph, p: &StabilityPartition, n: usize, epsilon: f64, threshold: f64) -> std::result::Result<(), String> {
    let total: usize = p.parts.iter().map(VertexSet::len).sum();
    let mut seen = vec![false; g.n()];
    for part in &p.parts {
        for v in part.iter() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} in two classes"));
            }
        }
    }
    if total != g.n() {
        return Err(format!("classes cover {total} of {} vertices", g.n()));
    }
    let cube = (n as f64).exp2();
    if p.parts[0].len() as f64 > epsilon * cube {
        return Err(format!("|S_0| = {} > ε2^n", p.parts[0].len()));
    }
    let nn = (n * n) as f64;
    for (j, part) in p.parts.iter().enumerate().skip(1) {
        if part.len() as f64 > (1.0 + epsilon) * cube {
            return Err(format!("|S_{j}| = {} > (1+ε)2^n", part.len()));
        }
        let members = part.to_vec();
        for (a, &u) in members.iter().enumerate() {
            if let Some(&v) = members[a + 1..].iter().find(|&&v| g.colour(u, v) == Colour::Blue) {
                return Err(format!("S_{j} has blue edge {u}-{v}"));
            }
        }
        for (i, other) in p.parts.iter().enumerate().skip(j + 1) {
            let mut red = 0usize;
            for u in part.iter() {
                red += other.iter().filter(|&v| g.colour(u, v) == Colour::Red).count();
            }
            if !part.is_empty() && !other.is_empty() && red as f64 > threshold * (part.len() * other.len()) as f64 {
                return Err(format!("d_R(S_{j}, S_{i}) above threshold"));
            }
        }
    }
    for v in p.parts[0].iter() {
        let ok = p.parts.iter().skip(1).any(|part| part.iter().filter(|&u| g.colour(u, v) == Colour::Blue).count() as f64 <= part.len() as f64 / nn);
        if !ok {
            return Err(format!("vertex {v} of S_0 has no blue-sparse part"));
        }
    }
    Ok(())
}

// ============================================================================
// Final embedding and the main pipeline
// ============================================================================

pub fn final_embed(g: &ColouredGraph, x: &VertexSet, y: &VertexSet, n: usize) -> Result<CubeEmbedding> {
    let size = 1usize << n;
    let fail = |condition: &str, have: f64, need: f64| Err(Error::PreconditionViolated { condition: condition.into(), have, need });
    if !x.is_disjoint(y) {
        return Err(Error::Input("X and Y overlap".into()));
    }
    if x.len() + y.len() < size {
        return fail("|X| + |Y| >= 2^n", (x.len() + y.len()) as f64, size as f64);
    }
    let y_cap = (n as f64 - 3.0).exp2();
    if y.len() as f64 > y_cap {
        return fail("2^(n-3) >= |Y|", y_cap, y.len() as f64);
    }
    if let Some((a, b)) = blue_edge(g, x) {
        return fail(&format!("X is a red clique (blue edge {a}-{b})"), 0.0, 1.0);
    }
    let allow = x.len() as f64 / (n * n).max(1) as f64;
    for v in y.iter() {
        let d = g.blue_degree_into(v, x);
        if d as f64 > allow {
            return fail(&format!("vertex {v} of Y has <= |X|/n^2 blue neighbours in X"), allow, d as f64);
        }
    }

    // Fill the lowest even layers from Y.
    let mut ell = 0;
    let mut below = 0u128;
    while below + binomial(n as u64, 2 * ell as u64) <= y.len() as u128 && 2 * ell <= n {
        below += binomial(n as u64, 2 * ell as u64);
        ell += 1;
    }
    let order = layer_order(n);
    let mut map = vec![usize::MAX; size];
    let mut ys = y.iter();
    for &z in order.iter().filter(|z| z.count_ones() % 2 == 0 && z.count_ones() as usize <= 2 * ell) {
        match ys.next() {
            Some(v) => map[z as usize] = v,
            None => break,
        }
    }
    let mut free = x.clone();
    for &z in order.iter().filter(|z| z.count_ones() as usize <= 2 * ell + 1) {
        if map[z as usize] != usize::MAX {
            continue;
        }
        let mut cand = free.clone();
        for c in 0..n {
            let img = map[(z ^ (1 << c)) as usize];
            if img != usize::MAX {
                cand.difference_with(&g.neighbours(img, Colour::Blue));
            }
        }
        let v = cand.first().ok_or_else(|| Error::Internal(format!("final embedding stuck at cube vertex {z}")))?;
        map[z as usize] = v;
        free.remove(v);
    }
    let mut rest = free.iter();
    for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = rest.next().ok_or_else(|| Error::Internal("ran out of X in the final fill".into()))?;
    }
    Ok(CubeEmbedding::new(n, map))
}

#[derive(Clone, Debug)]
pub struct MainOptions {
    pub stability: StabilityParams,
    /// Accept graphs of any size at least the stability bound.
    pub any_size: bool,
}

pub fn ramsey_main(g: &ColouredGraph, s: usize, n: usize, opts: &MainOptions, seed: u64) -> Result<EmbedOutcome> {
    let exact = (s - 1) * ((1usize << n) - 1) + 1;
    if !opts.any_size && g.n() != exact {
        return Err(Error::PreconditionViolated { condition: "v(G) = (s-1)(2^n-1)+1".into(), have: g.n() as f64, need: exact as f64 });
    }
    // final_embed checks its own preconditions, so a partition that misses a
    // density margin is still worth trying.
    let outcome = match partition_unchecked(g, n, s, &opts.stability, seed)? {
        StabilityOutcome::Embedding(e) => EmbedOutcome::Embedding(e),
        StabilityOutcome::BlueClique(w) => EmbedOutcome::BlueClique(w),
        StabilityOutcome::Partition(p) => {
            let nn = (n * n) as f64;
            let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); s];
            for v in p.parts[0].iter() {
                let j = (1..s)
                    .find(|&j| g.blue_degree_into(v, &p.parts[j]) as f64 <= p.parts[j].len() as f64 / nn)
                    .ok_or_else(|| Error::Internal(format!("vertex {v} has no low-blue part")))?;
                assigned[j].push(v);
            }
            let size = 1usize << n;
            // Of the classes that reach 2^n, the one needing the fewest extra vertices.
            let j = (1..s)
                .filter(|&j| p.parts[j].len() + assigned[j].len() >= size)
                .min_by_key(|&j| (size.saturating_sub(p.parts[j].len()), j))
                .ok_or_else(|| Error::Internal("pigeonhole found no class of size 2^n".into()))?;
            let want = size.saturating_sub(p.parts[j].len());
            let y = VertexSet::from_slice(g.n(), &assigned[j][..want]);
            EmbedOutcome::Embedding(final_embed(g, &p.parts[j], &y, n).map_err(|e| e.at("final-embed"))?)
        }
    };
    match &outcome {
        EmbedOutcome::Embedding(e) => {
            let report = crate::oracle::validate_embedding(g, e);
            if !report.valid {
                return Err(Error::Internal(format!("pipeline produced an invalid embedding: {}", report.reason.unwrap_or_default())));
            }
        }
        EmbedOutcome::BlueClique(w) => {
            if w.members.len() < s || !g.is_clique(&w.members, Colour::Blue) {
                return Err(Error::Internal("pipeline produced an invalid blue clique".into()));
            }
        }
    }
    Ok(outcome)
}

// ============================================================================
// General forbidden graphs
// ============================================================================

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HProfile {
    pub h: SmallGraph,
    pub chi: usize,
    pub sigma: usize,
}

pub const PROFILE_BUDGET: u64 = 20_000_000;

/// Proper colourings with `k` colours, labels introduced in order; `visit`
/// returns `false` to stop.
fn colourings(h: &SmallGraph, k: usize, nodes: &mut u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
    fn rec(h: &SmallGraph, k: usize, col: &mut Vec<usize>, used: usize, nodes: &mut u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        let v = col.len();
        if v == h.n {
            return Ok(visit(col));
        }
        for c in 0..k.min(used + 1) {
            *nodes += 1;
            if *nodes > PROFILE_BUDGET {
                return Err(Error::Capacity { what: "h_profile".into(), needed: *nodes as u128, budget: PROFILE_BUDGET as u128 });
            }
            if (0..v).any(|u| h.has_edge(u, v) && col[u] == c) {
                continue;
            }
            col.push(c);
            let go = rec(h, k, col, used.max(c + 1), nodes, visit)?;
            col.pop();
            if !go {
                return Ok(false);
            }
        }
        Ok(true)
    }
    rec(h, k, &mut Vec::with_capacity(h.n), 0, nodes, visit)
}

pub fn h_profile(h: &SmallGraph) -> Result<HProfile> {
    if h.n > 12 {
        return Err(Error::Capacity { what: "h_profile vertices".into(), needed: h.n as u128, budget: 12 });
    }
    if h.n == 0 {
        return Err(Error::Input("pattern graph is empty".into()));
    }
    let mut nodes = 0u64;
    let mut chi = 1;
    loop {
        let mut found = false;
        colourings(h, chi, &mut nodes, &mut |_| {
            found = true;
            false
        })?;
        if found {
            break;
        }
        chi += 1;
    }
    let mut sigma = h.n;
    colourings(h, chi, &mut nodes, &mut |col| {
        let mut counts = vec![0usize; chi];
        for &c in col {
            counts[c] += 1;
        }
        sigma = sigma.min(*counts.iter().min().unwrap());
        true
    })?;
    Ok(HProfile { h: h.clone(), chi, sigma })
}

/// `χ−1` red cliques of size `2^n−1` and one of size `σ−1`, blue between.
pub fn lower_bound_colouring(profile: &HProfile, n: usize) -> ColouredGraph {
    let big = (1usize << n) - 1;
    let mut sizes = vec![big; profile.chi.saturating_sub(1)];
    sizes.push(profile.sigma - 1);
    multipartite(&sizes)
}

/// Red cliques of the given sizes with blue between them.
pub fn multipartite(sizes: &[usize]) -> ColouredGraph {
    let part: Vec<usize> = sizes.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect();
    ColouredGraph::from_fn(part.len(), |u, v| if part[u] == part[v] { Colour::Red } else { Colour::Blue })
}

/// Noise knobs for [`perturbed_extremal`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    /// Probability that a cross-part blue edge turns red.
    pub cross_red: f64,
    /// Probability that an in-part red edge turns blue.
    pub inner_blue: f64,
}

/// The extremal colouring for `K_s` with one extra vertex, red to part 0,
/// followed by random edge flips. The result has `(s−1)(2^n−1)+1` vertices.
pub fn perturbed_extremal(s: usize, n: usize, noise: Perturbation, seed: u64) -> ColouredGraph {
    let big = (1usize << n) - 1;
    let total = (s - 1) * big + 1;
    let part = |v: usize| if v == total - 1 { 0 } else { v / big };
    let mut rng = Prng::new(seed, 0x5045);
    ColouredGraph::from_fn(total, |u, v| {
        if part(u) == part(v) {
            if rng.bernoulli(noise.inner_blue) { Colour::Blue } else { Colour::Red }
        } else if rng.bernoulli(noise.cross_red) {
            Colour::Red
        } else {
            Colour::Blue
        }
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DrcParams {
    pub n: usize,
    pub c: u32,
    pub retries: usize,
    /// Samples per part; `None` uses `⌊ln|A| / (2s ln n)⌋`.
    pub t: Option<usize>,
    /// Node budget of the subset extraction.
    pub budget: u64,
}

impl DrcParams {
    pub fn desk(n: usize) -> Self {
        DrcParams { n, c: 8, retries: 100, t: None, budget: 1_000_000 }
    }

    pub fn floor(&self) -> f64 {
        (self.n as f64).exp2() / (self.n as f64).powi(self.c as i32 - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DrcOutcome {
    Found(Vec<usize>),
    SmallA,
}

/// A `sigma`-subset of `A` whose common blue neighbourhood in every part
/// reaches the floor, or the verdict that `A` is small.
pub fn dependent_random_choice(g: &ColouredGraph, a: &VertexSet, parts: &[VertexSet], sigma: usize, params: &DrcParams, seed: u64) -> Result<DrcOutcome> {
    let n = params.n as f64;
    let entry = n.exp2() / (n * n);
    for v in a.iter() {
        for (j, part) in parts.iter().enumerate() {
            let d = g.blue_degree_into(v, part);
            if (d as f64) < entry {
                return Err(Error::PreconditionViolated { condition: format!("vertex {v} blue into S_{}", j + 1), have: d as f64, need: entry });
            }
        }
    }
    if a.len() as f64 <= n.powi(params.c as i32) {
        return Ok(DrcOutcome::SmallA);
    }
    let s = parts.len() + 1;
    let t = params.t.unwrap_or(((a.len() as f64).ln() / (2.0 * s as f64 * n.ln())).floor() as usize);
    let floor = params.floor();
    let blue: Vec<VertexSet> = a.iter().map(|v| g.neighbours(v, Colour::Blue)).collect();
    let index: Vec<usize> = a.to_vec();
    let mut best = 0usize;
    for attempt in 0..params.retries.max(1) {
        let mut rng = Prng::derive(seed, &[attempt as u64]);
        let mut common = a.clone();
        for part in parts {
            let members = part.to_vec();
            for _ in 0..t {
                let w = members[rng.index(members.len())];
                common = common.intersection(&g.neighbours(w, Colour::Blue));
            }
        }
        let pool: Vec<usize> = common.to_vec();
        let mut nodes = 0u64;
        let mut chosen = Vec::new();
        let start: Vec<VertexSet> = parts.to_vec();
        if extract(&pool, &index, &blue, &start, sigma, floor, &mut chosen, 0, &mut nodes, params.budget, &mut best) {
            for part in parts {
                let mut c = part.clone();
                for &v in &chosen {
                    c = c.intersection(&g.neighbours(v, Colour::Blue));
                }
                if (c.len() as f64) < floor {
                    return Err(Error::Internal("dependent random choice returned a set below the floor".into()));
                }
            }
            return Ok(DrcOutcome::Found(chosen));
        }
    }
    Err(Error::RetriesExhausted { attempts: params.retries, worst_vertex: 0, worst_degree: best, bound: floor })
}

#[allow(clippy::too_many_arguments)]
fn extract(pool: &[usize], index: &[usize], blue: &[VertexSet], common: &[VertexSet], sigma: usize, floor: f64, chosen: &mut Vec<usize>, from: usize, nodes: &mut u64, budget: u64, best: &mut usize) -> bool {
    if chosen.len() == sigma {
        return true;
    }
    for i in from..pool.len() {
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        let v = pool[i];
        let row = &blue[index.binary_search(&v).expect("pool lies in A")];
        let next: Vec<VertexSet> = common.iter().map(|c| c.intersection(row)).collect();
        let low = next.iter().map(VertexSet::len).min().unwrap_or(usize::MAX);
        if chosen.len() + 1 == sigma {
            *best = (*best).max(low);
        }
        if (low as f64) < floor {
            continue;
        }
        chosen.push(v);
        if extract(pool, index, blue, &next, sigma, floor, chosen, i + 1, nodes, budget, best) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[derive(Clone, Debug)]
pub struct SwitchReport {
    pub embedding: CubeEmbedding,
    pub residual: usize,
    /// Blue image-edge count before the first swap and after each swap.
    pub history: Vec<usize>,
}

/// Count of cube edges at `z` whose images are blue, under `map`.
fn blue_at(g: &ColouredGraph, map: &[usize], n: usize, z: usize) -> usize {
    (0..n).filter(|&c| g.is_blue(map[z], map[z ^ (1 << c)])).count()
}

fn blue_total(g: &ColouredGraph, map: &[usize], n: usize) -> usize {
    (0..map.len()).map(|z| blue_at(g, map, n, z)).sum::<usize>() / 2
}

/// Local search: swap the host vertices of two cube vertices (or move one to an
/// unused host vertex) whenever that strictly lowers the number of blue image edges.
#[derive(Clone, Copy)]
enum Move {
    Swap(usize, usize),
    Replace(usize, usize),
}

pub fn vertex_switch_repair(g: &ColouredGraph, start: &CubeEmbedding) -> Result<SwitchReport> {
    let n = start.n;
    let mut map = start.map.clone();
    let mut used = g.empty_set();
    for &v in &map {
        if v >= g.n() || !used.insert(v) {
            return Err(Error::Input("embedding is not an injective map into the host".into()));
        }
    }
    let mut count = blue_total(g, &map, n);
    let mut history = vec![count];
    // Steepest descent: apply the move with the largest drop, first one on ties.
    while count > 0 {
        let bad: Vec<usize> = (0..map.len()).filter(|&z| blue_at(g, &map, n, z) > 0).collect();
        let mut best: Option<(usize, Move)> = None;
        let mut consider = |drop: usize, m: Move| {
            if drop > 0 && best.as_ref().is_none_or(|(d, _)| drop > *d) {
                best = Some((drop, m));
            }
        };
        for &z in &bad {
            for w in 0..map.len() {
                if w == z {
                    continue;
                }
                let adjacent = (z ^ w).count_ones() == 1;
                let pair = |map: &[usize]| blue_at(g, map, n, z) + blue_at(g, map, n, w) - usize::from(adjacent && g.is_blue(map[z], map[w]));
                let before = pair(&map);
                map.swap(z, w);
                let after = pair(&map);
                map.swap(z, w);
                consider(before.saturating_sub(after), Move::Swap(z, w));
            }
            let before = blue_at(g, &map, n, z);
            let old = map[z];
            for spare in used.complement().iter() {
                map[z] = spare;
                let after = blue_at(g, &map, n, z);
                consider(before.saturating_sub(after), Move::Replace(z, spare));
            }
            map[z] = old;
        }
        let Some((drop, m)) = best else { break };
        match m {
            Move::Swap(z, w) => map.swap(z, w),
            Move::Replace(z, spare) => {
                used.remove(map[z]);
                used.insert(spare);
                map[z] = spare;
            }
        }
        count -= drop;
        history.push(count);
    }
    debug_assert_eq!(count, blue_total(g, &map, n));
    Ok(SwitchReport { embedding: CubeEmbedding::new(n, map), residual: count, history })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::validate_embedding;

    fn extremal(s: usize, n: usize) -> ColouredGraph {
        multipartite(&vec![(1 << n) - 1; s - 1])
    }

    #[test]
    fn extremal_partition() {
        let (s, n) = (3, 6);
        let g = extremal(s, n);
        let params = StabilityParams::desk(s, 0.25);
        match stability_partition(&g, n, s, &params, 0).unwrap() {
            StabilityOutcome::Partition(p) => {
                assert!(p.parts[0].is_empty());
                assert_eq!(p.parts[1], VertexSet::range(126, 0, 63));
                assert_eq!(p.parts[2], VertexSet::range(126, 63, 126));
                validate_partition(&g, &p, n, 0.25, 1.0 / 36.0).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn all_blue_gives_triangle() {
        let g = ColouredGraph::monochromatic(120, Colour::Blue);
        match stability_partition(&g, 6, 3, &StabilityParams::desk(3, 0.25), 0).unwrap() {
            StabilityOutcome::BlueClique(w) => assert!(g.is_clique(&w.members, Colour::Blue) && w.members.len() >= 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn final_embed_examples() {
        let g = ColouredGraph::new(16);
        let e = final_embed(&g, &g.all(), &g.empty_set(), 4).unwrap();
        assert!(validate_embedding(&g, &e).valid);

        let mut g = ColouredGraph::new(17);
        g.set_colour(16, 0, Colour::Blue);
        let x = VertexSet::range(17, 0, 16);
        let y = VertexSet::from_slice(17, &[16]);
        let e = final_embed(&g, &x, &y, 4).unwrap();
        assert_eq!(e.map[0], 16);
        assert!(validate_embedding(&g, &e).valid);

        let mut g = ColouredGraph::new(17);
        g.set_colour(16, 0, Colour::Blue);
        g.set_colour(16, 1, Colour::Blue);
        assert!(matches!(final_embed(&g, &x, &y, 4), Err(Error::PreconditionViolated { .. })));
    }

    #[test]
    fn ramsey_main_all_red() {
        let (s, n) = (3, 5);
        let g = ColouredGraph::new((s - 1) * 31 + 1);
        let opts = MainOptions { stability: StabilityParams::desk(s, 0.25), any_size: false };
        let out = ramsey_main(&g, s, n, &opts, 4).unwrap();
        assert!(validate_embedding(&g, out.embedding().unwrap()).valid);
    }

    #[test]
    fn profiles() {
        let p = h_profile(&SmallGraph::complete(3)).unwrap();
        assert_eq!((p.chi, p.sigma), (3, 1));
        let p = h_profile(&SmallGraph::cycle(5)).unwrap();
        assert_eq!((p.chi, p.sigma), (3, 1));
        let p = h_profile(&SmallGraph::complete_bipartite(2, 3)).unwrap();
        assert_eq!((p.chi, p.sigma), (2, 2));
        let p = h_profile(&SmallGraph::cycle(6)).unwrap();
        assert_eq!((p.chi, p.sigma), (2, 3));
        assert!(h_profile(&SmallGraph::empty(13)).is_err());
    }

    #[test]
    fn lower_bound_sizes() {
        let k23 = h_profile(&SmallGraph::complete_bipartite(2, 3)).unwrap();
        assert_eq!(lower_bound_colouring(&k23, 3).n(), 8);
        let k4 = h_profile(&SmallGraph::complete(4)).unwrap();
        assert_eq!(lower_bound_colouring(&k4, 2), extremal(4, 2));
        let g = lower_bound_colouring(&k4, 1);
        assert_eq!(g.n(), 3);
        assert_eq!(g.blue_edge_count(), 3);
    }

    #[test]
    fn drc_examples() {
        let g = ColouredGraph::monochromatic(40, Colour::Blue);
        let a = VertexSet::range(40, 0, 10);
        let parts = [VertexSet::range(40, 10, 25), VertexSet::range(40, 25, 40)];
        let p = DrcParams { n: 3, c: 1, retries: 5, t: None, budget: 10_000 };
        assert_eq!(dependent_random_choice(&g, &a, &parts, 2, &p, 0).unwrap(), DrcOutcome::Found(vec![0, 1]));
        let p = DrcParams { c: 3, ..p };
        assert_eq!(dependent_random_choice(&g, &a, &parts, 2, &p, 0).unwrap(), DrcOutcome::SmallA);
    }

    #[test]
    fn switching_repairs_a_transposition() {
        let g = ColouredGraph::new(8);
        let e = CubeEmbedding::new(3, (0..8).collect());
        let r = vertex_switch_repair(&g, &e).unwrap();
        assert_eq!((r.residual, r.history.len()), (0, 1));

        let mut g = ColouredGraph::new(9);
        for v in 0..8 {
            if v != 0 && v != 7 {
                g.set_colour(8, v, Colour::Blue);
            }
        }
        let mut map: Vec<usize> = (0..8).collect();
        map[1] = 8;
        let r = vertex_switch_repair(&g, &CubeEmbedding::new(3, map)).unwrap();
        assert_eq!(r.residual, 0);
        assert!(r.history.windows(2).all(|w| w[1] < w[0]));
    }
}
