//! Greedy hypercube embedding into a colouring with sparse blue graph.
//!
//! Level `r` of the construction assigns to each prefix `x` of length `d(r)`
//! a host set `A(x)`; blue degrees between sets of equal or adjacent prefixes
//! decay with the prefix divergence. [`refine_assignment`] builds level `r+1`
//! from level `r`, and [`embed_via_assignment`] places the cube greedily once
//! the last level is reached.
//!
//! Degree thresholds have the shape `2^{n-d(r)} / d(t)^{λ·e}` where `e` is the
//! exponent of the asymptotic argument and `λ` is [`DenseParams::exponent_scale`].
//! With `λ = 1` the thresholds are below one vertex for every desk-sized `n`.

use crate::cube::{divergence_unchecked, low_mask, CubeEmbedding};
use crate::error::{Error, Result};
use crate::graph::{CliqueWitness, Colour, ColouredGraph, VertexSet};
use crate::io::prng::Prng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseParams {
    pub epsilon: f64,
    pub s: usize,
    pub k: usize,
    /// `d(0), …, d(k+2)`; `d(0) = 0`.
    pub d: Vec<usize>,
    pub exponent_scale: f64,
    pub c_gap: f64,
    pub retries: usize,
    /// Report the feasibility inequalities instead of enforcing them.
    pub relaxed: bool,
    /// Optional declared bound on every blue degree.
    pub q_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub name: String,
    pub have: f64,
    pub need: f64,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.have >= self.need
    }
}

impl DenseParams {
    /// Desk defaults: `k = 1` with `d = (0, n/4, n/2, n)` from `n = 8`, else
    /// `k = 0` with `d = (0, ⌈n/2⌉, n)`.
    pub fn desk(n: usize, s: usize, epsilon: f64) -> Self {
        let (k, d) = if n >= 8 { (1, vec![0, n / 4, n / 2, n]) } else { (0, vec![0, n.div_ceil(2).max(1), n.max(1)]) };
        DenseParams { epsilon, s, k, d, exponent_scale: 0.25, c_gap: 1.0, retries: 100, relaxed: true, q_bound: None }
    }

    pub fn with_schedule(mut self, k: usize, d: Vec<usize>) -> Self {
        self.k = k;
        self.d = d;
        self
    }

    pub fn gamma(&self) -> f64 {
        self.epsilon / (3.0 * (self.k as f64 + 2.0))
    }

    /// Size of a level-`r` set: `⌊(1 + 3(k+2-r)γ)·2^{n-d(r)}⌋`.
    pub fn level_size(&self, n: usize, r: usize) -> usize {
        let slack = 1.0 + 3.0 * (self.k as f64 + 2.0 - r as f64) * self.gamma();
        (slack * pow2(n - self.d[r])).floor() as usize
    }

    /// Size of an intermediate core while refining level `r`.
    pub fn core_size(&self, n: usize, r: usize) -> usize {
        let slack = 1.0 + (3.0 * (self.k as f64 + 1.0 - r as f64) + 1.0) * self.gamma();
        (slack * pow2(n - self.d[r + 1])).floor() as usize
    }

    /// `2^{n-d(level)} / d(t)^{λ·e}`.
    pub fn threshold(&self, n: usize, level: usize, t: usize, e: f64) -> f64 {
        pow2(n - self.d[level]) / (self.d[t] as f64).powf(self.exponent_scale * e)
    }

    /// Assignment bound (b) at level `r` for divergence `t`.
    pub fn assignment_bound(&self, n: usize, r: usize, t: usize) -> f64 {
        self.threshold(n, r, t, 4.0 * (self.k as f64 + 2.0 - r as f64))
    }

    pub fn validate_shape(&self, n: usize) -> Result<()> {
        let k = self.k;
        if self.d.len() != k + 3 {
            return Err(Error::Input(format!("d-schedule needs k+3 = {} entries, got {}", k + 3, self.d.len())));
        }
        if self.d[0] != 0 {
            return Err(Error::Input("d(0) must be 0".into()));
        }
        if self.d[..=k + 1].windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input(format!("d-schedule {:?} not strictly increasing", &self.d[..=k + 1])));
        }
        if self.d[k + 1] > n {
            return Err(Error::Input(format!("d(k+1) = {} exceeds n = {n}", self.d[k + 1])));
        }
        if self.d[k + 2] == 0 {
            return Err(Error::Input("d(k+2) must be positive".into()));
        }
        if !(0.0 < self.epsilon && self.epsilon < 1.0) {
            return Err(Error::Input(format!("epsilon {} outside (0,1)", self.epsilon)));
        }
        if self.s < 2 {
            return Err(Error::Input("s must be at least 2".into()));
        }
        if !(self.exponent_scale >= 0.0) {
            return Err(Error::Input("exponent_scale must be non-negative".into()));
        }
        Ok(())
    }

    /// The growth conditions on the d-schedule.
    pub fn feasibility(&self) -> Vec<Inequality> {
        let (k, s) = (self.k, self.s as f64);
        let mut out = Vec::new();
        for r in 0..=k {
            out.push(Inequality {
                name: format!("d({}) >= s·d({r})·c_gap", r + 1),
                have: self.d[r + 1] as f64,
                need: s * self.d[r] as f64 * self.c_gap,
            });
            out.push(Inequality {
                name: format!("2^(d({})/s) >= d({})^(5k)·c_gap", r + 1, r + 2),
                have: (self.d[r + 1] as f64 / s).exp2(),
                need: (self.d[r + 2] as f64).powf(5.0 * k as f64) * self.c_gap,
            });
        }
        out
    }

    pub fn check(&self, n: usize) -> Result<()> {
        self.validate_shape(n)?;
        if !self.relaxed {
            if let Some(f) = self.feasibility().into_iter().find(|f| !f.holds()) {
                return Err(Error::ParametersInfeasible { condition: f.name, have: f.have, need: f.need });
            }
        }
        Ok(())
    }
}

fn pow2(e: usize) -> f64 {
    (e as f64).exp2()
}

/// For every vertex of `targets`, its number of blue neighbours in `sources`.
fn blue_counts(g: &ColouredGraph, sources: &VertexSet, targets: &VertexSet) -> Vec<u32> {
    let mut counts = vec![0u32; g.n()];
    for w in sources.iter() {
        for (i, (&row, &t)) in g.blue_row(w).iter().zip(targets.words()).enumerate() {
            let mut bits = row & t;
            while bits != 0 {
                counts[i * 64 + bits.trailing_zeros() as usize] += 1;
                bits &= bits - 1;
            }
        }
    }
    counts
}

// ============================================================================
// Dense subsets
// ============================================================================

/// Descent through blue neighbourhoods of violating vertices.
///
/// Returns `Y ⊆ X` with `|Y| ≥ 2^{-(s-2)d}|X|` and every internal blue degree
/// at most `2^{-d}|Y|`, or [`Error::BlueCliqueFound`].
pub fn find_dense_subset(g: &ColouredGraph, x: &VertexSet, d: f64, s: usize) -> Result<VertexSet> {
    if s < 2 {
        return Err(Error::Input("find_dense_subset needs s >= 2".into()));
    }
    let frac = (-d).exp2();
    let mut cur = x.clone();
    let mut path = Vec::new();
    for _ in 0..s.saturating_sub(2) {
        let size = cur.len() as f64;
        let worst = cur.iter().map(|v| (g.blue_degree_into(v, &cur), v)).filter(|&(deg, _)| deg as f64 > frac * size).max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match worst {
            None => return Ok(cur),
            Some((_, v)) => {
                path.push(v);
                cur = g.neighbours(v, Colour::Blue).intersection(&cur);
            }
        }
    }
    // `cur` must now be a red clique, or the descent has found a blue K_s.
    for u in cur.iter() {
        let nb = g.neighbours(u, Colour::Blue).intersection(&cur);
        if let Some(w) = nb.first() {
            let mut members = path;
            members.extend([u, w]);
            members.sort_unstable();
            return Err(Error::BlueCliqueFound(CliqueWitness { members, colour: Colour::Blue }));
        }
    }
    Ok(cur)
}

/// An `a`-subset of `X` with internal blue degrees at most `2^{-d+1}a`.
pub fn sized_dense_subset(g: &ColouredGraph, x: &VertexSet, a: usize, d: f64, s: usize, seed: u64, retries: usize, relaxed: bool) -> Result<VertexSet> {
    if a > x.len() || a == 0 {
        return Err(Error::ParametersInfeasible { condition: "0 < a <= |X|".into(), have: a as f64, need: x.len() as f64 });
    }
    let lower = (x.len() as f64).ln() * (d + 3.0).exp2();
    let upper = (-(s as f64 - 2.0) * d).exp2() * x.len() as f64;
    if !relaxed {
        if (a as f64) < lower {
            return Err(Error::ParametersInfeasible { condition: "a >= log|X|·2^(d+3)".into(), have: a as f64, need: lower });
        }
        if a as f64 > upper {
            return Err(Error::ParametersInfeasible { condition: "a <= 2^(-(s-2)d)|X|".into(), have: upper, need: a as f64 });
        }
    }
    let core = find_dense_subset(g, x, d, s)?;
    let pool = if core.len() >= a { core } else if relaxed { x.clone() } else {
        return Err(Error::ParametersInfeasible { condition: "dense core holds a vertices".into(), have: core.len() as f64, need: a as f64 });
    };
    let bound = (1.0 - d).exp2() * a as f64;
    let worst_of = |y: &VertexSet| y.iter().map(|v| (g.blue_degree_into(v, y), v)).max_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1))).unwrap_or((0, 0));
    if pool.len() == a {
        let (deg, v) = worst_of(&pool);
        if deg as f64 <= bound {
            return Ok(pool);
        }
        return Err(Error::RetriesExhausted { attempts: 1, worst_vertex: v, worst_degree: deg, bound });
    }
    let members = pool.to_vec();
    let mut best: Option<(usize, usize)> = None;
    for attempt in 0..retries.max(1) {
        let pick = Prng::new(seed, attempt as u64).sample(&members, a);
        let y = VertexSet::from_slice(g.n(), &pick);
        let (deg, v) = worst_of(&y);
        if deg as f64 <= bound {
            return Ok(y);
        }
        if best.is_none_or(|(d0, _)| deg < d0) {
            best = Some((deg, v));
        }
    }
    let (worst_degree, worst_vertex) = best.unwrap();
    Err(Error::RetriesExhausted { attempts: retries.max(1), worst_vertex, worst_degree, bound })
}

// ============================================================================
// Assignments
// ============================================================================

/// Level-`r` assignment: `sets[x]` is `A(x)` for the prefix with mask `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub level: usize,
    pub sets: Vec<VertexSet>,
}

impl Assignment {
    pub fn level_zero(g: &ColouredGraph, n: usize, params: &DenseParams) -> Result<Self> {
        let size = params.level_size(n, 0);
        if g.n() < size {
            return Err(Error::PreconditionViolated { condition: "v(G) >= (1+ε)2^n".into(), have: g.n() as f64, need: size as f64 });
        }
        Ok(Assignment { level: 0, sets: vec![VertexSet::range(g.n(), 0, size)] })
    }
}

/// The worst violation of the assignment invariants, if any.
pub fn validate_assignment(g: &ColouredGraph, n: usize, a: &Assignment, params: &DenseParams) -> std::result::Result<(), String> {
    let r = a.level;
    let dr = params.d[r];
    if a.sets.len() != 1usize << dr {
        return Err(format!("level {r} needs 2^{dr} sets, has {}", a.sets.len()));
    }
    let size = params.level_size(n, r);
    let mut seen = VertexSet::new(g.n());
    for (x, set) in a.sets.iter().enumerate() {
        if set.len() != size {
            return Err(format!("(a) |A({x})| = {} != {size}", set.len()));
        }
        if !seen.is_disjoint(set) {
            return Err(format!("A({x}) overlaps an earlier set"));
        }
        seen.union_with(set);
    }
    let sched = &params.d[1..=r];
    for x in 0..a.sets.len() as u64 {
        let partners = std::iter::once(x).chain((0..dr).map(|c| x ^ (1 << c)));
        for xp in partners {
            let t = divergence_unchecked(x, xp, sched);
            let bound = params.assignment_bound(n, r, t);
            let counts = blue_counts(g, &a.sets[x as usize], &a.sets[xp as usize]);
            if let Some(v) = a.sets[xp as usize].iter().find(|&v| counts[v] as f64 > bound) {
                return Err(format!("(b) vertex {v} of A({xp}) has {} blue neighbours in A({x}) > {bound:.3}", counts[v]));
            }
        }
    }
    Ok(())
}

/// Refine a level-`r` assignment to level `r+1`.
pub fn refine_assignment(g: &ColouredGraph, n: usize, a: &Assignment, params: &DenseParams, seed: u64) -> Result<Assignment> {
    let r = a.level;
    let k = params.k;
    if r > k {
        return Err(Error::Input(format!("cannot refine beyond level k+1 = {}", k + 1)));
    }
    let (dr, dn) = (params.d[r], params.d[r + 1]);
    let cells = 1usize << dn;
    let sched = &params.d[1..=r + 1];
    let core = params.core_size(n, r);
    let final_size = params.level_size(n, r + 1);
    let e_core = 4.0 * (k as f64 + 1.0 - r as f64) + 2.0;
    let e_next = 4.0 * (k as f64 + 1.0 - r as f64);
    let infeasible = |condition: String, have: f64, need: f64| Error::ParametersInfeasible { condition, have, need };

    let mut occupied = VertexSet::new(g.n());
    let mut cores: Vec<VertexSet> = Vec::with_capacity(cells);
    for y in 0..cells as u64 {
        let parent = &a.sets[(y & low_mask(dr)) as usize];
        let mut x_set = parent.difference(&occupied);
        for c in 0..dn {
            let yi = y ^ (1 << c);
            if yi >= y {
                continue;
            }
            let t = divergence_unchecked(yi, y, sched);
            let thr = params.threshold(n, r + 1, t, e_core);
            let prior = &cores[yi as usize];
            let counts = blue_counts(g, prior, &x_set);
            let d_i: Vec<usize> = x_set.iter().filter(|&v| counts[v] as f64 >= thr).collect();
            let cap = pow2(dn - dr) / (params.d[t] as f64).powf(2.0 * params.exponent_scale) * prior.len() as f64;
            if d_i.len() as f64 > cap {
                return Err(infeasible(format!("|D_i(y)| bound at level {} cell {y}", r + 1), cap, d_i.len() as f64));
            }
            for v in d_i {
                x_set.remove(v);
            }
        }
        if x_set.len() < core {
            return Err(infeasible(format!("|X| >= core size at level {} cell {y}", r + 1), x_set.len() as f64, core as f64));
        }
        let want = x_set.len().min(1usize << (n - dn + 1)).max(core);
        let sub_seed = Prng::derive(seed, &[r as u64, y]).next_u64();
        let ys = sized_dense_subset(g, &x_set, want, dn as f64 / params.s as f64, params.s, sub_seed, params.retries, params.relaxed)?;
        let mut by_degree: Vec<(usize, usize)> = ys.iter().map(|v| (g.blue_degree_into(v, &ys), v)).collect();
        by_degree.sort_unstable();
        let members: Vec<usize> = by_degree[..core].iter().map(|&(_, v)| v).collect();
        let c_prime = VertexSet::from_slice(g.n(), &members);
        let thr_self = params.threshold(n, r + 1, r + 2, e_core);
        let worst = g.max_blue_degree_in(&c_prime);
        if worst as f64 > thr_self {
            return Err(infeasible(format!("core blue degree at level {} cell {y}", r + 1), thr_self, worst as f64));
        }
        occupied.union_with(&c_prime);
        cores.push(c_prime);
    }

    let mut sets = Vec::with_capacity(cells);
    for y in 0..cells as u64 {
        let mut keep = cores[y as usize].clone();
        for c in 0..dn {
            let yi = y ^ (1 << c);
            if yi <= y {
                continue;
            }
            let t = divergence_unchecked(yi, y, sched);
            let thr = params.threshold(n, r + 1, t, e_next);
            let counts = blue_counts(g, &cores[yi as usize], &cores[y as usize]);
            let hat: Vec<usize> = cores[y as usize].iter().filter(|&v| counts[v] as f64 >= thr).collect();
            let cap = cores[yi as usize].len() as f64 / (params.d[t] as f64).powf(2.0 * params.exponent_scale);
            if hat.len() as f64 > cap {
                return Err(infeasible(format!("|D̂_i(y)| bound at level {} cell {y}", r + 1), cap, hat.len() as f64));
            }
            for v in hat {
                keep.remove(v);
            }
        }
        if keep.len() < final_size {
            return Err(infeasible(format!("trimmed set size at level {} cell {y}", r + 1), keep.len() as f64, final_size as f64));
        }
        sets.push(keep.take_first(final_size));
    }
    let out = Assignment { level: r + 1, sets };
    debug_assert_eq!(validate_assignment(g, n, &out, params), Ok(()));
    Ok(out)
}

/// Greedy embedding of `Q_n` along `order` (all masks of `Q_n`).
pub fn embed_via_assignment(g: &ColouredGraph, n: usize, a: &Assignment, params: &DenseParams, order: &[u64]) -> Result<CubeEmbedding> {
    let dl = params.d[a.level];
    let mut map = vec![usize::MAX; 1usize << n];
    let mut used = VertexSet::new(g.n());
    for &z in order {
        let cell = &a.sets[(z & low_mask(dl)) as usize];
        let mut cand = cell.difference(&used);
        for c in 0..n {
            let y = z ^ (1 << c);
            let img = map[y as usize];
            if img != usize::MAX {
                cand.difference_with(&g.neighbours(img, Colour::Blue));
            }
        }
        let v = cand.first().ok_or(Error::EmbeddingStuck { cube_vertex: z, candidates: cell.len() })?;
        map[z as usize] = v;
        used.insert(v);
    }
    if map.contains(&usize::MAX) {
        return Err(Error::Input("embedding order does not cover Q_n".into()));
    }
    Ok(CubeEmbedding::new(n, map))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbedOutcome {
    Embedding(CubeEmbedding),
    BlueClique(CliqueWitness),
}

impl EmbedOutcome {
    pub fn embedding(&self) -> Option<&CubeEmbedding> {
        match self {
            EmbedOutcome::Embedding(e) => Some(e),
            EmbedOutcome::BlueClique(_) => None,
        }
    }
}

/// Level 0, `k+1` refinements, then the greedy embedding.
pub fn dense_embed(g: &ColouredGraph, n: usize, params: &DenseParams, seed: u64) -> Result<EmbedOutcome> {
    params.check(n)?;
    match dense_embed_inner(g, n, params, seed) {
        Err(Error::BlueCliqueFound(w)) => Ok(EmbedOutcome::BlueClique(w)),
        other => other.map(EmbedOutcome::Embedding),
    }
}

fn dense_embed_inner(g: &ColouredGraph, n: usize, params: &DenseParams, seed: u64) -> Result<CubeEmbedding> {
    let mut a = Assignment::level_zero(g, n, params)?;
    let base = &a.sets[0];
    let worst = g.max_blue_degree_in(base);
    let bound = params.q_bound.map(|q| q as f64).unwrap_or(f64::INFINITY).min(params.assignment_bound(n, 0, 1));
    if worst as f64 > bound {
        find_dense_subset(g, base, n as f64 + 1.0, params.s)?;
        return Err(Error::ParametersInfeasible { condition: "level-0 blue degree bound".into(), have: bound, need: worst as f64 });
    }
    for r in 0..=params.k {
        a = refine_assignment(g, n, &a, params, Prng::derive(seed, &[r as u64]).next_u64())?;
    }
    let order: Vec<u64> = (0..1u64 << n).collect();
    embed_via_assignment(g, n, &a, params, &order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_embedding(g: &ColouredGraph, e: &CubeEmbedding) {
        let mut seen = std::collections::HashSet::new();
        for x in 0..1u64 << e.n {
            assert!(seen.insert(e.image(x)));
            for c in 0..e.n {
                let y = x ^ (1 << c);
                assert!(!g.is_blue(e.image(x), e.image(y)));
            }
        }
    }

    fn noisy(n_vertices: usize, p: f64, seed: u64) -> ColouredGraph {
        let mut rng = Prng::new(seed, 0);
        ColouredGraph::from_fn(n_vertices, |_, _| if rng.bernoulli(p) { Colour::Blue } else { Colour::Red })
    }

    #[test]
    fn dense_subset_examples() {
        let red = ColouredGraph::new(12);
        assert_eq!(find_dense_subset(&red, &red.all(), 3.0, 3).unwrap(), red.all());
        let blue = ColouredGraph::monochromatic(8, Colour::Blue);
        match find_dense_subset(&blue, &blue.all(), 1.0, 3) {
            Err(Error::BlueCliqueFound(w)) => assert!(blue.is_clique(&w.members, Colour::Blue) && w.members.len() == 3),
            other => panic!("{other:?}"),
        }
        let matching = ColouredGraph::from_fn(16, |u, v| if u / 2 == v / 2 { Colour::Blue } else { Colour::Red });
        assert_eq!(find_dense_subset(&matching, &matching.all(), 2.0, 3).unwrap(), matching.all());
    }

    #[test]
    fn sized_subset_examples() {
        let red = ColouredGraph::new(40);
        let y = sized_dense_subset(&red, &red.all(), 20, 2.0, 3, 7, 100, true).unwrap();
        assert_eq!(y.len(), 20);
        let y = sized_dense_subset(&red, &red.all(), 40, 2.0, 3, 7, 100, true).unwrap();
        assert_eq!(y, red.all());
    }

    #[test]
    fn size_arithmetic() {
        let p = DenseParams::desk(12, 3, 0.5).with_schedule(1, vec![0, 3, 6, 12]);
        assert_eq!(p.level_size(12, 0), 6144);
        assert!(p.level_size(12, 1) * 8 <= 6144);
        assert!(p.core_size(12, 0) * 8 <= 6144);
        assert!(p.check(12).is_ok());
        let strict = DenseParams { relaxed: false, ..p };
        assert!(matches!(strict.check(12), Err(Error::ParametersInfeasible { .. })));
    }

    #[test]
    fn all_red_embeds() {
        for n in [1, 4, 8] {
            let p = DenseParams::desk(n, 3, 0.25);
            let g = ColouredGraph::new(p.level_size(n, 0));
            let e = dense_embed(&g, n, &p, 1).unwrap();
            check_embedding(&g, e.embedding().unwrap());
        }
    }

    #[test]
    fn all_blue_gives_witness() {
        let p = DenseParams::desk(4, 3, 0.25);
        let g = ColouredGraph::monochromatic(p.level_size(4, 0), Colour::Blue);
        match dense_embed(&g, 4, &p, 1).unwrap() {
            EmbedOutcome::BlueClique(w) => assert!(g.is_clique(&w.members, Colour::Blue) && w.members.len() == 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn planted_noise_embeds() {
        let n = 10;
        let p = DenseParams::desk(n, 3, 0.5);
        let g = noisy(p.level_size(n, 0), 0.002, 5);
        let e = dense_embed(&g, n, &p, 3).unwrap();
        check_embedding(&g, e.embedding().unwrap());
    }

    #[test]
    fn refinement_keeps_invariants() {
        let n = 8;
        let p = DenseParams::desk(n, 3, 0.5);
        let g = noisy(p.level_size(n, 0), 0.003, 11);
        let mut a = Assignment::level_zero(&g, n, &p).unwrap();
        for r in 0..=p.k {
            a = refine_assignment(&g, n, &a, &p, r as u64).unwrap();
            assert_eq!(validate_assignment(&g, n, &a, &p), Ok(()));
            assert!(a.sets.iter().all(|set| set.len() == p.level_size(n, r + 1)));
        }
    }

    #[test]
    fn one_dimensional_edge() {
        let mut g = ColouredGraph::monochromatic(2, Colour::Red);
        g.set_colour(0, 1, Colour::Red);
        let p = DenseParams::desk(1, 3, 0.25);
        let a = Assignment { level: 1, sets: vec![VertexSet::from_slice(2, &[0]), VertexSet::from_slice(2, &[1])] };
        let e = embed_via_assignment(&g, 1, &a, &p, &[0, 1]).unwrap();
        assert_eq!(e.map, vec![0, 1]);
    }
}
