//! Embedding along strings of dense red sets joined by biclique packings.
//!
//! The cube is split as `Q_m × Q_{n-m}`. Copies of `Q_m` are threaded through
//! an ordered sequence of sets (an m-path) using disjoint red `K_{t,t}`'s
//! between consecutive sets, then the copies are contracted to a quotient
//! colouring in which `Q_{n-m}` is embedded by [`crate::dense::dense_embed`].
//!
//! Goodness of a pair quantifies over every `(1-γ)`-trim, so [`judge_pair`]
//! answers with a certificate either way or admits it cannot decide.
//!
//! Part masses are bounded by `(1+3ε)2^n`, the value the component mass test
//! actually delivers, and the cross-part density condition is stated for red.

use crate::cube::{layer_count, layer_order, middle_binomial, CubeEmbedding, LayerRange};
use crate::dense::{dense_embed, DenseParams, EmbedOutcome, Inequality};
use crate::error::{Error, Result};
use crate::graph::{zarankiewicz_threshold, BicliqueWitness, CliqueWitness, Colour, ColouredGraph, VertexSet};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    /// Doubled spanning tree, returning to the root.
    Closed,
    /// The same tour stopped once every set has been visited.
    #[default]
    Open,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchParams {
    pub epsilon: f64,
    pub s: usize,
    pub m: usize,
    pub gamma: f64,
    /// Cross-part red density bound; `None` means `1/n^4`.
    pub density_threshold: Option<f64>,
    /// Report size and density conditions instead of enforcing them.
    pub relaxed: bool,
    /// Constant in the packing size condition `γ√m·|U| ≥ c·2^n·|component|`.
    pub size_constant: f64,
    pub walk: WalkKind,
    /// Parameters of the quotient embedding; `None` uses desk defaults.
    pub inner: Option<DenseParams>,
}

impl MatchParams {
    pub fn desk(s: usize, epsilon: f64) -> Self {
        MatchParams {
            epsilon,
            s,
            m: 2,
            gamma: 0.1,
            density_threshold: None,
            relaxed: true,
            size_constant: 1.0,
            walk: WalkKind::Open,
            inner: None,
        }
    }

    pub fn t(&self) -> usize {
        middle_binomial(self.m) as usize
    }

    /// `M = ⌈(1+ε)2^{n-m}⌉` copies per walk edge.
    pub fn copies(&self, n: usize) -> usize {
        ((1.0 + self.epsilon) * ((n - self.m) as f64).exp2()).ceil() as usize
    }

    pub fn density_bound(&self, n: usize) -> f64 {
        self.density_threshold.unwrap_or(1.0 / (n as f64).powi(4))
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !(0.0 < self.gamma && self.gamma < 1.0) {
            return Err(Error::Input(format!("gamma {} outside (0,1)", self.gamma)));
        }
        if !(0.0 < self.epsilon && self.epsilon < 1.0) {
            return Err(Error::Input(format!("epsilon {} outside (0,1)", self.epsilon)));
        }
        if self.m == 0 || self.m > n || self.m > 20 {
            return Err(Error::Input(format!("m = {} must lie in 1..=min(n, 20)", self.m)));
        }
        Ok(())
    }
}

// ============================================================================
// Packings and pair verdicts
// ============================================================================

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    pub found: Vec<BicliqueWitness>,
    pub shortfall: usize,
}

/// Up to `count` vertex-disjoint red `K_{t,t}` with left sides in `u1`.
pub fn pack_bicliques(g: &ColouredGraph, u1: &VertexSet, u2: &VertexSet, t: usize, count: usize) -> Result<Packing> {
    if !u1.is_disjoint(u2) {
        return Err(Error::Input("packing sides overlap".into()));
    }
    let (mut a, mut b) = (u1.clone(), u2.clone());
    let mut found = Vec::new();
    while found.len() < count {
        match g.find_biclique(&a, &b, t, Colour::Red)? {
            Some(w) => {
                for &v in &w.left {
                    a.remove(v);
                }
                for &v in &w.right {
                    b.remove(v);
                }
                found.push(w);
            }
            None => break,
        }
    }
    let shortfall = count - found.len();
    Ok(Packing { found, shortfall })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictStatus {
    Good,
    Bad,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoodPairVerdict {
    pub status: VerdictStatus,
    /// `e_R − 2γ|U1||U2| − Z`; positive exactly for GOOD.
    pub margin: f64,
    /// Trimmed sides: the BAD witness, the greedy trim when undetermined, the
    /// full sets when GOOD.
    pub y1: VertexSet,
    pub y2: VertexSet,
}

/// Remove the `⌊γ|from|⌋` members of `from` with the most red neighbours in `towards`.
fn trim(g: &ColouredGraph, from: &VertexSet, towards: &VertexSet, gamma: f64) -> VertexSet {
    let drop = (gamma * from.len() as f64).floor() as usize;
    let mut by_degree: Vec<(usize, usize)> = from.iter().map(|v| (g.red_degree_into(v, towards), v)).collect();
    by_degree.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut out = from.clone();
    for &(_, v) in &by_degree[..drop] {
        out.remove(v);
    }
    out
}

pub fn judge_pair(g: &ColouredGraph, u1: &VertexSet, u2: &VertexSet, params: &MatchParams) -> Result<GoodPairVerdict> {
    if !u1.is_disjoint(u2) {
        return Err(Error::Input("judged sets overlap".into()));
    }
    let t = params.t();
    let (n1, n2) = (u1.len(), u2.len());
    let red = g.cross_count(u1, u2, Colour::Red) as f64;
    let trimmed = |n: usize| ((1.0 - params.gamma) * n as f64 - 1e-9).ceil().max(0.0) as usize;
    let z = if t >= 2 { zarankiewicz_threshold(trimmed(n1), trimmed(n2), t) as f64 } else { 0.0 };
    let margin = red - 2.0 * params.gamma * (n1 * n2) as f64 - z;
    if margin > 0.0 {
        return Ok(GoodPairVerdict { status: VerdictStatus::Good, margin, y1: u1.clone(), y2: u2.clone() });
    }
    if g.find_biclique(u1, u2, t, Colour::Red)?.is_none() {
        return Ok(GoodPairVerdict { status: VerdictStatus::Bad, margin, y1: u1.clone(), y2: u2.clone() });
    }
    let y1 = trim(g, u1, u2, params.gamma);
    let y2 = trim(g, u2, &y1, params.gamma);
    let status = if g.find_biclique(&y1, &y2, t, Colour::Red)?.is_none() { VerdictStatus::Bad } else { VerdictStatus::Undetermined };
    Ok(GoodPairVerdict { status, margin, y1, y2 })
}

/// Pairwise verdicts in row-major order of `i < j`.
#[derive(Clone, Debug)]
pub struct VerdictMatrix {
    pub size: usize,
    pub entries: Vec<((usize, usize), GoodPairVerdict)>,
}

impl VerdictMatrix {
    pub fn compute(g: &ColouredGraph, sets: &[VertexSet], params: &MatchParams) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (0..sets.len()).flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j))).collect();
        let verdicts: Result<Vec<GoodPairVerdict>> = pairs.par_iter().map(|&(i, j)| judge_pair(g, &sets[i], &sets[j], params)).collect();
        Ok(VerdictMatrix { size: sets.len(), entries: pairs.into_iter().zip(verdicts?).collect() })
    }

    pub fn get(&self, i: usize, j: usize) -> &GoodPairVerdict {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let idx = i * self.size - i * (i + 1) / 2 + (j - i - 1);
        &self.entries[idx].1
    }

    pub fn count(&self, status: VerdictStatus) -> usize {
        self.entries.iter().filter(|(_, v)| v.status == status).count()
    }

    /// `size × size` status grid with margins, for diagnostics.
    pub fn to_json(&self) -> serde_json::Value {
        let grid: Vec<Vec<serde_json::Value>> = (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| {
                        if i == j {
                            json!(null)
                        } else {
                            let v = self.get(i, j);
                            json!({ "status": v.status, "margin": v.margin })
                        }
                    })
                    .collect()
            })
            .collect();
        json!({ "size": self.size, "grid": grid })
    }
}

// ============================================================================
// Components and the exception set
// ============================================================================

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub x_size: usize,
    pub x_bound: f64,
    pub masses: Vec<usize>,
    pub mass_bound: f64,
    pub max_cross_red_density: f64,
    pub density_threshold: f64,
    pub undetermined: usize,
}

#[derive(Clone, Debug)]
pub struct PartitionWithException {
    /// Indices into the input family, one list per component.
    pub parts: Vec<Vec<usize>>,
    pub x: VertexSet,
    pub report: PartitionReport,
}

/// Connected components of the GOOD graph, ordered by least member.
fn components(size: usize, verdicts: &VerdictMatrix) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for ((i, j), v) in &verdicts.entries {
        if v.status == VerdictStatus::Good {
            let (a, b) = (find(&mut parent, *i), find(&mut parent, *j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; size];
    for i in 0..size {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[r]].push(i);
    }
    comps
}

fn exception_partition(g: &ColouredGraph, sets: &[VertexSet], n: usize, comps: Vec<Vec<usize>>, verdicts: &VerdictMatrix, params: &MatchParams) -> Result<PartitionWithException> {
    let mut owner = vec![0usize; sets.len()];
    for (c, members) in comps.iter().enumerate() {
        for &i in members {
            owner[i] = c;
        }
    }
    let mut x = g.empty_set();
    let mut worst_pair = (0, 0);
    let mut worst = 0usize;
    for ((i, j), v) in &verdicts.entries {
        if owner[*i] == owner[*j] {
            continue;
        }
        let part = sets[*i].difference(&v.y1).union(&sets[*j].difference(&v.y2));
        if part.is_subset(&x) {
            continue;
        }
        // The vertices already in X may separate the pair on their own.
        let (a, b) = (sets[*i].difference(&x), sets[*j].difference(&x));
        if g.find_biclique(&a, &b, params.t(), Colour::Red)?.is_none() {
            continue;
        }
        if part.len() > worst {
            worst = part.len();
            worst_pair = (*i, *j);
        }
        x.union_with(&part);
    }
    let x_bound = params.epsilon * (n as f64).exp2();
    if x.len() as f64 > x_bound {
        return Err(Error::ExceptionSetOverflow { size: x.len(), bound: x_bound, pair: worst_pair });
    }
    let masses: Vec<usize> = comps.iter().map(|c| c.iter().map(|&i| sets[i].len()).sum()).collect();
    let mut max_density = 0.0f64;
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if owner[a] == owner[b] {
                continue;
            }
            let (p, q) = (sets[a].difference(&x), sets[b].difference(&x));
            if p.is_empty() || q.is_empty() {
                continue;
            }
            let d = g.cross_count(&p, &q, Colour::Red) as f64 / (p.len() * q.len()) as f64;
            max_density = max_density.max(d);
        }
    }
    let report = PartitionReport {
        x_size: x.len(),
        x_bound,
        masses,
        mass_bound: (1.0 + 3.0 * params.epsilon) * (n as f64).exp2(),
        max_cross_red_density: max_density,
        density_threshold: params.density_bound(n),
        undetermined: verdicts.count(VerdictStatus::Undetermined),
    };
    if !params.relaxed && report.max_cross_red_density > report.density_threshold {
        return Err(Error::ParametersInfeasible {
            condition: "cross-part red density".into(),
            have: report.density_threshold,
            need: report.max_cross_red_density,
        });
    }
    Ok(PartitionWithException { parts: comps, x, report })
}

pub fn good_components(g: &ColouredGraph, sets: &[VertexSet], n: usize, params: &MatchParams) -> Result<PartitionWithException> {
    ensure_disjoint(sets)?;
    let verdicts = VerdictMatrix::compute(g, sets, params)?;
    let comps = components(sets.len(), &verdicts);
    exception_partition(g, sets, n, comps, &verdicts, params)
}

fn ensure_disjoint(sets: &[VertexSet]) -> Result<()> {
    let Some(first) = sets.first() else { return Ok(()) };
    let mut seen = VertexSet::new(first.cap());
    for s in sets {
        if !seen.is_disjoint(s) {
            return Err(Error::Input("sets are not disjoint".into()));
        }
        seen.union_with(s);
    }
    Ok(())
}

// ============================================================================
// m-paths
// ============================================================================

#[derive(Clone, Debug)]
pub struct MPath {
    pub sets: Vec<VertexSet>,
    /// Index of the component set each path set refines.
    pub owners: Vec<usize>,
    /// `packings[i]` joins `sets[i]` (left) to `sets[i+1]` (right).
    pub packings: Vec<Vec<BicliqueWitness>>,
    pub conditions: Vec<Inequality>,
}

/// Tour of a BFS spanning tree of the GOOD graph.
fn tree_walk(size: usize, adj: &[Vec<bool>], kind: WalkKind) -> Result<Vec<usize>> {
    let bfs = |root: usize| -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; size];
        let mut dist = vec![usize::MAX; size];
        let mut queue = std::collections::VecDeque::from([root]);
        dist[root] = 0;
        while let Some(u) = queue.pop_front() {
            for v in 0..size {
                if adj[u][v] && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        (parent, dist)
    };
    let (_, d0) = bfs(0);
    if d0.contains(&usize::MAX) {
        return Err(Error::Input("component is not GOOD-connected".into()));
    }
    let root = (0..size).max_by(|&a, &b| d0[a].cmp(&d0[b]).then(b.cmp(&a))).unwrap();
    let (parent, _) = bfs(root);
    let mut children = vec![Vec::new(); size];
    for v in 0..size {
        if v != root {
            children[parent[v]].push(v);
        }
    }
    fn height(v: usize, ch: &[Vec<usize>]) -> usize {
        ch[v].iter().map(|&c| 1 + height(c, ch)).max().unwrap_or(0)
    }
    let heights: Vec<usize> = (0..size).map(|v| height(v, &children)).collect();
    for c in children.iter_mut() {
        c.sort_by_key(|&v| (heights[v], v));
    }
    fn tour(v: usize, ch: &[Vec<usize>], out: &mut Vec<usize>) {
        out.push(v);
        for &c in &ch[v] {
            tour(c, ch, out);
            out.push(v);
        }
    }
    let mut walk = Vec::new();
    tour(root, &children, &mut walk);
    if kind == WalkKind::Open {
        let mut seen = vec![false; size];
        let mut remaining = size;
        let mut cut = walk.len();
        for (pos, &v) in walk.iter().enumerate() {
            if !seen[v] {
                seen[v] = true;
                remaining -= 1;
                if remaining == 0 {
                    cut = pos + 1;
                    break;
                }
            }
        }
        walk.truncate(cut);
    }
    Ok(walk)
}

pub fn build_m_path(g: &ColouredGraph, component: &[VertexSet], n: usize, params: &MatchParams) -> Result<MPath> {
    params.validate(n)?;
    ensure_disjoint(component)?;
    if component.len() == 1 {
        return Ok(MPath { sets: component.to_vec(), owners: vec![0], packings: vec![], conditions: vec![] });
    }
    let verdicts = VerdictMatrix::compute(g, component, params)?;
    let size = component.len();
    let mut adj = vec![vec![false; size]; size];
    for ((i, j), v) in &verdicts.entries {
        if v.status == VerdictStatus::Good {
            adj[*i][*j] = true;
            adj[*j][*i] = true;
        }
    }
    build_m_path_on(g, component, n, params, &adj)
}

fn build_m_path_on(g: &ColouredGraph, component: &[VertexSet], n: usize, params: &MatchParams, adj: &[Vec<bool>]) -> Result<MPath> {
    let size = component.len();
    let walk = tree_walk(size, adj, params.walk)?;
    let (t, copies) = (params.t(), params.copies(n));
    let mut conditions = Vec::new();
    for (i, u) in component.iter().enumerate() {
        conditions.push(Inequality {
            name: format!("γ√m·|U_{i}| >= c·2^n·|component|"),
            have: params.gamma * (params.m as f64).sqrt() * u.len() as f64,
            need: params.size_constant * (n as f64).exp2() * size as f64,
        });
    }
    if !params.relaxed {
        if let Some(c) = conditions.iter().find(|c| !c.holds()) {
            return Err(Error::SizeConditionViolated(format!("{}: {:.3} < {:.3}", c.name, c.have, c.need)));
        }
    }

    let mut avail: Vec<VertexSet> = component.to_vec();
    let mut packings = Vec::with_capacity(walk.len().saturating_sub(1));
    let mut cores: Vec<VertexSet> = vec![g.empty_set(); walk.len()];
    for e in 0..walk.len().saturating_sub(1) {
        let (a, b) = (walk[e], walk[e + 1]);
        let p = pack_bicliques(g, &avail[a], &avail[b], t, copies)?;
        if p.shortfall > 0 {
            return Err(Error::PackingShortfall { edge: e, found: p.found.len(), needed: copies });
        }
        for w in &p.found {
            for &v in &w.left {
                avail[a].remove(v);
                cores[e].insert(v);
            }
            for &v in &w.right {
                avail[b].remove(v);
                cores[e + 1].insert(v);
            }
        }
        packings.push(p.found);
    }
    for (i, u) in component.iter().enumerate() {
        let used = u.len() - avail[i].len();
        conditions.push(Inequality { name: format!("packing use in U_{i} <= γ|U_{i}|"), have: params.gamma * u.len() as f64, need: used as f64 });
    }
    if !params.relaxed {
        if let Some(c) = conditions.iter().find(|c| !c.holds()) {
            return Err(Error::SizeConditionViolated(format!("{}: {:.3} < {:.3}", c.name, c.have, c.need)));
        }
    }

    // Share each set's free vertices among its walk positions, smallest first.
    let mut sets = cores;
    for (owner, free) in avail.iter().enumerate() {
        let positions: Vec<usize> = (0..walk.len()).filter(|&p| walk[p] == owner).collect();
        for v in free.iter() {
            let &p = positions.iter().min_by_key(|&&p| (sets[p].len(), p)).unwrap();
            sets[p].insert(v);
        }
    }
    for (p, set) in sets.iter().enumerate() {
        let u = &component[walk[p]];
        conditions.push(Inequality { name: format!("|V_{p}| >= |U|/(2·|component|)"), have: set.len() as f64, need: u.len() as f64 / (2.0 * size as f64) });
    }
    Ok(MPath { sets, owners: walk, packings, conditions })
}

/// Structural check: disjoint sets, enough disjoint red bicliques between neighbours.
pub fn validate_mpath(g: &ColouredGraph, path: &MPath, t: usize, copies: usize) -> std::result::Result<(), String> {
    ensure_disjoint(&path.sets).map_err(|e| e.to_string())?;
    if path.packings.len() + 1 != path.sets.len() && !(path.sets.len() == 1 && path.packings.is_empty()) {
        return Err("packing count does not match path length".into());
    }
    for (i, pack) in path.packings.iter().enumerate() {
        if pack.len() < copies {
            return Err(format!("edge {i} has {} < {copies} bicliques", pack.len()));
        }
        let mut seen = g.empty_set();
        for w in pack {
            if w.left.len() != t || w.right.len() != t {
                return Err(format!("edge {i} biclique has the wrong size"));
            }
            for v in w.vertices() {
                if !seen.insert(v) {
                    return Err(format!("edge {i} bicliques overlap at {v}"));
                }
            }
            if !w.left.iter().all(|&v| path.sets[i].contains(v)) || !w.right.iter().all(|&v| path.sets[i + 1].contains(v)) {
                return Err(format!("edge {i} biclique leaves its sets"));
            }
            if w.left.iter().any(|&a| w.right.iter().any(|&b| g.is_blue(a, b))) {
                return Err(format!("edge {i} biclique has a blue edge"));
            }
        }
    }
    Ok(())
}

// ============================================================================
// Quotient and the path embedding
// ============================================================================

/// Contracted colouring: copy `i` of `Q_m` is `lift[i]`, indexed by mask.
#[derive(Clone, Debug)]
pub struct QuotientColouring {
    pub m: usize,
    pub base: ColouredGraph,
    pub lift: Vec<Vec<usize>>,
}

impl QuotientColouring {
    pub fn build(g: &ColouredGraph, m: usize, lift: Vec<Vec<usize>>) -> Self {
        let size = lift.len();
        let rows: Vec<Vec<bool>> = (0..size)
            .into_par_iter()
            .map(|i| (0..size).map(|j| j > i && lift[i].iter().zip(&lift[j]).any(|(&a, &b)| g.is_blue(a, b))).collect())
            .collect();
        let base = ColouredGraph::from_fn(size, |i, j| if rows[i.min(j)][i.max(j)] { Colour::Blue } else { Colour::Red });
        QuotientColouring { m, base, lift }
    }

    /// Every red quotient edge lifts to `2^m` red matching edges.
    pub fn is_sound(&self, g: &ColouredGraph) -> bool {
        let size = self.lift.len();
        (0..size).all(|i| (i + 1..size).all(|j| self.base.is_blue(i, j) || self.lift[i].iter().zip(&self.lift[j]).all(|(&a, &b)| !g.is_blue(a, b))))
    }

    /// Turn a blue quotient clique into a blue `K_s` of `g` when a single cube
    /// coordinate witnesses every edge; the result is re-checked in `g`.
    pub fn lift_blue_clique(&self, g: &ColouredGraph, members: &[usize], s: usize) -> Option<CliqueWitness> {
        for x in 0..1usize << self.m {
            let images: Vec<usize> = members.iter().map(|&i| self.lift[i][x]).collect();
            let sub = g.induced(&images);
            if let Ok(Some(w)) = sub.find_clique(&sub.all(), s, Colour::Blue) {
                let mut found: Vec<usize> = w.members.iter().map(|&i| images[i]).collect();
                found.sort_unstable();
                if g.is_clique(&found, Colour::Blue) {
                    return Some(CliqueWitness { members: found, colour: Colour::Blue });
                }
            }
        }
        None
    }
}

/// `r^{rs}`.
pub fn multicolour_ramsey_upper(r: u64, s: u64) -> BigUint {
    BigUint::from(r).pow((r * s) as u32)
}

#[derive(Clone, Debug)]
pub struct PathRun {
    pub outcome: EmbedOutcome,
    pub layers: Vec<(usize, usize)>,
    pub quotient: Option<QuotientColouring>,
}

/// Greedy layer intervals `[a(i), b(i)]` with `|V_i| ≥ (1+2ε)2^{n-m}·v(Q_m[a(i),b(i)])`.
pub fn layer_split(sizes: &[usize], n: usize, m: usize, epsilon: f64) -> Result<Vec<(usize, usize)>> {
    let unit = (1.0 + 2.0 * epsilon) * ((n - m) as f64).exp2();
    let mut out = Vec::new();
    let mut a = 0;
    for (i, &size) in sizes.iter().enumerate() {
        let mut b = None;
        for cand in a..=m {
            if size as f64 >= unit * layer_count(LayerRange::new(m, a, cand)?) as f64 {
                b = Some(cand);
            } else {
                break;
            }
        }
        let Some(b) = b else {
            return Err(Error::SizeConditionViolated(format!("V_{i} of size {size} cannot host layer {a} of Q_{m}")));
        };
        out.push((a, b));
        if b == m {
            return Ok(out);
        }
        a = b + 1;
    }
    Err(Error::SizeConditionViolated(format!("path sets exhausted before layer {a} of Q_{m}")))
}

pub fn path_embed(g: &ColouredGraph, path: &MPath, n: usize, params: &MatchParams, seed: u64) -> Result<PathRun> {
    params.validate(n)?;
    let m = params.m;
    let copies = params.copies(n);
    let sizes: Vec<usize> = path.sets.iter().map(VertexSet::len).collect();
    let layers = layer_split(&sizes, n, m, params.epsilon)?;
    let covered: u128 = layers.iter().map(|&(a, b)| layer_count(LayerRange { m, a, b })).sum();
    if covered != 1u128 << m || layers[0].0 != 0 || layers.windows(2).any(|w| w[1].0 != w[0].1 + 1) {
        return Err(Error::Internal("layer intervals do not partition Q_m".into()));
    }
    let interval_of = |w: usize| layers.iter().position(|&(a, b)| a <= w && w <= b).unwrap();
    let order = layer_order(m);
    let masks_in = |layer: usize| order.iter().copied().filter(move |x| x.count_ones() as usize == layer);

    let used_packings = layers.len() - 1;
    let mut reserved = g.empty_set();
    for pack in &path.packings[..used_packings] {
        if pack.len() < copies {
            return Err(Error::PackingShortfall { edge: 0, found: pack.len(), needed: copies });
        }
        for w in &pack[..copies] {
            for v in w.vertices() {
                reserved.insert(v);
            }
        }
    }
    let mut used = g.empty_set();
    let mut lifts = Vec::with_capacity(copies);
    for j in 0..copies {
        let mut map = vec![usize::MAX; 1 << m];
        for (i, pack) in path.packings[..used_packings].iter().enumerate() {
            let w = &pack[j];
            let (lo, hi) = (layers[i].1, layers[i + 1].0);
            let left: Vec<(u64, usize)> = masks_in(lo).zip(w.left.iter().copied()).collect();
            let right: Vec<(u64, usize)> = masks_in(hi).zip(w.right.iter().copied()).collect();
            let clash = left.iter().chain(&right).any(|&(x, v)| {
                map[x as usize] != usize::MAX || (0..m).any(|c| {
                    let img = map[(x ^ (1 << c)) as usize];
                    img != usize::MAX && g.is_blue(img, v)
                })
            });
            if clash {
                continue;
            }
            for (x, v) in left.into_iter().chain(right) {
                map[x as usize] = v;
                used.insert(v);
            }
        }
        for &x in &order {
            if map[x as usize] != usize::MAX {
                continue;
            }
            let set_idx = interval_of(x.count_ones() as usize);
            let mut cand = path.sets[set_idx].difference(&used).difference(&reserved);
            for c in 0..m {
                let img = map[(x ^ (1 << c)) as usize];
                if img != usize::MAX {
                    cand.difference_with(&g.neighbours(img, Colour::Blue));
                }
            }
            let v = cand.first().ok_or(Error::ExtensionStuck { copy: j, set: set_idx })?;
            map[x as usize] = v;
            used.insert(v);
        }
        for v in map.iter() {
            reserved.remove(*v);
        }
        lifts.push(map);
    }

    let quotient = QuotientColouring::build(g, m, lifts);
    if !quotient.is_sound(g) {
        return Err(Error::Internal("quotient colouring is unsound".into()));
    }
    let rest = n - m;
    if rest == 0 {
        let map = quotient.lift[0].clone();
        return Ok(PathRun { outcome: EmbedOutcome::Embedding(CubeEmbedding::new(n, map)), layers, quotient: Some(quotient) });
    }
    let bound = multicolour_ramsey_upper(1 << m, params.s as u64);
    let s_prime = if bound > BigUint::from(copies + 1) { copies + 1 } else { bound.to_u64_digits().first().copied().unwrap_or(0) as usize };
    let mut inner = params.inner.clone().unwrap_or_else(|| DenseParams::desk(rest, s_prime, params.epsilon));
    inner.s = s_prime;
    let outcome = match dense_embed(&quotient.base, rest, &inner, seed)? {
        EmbedOutcome::Embedding(psi) => {
            let mut map = vec![0usize; 1 << n];
            for (z, slot) in map.iter_mut().enumerate() {
                let (x, y) = (z & ((1 << m) - 1), z >> m);
                *slot = quotient.lift[psi.image(y as u64)][x];
            }
            EmbedOutcome::Embedding(CubeEmbedding::new(n, map))
        }
        EmbedOutcome::BlueClique(w) => match quotient.lift_blue_clique(g, &w.members, params.s) {
            Some(lifted) => EmbedOutcome::BlueClique(lifted),
            None => return Err(Error::QuotientCliqueUnliftable),
        },
    };
    Ok(PathRun { outcome, layers, quotient: Some(quotient) })
}

// ============================================================================
// The dichotomy
// ============================================================================

#[derive(Clone, Debug)]
pub enum DichotomyOutcome {
    Embedding(CubeEmbedding),
    BlueClique(CliqueWitness),
    Partition(PartitionWithException),
}

pub fn matching_dichotomy(g: &ColouredGraph, sets: &[VertexSet], n: usize, params: &MatchParams, seed: u64) -> Result<DichotomyOutcome> {
    params.validate(n)?;
    ensure_disjoint(sets)?;
    let verdicts = VerdictMatrix::compute(g, sets, params)?;
    let comps = components(sets.len(), &verdicts);
    let need = (1.0 + 3.0 * params.epsilon) * (n as f64).exp2();
    for comp in &comps {
        let mass: usize = comp.iter().map(|&i| sets[i].len()).sum();
        if mass as f64 >= need {
            let members: Vec<VertexSet> = comp.iter().map(|&i| sets[i].clone()).collect();
            let mut adj = vec![vec![false; comp.len()]; comp.len()];
            for (a, &i) in comp.iter().enumerate() {
                for (b, &j) in comp.iter().enumerate() {
                    adj[a][b] = i != j && verdicts.get(i, j).status == VerdictStatus::Good;
                }
            }
            let path = build_m_path_on(g, &members, n, params, &adj)?;
            return Ok(match path_embed(g, &path, n, params, seed)?.outcome {
                EmbedOutcome::Embedding(e) => DichotomyOutcome::Embedding(e),
                EmbedOutcome::BlueClique(w) => DichotomyOutcome::BlueClique(w),
            });
        }
    }
    Ok(DichotomyOutcome::Partition(exception_partition(g, sets, n, comps, &verdicts, params)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::prng::Prng;

    fn embedding_ok(g: &ColouredGraph, e: &CubeEmbedding) -> bool {
        let mut seen = std::collections::HashSet::new();
        (0..1usize << e.n).all(|x| seen.insert(e.map[x]) && (0..e.n).all(|c| !g.is_blue(e.map[x], e.map[x ^ (1 << c)])))
    }

    fn bipartite(left: usize, right: usize, mut red: impl FnMut(usize, usize) -> bool) -> ColouredGraph {
        ColouredGraph::from_fn(left + right, |u, v| {
            let (a, b) = (u.min(v), u.max(v));
            if a < left && b >= left && !red(a, b - left) {
                Colour::Blue
            } else {
                Colour::Red
            }
        })
    }

    fn no_red_ktt_brute(g: &ColouredGraph, x: &VertexSet, y: &VertexSet, t: usize) -> bool {
        fn subsets(v: &[usize], t: usize) -> Vec<Vec<usize>> {
            if t == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in 0..v.len() {
                for mut rest in subsets(&v[i + 1..], t - 1) {
                    rest.insert(0, v[i]);
                    out.push(rest);
                }
            }
            out
        }
        let (xs, ys) = (x.to_vec(), y.to_vec());
        let ly = subsets(&ys, t);
        subsets(&xs, t).iter().all(|a| ly.iter().all(|b| a.iter().any(|&u| b.iter().any(|&v| g.is_blue(u, v)))))
    }

    #[test]
    fn packing_examples() {
        let g = bipartite(8, 8, |_, _| true);
        let (l, r) = (VertexSet::range(16, 0, 8), VertexSet::range(16, 8, 16));
        let p = pack_bicliques(&g, &l, &r, 2, 2).unwrap();
        assert_eq!((p.found.len(), p.shortfall), (2, 0));
        let seen: std::collections::HashSet<usize> = p.found.iter().flat_map(|w| w.vertices().collect::<Vec<_>>()).collect();
        assert_eq!(seen.len(), 8);
        let g = bipartite(8, 8, |a, b| a == b);
        assert_eq!(pack_bicliques(&g, &l, &r, 2, 1).unwrap().shortfall, 1);
    }

    #[test]
    fn verdict_examples() {
        let p = MatchParams::desk(3, 0.25);
        let (l, r) = (VertexSet::range(16, 0, 8), VertexSet::range(16, 8, 16));
        let red = bipartite(8, 8, |_, _| true);
        assert_eq!(judge_pair(&red, &l, &r, &p).unwrap().status, VerdictStatus::Good);
        let blue = bipartite(8, 8, |_, _| false);
        let v = judge_pair(&blue, &l, &r, &p).unwrap();
        assert_eq!((v.status, &v.y1, &v.y2), (VerdictStatus::Bad, &l, &r));
        let matching = bipartite(8, 8, |a, b| a == b);
        let v = judge_pair(&matching, &l, &r, &p).unwrap();
        assert_eq!(v.status, VerdictStatus::Bad);
        assert!(no_red_ktt_brute(&matching, &v.y1, &v.y2, 2));
    }

    #[test]
    fn verdicts_are_sound_on_random_pairs() {
        let p = MatchParams { gamma: 0.2, ..MatchParams::desk(3, 0.25) };
        for seed in 0..30u64 {
            let mut rng = Prng::new(seed, 1);
            let dens = rng.next_f64();
            let g = bipartite(10, 10, |_, _| rng.bernoulli(dens));
            let (l, r) = (VertexSet::range(20, 0, 10), VertexSet::range(20, 10, 20));
            let v = judge_pair(&g, &l, &r, &p).unwrap();
            match v.status {
                VerdictStatus::Bad => {
                    assert!(v.y1.len() as f64 >= 0.8 * 10.0 && v.y2.len() as f64 >= 0.8 * 10.0);
                    assert!(no_red_ktt_brute(&g, &v.y1, &v.y2, 2));
                }
                VerdictStatus::Good => {
                    let mut spot = Prng::new(seed, 2);
                    for _ in 0..50 {
                        let a = VertexSet::from_slice(20, &spot.sample(&l.to_vec(), 8));
                        let b = VertexSet::from_slice(20, &spot.sample(&r.to_vec(), 8));
                        assert!(g.find_biclique(&a, &b, 2, Colour::Red).unwrap().is_some());
                    }
                }
                VerdictStatus::Undetermined => {}
            }
        }
    }

    #[test]
    fn components_of_extremal() {
        let part = 12;
        let g = ColouredGraph::from_fn(3 * part, |u, v| if u / part == v / part { Colour::Red } else { Colour::Blue });
        let sets: Vec<VertexSet> = (0..6).map(|i| VertexSet::range(3 * part, i * 6, i * 6 + 6)).collect();
        let p = MatchParams::desk(4, 0.25);
        let out = good_components(&g, &sets, 4, &p).unwrap();
        assert_eq!(out.parts, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(out.x.is_empty());
    }

    #[test]
    fn walks() {
        let path3 = vec![vec![false, true, false], vec![true, false, true], vec![false, true, false]];
        assert_eq!(tree_walk(3, &path3, WalkKind::Closed).unwrap().len(), 5);
        assert_eq!(tree_walk(3, &path3, WalkKind::Open).unwrap(), vec![2, 1, 0]);
        let pair = vec![vec![false, true], vec![true, false]];
        assert_eq!(tree_walk(2, &pair, WalkKind::Open).unwrap().len(), 2);
    }

    #[test]
    fn closed_walk_refinement_balances() {
        let part = 40;
        let g = ColouredGraph::new(3 * part);
        let sets: Vec<VertexSet> = (0..3).map(|i| VertexSet::range(3 * part, i * part, (i + 1) * part)).collect();
        let p = MatchParams { walk: WalkKind::Closed, ..MatchParams::desk(3, 0.25) };
        let path = build_m_path(&g, &sets, 3, &p).unwrap();
        assert_eq!(path.sets.len(), 5);
        validate_mpath(&g, &path, 2, p.copies(3)).unwrap();
        for owner in 0..3 {
            let sizes: Vec<usize> = (0..5).filter(|&i| path.owners[i] == owner).map(|i| path.sets[i].len()).collect();
            assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1, "{sizes:?}");
        }
    }

    #[test]
    fn single_set_path_embeds() {
        let (n, eps) = (6, 0.25);
        let g = ColouredGraph::new(127);
        let p = MatchParams::desk(3, eps);
        let path = build_m_path(&g, &[g.all()], n, &p).unwrap();
        let run = path_embed(&g, &path, n, &p, 1).unwrap();
        assert_eq!(run.layers, vec![(0, 2)]);
        assert!(run.quotient.as_ref().unwrap().is_sound(&g));
        assert!(embedding_ok(&g, run.outcome.embedding().unwrap()));
    }

    #[test]
    fn perfect_matching_scenario() {
        let (n, eps) = (5, 0.25);
        let half = ((1.0 + 2.0 * eps) * 16.0f64).ceil() as usize;
        let g = ColouredGraph::from_fn(2 * half, |u, v| {
            let (a, b) = (u.min(v), u.max(v));
            if a < half && b >= half && b - half != a {
                Colour::Blue
            } else {
                Colour::Red
            }
        });
        let p = MatchParams { m: 1, ..MatchParams::desk(3, eps) };
        let sets = [VertexSet::range(2 * half, 0, half), VertexSet::range(2 * half, half, 2 * half)];
        let mut adj = vec![vec![false, true], vec![true, false]];
        adj[1][0] = true;
        let path = build_m_path_on(&g, &sets, n, &p, &adj).unwrap();
        let run = path_embed(&g, &path, n, &p, 2).unwrap();
        assert_eq!(run.quotient.as_ref().unwrap().lift.len(), 20);
        assert!(embedding_ok(&g, run.outcome.embedding().unwrap()));
    }

    #[test]
    fn ramsey_upper_values() {
        assert_eq!(multicolour_ramsey_upper(2, 3), BigUint::from(64u32));
        assert_eq!(multicolour_ramsey_upper(2, 2), BigUint::from(16u32));
        assert_eq!(multicolour_ramsey_upper(4, 3), BigUint::from(16_777_216u32));
    }

    #[test]
    fn dichotomy_partitions_extremal() {
        let (s, n) = (3, 4);
        let part = 15;
        let g = ColouredGraph::from_fn(2 * part, |u, v| if (u < part) == (v < part) { Colour::Red } else { Colour::Blue });
        let sets: Vec<VertexSet> = (0..4).map(|i| VertexSet::range(2 * part, i * 7 + (i / 2), i * 7 + (i / 2) + 7)).collect();
        match matching_dichotomy(&g, &sets, n, &MatchParams::desk(s, 0.25), 0).unwrap() {
            DichotomyOutcome::Partition(p) => assert_eq!(p.parts.len(), s - 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn blue_clique_lift() {
        let mut g = ColouredGraph::new(6);
        for (a, b) in [(0, 2), (0, 4), (2, 4)] {
            g.set_colour(a, b, Colour::Blue);
        }
        let q = QuotientColouring::build(&g, 1, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(q.is_sound(&g));
        let w = q.lift_blue_clique(&g, &[0, 1, 2], 3).unwrap();
        assert_eq!(w.members, vec![0, 2, 4]);
    }
}
