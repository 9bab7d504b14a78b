//! Almost-partition of a blue-`K_s`-free colouring into equal-size sparse sets.
//!
//! [`decompose`] runs the maximal-family induction over `r = 2..=s`: at each
//! step it advances a level index `i_r` while doing so still buys a large jump
//! in coverage, keeps the maximal family of blue-`K_r`-free `a(i_r)`-sets as
//! `U_r`, and prunes a second family `X_r` so that the remainder has a degree
//! gap. The output refines every `U_r` into `a(i)`-sets.
//!
//! Exact maximum families are out of reach, so [`maximal_family`] packs greedily
//! and flags its result as heuristic whenever non-extendability could not be
//! confirmed exhaustively. The output is accepted on its contract alone, which
//! [`validate_decomposition`] checks.

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, VertexSet};
use crate::io::prng::Prng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

// ============================================================================
// Schedules
// ============================================================================

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSchedule {
    pub a: Vec<usize>,
    pub epsilon: f64,
}

impl SizeSchedule {
    /// `a(0) = N`, `a(i+1) = ⌊ε a(i) / 8⌋` while positive.
    pub fn geometric(n: usize, epsilon: f64) -> Self {
        let mut a = vec![n];
        loop {
            let next = (epsilon * *a.last().unwrap() as f64 / 8.0).floor() as usize;
            if next == 0 || next >= *a.last().unwrap() {
                break;
            }
            a.push(next);
        }
        SizeSchedule { a, epsilon }
    }

    pub fn custom(a: Vec<usize>, epsilon: f64) -> Result<Self> {
        let s = SizeSchedule { a, epsilon };
        s.validate()?;
        Ok(s)
    }

    /// Largest index `K`.
    pub fn top(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.is_empty() || self.a.contains(&0) {
            return Err(Error::Input("schedule entries must be positive".into()));
        }
        if !(0.0 < self.epsilon && self.epsilon < 1.0) {
            return Err(Error::Input(format!("epsilon {} outside (0,1)", self.epsilon)));
        }
        for (i, w) in self.a.windows(2).enumerate() {
            if w[1] as f64 > self.epsilon / 8.0 * w[0] as f64 {
                return Err(Error::Input(format!("a({}) = {} exceeds (ε/8)·a({i}) = {}", i + 1, w[1], self.epsilon / 8.0 * w[0] as f64)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `k = ⌈8s/ε⌉` and the schedule must reach `K = k^s`.
    Strict,
    /// Unit level steps on a schedule of any length.
    #[default]
    Relaxed,
}

/// The step base `k`: `⌈8s/ε⌉` in strict mode, 1 in relaxed mode.
pub fn step_base(s: usize, epsilon: f64, mode: Mode) -> usize {
    match mode {
        Mode::Strict => (8.0 * s as f64 / epsilon).ceil() as usize,
        Mode::Relaxed => 1,
    }
}

// ============================================================================
// Maximal families
// ============================================================================

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyOptions {
    pub restarts: usize,
    /// Node budget of the exhaustive non-extendability check.
    pub verify_budget: u64,
    /// Attempts in the single-swap improvement pass.
    pub swap_budget: usize,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions { restarts: 50, verify_budget: 200_000, swap_budget: 400 }
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    pub sets: Vec<VertexSet>,
    /// True when non-extendability was not confirmed exhaustively.
    pub heuristic: bool,
}

impl Family {
    pub fn coverage(&self) -> usize {
        self.sets.iter().map(VertexSet::len).sum()
    }

    pub fn union(&self, cap: usize) -> VertexSet {
        let mut u = VertexSet::new(cap);
        for s in &self.sets {
            u.union_with(s);
        }
        u
    }
}

/// Whether adding `u` to the blue-`K_r`-free set `cur` keeps it `K_r`-free.
fn extends(g: &ColouredGraph, cur: &VertexSet, u: usize, r: usize) -> bool {
    match r {
        0 | 1 => false,
        2 => g.blue_degree_into(u, cur) == 0,
        _ => {
            let nb = VertexSet::from_words(g.n(), g.blue_row(u).iter().zip(cur.words()).map(|(a, b)| a & b).collect());
            nb.len() < r - 1 || g.find_clique_unchecked(&nb, r - 1, Colour::Blue).is_none()
        }
    }
}

/// Grow one blue-`K_r`-free `a`-set inside `pool` from a seed vertex.
fn grow(g: &ColouredGraph, pool: &[usize], a: usize, r: usize, restart: usize, rng_seed: u64) -> Option<VertexSet> {
    if pool.len() < a {
        return None;
    }
    let order: Vec<usize> = if restart == 0 {
        pool.to_vec()
    } else {
        let mut rng = Prng::derive(rng_seed, &[restart as u64]);
        let start = rng.index(pool.len());
        let mut rest: Vec<usize> = pool.iter().copied().filter(|&v| v != pool[start]).collect();
        rng.shuffle(&mut rest);
        std::iter::once(pool[start]).chain(rest).collect()
    };
    let mut cur = VertexSet::new(g.n());
    let mut len = 0;
    for (seen, &u) in order.iter().enumerate() {
        if len + (order.len() - seen) < a {
            return None;
        }
        if extends(g, &cur, u, r) {
            cur.insert(u);
            len += 1;
            if len == a {
                return Some(cur);
            }
        }
    }
    None
}

/// Exhaustive search for a blue-`K_r`-free `a`-subset of `pool`.
/// `Some(None)` means none exists; `None` means the budget ran out.
fn exhaustive_extension(g: &ColouredGraph, pool: &[usize], a: usize, r: usize, budget: u64) -> Option<Option<VertexSet>> {
    fn rec(
        g: &ColouredGraph,
        pool: &[usize],
        from: usize,
        cur: &mut VertexSet,
        len: usize,
        a: usize,
        r: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if len == a {
            return Some(true);
        }
        for i in from..pool.len() {
            if pool.len() - i < a - len {
                break;
            }
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            if extends(g, cur, pool[i], r) {
                cur.insert(pool[i]);
                match rec(g, pool, i + 1, cur, len + 1, a, r, nodes, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                cur.remove(pool[i]);
            }
        }
        Some(false)
    }
    let mut cur = VertexSet::new(g.n());
    let mut nodes = 0;
    match rec(g, pool, 0, &mut cur, 0, a, r, &mut nodes, budget)? {
        true => Some(Some(cur)),
        false => Some(None),
    }
}

/// Disjoint blue-`K_r`-free `a`-subsets of `W`, packed greedily.
pub fn maximal_family(g: &ColouredGraph, w: &VertexSet, a: usize, r: usize, opts: &FamilyOptions, seed: u64) -> Result<Family> {
    if a == 0 || r == 0 {
        return Err(Error::Input("maximal_family needs a >= 1 and r >= 1".into()));
    }
    if w.cap() != g.n() {
        return Err(Error::Input("vertex set does not match graph".into()));
    }
    let mut sets: Vec<VertexSet> = Vec::new();
    if r == 1 {
        return Ok(Family { sets, heuristic: false });
    }
    let mut remaining = w.clone();
    let mut swaps_left = opts.swap_budget;
    loop {
        let pool = remaining.to_vec();
        let call_seed = Prng::derive(seed, &[sets.len() as u64]).next_u64();
        let found = (0..opts.restarts.max(1)).into_par_iter().find_map_first(|i| grow(g, &pool, a, r, i, call_seed));
        if let Some(set) = found {
            remaining.difference_with(&set);
            sets.push(set);
            continue;
        }
        if pool.len() < a {
            return Ok(Family { sets, heuristic: false });
        }
        if let Some(set) = swap_pass(g, &mut sets, &mut remaining, a, r, &mut swaps_left) {
            remaining.difference_with(&set);
            sets.push(set);
            continue;
        }
        let pool = remaining.to_vec();
        match exhaustive_extension(g, &pool, a, r, opts.verify_budget) {
            Some(Some(set)) => {
                remaining.difference_with(&set);
                sets.push(set);
            }
            Some(None) => return Ok(Family { sets, heuristic: false }),
            None => return Ok(Family { sets, heuristic: true }),
        }
    }
}

/// Trade one member of a family set for an uncovered vertex when that lets a
/// new set grow in the remainder. Returns the new set (family already updated).
fn swap_pass(
    g: &ColouredGraph,
    sets: &mut [VertexSet],
    remaining: &mut VertexSet,
    a: usize,
    r: usize,
    budget: &mut usize,
) -> Option<VertexSet> {
    let uncovered = remaining.to_vec();
    for fi in 0..sets.len() {
        for &u in &uncovered {
            for v in sets[fi].to_vec() {
                if *budget == 0 {
                    return None;
                }
                let mut trial = sets[fi].clone();
                trial.remove(v);
                if !extends(g, &trial, u, r) {
                    continue;
                }
                *budget -= 1;
                let mut rest = remaining.clone();
                rest.remove(u);
                rest.insert(v);
                if let Some(new) = grow(g, &rest.to_vec(), a, r, 0, 0) {
                    trial.insert(u);
                    sets[fi] = trial;
                    remaining.remove(u);
                    remaining.insert(v);
                    return Some(new);
                }
            }
        }
    }
    None
}

// ============================================================================
// The induction
// ============================================================================

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecomposeOptions {
    pub mode: Mode,
    pub family: FamilyOptions,
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { mode: Mode::Relaxed, family: FamilyOptions::default(), seed: 0 }
    }
}

/// One induction step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub r: usize,
    pub i_r: usize,
    /// Level step `k^{s-r+1}` used at this `r`.
    pub step: usize,
    pub u_size: usize,
    pub x_size: usize,
    pub w_size: usize,
    /// `εN/(4s) + ε|U_r|/8`.
    pub x_bound: f64,
    /// `I_r` as an inclusive range, clipped to the schedule.
    pub interval: (usize, usize),
}

impl TraceStep {
    pub fn line(&self) -> String {
        format!("r={} i_r={} |U_r|={} |X_r|={} |W_r|={}", self.r, self.i_r, self.u_size, self.x_size, self.w_size)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionFamily {
    pub level: usize,
    pub sets: Vec<VertexSet>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub family: DecompositionFamily,
    pub trace: Vec<TraceStep>,
    pub heuristic: bool,
}

/// Split `u` into consecutive `size`-chunks, dropping the remainder.
fn chunks(u: &VertexSet, size: usize) -> Vec<VertexSet> {
    let members = u.to_vec();
    members.chunks_exact(size).map(|c| VertexSet::from_slice(u.cap(), c)).collect()
}

pub fn decompose(g: &ColouredGraph, epsilon: f64, s: usize, schedule: &SizeSchedule, opts: &DecomposeOptions) -> Result<Decomposition> {
    let n = g.n();
    schedule.validate()?;
    if schedule.a[0] != n {
        return Err(Error::Input(format!("schedule starts at {} but the graph has {n} vertices", schedule.a[0])));
    }
    if s == 0 || s == 1 {
        return Err(Error::Input("decompose needs s >= 2".into()));
    }
    let top = schedule.top();
    if s == 2 {
        if let Some(w) = g.find_clique_unchecked(&g.all(), 2, Colour::Blue) {
            return Err(Error::BlueCliqueFound(w));
        }
        let family = DecompositionFamily { level: 0, sets: vec![g.all()] };
        return Ok(Decomposition { family, trace: vec![], heuristic: false });
    }
    if top < 1 {
        return Err(Error::DecompositionFailed { condition: "schedule needs at least two levels".into() });
    }
    let k = step_base(s, epsilon, opts.mode);
    if opts.mode == Mode::Strict {
        let need = (k as u128).saturating_pow(s as u32);
        if (top as u128) < need {
            return Err(Error::DecompositionFailed {
                condition: format!("strict mode needs K >= k^s = {need}, schedule has K = {top}"),
            });
        }
    }
    let pow = |e: usize| -> usize { (k as u128).saturating_pow(e as u32).min(usize::MAX as u128) as usize };
    let gain = epsilon * n as f64 / (4.0 * s as f64);

    let mut w = g.all();
    let mut i_prev = 0usize;
    let mut trace = Vec::new();
    let mut kept: Vec<(usize, Vec<VertexSet>)> = Vec::new();
    let mut heuristic = false;
    let mut call = 0u64;
    let mut fam = |w: &VertexSet, a: usize, r: usize, heuristic: &mut bool| -> Result<Family> {
        call += 1;
        let f = maximal_family(g, w, a, r, &opts.family, Prng::derive(opts.seed, &[call]).next_u64())?;
        *heuristic |= f.heuristic;
        Ok(f)
    };

    for r in 2..=s {
        let h = pow(s - r + 1);
        let mut i_r = i_prev;
        let mut cur = fam(&w, schedule.a[i_r], r, &mut heuristic)?;
        while i_r.saturating_add(h) < top {
            let next = fam(&w, schedule.a[i_r + h], r, &mut heuristic)?;
            if (next.coverage() as f64) <= cur.coverage() as f64 + gain {
                break;
            }
            i_r += h;
            cur = next;
        }
        let u_r = cur.union(n);
        let w_prime = w.difference(&u_r);
        let x_level = i_r.saturating_add(h).min(top);
        let x_fam = fam(&w_prime, schedule.a[x_level], r, &mut heuristic)?;
        let x_r = x_fam.union(n);
        w = w_prime.difference(&x_r);
        let interval_hi = i_prev.saturating_add(pow(s - r + 2)).min(top);
        let step = TraceStep {
            r,
            i_r,
            step: h,
            u_size: u_r.len(),
            x_size: x_r.len(),
            w_size: w.len(),
            x_bound: gain + epsilon * u_r.len() as f64 / 8.0,
            interval: (i_r, interval_hi),
        };
        if step.x_size as f64 > step.x_bound {
            return Err(Error::DecompositionFailed {
                condition: format!("pruning bound at r={r}: |X_r| = {} > {:.3}", step.x_size, step.x_bound),
            });
        }
        trace.push(step);
        kept.push((i_r, cur.sets));
        i_prev = i_r;
    }

    let (lo, hi) = trace.last().expect("s >= 3").interval;
    if lo + 1 > hi {
        return Err(Error::DecompositionFailed {
            condition: format!("output interval I_s = {{{lo}..{hi}}} has fewer than two levels"),
        });
    }
    let level = lo;
    let size = schedule.a[level];
    let sets: Vec<VertexSet> = kept.iter().flat_map(|(_, us)| us.iter().flat_map(|u| chunks(u, size))).collect();
    let family = DecompositionFamily { level, sets };
    let report = validate_decomposition(g, &family, schedule, epsilon);
    if let Some(c) = report.first_failure() {
        return Err(Error::DecompositionFailed { condition: c });
    }
    Ok(Decomposition { family, trace, heuristic })
}

// ============================================================================
// Validation
// ============================================================================

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub disjoint: bool,
    pub coverage: usize,
    pub coverage_needed: f64,
    /// Indices of sets whose size is not `a(i)`.
    pub wrong_size: Vec<usize>,
    pub max_internal_degree: usize,
    pub degree_bound: Option<usize>,
    /// `a(i+1) ≤ (ε/8)·a(i)` at the output level.
    pub degree_gap_ok: bool,
}

impl DecompositionReport {
    pub fn coverage_ok(&self) -> bool {
        self.coverage as f64 >= self.coverage_needed
    }

    pub fn degree_ok(&self) -> bool {
        self.degree_bound.is_some_and(|b| self.max_internal_degree <= b)
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<String> {
        if !self.disjoint {
            return Some("sets are not pairwise disjoint".into());
        }
        if !self.coverage_ok() {
            return Some(format!("(a) coverage {} < {:.3}", self.coverage, self.coverage_needed));
        }
        if !self.wrong_size.is_empty() {
            return Some(format!("(b) {} sets have the wrong size", self.wrong_size.len()));
        }
        match self.degree_bound {
            None => return Some("(c) level has no successor in the schedule".into()),
            Some(b) if self.max_internal_degree > b => {
                return Some(format!("(c) internal blue degree {} > a(i+1) = {b}", self.max_internal_degree))
            }
            _ => {}
        }
        if !self.degree_gap_ok {
            return Some("schedule degree gap broken at the output level".into());
        }
        None
    }
}

pub fn validate_decomposition(g: &ColouredGraph, fam: &DecompositionFamily, schedule: &SizeSchedule, epsilon: f64) -> DecompositionReport {
    let n = g.n();
    let mut seen = VertexSet::new(n);
    let mut disjoint = true;
    for s in &fam.sets {
        if !seen.is_disjoint(s) {
            disjoint = false;
        }
        seen.union_with(s);
    }
    let size = schedule.a.get(fam.level).copied();
    let wrong_size = fam.sets.iter().enumerate().filter(|(_, s)| Some(s.len()) != size).map(|(i, _)| i).collect();
    let max_internal_degree = fam.sets.iter().map(|s| g.max_blue_degree_in(s)).max().unwrap_or(0);
    let degree_bound = schedule.a.get(fam.level + 1).copied();
    let degree_gap_ok = match (size, degree_bound) {
        (Some(a), Some(b)) => b as f64 <= epsilon / 8.0 * a as f64,
        _ => true,
    };
    DecompositionReport {
        disjoint,
        coverage: seen.len(),
        coverage_needed: (1.0 - epsilon) * n as f64,
        wrong_size,
        max_internal_degree,
        degree_bound,
        degree_gap_ok,
    }
}
