//! Bit-packed two-coloured complete graphs.
//!
//! Only the blue adjacency is stored (one `u64` row per vertex); red is the
//! complement inside the complete graph. Every search breaks ties by least
//! vertex index, so results are reproducible.

use crate::error::{Error, Result};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        })
    }
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
fn popcount(ws: &[u64]) -> usize {
    ws.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn first_bit(ws: &[u64]) -> Option<usize> {
    ws.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline]
fn clear_bit(ws: &mut [u64], v: usize) {
    ws[v / 64] &= !(1u64 << (v % 64));
}

// ============================================================================
// VertexSet
// ============================================================================

/// A subset of `0..cap`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    cap: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(cap: usize) -> Self {
        VertexSet { cap, words: vec![0; words_for(cap)] }
    }

    pub fn full(cap: usize) -> Self {
        let mut s = Self::new(cap);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(cap);
            *w = if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
        }
        s
    }

    /// Panics if a member is out of range.
    pub fn from_slice(cap: usize, members: &[usize]) -> Self {
        let mut s = Self::new(cap);
        for &v in members {
            assert!(v < cap, "vertex {v} out of range {cap}");
            s.insert(v);
        }
        s
    }

    pub fn try_from_slice(cap: usize, members: &[usize]) -> Result<Self> {
        match members.iter().find(|&&v| v >= cap) {
            Some(v) => Err(Error::Input(format!("vertex {v} out of range 0..{cap}"))),
            None => Ok(Self::from_slice(cap, members)),
        }
    }

    pub fn range(cap: usize, lo: usize, hi: usize) -> Self {
        let mut s = Self::new(cap);
        for v in lo..hi.min(cap) {
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(cap: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(cap));
        VertexSet { cap, words }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> usize {
        popcount(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.cap && (self.words[v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let had = self.contains(v);
        self.words[v / 64] |= 1u64 << (v % 64);
        !had
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let had = self.contains(v);
        if had {
            clear_bit(&mut self.words, v);
        }
        had
    }

    pub fn first(&self) -> Option<usize> {
        first_bit(&self.words)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `k` least members (all of them if fewer).
    pub fn take_first(&self, k: usize) -> VertexSet {
        let mut out = VertexSet::new(self.cap);
        for v in self.iter().take(k) {
            out.insert(v);
        }
        out
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        assert_eq!(self.cap, other.cap, "vertex sets over different ranges");
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        VertexSet { cap: self.cap, words }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.cap).difference(self)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

// ============================================================================
// Witnesses
// ============================================================================

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    /// Sorted ascending.
    pub members: Vec<usize>,
    pub colour: Colour,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueWitness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub colour: Colour,
}

impl BicliqueWitness {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.left.iter().chain(&self.right).copied()
    }
}

// ============================================================================
// ColouredGraph
// ============================================================================

/// A complete graph on `n` vertices with every edge red or blue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredGraph {
    n: usize,
    stride: usize,
    blue: Vec<u64>,
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColouredGraph(n={}, blue_edges={})", self.n, self.blue_edge_count())
    }
}

impl ColouredGraph {
    /// All edges red.
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        ColouredGraph { n, stride, blue: vec![0; n * stride] }
    }

    pub fn monochromatic(n: usize, colour: Colour) -> Self {
        let mut g = Self::new(n);
        if colour == Colour::Blue {
            for v in 0..n {
                let mut row = VertexSet::full(n);
                row.remove(v);
                g.blue[v * g.stride..(v + 1) * g.stride].copy_from_slice(row.words());
            }
        }
        g
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Colour) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if f(u, v) == Colour::Blue {
                    g.set_colour(u, v, Colour::Blue);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    pub fn set_colour(&mut self, u: usize, v: usize, c: Colour) {
        assert!(u != v && u < self.n && v < self.n, "bad edge {{{u},{v}}}");
        let s = self.stride;
        match c {
            Colour::Blue => {
                self.blue[u * s + v / 64] |= 1u64 << (v % 64);
                self.blue[v * s + u / 64] |= 1u64 << (u % 64);
            }
            Colour::Red => {
                self.blue[u * s + v / 64] &= !(1u64 << (v % 64));
                self.blue[v * s + u / 64] &= !(1u64 << (u % 64));
            }
        }
    }

    #[inline]
    pub fn is_blue(&self, u: usize, v: usize) -> bool {
        (self.blue[u * self.stride + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Colour of the edge `{u, v}`; `u != v`.
    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> Colour {
        debug_assert!(u != v);
        if self.is_blue(u, v) {
            Colour::Blue
        } else {
            Colour::Red
        }
    }

    #[inline]
    pub fn blue_row(&self, v: usize) -> &[u64] {
        &self.blue[v * self.stride..(v + 1) * self.stride]
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::Input(format!("vertex {v} out of range 0..{}", self.n)));
        }
        Ok(())
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.cap() != self.n {
            return Err(Error::Input(format!("vertex set over {} vertices, graph has {}", s.cap(), self.n)));
        }
        Ok(())
    }

    /// `N_colour(v)`, never containing `v`.
    pub fn neighbours(&self, v: usize, colour: Colour) -> VertexSet {
        match colour {
            Colour::Blue => VertexSet::from_words(self.n, self.blue_row(v).to_vec()),
            Colour::Red => {
                let mut s = VertexSet::full(self.n).difference(&VertexSet::from_words(self.n, self.blue_row(v).to_vec()));
                s.remove(v);
                s
            }
        }
    }

    #[inline]
    fn blue_degree_unchecked(&self, v: usize, s: &VertexSet) -> usize {
        self.blue_row(v).iter().zip(s.words()).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// `|N_colour(v) ∩ S|`.
    pub fn degree_in(&self, v: usize, s: &VertexSet, colour: Colour) -> Result<usize> {
        self.check_vertex(v)?;
        self.check_set(s)?;
        let blue = self.blue_degree_unchecked(v, s);
        Ok(match colour {
            Colour::Blue => blue,
            Colour::Red => s.len() - blue - usize::from(s.contains(v)),
        })
    }

    /// Blue degree of `v` into `S` without range checks.
    #[inline]
    pub fn blue_degree_into(&self, v: usize, s: &VertexSet) -> usize {
        self.blue_degree_unchecked(v, s)
    }

    #[inline]
    pub fn red_degree_into(&self, v: usize, s: &VertexSet) -> usize {
        s.len() - self.blue_degree_unchecked(v, s) - usize::from(s.contains(v))
    }

    /// Largest blue degree inside `S` (0 for `|S| ≤ 1`).
    pub fn max_blue_degree_in(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.blue_degree_unchecked(v, s)).max().unwrap_or(0)
    }

    pub fn blue_edge_count(&self) -> usize {
        popcount(&self.blue) / 2
    }

    /// Number of `colour` pairs with one end in `X` and one in `Y` (sets disjoint).
    pub fn cross_count(&self, x: &VertexSet, y: &VertexSet, colour: Colour) -> usize {
        let blue: usize = x.iter().map(|v| self.blue_degree_unchecked(v, y)).sum();
        match colour {
            Colour::Blue => blue,
            Colour::Red => x.len() * y.len() - blue,
        }
    }

    /// Exact density `e_colour(X,Y) / (|X||Y|)`.
    pub fn pair_density(&self, x: &VertexSet, y: &VertexSet, colour: Colour) -> Result<Ratio<u64>> {
        self.check_set(x)?;
        self.check_set(y)?;
        if x.is_empty() || y.is_empty() {
            return Err(Error::Input("pair_density needs nonempty sets".into()));
        }
        if !x.is_disjoint(y) {
            return Err(Error::Input("pair_density needs disjoint sets".into()));
        }
        let e = self.cross_count(x, y, colour) as u64;
        Ok(Ratio::new(e, (x.len() * y.len()) as u64))
    }

    /// Whether every pair inside `members` has the given colour.
    pub fn is_clique(&self, members: &[usize], colour: Colour) -> bool {
        members.iter().enumerate().all(|(i, &u)| members[i + 1..].iter().all(|&v| u != v && self.colour(u, v) == colour))
    }

    /// Relabelled copy on `verts` (vertex `i` of the result is `verts[i]`).
    pub fn induced(&self, verts: &[usize]) -> ColouredGraph {
        ColouredGraph::from_fn(verts.len(), |i, j| self.colour(verts[i], verts[j]))
    }

    // ------------------------------------------------------------------------
    // Clique search
    // ------------------------------------------------------------------------

    /// `out = cand ∩ N_colour(v)`.
    #[inline]
    fn and_nbr(&self, cand: &[u64], v: usize, colour: Colour, out: &mut Vec<u64>) {
        out.clear();
        let row = self.blue_row(v);
        match colour {
            Colour::Blue => out.extend(cand.iter().zip(row).map(|(a, b)| a & b)),
            Colour::Red => {
                out.extend(cand.iter().zip(row).map(|(a, b)| a & !b));
                clear_bit(out, v);
            }
        }
    }

    /// Greedy colouring of `cand` in the `colour` graph: an upper bound on its clique number.
    fn colour_bound(&self, cand: &[u64], colour: Colour, limit: usize) -> usize {
        let mut q = cand.to_vec();
        let mut p = Vec::with_capacity(q.len());
        let mut classes = 0;
        while first_bit(&q).is_some() {
            classes += 1;
            if classes >= limit {
                return classes;
            }
            p.clear();
            p.extend_from_slice(&q);
            while let Some(v) = first_bit(&p) {
                clear_bit(&mut p, v);
                clear_bit(&mut q, v);
                let row = self.blue_row(v);
                match colour {
                    Colour::Blue => p.iter_mut().zip(row).for_each(|(a, b)| *a &= !b),
                    Colour::Red => p.iter_mut().zip(row).for_each(|(a, b)| *a &= b),
                }
            }
        }
        classes
    }

    fn clique_rec(&self, cand: &mut Vec<u64>, need: usize, colour: Colour, chosen: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        if need >= 3 && self.colour_bound(cand, colour, need) < need {
            return false;
        }
        let mut next = Vec::with_capacity(cand.len());
        loop {
            if popcount(cand) < need {
                return false;
            }
            let v = first_bit(cand).expect("nonempty");
            clear_bit(cand, v);
            if need == 1 {
                chosen.push(v);
                return true;
            }
            self.and_nbr(cand, v, colour, &mut next);
            if popcount(&next) >= need - 1 {
                chosen.push(v);
                let mut sub = next.clone();
                if self.clique_rec(&mut sub, need - 1, colour, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
    }

    /// Lexicographically least `colour` clique of size `s` inside `S`.
    pub fn find_clique(&self, s_set: &VertexSet, s: usize, colour: Colour) -> Result<Option<CliqueWitness>> {
        self.check_set(s_set)?;
        if s == 0 {
            return Err(Error::Input("clique size must be at least 1".into()));
        }
        Ok(self.find_clique_unchecked(s_set, s, colour))
    }

    pub(crate) fn find_clique_unchecked(&self, s_set: &VertexSet, s: usize, colour: Colour) -> Option<CliqueWitness> {
        let mut cand = s_set.words().to_vec();
        let mut chosen = Vec::with_capacity(s);
        self.clique_rec(&mut cand, s, colour, &mut chosen).then_some(CliqueWitness { members: chosen, colour })
    }

    /// A `colour` `K_{t,t}` between `X` and `Y`, found by enumerating the
    /// `t`-subsets of the smaller side in lexicographic order.
    pub fn find_biclique(&self, x: &VertexSet, y: &VertexSet, t: usize, colour: Colour) -> Result<Option<BicliqueWitness>> {
        self.check_set(x)?;
        self.check_set(y)?;
        if !x.is_disjoint(y) {
            return Err(Error::Input("find_biclique needs disjoint sides".into()));
        }
        if t == 0 {
            return Err(Error::Input("biclique size must be at least 1".into()));
        }
        let x_small = x.len() <= y.len();
        let (a, b) = if x_small { (x, y) } else { (y, x) };
        if t > a.len() {
            return Ok(None);
        }
        let work = binomial(a.len() as u64, t as u64);
        if work > BICLIQUE_BUDGET {
            return Err(Error::Capacity { what: "find_biclique".into(), needed: work, budget: BICLIQUE_BUDGET });
        }
        let av = a.to_vec();
        let mut chosen = Vec::with_capacity(t);
        let found = self.biclique_rec(&av, 0, b.words().to_vec(), t, colour, &mut chosen);
        Ok(found.map(|common| {
            let other: Vec<usize> = VertexSet::from_words(self.n, common).iter().take(t).collect();
            if x_small {
                BicliqueWitness { left: chosen, right: other, colour }
            } else {
                BicliqueWitness { left: other, right: chosen, colour }
            }
        }))
    }

    fn biclique_rec(
        &self,
        a: &[usize],
        from: usize,
        common: Vec<u64>,
        t: usize,
        colour: Colour,
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<u64>> {
        if chosen.len() == t {
            return Some(common);
        }
        let mut next = Vec::with_capacity(common.len());
        let left = t - chosen.len();
        for i in from..a.len() {
            if a.len() - i < left {
                break;
            }
            self.and_nbr(&common, a[i], colour, &mut next);
            if popcount(&next) >= t {
                chosen.push(a[i]);
                if let Some(c) = self.biclique_rec(a, i + 1, next.clone(), t, colour, chosen) {
                    return Some(c);
                }
                chosen.pop();
            }
        }
        None
    }
}

/// Enumeration cap for [`ColouredGraph::find_biclique`].
pub const BICLIQUE_BUDGET: u128 = 10_000_000;

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Edge count above which an `N1 × N2` bipartite graph must contain `K_{t,t}`:
/// `⌈(t−1)^{1/t} (N2−t+1) N1^{1−1/t} + (t−1) N1⌉`.
pub fn zarankiewicz_threshold(n1: usize, n2: usize, t: usize) -> u64 {
    assert!(t >= 2, "threshold defined for t >= 2");
    let tf = t as f64;
    let body = if n2 + 1 >= t { (n2 + 1 - t) as f64 } else { 0.0 };
    let v = (tf - 1.0).powf(1.0 / tf) * body * (n1 as f64).powf(1.0 - 1.0 / tf) + (tf - 1.0) * n1 as f64;
    (v - 1e-9).ceil().max(0.0) as u64
}

/// A small simple graph used as a pattern (at most 64 vertices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SmallGraph {
    pub n: usize,
    /// `adj[v]` has bit `u` set when `uv` is an edge.
    pub adj: Vec<u64>,
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64, "pattern graphs have at most 64 vertices");
        SmallGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > 64 {
            return Err(Error::Input(format!("pattern with {n} > 64 vertices")));
        }
        let mut h = SmallGraph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Input(format!("bad pattern edge ({u}, {v})")));
            }
            h.add_edge(u, v);
        }
        Ok(h)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| (u + 1..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v))).collect()
    }

    pub fn complete(s: usize) -> Self {
        let mut h = SmallGraph::empty(s);
        for u in 0..s {
            for v in u + 1..s {
                h.add_edge(u, v);
            }
        }
        h
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut h = SmallGraph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                h.add_edge(u, v);
            }
        }
        h
    }

    pub fn cycle(n: usize) -> Self {
        let mut h = SmallGraph::empty(n);
        for v in 0..n {
            h.add_edge(v, (v + 1) % n);
        }
        h
    }

    /// `Q_n` on masks `0..2^n`.
    pub fn cube(n: usize) -> Self {
        let mut h = SmallGraph::empty(1 << n);
        for x in 0..1usize << n {
            for c in 0..n {
                h.add_edge(x, x ^ (1 << c));
            }
        }
        h
    }

    /// Text form: a line `n <N>` then one `u v` line per edge; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse { line: i + 1, msg: format!("bad number {s:?}") });
            match (n, parts.as_slice()) {
                (None, ["n", v]) => n = Some(num(v)?),
                (Some(_), [u, v]) => edges.push((num(u)?, num(v)?)),
                _ => return Err(Error::Parse { line: i + 1, msg: format!("unexpected {line:?}") }),
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing `n <N>` line".into() })?;
        SmallGraph::from_edges(n, &edges)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_red_triangles() -> ColouredGraph {
        ColouredGraph::from_fn(6, |u, v| if (u < 3) == (v < 3) { Colour::Red } else { Colour::Blue })
    }

    /// Independent oracle: first `s`-subset of `S` in lexicographic order that is a clique.
    fn naive_clique(g: &ColouredGraph, s_set: &[usize], s: usize, colour: Colour) -> Option<Vec<usize>> {
        fn rec(g: &ColouredGraph, pool: &[usize], from: usize, s: usize, colour: Colour, acc: &mut Vec<usize>) -> bool {
            if acc.len() == s {
                return true;
            }
            for i in from..pool.len() {
                let v = pool[i];
                if acc.iter().all(|&u| g.colour(u, v) == colour) {
                    acc.push(v);
                    if rec(g, pool, i + 1, s, colour, acc) {
                        return true;
                    }
                    acc.pop();
                }
            }
            false
        }
        let mut acc = vec![];
        rec(g, s_set, 0, s, colour, &mut acc).then_some(acc)
    }

    #[test]
    fn degree_examples() {
        let k4 = ColouredGraph::monochromatic(4, Colour::Blue);
        let s = VertexSet::from_slice(4, &[1, 2, 3]);
        assert_eq!(k4.degree_in(0, &s, Colour::Blue).unwrap(), 3);
        assert_eq!(k4.degree_in(0, &s, Colour::Red).unwrap(), 0);
        let g = two_red_triangles();
        let s = VertexSet::from_slice(6, &[3, 4, 5]);
        assert_eq!(g.degree_in(0, &s, Colour::Blue).unwrap(), 3);
        assert!(g.degree_in(7, &s, Colour::Blue).is_err());
    }

    #[test]
    fn density_examples() {
        let red = ColouredGraph::new(6);
        let x = VertexSet::from_slice(6, &[0, 1, 2]);
        let y = VertexSet::from_slice(6, &[3, 4, 5]);
        assert_eq!(red.pair_density(&x, &y, Colour::Red).unwrap(), Ratio::from_integer(1));
        assert_eq!(red.pair_density(&x, &y, Colour::Blue).unwrap(), Ratio::from_integer(0));
        assert_eq!(two_red_triangles().pair_density(&x, &y, Colour::Blue).unwrap(), Ratio::new(9, 9));
        assert!(red.pair_density(&x, &x, Colour::Red).is_err());
        assert!(red.pair_density(&x, &VertexSet::new(6), Colour::Red).is_err());
    }

    #[test]
    fn clique_examples() {
        let k5 = ColouredGraph::monochromatic(5, Colour::Blue);
        let w = k5.find_clique(&k5.all(), 3, Colour::Blue).unwrap().unwrap();
        assert_eq!(w.members, vec![0, 1, 2]);
        let g = two_red_triangles();
        assert!(g.find_clique(&g.all(), 3, Colour::Blue).unwrap().is_none());
        assert!(naive_clique(&g, &g.all().to_vec(), 3, Colour::Blue).is_none());
        assert_eq!(g.find_clique(&g.all(), 3, Colour::Red).unwrap().unwrap().members, vec![0, 1, 2]);
    }

    fn bipartite(n: usize, red: impl Fn(usize, usize) -> bool) -> (ColouredGraph, VertexSet, VertexSet) {
        let g = ColouredGraph::from_fn(2 * n, |u, v| {
            if u < n && v >= n && red(u, v - n) {
                Colour::Red
            } else {
                Colour::Blue
            }
        });
        (g, VertexSet::range(2 * n, 0, n), VertexSet::range(2 * n, n, 2 * n))
    }

    #[test]
    fn biclique_examples() {
        let (g, x, y) = bipartite(3, |_, _| true);
        let w = g.find_biclique(&x, &y, 2, Colour::Red).unwrap().unwrap();
        assert_eq!((w.left, w.right), (vec![0, 1], vec![3, 4]));
        let (g, x, y) = bipartite(4, |i, j| i != j);
        assert!(g.find_biclique(&x, &y, 2, Colour::Red).unwrap().is_some());
        let (g, x, y) = bipartite(4, |i, j| i == j);
        assert!(g.find_biclique(&x, &y, 2, Colour::Red).unwrap().is_none());
        assert!(g.find_biclique(&x, &y, 5, Colour::Red).unwrap().is_none());
    }

    #[test]
    fn biclique_capacity() {
        let (g, x, y) = bipartite(60, |_, _| false);
        assert!(matches!(g.find_biclique(&x, &y, 6, Colour::Red), Err(Error::Capacity { .. })));
    }

    #[test]
    fn zarankiewicz_values() {
        assert_eq!(zarankiewicz_threshold(4, 4, 2), 10);
        assert_eq!(zarankiewicz_threshold(16, 16, 2), 76);
        for t in 2..6 {
            assert!(zarankiewicz_threshold(t, t, t) as usize >= t * t - 1);
        }
    }

    #[test]
    fn zarankiewicz_sound_on_all_4x4() {
        // Every 4x4 bipartite graph with more than the threshold edges has a K_{2,2}.
        let th = zarankiewicz_threshold(4, 4, 2);
        let mut max_free = 0;
        for mask in 0u32..(1 << 16) {
            let has = (0..4).any(|a| {
                (a + 1..4).any(|b| {
                    let common = (mask >> (4 * a)) & (mask >> (4 * b)) & 0xF;
                    common.count_ones() >= 2
                })
            });
            if !has {
                max_free = max_free.max(mask.count_ones());
            }
        }
        assert_eq!(max_free, 9);
        assert!(u64::from(max_free) <= th);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = ColouredGraph> {
        (2..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                ColouredGraph::from_fn(n, |_, _| if it.next().unwrap() { Colour::Blue } else { Colour::Red })
            })
        })
    }

    proptest! {
        #[test]
        fn red_plus_blue_degree(g in arb_graph(70), v_seed in 0usize..1000, mask in any::<u64>()) {
            let v = v_seed % g.n();
            let s = VertexSet::from_slice(g.n(), &(0..g.n()).filter(|i| (mask >> (i % 64)) & 1 == 1).collect::<Vec<_>>());
            let r = g.degree_in(v, &s, Colour::Red).unwrap();
            let b = g.degree_in(v, &s, Colour::Blue).unwrap();
            prop_assert_eq!(r + b, s.len() - usize::from(s.contains(v)));
        }

        #[test]
        fn clique_matches_naive(g in arb_graph(16), s in 1usize..6, mask in any::<u16>(), blue in any::<bool>()) {
            let colour = if blue { Colour::Blue } else { Colour::Red };
            let pool: Vec<usize> = (0..g.n()).filter(|i| (mask >> i) & 1 == 1).collect();
            let set = VertexSet::from_slice(g.n(), &pool);
            let fast = g.find_clique(&set, s, colour).unwrap().map(|w| w.members);
            prop_assert_eq!(fast, naive_clique(&g, &pool, s, colour));
        }
    }
}
