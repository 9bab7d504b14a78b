//! Hypercube vertices as bitmasks.
//!
//! Coordinate 1 of a vector is bit 0 of its mask (little-endian). A prefix
//! vector of length `d` names the initial subcube of co-dimension `d` whose
//! first `d` coordinates are fixed.

use crate::error::{Error, Result};
use crate::graph::binomial;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeVertex {
    pub bits: u64,
    pub dim: usize,
}

impl CubeVertex {
    pub fn new(bits: u64, dim: usize) -> Self {
        assert!(dim <= 63 && bits < (1u64 << dim), "cube vertex {bits} outside Q_{dim}");
        CubeVertex { bits, dim }
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// First `d` coordinates.
    pub fn prefix(&self, d: usize) -> PrefixVector {
        PrefixVector::new(self.bits & low_mask(d), d)
    }
}

impl fmt::Display for CubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&coords_string(self.bits, self.dim))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixVector {
    pub bits: u64,
    pub len: usize,
}

impl PrefixVector {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= 63 && bits < (1u64 << len), "prefix {bits} longer than {len}");
        PrefixVector { bits, len }
    }

    /// Parses coordinates written left to right, e.g. `"011"` has coordinate 1 = 0.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Input(format!("bad coordinate {c:?} in {s:?}"))),
            }
        }
        Ok(PrefixVector::new(bits, s.len()))
    }

    pub fn truncate(&self, d: usize) -> PrefixVector {
        assert!(d <= self.len);
        PrefixVector::new(self.bits & low_mask(d), d)
    }
}

impl fmt::Display for PrefixVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&coords_string(self.bits, self.len))
    }
}

/// Coordinates 1..=len as a left-to-right 0/1 string.
pub fn coords_string(bits: u64, len: usize) -> String {
    (0..len).map(|i| if (bits >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

#[inline]
pub fn low_mask(d: usize) -> u64 {
    if d >= 64 {
        u64::MAX
    } else {
        (1u64 << d) - 1
    }
}

/// The `n` neighbours of `x`, ascending by flipped coordinate.
pub fn cube_neighbours(x: CubeVertex) -> Vec<CubeVertex> {
    (0..x.dim).map(|i| CubeVertex { bits: x.bits ^ (1 << i), dim: x.dim }).collect()
}

/// Whether the initial subcubes `Q_x` and `Q_z` are disjoint and adjacent:
/// they differ in exactly one of the first `min(d, d')` coordinates.
pub fn prefix_adjacent(x: PrefixVector, z: PrefixVector) -> bool {
    let d = x.len.min(z.len);
    ((x.bits ^ z.bits) & low_mask(d)).count_ones() == 1
}

/// Least level `p` (1-based) at which the `d(p)`-prefixes of `x` and `z` differ,
/// or `r + 1` when they are equal. `d_schedule` lists `d(1), …, d(r)`.
pub fn prefix_divergence(x: PrefixVector, z: PrefixVector, d_schedule: &[usize]) -> Result<usize> {
    let dr = d_schedule.last().copied().unwrap_or(0);
    if x.len != dr || z.len != dr {
        return Err(Error::Input(format!("prefix lengths {}/{} do not match d(r) = {dr}", x.len, z.len)));
    }
    Ok(divergence_unchecked(x.bits, z.bits, d_schedule))
}

#[inline]
pub(crate) fn divergence_unchecked(x: u64, z: u64, d_schedule: &[usize]) -> usize {
    let diff = x ^ z;
    if diff == 0 {
        return d_schedule.len() + 1;
    }
    let first = diff.trailing_zeros() as usize;
    // least p with d(p) > index of the first differing coordinate
    d_schedule.iter().position(|&d| d > first).map(|p| p + 1).unwrap_or(d_schedule.len() + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayerRange {
    pub m: usize,
    pub a: usize,
    pub b: usize,
}

impl LayerRange {
    pub fn new(m: usize, a: usize, b: usize) -> Result<Self> {
        if a > b || b > m {
            return Err(Error::Input(format!("bad layer range [{a},{b}] in Q_{m}")));
        }
        Ok(LayerRange { m, a, b })
    }
}

/// `Σ_{i=a..b} C(m, i)`.
pub fn layer_count(range: LayerRange) -> u128 {
    (range.a..=range.b).map(|i| binomial(range.m as u64, i as u64)).sum()
}

/// `C(m, ⌊m/2⌋)`.
pub fn middle_binomial(m: usize) -> u128 {
    binomial(m as u64, (m / 2) as u64)
}

/// All vertices of `Q_n` in lexicographic (mask) order.
pub fn vertices(n: usize) -> impl Iterator<Item = CubeVertex> {
    (0..(1u64 << n)).map(move |b| CubeVertex { bits: b, dim: n })
}

/// Vertices of `Q_m` ordered by layer, masks ascending within a layer.
pub fn layer_order(m: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (0..(1u64 << m)).collect();
    v.sort_by_key(|b| (b.count_ones(), *b));
    v
}

/// Map from the vertices of `Q_n` (indexed by mask) to graph vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeEmbedding {
    pub n: usize,
    /// `map[x]` is the image of the cube vertex with mask `x`.
    pub map: Vec<usize>,
}

impl CubeEmbedding {
    pub fn new(n: usize, map: Vec<usize>) -> Self {
        assert_eq!(map.len(), 1usize << n, "embedding of Q_{n} needs 2^{n} images");
        CubeEmbedding { n, map }
    }

    pub fn image(&self, x: u64) -> usize {
        self.map[x as usize]
    }
}
