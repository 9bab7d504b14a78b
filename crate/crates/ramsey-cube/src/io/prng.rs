//! Splitmix64 streams.
//!
//! A stream is addressed by `(seed, stream_id)`. Its initial state is
//! `mix(seed ^ mix(stream_id + GAMMA))`; each draw adds `GAMMA` to the state
//! and returns `mix(state)`, where `mix` is the splitmix64 finaliser. Workers
//! derive their streams from ids, never by sharing a generator, so serial and
//! parallel runs draw the same numbers.

pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct Prng {
    state: u64,
}

impl Prng {
    pub fn new(seed: u64, stream: u64) -> Self {
        Prng { state: mix(seed ^ mix(stream.wrapping_add(GAMMA))) }
    }

    /// Plain splitmix64 seeded with a raw state.
    pub fn from_state(state: u64) -> Self {
        Prng { state }
    }

    /// Child stream keyed by `id`, independent of how much `self` has drawn.
    pub fn derive(seed: u64, path: &[u64]) -> Self {
        let s = path.iter().fold(seed, |acc, &p| mix(acc ^ mix(p.wrapping_add(GAMMA))));
        Prng { state: s }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform in `0..n` (`n > 0`), by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    /// Uniform in `[0, 1)` with 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.index(i + 1);
            xs.swap(i, j);
        }
    }

    /// `k` distinct elements of `xs`, uniformly, returned sorted by position.
    pub fn sample<T: Copy + Ord>(&mut self, xs: &[T], k: usize) -> Vec<T> {
        assert!(k <= xs.len());
        let mut pool: Vec<T> = xs.to_vec();
        for i in 0..k {
            let j = i + self.index(pool.len() - i);
            pool.swap(i, j);
        }
        let mut out = pool[..k].to_vec();
        out.sort();
        out
    }
}
