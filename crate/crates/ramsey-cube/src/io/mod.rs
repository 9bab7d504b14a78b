//! File formats, run configuration and the deterministic generator.

pub mod cert;
pub mod config;
pub mod crg;
pub mod prng;
