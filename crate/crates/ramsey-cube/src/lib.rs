//! Algorithms around the Ramsey number of a clique versus a hypercube.
//!
//! Every search in this crate returns a checkable certificate: a red
//! hypercube embedding, a blue clique, or a structured partition. The
//! [`oracle`] module re-checks these with code that shares nothing with the
//! constructors.
//!
//! Modules, bottom-up:
//!
//! - [`graph`]: bit-packed two-coloured complete graphs, clique and biclique search.
//! - [`cube`]: hypercube vertices, prefix subcubes, layers.
//! - [`decomposition`]: almost-partition of a blue-`K_s`-free colouring into sparse sets.
//! - [`dense`]: greedy hypercube embedding through nested level assignments.
//! - [`matching`]: biclique packings, good-pair components and the quotient recursion.
//! - [`stability`]: the stability partition, the final embedding and the end-to-end pipeline.
//! - [`oracle`]: validators and exhaustive small-case search.
//! - [`io`]: file formats, configuration and the deterministic generator.

pub mod cube;
pub mod decomposition;
pub mod dense;
pub mod error;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod stability;

pub use error::{Error, Result};
pub use graph::{BicliqueWitness, CliqueWitness, Colour, ColouredGraph, SmallGraph, VertexSet};
