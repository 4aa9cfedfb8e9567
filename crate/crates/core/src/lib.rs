//! Matroid algorithms under a size-sensitive independence-oracle cost model.
//!
//! Every algorithm talks to its matroid through a [`MeteredOracle`], which
//! charges `f(|Q|)` for each query `Q` under a pluggable [`CostModel`] and
//! keeps an exact [`CostLedger`]. The crate provides:
//!
//! - [`families`]: partition, graphic, bicircular, convex transversal,
//!   uniform and free matroids with near-linear independence tests;
//! - [`combinators`]: truncation, l-relaxation and the free/uniform union;
//! - [`algorithms`]: greedy basis, a sampling algorithm for maximum-weight
//!   bases under bounded circumference, and partition size;
//! - [`hard`]: lower-bound instance families and their witnesses;
//! - [`verify`]: exhaustive ground truth at small sizes;
//! - [`bench`]: scaling benchmarks with CSV output and log-log slope fits.

pub mod algorithms;
pub mod bench;
pub mod combinators;
pub mod descriptor;
mod error;
pub mod families;
pub mod generate;
pub mod hard;
pub mod oracle;
pub mod verify;

/// Elements of a ground set of size `n` are `0..n`.
pub type ElementId = usize;

pub use descriptor::Descriptor;
pub use error::{Error, Result};
pub use oracle::{Cost, CostLedger, CostModel, IndependenceOracle, Matroid, MeteredOracle};
