//! Upper-bound algorithms. Every independence question goes through an
//! [`IndependenceOracle`](crate::oracle::IndependenceOracle), so the cost of
//! a run is exactly what its oracle's ledger reports.

mod bounded_circ;
mod greedy;
mod partition;

pub use bounded_circ::{max_weight_basis_bounded_circ, min_dependent_prefix, BoundedCircParams};
pub use greedy::{greedy_basis, rank, BasisResult};
pub use partition::{
    base_cover, partition_size, CappedOracle, CoverOutcome, LambdaTest, PartitionResult,
};

use crate::error::Result;
use crate::oracle::IndependenceOracle;
use crate::ElementId;

/// Queries `elems` in any order by sorting a copy into `scratch`.
pub(crate) fn query_unordered<O: IndependenceOracle + ?Sized>(
    oracle: &mut O,
    elems: &[ElementId],
    scratch: &mut Vec<ElementId>,
) -> Result<bool> {
    scratch.clear();
    scratch.extend_from_slice(elems);
    scratch.sort_unstable();
    oracle.query(scratch)
}
