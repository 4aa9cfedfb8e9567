use crate::error::Result;
use crate::oracle::{CostLedger, IndependenceOracle, Matroid, MeteredOracle};
use crate::ElementId;

/// A basis found by an algorithm, with the ledger of its oracle at the end
/// of the run.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisResult {
    /// Sorted by element id.
    pub basis: Vec<ElementId>,
    pub rank: usize,
    pub ledger: CostLedger,
}

impl BasisResult {
    pub(crate) fn new<M: Matroid>(mut basis: Vec<ElementId>, oracle: &MeteredOracle<M>) -> Self {
        basis.sort_unstable();
        Self {
            rank: basis.len(),
            basis,
            ledger: oracle.ledger_snapshot(),
        }
    }
}

/// Scans `order` keeping a current independent set `S` and asking, for each
/// element `e`, whether `S ∪ {e}` is independent. The step for `e` costs
/// `f(|S| + 1)`.
pub(crate) fn greedy_scan<O: IndependenceOracle + ?Sized>(
    oracle: &mut O,
    order: &[ElementId],
) -> Result<Vec<ElementId>> {
    let mut current: Vec<ElementId> = Vec::new();
    for &e in order {
        let at = current.partition_point(|&x| x < e);
        current.insert(at, e);
        if !oracle.query(&current)? {
            current.remove(at);
        }
    }
    Ok(current)
}

/// Greedy basis along `order`. With `order` sorted by decreasing tie-broken
/// weight this is the unique maximum-weight basis.
pub fn greedy_basis<M: Matroid>(
    oracle: &mut MeteredOracle<M>,
    order: &[ElementId],
) -> Result<BasisResult> {
    let basis = greedy_scan(oracle, order)?;
    Ok(BasisResult::new(basis, oracle))
}

/// Rank as the size of the greedy basis in natural order.
pub fn rank<M: Matroid>(oracle: &mut MeteredOracle<M>) -> Result<usize> {
    let order: Vec<ElementId> = (0..oracle.ground_size()).collect();
    Ok(greedy_basis(oracle, &order)?.rank)
}
