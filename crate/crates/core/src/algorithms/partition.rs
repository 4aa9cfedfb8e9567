//! Partition size by binary search over the number of classes `λ`. Each
//! test truncates the matroid to rank `⌈n/λ⌉` and asks a base-covering
//! routine for `λ` independent classes covering the ground set. Truncation
//! keeps every covering that exists, and queries above the cap are answered
//! negatively without reaching the metered oracle.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::oracle::{CostLedger, IndependenceOracle, Matroid, MeteredOracle};
use crate::ElementId;

/// Answers every query larger than `cap` with "dependent" for free and
/// forwards the rest.
pub struct CappedOracle<O> {
    inner: O,
    cap: usize,
}

impl<O: IndependenceOracle> CappedOracle<O> {
    pub fn new(inner: O, cap: usize) -> Self {
        Self { inner, cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
}

impl<O: IndependenceOracle> IndependenceOracle for CappedOracle<O> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn query(&mut self, set: &[ElementId]) -> Result<bool> {
        if set.len() > self.cap {
            crate::oracle::validate_set(set, self.inner.ground_size())?;
            return Ok(false);
        }
        self.inner.query(set)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    /// `λ` pairwise disjoint independent classes whose union is the ground
    /// set; some classes may be empty.
    Covered(Vec<Vec<ElementId>>),
    /// No covering by `λ` independent sets exists. `witness` is a set with
    /// `|witness| = λ · rank(witness) + 1`; it contains `blocked`, the
    /// element that could not be placed.
    Infeasible {
        blocked: ElementId,
        witness: Vec<ElementId>,
    },
}

struct Classes {
    sets: Vec<Vec<ElementId>>,
    class_of: Vec<Option<usize>>,
}

impl Classes {
    fn insert(&mut self, class: usize, e: ElementId) {
        let set = &mut self.sets[class];
        let at = set.partition_point(|&x| x < e);
        set.insert(at, e);
        self.class_of[e] = Some(class);
    }

    fn remove(&mut self, e: ElementId) {
        if let Some(class) = self.class_of[e].take() {
            let set = &mut self.sets[class];
            let at = set.partition_point(|&x| x < e);
            set.remove(at);
        }
    }
}

/// Builds `C + y` into `buf`, keeping it sorted.
fn exchange_set(buf: &mut Vec<ElementId>, class: &[ElementId], y: ElementId) {
    buf.clear();
    buf.extend_from_slice(class);
    let at = buf.partition_point(|&x| x < y);
    buf.insert(at, y);
}

fn query_union<O: IndependenceOracle + ?Sized>(
    oracle: &mut O,
    buf: &mut Vec<ElementId>,
    prefix: &[ElementId],
    required: &[ElementId],
) -> Result<bool> {
    buf.clear();
    buf.extend_from_slice(prefix);
    buf.extend_from_slice(required);
    buf.sort_unstable();
    oracle.query(buf)
}

/// Unseen elements `z` of `class` with `class - z + y` independent, given
/// that `class + y` is dependent. These are the unseen elements of the unique
/// circuit in `class + y`.
///
/// The class is ordered with seen elements first. The least `j` with
/// `order[..j] ∪ required` dependent puts `order[j - 1]` on the circuit, so
/// circuit elements are peeled off from the unseen end until the seen
/// prefix together with the peeled elements already closes the circuit.
fn exchange_arcs<O: IndependenceOracle + ?Sized>(
    oracle: &mut O,
    buf: &mut Vec<ElementId>,
    class: &[ElementId],
    y: ElementId,
    seen: &[bool],
) -> Result<Vec<ElementId>> {
    let mut order: Vec<ElementId> = class.iter().copied().filter(|&z| seen[z]).collect();
    let settled = order.len();
    order.extend(class.iter().copied().filter(|&z| !seen[z]));
    let mut required = vec![y];
    let mut arcs = Vec::new();
    let mut hi = order.len();
    // order[..hi] ∪ required is dependent throughout
    while hi > settled {
        if !query_union(oracle, buf, &order[..settled], &required)? {
            break;
        }
        let mut lo = settled;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if query_union(oracle, buf, &order[..mid], &required)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let z = order[hi - 1];
        required.push(z);
        arcs.push(z);
        hi -= 1;
    }
    Ok(arcs)
}

/// Partitions the ground set into `λ` independent classes by inserting the
/// elements one at a time along shortest augmenting paths of the exchange
/// graph, or reports that no such partition exists.
///
/// From an element `y`, class `i` is a sink when `C_i + y` is independent;
/// otherwise there is an arc `y -> z` for every `z ∈ C_i` with `C_i - z + y`
/// independent, found by [`exchange_arcs`]. Every probe has size at most
/// `|C_i| + 1`.
pub fn base_cover<O: IndependenceOracle + ?Sized>(oracle: &mut O, lambda: usize) -> Result<CoverOutcome> {
    if lambda == 0 {
        return Err(Error::Parameter("base cover needs at least one class".into()));
    }
    let n = oracle.ground_size();
    let mut classes = Classes {
        sets: vec![Vec::new(); lambda],
        class_of: vec![None; n],
    };
    let mut buf = Vec::new();
    let mut pred: Vec<Option<ElementId>> = vec![None; n];
    let mut seen = vec![false; n];

    for x in 0..n {
        let mut touched = vec![x];
        seen[x] = true;
        pred[x] = None;
        let mut queue = VecDeque::from([x]);
        let mut sink = None;

        'bfs: while let Some(y) = queue.pop_front() {
            let home = classes.class_of[y];
            for i in (0..lambda).filter(|&i| Some(i) != home) {
                exchange_set(&mut buf, &classes.sets[i], y);
                if oracle.query(&buf)? {
                    sink = Some((y, i));
                    break 'bfs;
                }
            }
            for i in (0..lambda).filter(|&i| Some(i) != home) {
                for z in exchange_arcs(oracle, &mut buf, &classes.sets[i], y, &seen)? {
                    seen[z] = true;
                    pred[z] = Some(y);
                    touched.push(z);
                    queue.push_back(z);
                }
            }
        }

        let Some((mut cur, mut target)) = sink else {
            touched.sort_unstable();
            return Ok(CoverOutcome::Infeasible {
                blocked: x,
                witness: touched,
            });
        };
        // Walk back along the path: each element moves into `target` and
        // frees its old class for its predecessor.
        loop {
            let vacated = classes.class_of[cur];
            classes.remove(cur);
            classes.insert(target, cur);
            match (pred[cur], vacated) {
                (Some(p), Some(old)) => {
                    cur = p;
                    target = old;
                }
                _ => break,
            }
        }
        for &e in &touched {
            seen[e] = false;
        }
    }
    Ok(CoverOutcome::Covered(classes.sets))
}

/// One `λ` test of the binary search.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaTest {
    pub lambda: usize,
    /// Truncation rank `⌈n/λ⌉`.
    pub cap: usize,
    pub feasible: bool,
    /// Queries that reached the metered oracle during this test.
    pub ledger: CostLedger,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    pub k: usize,
    /// `k` pairwise disjoint independent sets covering the ground set.
    pub parts: Vec<Vec<ElementId>>,
    pub ledger: CostLedger,
    pub tests: Vec<LambdaTest>,
}

/// Minimum number of independent sets partitioning the ground set.
///
/// Fails with [`Error::LoopElement`] when some element is dependent on its
/// own, since then no partition exists for any number of classes.
pub fn partition_size<M: Matroid>(oracle: &mut MeteredOracle<M>) -> Result<PartitionResult> {
    let n = oracle.ground_size();
    oracle.take_window();
    for e in 0..n {
        if !oracle.query(&[e])? {
            return Err(Error::LoopElement(e));
        }
    }
    let mut tests = Vec::new();
    if n == 0 {
        return Ok(PartitionResult {
            k: 0,
            parts: Vec::new(),
            ledger: oracle.ledger_snapshot(),
            tests,
        });
    }
    oracle.take_window();

    let mut run_test = |oracle: &mut MeteredOracle<M>, lambda: usize| -> Result<CoverOutcome> {
        let cap = n.div_ceil(lambda);
        let outcome = base_cover(&mut CappedOracle::new(&mut *oracle, cap), lambda)?;
        tests.push(LambdaTest {
            lambda,
            cap,
            feasible: matches!(outcome, CoverOutcome::Covered(_)),
            ledger: oracle.take_window(),
        });
        Ok(outcome)
    };

    let (mut lo, mut hi) = (1, n);
    let mut best: Option<Vec<Vec<ElementId>>> = None;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match run_test(oracle, mid)? {
            CoverOutcome::Covered(parts) => {
                hi = mid;
                best = Some(parts);
            }
            CoverOutcome::Infeasible { .. } => lo = mid + 1,
        }
    }
    let parts = match best {
        Some(parts) if parts.len() == hi => parts,
        _ => match run_test(oracle, hi)? {
            CoverOutcome::Covered(parts) => parts,
            CoverOutcome::Infeasible { blocked, .. } => {
                // Only reachable if the oracle is not a matroid.
                return Err(Error::LoopElement(blocked));
            }
        },
    };
    let parts: Vec<_> = parts.into_iter().filter(|p| !p.is_empty()).collect();
    Ok(PartitionResult {
        k: parts.len(),
        parts,
        ledger: oracle.ledger_snapshot(),
        tests,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FreeMatroid, GraphicMatroid, PartitionMatroid};
    use crate::oracle::CostModel;

    fn check_partition(n: usize, parts: &[Vec<ElementId>], m: &impl Matroid) {
        let mut all: Vec<_> = parts.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..n).collect::<Vec<_>>());
        for p in parts {
            assert!(m.is_independent(p), "{p:?}");
        }
    }

    #[test]
    fn cover_two_pairs() {
        let m = PartitionMatroid::new(&[vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
        let mut oracle = MeteredOracle::new(&m, CostModel::linear());
        match base_cover(&mut oracle, 2).unwrap() {
            CoverOutcome::Covered(parts) => check_partition(4, &parts, &m),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            base_cover(&mut oracle, 1).unwrap(),
            CoverOutcome::Infeasible { .. }
        ));
    }

    #[test]
    fn cover_free_with_one_class() {
        let mut oracle = MeteredOracle::new(FreeMatroid::new(5), CostModel::linear());
        assert_eq!(
            base_cover(&mut oracle, 1).unwrap(),
            CoverOutcome::Covered(vec![vec![0, 1, 2, 3, 4]])
        );
    }

    #[test]
    fn cover_with_loop_is_infeasible() {
        let m = GraphicMatroid::new(3, vec![(0, 1), (2, 2), (1, 2)]).unwrap();
        let mut oracle = MeteredOracle::new(m, CostModel::linear());
        for lambda in 1..=3 {
            match base_cover(&mut oracle, lambda).unwrap() {
                CoverOutcome::Infeasible { blocked, witness } => {
                    assert_eq!(blocked, 1);
                    assert_eq!(witness, vec![1]);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn partition_of_triples() {
        let m = PartitionMatroid::new(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]], vec![1; 3])
            .unwrap();
        let mut oracle = MeteredOracle::new(&m, CostModel::linear());
        let result = partition_size(&mut oracle).unwrap();
        assert_eq!(result.k, 3);
        check_partition(9, &result.parts, &m);
        for test in &result.tests {
            assert!(test.ledger.max_query_size <= 9usize.div_ceil(test.lambda));
        }
    }

    #[test]
    fn partition_reports_loops() {
        let m = GraphicMatroid::new(2, vec![(0, 1), (1, 1)]).unwrap();
        let mut oracle = MeteredOracle::new(m, CostModel::linear());
        assert_eq!(partition_size(&mut oracle), Err(Error::LoopElement(1)));
    }

    #[test]
    fn partition_of_empty_ground_set() {
        let mut oracle = MeteredOracle::new(FreeMatroid::new(0), CostModel::linear());
        assert_eq!(partition_size(&mut oracle).unwrap().k, 0);
    }

    #[test]
    fn capped_oracle_answers_large_queries_for_free() {
        let mut metered = MeteredOracle::new(FreeMatroid::new(5), CostModel::linear());
        let mut capped = CappedOracle::new(&mut metered, 2);
        assert!(!capped.query(&[0, 1, 2]).unwrap());
        assert!(capped.query(&[0, 1]).unwrap());
        assert!(capped.query(&[3, 1]).is_err());
        assert_eq!(metered.ledger_snapshot().query_count, 1);
    }
}
