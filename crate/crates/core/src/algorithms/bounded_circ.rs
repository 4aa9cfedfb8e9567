//! Maximum-weight basis for matroids whose circuits all have at most `c`
//! elements.
//!
//! Starting from `B = E`, each round samples `S ⊆ B` with rate `n^(-1/c)`.
//! While `S` is dependent, the lightest element of the shortest dependent
//! heaviest-first prefix of `S` is the lightest element of some circuit, so
//! it cannot be in the maximum-weight basis and is dropped from both `S` and
//! `B`. A final pass applies the same removal to `B` until it is
//! independent. Output correctness never depends on `c`; only the cost does.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use super::greedy::BasisResult;
use super::query_unordered;
use crate::combinators::TieBrokenWeights;
use crate::error::{Error, Result};
use crate::oracle::{IndependenceOracle, Matroid, MeteredOracle};
use crate::ElementId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedCircParams {
    /// Circumference bound.
    pub c: u32,
    pub seed: u64,
}

impl BoundedCircParams {
    pub fn new(c: u32, seed: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::Parameter("circumference bound must be at least 1".into()));
        }
        Ok(Self { c, seed })
    }

    /// `n^(-1/c)`, which is 1 for `n <= 1`.
    pub fn sampling_probability(&self, n: usize) -> f64 {
        if n <= 1 {
            1.0
        } else {
            (n as f64).powf(-1.0 / self.c as f64)
        }
    }

    /// `⌈n ln n⌉` sampling rounds.
    pub fn rounds(&self, n: usize) -> u64 {
        if n <= 1 {
            0
        } else {
            let n = n as f64;
            (n * n.ln()).ceil() as u64
        }
    }
}

/// Smallest `j` such that the first `j` elements of `ordered` form a
/// dependent set, or `None` when all of `ordered` is independent.
///
/// Probes the whole list first and then binary-searches over full prefixes,
/// so it issues at most `1 + ⌈log2 L⌉` queries.
pub fn min_dependent_prefix<O: IndependenceOracle + ?Sized>(
    oracle: &mut O,
    ordered: &[ElementId],
) -> Result<Option<usize>> {
    let mut scratch = Vec::with_capacity(ordered.len());
    if query_unordered(oracle, ordered, &mut scratch)? {
        return Ok(None);
    }
    // prefix `lo` is independent, prefix `hi` is dependent
    let (mut lo, mut hi) = (0, ordered.len());
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if query_unordered(oracle, &ordered[..mid], &mut scratch)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(hi))
}

/// Drops lightest circuit elements from `sample` (heaviest first) until it is
/// independent; returns the dropped elements in removal order.
fn purge<O: IndependenceOracle + ?Sized>(
    oracle: &mut O,
    sample: &mut Vec<ElementId>,
    scratch: &mut Vec<ElementId>,
) -> Result<Vec<ElementId>> {
    let mut dropped = Vec::new();
    while !query_unordered(oracle, sample, scratch)? {
        let j = min_dependent_prefix(oracle, sample)?
            .expect("a dependent set has a dependent prefix");
        dropped.push(sample.remove(j - 1));
    }
    Ok(dropped)
}

pub fn max_weight_basis_bounded_circ<M: Matroid>(
    oracle: &mut MeteredOracle<M>,
    weights: &TieBrokenWeights,
    params: BoundedCircParams,
) -> Result<BasisResult> {
    let n = oracle.ground_size();
    if weights.len() != n {
        return Err(Error::Parameter(format!(
            "{} weights for a ground set of size {n}",
            weights.len()
        )));
    }
    let all: Vec<ElementId> = (0..n).collect();
    // `remaining` stays sorted heaviest first, and so does every sample.
    let mut remaining = weights.order_elements(&all);
    let mut alive = vec![true; n];
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let gaps = Geometric::new(params.sampling_probability(n))
        .map_err(|e| Error::Parameter(e.to_string()))?;
    let mut scratch = Vec::new();
    let mut sample = Vec::new();

    for _ in 0..params.rounds(n) {
        sample.clear();
        let mut at = gaps.sample(&mut rng);
        while at < remaining.len() as u64 {
            sample.push(remaining[at as usize]);
            at += 1 + gaps.sample(&mut rng);
        }
        let dropped = purge(oracle, &mut sample, &mut scratch)?;
        if !dropped.is_empty() {
            for &d in &dropped {
                alive[d] = false;
            }
            remaining.retain(|&e| alive[e]);
        }
    }

    purge(oracle, &mut remaining, &mut scratch)?;
    Ok(BasisResult::new(remaining, oracle))
}
