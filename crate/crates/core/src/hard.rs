//! Lower-bound instance families, their witness predicates, exhaustive
//! witness counting at small sizes, and the base `γ(α)` of the
//! witness-scarcity bound.
//!
//! Rank family: on `[3m]` with a secret `m`-set `S`, `M` is the union of the
//! free matroid on `S` with the rank-`m` uniform matroid on the complement;
//! `M'` truncates it to rank `2m - εm`.
//!
//! Partition family: on `[(α+1)m]` with a secret partition into `m` parts of
//! size `α + 1`, `Q` is the `m/α`-relaxation of the one-per-part partition
//! matroid; `Q'` truncates it to rank `m + m/α - 1`.

use std::sync::Arc;

use num_integer::binomial;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinators::{free_uniform_union, l_relax, truncate};
use crate::error::{Error, Result};
use crate::families::PartitionMatroid;
use crate::oracle::{Matroid, SharedMatroid};
use crate::ElementId;

/// Largest ground set for which rank-family witness counts are enumerated.
pub const RANK_COUNT_LIMIT: usize = 18;
/// Largest ground set for which partition-family witness counts are enumerated.
pub const PARTITION_COUNT_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankHardParams {
    pub m: usize,
    /// `εm`, the rank deficit of the truncated instance.
    pub eps_times_m: usize,
    pub truncated: bool,
}

impl RankHardParams {
    pub fn new(m: usize, eps_times_m: usize, truncated: bool) -> Result<Self> {
        if m == 0 || eps_times_m == 0 || eps_times_m >= m {
            return Err(Error::Parameter(format!(
                "rank family needs m >= 1 and 0 < εm < m (got m = {m}, εm = {eps_times_m})"
            )));
        }
        Ok(Self {
            m,
            eps_times_m,
            truncated,
        })
    }

    /// Converts a fractional `ε`, which must make `εm` integral.
    pub fn from_epsilon(m: usize, epsilon: f64, truncated: bool) -> Result<Self> {
        let scaled = epsilon * m as f64;
        let rounded = scaled.round();
        if !(epsilon > 0.0 && epsilon < 1.0) || (scaled - rounded).abs() > 1e-9 {
            return Err(Error::Parameter(format!(
                "ε = {epsilon} with m = {m} does not give an integral εm in (0, m)"
            )));
        }
        Self::new(m, rounded as usize, truncated)
    }

    pub fn ground_size(&self) -> usize {
        3 * self.m
    }

    pub fn rank(&self) -> usize {
        if self.truncated {
            2 * self.m - self.eps_times_m
        } else {
            2 * self.m
        }
    }

    /// Queries of at most this size are independent in every instance.
    pub fn useful_threshold(&self) -> usize {
        self.m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionHardParams {
    pub m: usize,
    pub alpha: usize,
    pub truncated: bool,
}

impl PartitionHardParams {
    pub fn new(m: usize, alpha: usize, truncated: bool) -> Result<Self> {
        if m == 0 || alpha == 0 || !m.is_multiple_of(alpha) {
            return Err(Error::Parameter(format!(
                "partition family needs α to divide m (got m = {m}, α = {alpha})"
            )));
        }
        Ok(Self {
            m,
            alpha,
            truncated,
        })
    }

    pub fn ground_size(&self) -> usize {
        (self.alpha + 1) * self.m
    }

    /// The relaxation slack `m/α`.
    pub fn slack(&self) -> usize {
        self.m / self.alpha
    }

    pub fn rank(&self) -> usize {
        let full = self.m + self.slack();
        if self.truncated {
            full - 1
        } else {
            full
        }
    }

    pub fn useful_threshold(&self) -> usize {
        self.slack()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HardParams {
    Rank(RankHardParams),
    Partition(PartitionHardParams),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Secret {
    /// The free part `S`, sorted.
    Set(Vec<ElementId>),
    /// Parts sorted internally and ordered by their smallest element.
    Partition(Vec<Vec<ElementId>>),
}

/// A realized lower-bound instance together with its secret.
#[derive(Clone)]
pub struct HardInstance {
    pub params: HardParams,
    pub secret: Secret,
    pub matroid: SharedMatroid,
}

impl HardInstance {
    pub fn ground_size(&self) -> usize {
        self.matroid.ground_size()
    }

    pub fn useful_threshold(&self) -> usize {
        match self.params {
            HardParams::Rank(p) => p.useful_threshold(),
            HardParams::Partition(p) => p.useful_threshold(),
        }
    }
}

impl std::fmt::Debug for HardInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HardInstance")
            .field("params", &self.params)
            .field("secret", &self.secret)
            .finish_non_exhaustive()
    }
}

/// Builds `M_{m,S}` or `M'_{m,S,ε}` for a given secret set.
pub fn rank_instance(params: RankHardParams, secret: &[ElementId]) -> Result<HardInstance> {
    let n = params.ground_size();
    let mut secret = secret.to_vec();
    secret.sort_unstable();
    secret.dedup();
    if secret.len() != params.m || secret.iter().any(|&e| e >= n) {
        return Err(Error::Parameter(format!(
            "secret must be an {}-subset of 0..{n}",
            params.m
        )));
    }
    let union = free_uniform_union(n, &secret, params.m)?;
    let matroid: SharedMatroid = if params.truncated {
        Arc::new(truncate(union, params.rank())?)
    } else {
        Arc::new(union)
    };
    Ok(HardInstance {
        params: HardParams::Rank(params),
        secret: Secret::Set(secret),
        matroid,
    })
}

/// Draws `S` uniformly from the `m`-subsets of `[3m]`.
pub fn sample_rank_instance<R: Rng + ?Sized>(params: RankHardParams, rng: &mut R) -> Result<HardInstance> {
    let secret = index::sample(rng, params.ground_size(), params.m).into_vec();
    rank_instance(params, &secret)
}

fn canonical_partition(mut parts: Vec<Vec<ElementId>>) -> Vec<Vec<ElementId>> {
    for part in &mut parts {
        part.sort_unstable();
    }
    parts.sort_unstable_by_key(|p| p.first().copied());
    parts
}

/// Builds `Q_{m,α,S}` or `Q'_{m,α,S}` for a given secret partition.
pub fn partition_instance(params: PartitionHardParams, parts: &[Vec<ElementId>]) -> Result<HardInstance> {
    let n = params.ground_size();
    if parts.len() != params.m || parts.iter().any(|p| p.len() != params.alpha + 1) {
        return Err(Error::Parameter(format!(
            "secret must split 0..{n} into {} parts of size {}",
            params.m,
            params.alpha + 1
        )));
    }
    let parts = canonical_partition(parts.to_vec());
    let base = PartitionMatroid::new(&parts, vec![1; params.m])?;
    let relaxed = l_relax(base, params.slack())?;
    let matroid: SharedMatroid = if params.truncated {
        Arc::new(truncate(relaxed, params.rank())?)
    } else {
        Arc::new(relaxed)
    };
    Ok(HardInstance {
        params: HardParams::Partition(params),
        secret: Secret::Partition(parts),
        matroid,
    })
}

/// Shuffles the ground set and cuts it into `m` blocks of size `α + 1`,
/// which is uniform over unordered equal partitions.
pub fn sample_partition_instance<R: Rng + ?Sized>(
    params: PartitionHardParams,
    rng: &mut R,
) -> Result<HardInstance> {
    let mut elems: Vec<ElementId> = (0..params.ground_size()).collect();
    elems.shuffle(rng);
    let parts: Vec<Vec<ElementId>> = elems
        .chunks(params.alpha + 1)
        .map(<[ElementId]>::to_vec)
        .collect();
    partition_instance(params, &parts)
}

/// `W` is a rank witness for `S` iff `|W| > 2m - εm` and `|W \ S| <= m`.
pub fn is_rank_witness(w: &[ElementId], secret: &[ElementId], m: usize, eps_times_m: usize) -> bool {
    let outside = w.iter().filter(|e| !secret.contains(e)).count();
    w.len() + eps_times_m > 2 * m && outside <= m
}

/// `W` is a partition witness iff `|W| = m + m/α` and `W` meets every part.
pub fn is_partition_witness(w: &[ElementId], parts: &[Vec<ElementId>], m: usize, alpha: usize) -> bool {
    w.len() == m + m / alpha && parts.iter().all(|p| p.iter().any(|e| w.contains(e)))
}

/// `γ(α) = (1 + 1/α)^(α - 1 - 1/α) · (1/α)^(1/α)`.
pub fn gamma(alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 1.0 {
        return Err(Error::Parameter(format!("γ needs α >= 1, got {alpha}")));
    }
    let inv = 1.0 / alpha;
    Ok((1.0 + inv).powf(alpha - 1.0 - inv) * inv.powf(inv))
}

/// Calls `visit` with every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[ElementId])) {
    if k > n {
        return;
    }
    let mut current: Vec<ElementId> = (0..k).collect();
    loop {
        visit(&current);
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            return;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Number of secrets `S` for which `W` is a rank witness, by enumerating all
/// `m`-subsets of `[3m]`.
pub fn count_rank_witness_sets(w: &[ElementId], m: usize, eps_times_m: usize) -> Result<u64> {
    let n = 3 * m;
    if n > RANK_COUNT_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: RANK_COUNT_LIMIT,
        });
    }
    let mut count = 0;
    for_each_subset(n, m, |secret| {
        if is_rank_witness(w, secret, m, eps_times_m) {
            count += 1;
        }
    });
    Ok(count)
}

/// Closed-form bound `C(2m - δm, m - δm) · C(2m + δm, δm)` on the number of
/// secrets for a witness of size `2m - δm`. Sets larger than `2m` are never
/// witnesses, so their bound is 0.
pub fn rank_witness_count_bound(m: usize, witness_size: usize) -> u128 {
    if witness_size > 2 * m {
        return 0;
    }
    let deficit = 2 * m - witness_size;
    if deficit > m {
        return binomial(3 * m as u128, m as u128);
    }
    binomial((2 * m - deficit) as u128, (m - deficit) as u128)
        * binomial((2 * m + deficit) as u128, deficit as u128)
}

/// Calls `visit` with every partition of `0..n` into blocks of `block` elements.
pub fn for_each_equal_partition(n: usize, block: usize, mut visit: impl FnMut(&[Vec<ElementId>])) {
    fn recurse(
        free: &mut Vec<ElementId>,
        block: usize,
        parts: &mut Vec<Vec<ElementId>>,
        visit: &mut dyn FnMut(&[Vec<ElementId>]),
    ) {
        if free.is_empty() {
            visit(parts);
            return;
        }
        let first = free.remove(0);
        let rest = free.clone();
        for_each_subset(rest.len(), block - 1, |picks| {
            let mut part = vec![first];
            part.extend(picks.iter().map(|&i| rest[i]));
            let mut remaining: Vec<ElementId> = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| !picks.contains(i))
                .map(|(_, &e)| e)
                .collect();
            parts.push(part);
            recurse(&mut remaining, block, parts, visit);
            parts.pop();
        });
        free.insert(0, first);
    }
    if block == 0 || !n.is_multiple_of(block) {
        return;
    }
    let mut free: Vec<ElementId> = (0..n).collect();
    recurse(&mut free, block, &mut Vec::new(), &mut visit);
}

/// Number of equal partitions for which `W` is a partition witness.
pub fn count_partition_witness_partitions(w: &[ElementId], m: usize, alpha: usize) -> Result<u64> {
    PartitionHardParams::new(m, alpha, false)?;
    let n = (alpha + 1) * m;
    if n > PARTITION_COUNT_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: PARTITION_COUNT_LIMIT,
        });
    }
    if let Some(&e) = w.iter().find(|&&e| e >= n) {
        return Err(Error::Parameter(format!("element {e} outside a ground set of size {n}")));
    }
    if w.len() != m + m / alpha {
        return Ok(0);
    }
    let w_mask: u32 = w.iter().map(|&e| 1u32 << e).sum();
    Ok(count_covering_partitions(((1u64 << n) - 1) as u32, alpha + 1, w_mask))
}

/// Partitions of `free` into blocks of size `block` in which every block
/// meets `w_mask`.
fn count_covering_partitions(free: u32, block: usize, w_mask: u32) -> u64 {
    if free == 0 {
        return 1;
    }
    let low = free & free.wrapping_neg();
    let rest = free ^ low;
    let mut count = 0;
    let mut sub = rest;
    loop {
        let part = sub | low;
        if sub.count_ones() as usize == block - 1 && part & w_mask != 0 {
            count += count_covering_partitions(free ^ part, block, w_mask);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    count
}

fn factorial(k: u128) -> u128 {
    (1..=k).product()
}

/// `m! · C(m + m/α, m) · (αm)! / (α!)^m`.
pub fn partition_witness_count_bound(m: usize, alpha: usize) -> u128 {
    let (m, alpha) = (m as u128, alpha as u128);
    let multinomial = factorial(alpha * m) / factorial(alpha).pow(m as u32);
    factorial(m) * binomial(m + m / alpha, m) * multinomial
}

/// Number of unordered partitions of `(α+1)m` elements into `m` blocks of
/// size `α + 1`.
pub fn equal_partition_count(m: usize, alpha: usize) -> u128 {
    let (m, block) = (m as u128, alpha as u128 + 1);
    factorial(block * m) / (factorial(block).pow(m as u32) * factorial(m))
}
