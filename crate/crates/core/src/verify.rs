//! Exhaustive ground truth for small ground sets: every subset's verdict is
//! materialized as a bitmask-indexed table and the matroid quantities are
//! read off by enumeration.

use crate::combinators::TieBrokenWeights;
use crate::error::{Error, Result};
use crate::oracle::Matroid;
use crate::ElementId;

pub const MAX_GROUND: usize = 20;
pub const MAX_PARTITION_GROUND: usize = 14;
pub const MAX_AXIOM_GROUND: usize = 14;
pub const MAX_CIRCUMFERENCE_GROUND: usize = 16;

pub fn mask_to_set(mask: u32) -> Vec<ElementId> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn set_to_mask(set: &[ElementId]) -> u32 {
    set.iter().fold(0, |mask, &e| mask | 1 << e)
}

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Independence verdicts for all `2^n` subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamilyOracle {
    n: usize,
    independent: Vec<bool>,
}

impl SubsetFamilyOracle {
    /// Asks the matroid about every subset.
    pub fn materialize<M: Matroid + ?Sized>(matroid: &M) -> Result<Self> {
        let n = matroid.ground_size();
        check_size(n, MAX_GROUND)?;
        let mut set = Vec::with_capacity(n);
        let independent = (0..1u32 << n)
            .map(|mask| {
                set.clear();
                set.extend((0..n).filter(|&i| mask >> i & 1 == 1));
                matroid.is_independent(&set)
            })
            .collect();
        Ok(Self { n, independent })
    }

    /// Like [`materialize`](Self::materialize) but trusts downward closure:
    /// a subset with a dependent one-smaller subset is marked dependent
    /// without asking the matroid.
    pub fn materialize_pruned<M: Matroid + ?Sized>(matroid: &M) -> Result<Self> {
        let n = matroid.ground_size();
        check_size(n, MAX_GROUND)?;
        let mut independent = vec![false; 1 << n];
        let mut set = Vec::with_capacity(n);
        for mask in 0..1u32 << n {
            let closed = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .all(|i| independent[(mask ^ 1 << i) as usize]);
            if closed {
                set.clear();
                set.extend((0..n).filter(|&i| mask >> i & 1 == 1));
                independent[mask as usize] = matroid.is_independent(&set);
            }
        }
        Ok(Self { n, independent })
    }

    /// An explicit set system; the listed sets are independent, nothing else is.
    pub fn from_sets(n: usize, sets: &[Vec<ElementId>]) -> Result<Self> {
        check_size(n, MAX_GROUND)?;
        let mut independent = vec![false; 1 << n];
        for set in sets {
            if let Some(&e) = set.iter().find(|&&e| e >= n) {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    ground_size: n,
                });
            }
            independent[set_to_mask(set) as usize] = true;
        }
        Ok(Self { n, independent })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn is_independent_mask(&self, mask: u32) -> bool {
        self.independent[mask as usize]
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// `rank[mask]` for every mask: the size of the largest listed subset.
    fn rank_table(&self) -> Vec<u8> {
        let mut rank = vec![0u8; 1 << self.n];
        for mask in 1..=self.full() {
            rank[mask as usize] = if self.independent[mask as usize] {
                mask.count_ones() as u8
            } else {
                (0..self.n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| rank[(mask ^ 1 << i) as usize])
                    .max()
                    .unwrap_or(0)
            };
        }
        rank
    }
}

impl Matroid for SubsetFamilyOracle {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        self.independent[set_to_mask(set) as usize]
    }
}

/// Largest independent set size.
pub fn bf_rank<M: Matroid + ?Sized>(matroid: &M) -> Result<usize> {
    let family = SubsetFamilyOracle::materialize_pruned(matroid)?;
    Ok(family_rank(&family))
}

pub fn family_rank(family: &SubsetFamilyOracle) -> usize {
    (0..=family.full())
        .filter(|&mask| family.is_independent_mask(mask))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Minimum number of independent sets partitioning the ground set, with one
/// optimal partition. Fails with [`Error::LoopElement`] if none exists.
pub fn bf_partition<M: Matroid + ?Sized>(matroid: &M) -> Result<(usize, Vec<Vec<ElementId>>)> {
    let n = matroid.ground_size();
    check_size(n, MAX_PARTITION_GROUND)?;
    let family = SubsetFamilyOracle::materialize_pruned(matroid)?;
    if let Some(e) = (0..n).find(|&e| !family.is_independent_mask(1 << e)) {
        return Err(Error::LoopElement(e));
    }
    const UNSET: u8 = u8::MAX;
    // best[mask]: fewest independent blocks partitioning `mask`;
    // choice[mask]: the block holding the lowest element of `mask`.
    let mut best = vec![UNSET; 1 << n];
    let mut choice = vec![0u32; 1 << n];
    best[0] = 0;
    for mask in 1..=family.full() {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let block = sub | low;
            if family.is_independent_mask(block) {
                let prior = best[(mask ^ block) as usize];
                if prior != UNSET && prior + 1 < best[mask as usize] {
                    best[mask as usize] = prior + 1;
                    choice[mask as usize] = block;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut parts = Vec::new();
    let mut mask = family.full();
    while mask != 0 {
        parts.push(mask_to_set(choice[mask as usize]));
        mask ^= choice[mask as usize];
    }
    Ok((best[family.full() as usize] as usize, parts))
}

pub fn bf_partition_size<M: Matroid + ?Sized>(matroid: &M) -> Result<usize> {
    bf_partition(matroid).map(|(k, _)| k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    EmptySetDependent,
    /// `set` is independent but its subset `missing` is not.
    NotDownwardClosed {
        set: Vec<ElementId>,
        missing: Vec<ElementId>,
    },
    /// `smaller` and `larger` are independent, `|smaller| < |larger|`, and no
    /// element of `larger \ smaller` extends `smaller`.
    Exchange {
        smaller: Vec<ElementId>,
        larger: Vec<ElementId>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomVerdict {
    Pass,
    Fail(AxiomViolation),
}

impl AxiomVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomVerdict::Pass)
    }
}

/// Checks non-emptiness, downward closure and the exchange property on
/// every subset without assuming any of them.
pub fn check_matroid_axioms<M: Matroid + ?Sized>(matroid: &M) -> Result<AxiomVerdict> {
    check_size(matroid.ground_size(), MAX_AXIOM_GROUND)?;
    let family = SubsetFamilyOracle::materialize(matroid)?;
    Ok(check_family_axioms(&family))
}

pub fn check_family_axioms(family: &SubsetFamilyOracle) -> AxiomVerdict {
    let n = family.ground_size();
    let full = family.full();
    if !family.is_independent_mask(0) {
        return AxiomVerdict::Fail(AxiomViolation::EmptySetDependent);
    }
    for mask in 1..=full {
        if !family.is_independent_mask(mask) {
            continue;
        }
        if let Some(i) = (0..n).find(|&i| mask >> i & 1 == 1 && !family.is_independent_mask(mask ^ 1 << i)) {
            return AxiomVerdict::Fail(AxiomViolation::NotDownwardClosed {
                set: mask_to_set(mask),
                missing: mask_to_set(mask ^ 1 << i),
            });
        }
    }
    // With downward closure, exchange fails at an independent I exactly when
    // the elements that do not extend I, together with I, hold an
    // independent set larger than I.
    let rank = family.rank_table();
    for small in 0..=full {
        if !family.is_independent_mask(small) {
            continue;
        }
        let blocked = (0..n)
            .filter(|&i| small >> i & 1 == 0 && !family.is_independent_mask(small | 1 << i))
            .fold(0u32, |acc, i| acc | 1 << i);
        let region = small | blocked;
        let size = small.count_ones();
        if rank[region as usize] as u32 > size {
            let mut sub = region;
            loop {
                if sub.count_ones() == size + 1 && family.is_independent_mask(sub) {
                    return AxiomVerdict::Fail(AxiomViolation::Exchange {
                        smaller: mask_to_set(small),
                        larger: mask_to_set(sub),
                    });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & region;
            }
            unreachable!("rank table promised a larger independent subset");
        }
    }
    AxiomVerdict::Pass
}

/// Largest circuit size, 0 when every set is independent.
pub fn bf_circumference<M: Matroid + ?Sized>(matroid: &M) -> Result<usize> {
    let n = matroid.ground_size();
    check_size(n, MAX_CIRCUMFERENCE_GROUND)?;
    let family = SubsetFamilyOracle::materialize_pruned(matroid)?;
    Ok((1..=family.full())
        .filter(|&mask| {
            !family.is_independent_mask(mask)
                && (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .all(|i| family.is_independent_mask(mask ^ 1 << i))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Maximum-weight basis by enumerating all bases. Ties in total weight go to
/// the basis whose heaviest-first element sequence is larger in the
/// tie-broken order.
pub fn bf_max_weight_basis<M: Matroid + ?Sized>(
    matroid: &M,
    weights: &TieBrokenWeights,
) -> Result<Vec<ElementId>> {
    let n = matroid.ground_size();
    if weights.len() != n {
        return Err(Error::Parameter(format!(
            "{} weights for a ground set of size {n}",
            weights.len()
        )));
    }
    let family = SubsetFamilyOracle::materialize_pruned(matroid)?;
    let rank = family_rank(&family);
    let mut best: Option<(f64, Vec<ElementId>)> = None;
    for mask in 0..=family.full() {
        if mask.count_ones() as usize != rank || !family.is_independent_mask(mask) {
            continue;
        }
        let set = mask_to_set(mask);
        let total = weights.total(&set);
        let better = match &best {
            None => true,
            Some((best_total, best_set)) => {
                total > *best_total
                    || (total == *best_total && lexicographically_heavier(weights, &set, best_set))
            }
        };
        if better {
            best = Some((total, set));
        }
    }
    Ok(best.map(|(_, set)| set).unwrap_or_default())
}

fn lexicographically_heavier(weights: &TieBrokenWeights, a: &[ElementId], b: &[ElementId]) -> bool {
    let a = weights.order_elements(a);
    let b = weights.order_elements(b);
    for (&x, &y) in a.iter().zip(&b) {
        match weights.compare(x, y) {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}
