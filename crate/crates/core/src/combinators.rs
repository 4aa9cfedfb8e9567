//! Matroid transformations: truncation, l-relaxation, the union of a free
//! matroid with a uniform matroid, and a strict element order derived from
//! weights.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::oracle::Matroid;
use crate::ElementId;

/// Independent sets of the base matroid of size at most `r`.
#[derive(Debug, Clone)]
pub struct Truncated<M> {
    base: M,
    r: usize,
}

/// Truncates `base` to rank `r`. The size check precedes the base query,
/// so the base never sees a set larger than `r`.
pub fn truncate<M: Matroid>(base: M, r: usize) -> Result<Truncated<M>> {
    if r > base.ground_size() {
        return Err(Error::Parameter(format!(
            "truncation rank {r} exceeds ground size {}",
            base.ground_size()
        )));
    }
    Ok(Truncated { base, r })
}

impl<M> Truncated<M> {
    pub fn rank_cap(&self) -> usize {
        self.r
    }

    pub fn base(&self) -> &M {
        &self.base
    }
}

impl<M: Matroid> Matroid for Truncated<M> {
    fn ground_size(&self) -> usize {
        self.base.ground_size()
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        set.len() <= self.r && self.base.is_independent(set)
    }

    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        self.base.subset_rank(set).map(|rank| rank.min(self.r))
    }
}

/// A set is independent iff deleting at most `l` of its elements leaves a
/// set independent in the base, evaluated as `rank_base(Q) >= |Q| - l`.
#[derive(Debug, Clone)]
pub struct LRelaxed<M> {
    base: M,
    l: usize,
}

/// Requires a base that exposes [`Matroid::subset_rank`].
pub fn l_relax<M: Matroid>(base: M, l: usize) -> Result<LRelaxed<M>> {
    if !base.supports_subset_rank() {
        return Err(Error::Unsupported(
            "l-relaxation needs a base matroid with a subset-rank procedure".into(),
        ));
    }
    Ok(LRelaxed { base, l })
}

impl<M> LRelaxed<M> {
    pub fn slack(&self) -> usize {
        self.l
    }

    pub fn base(&self) -> &M {
        &self.base
    }
}

impl<M: Matroid> LRelaxed<M> {
    fn base_rank(&self, set: &[ElementId]) -> usize {
        self.base
            .subset_rank(set)
            .expect("base rank support is checked at construction")
    }
}

impl<M: Matroid> Matroid for LRelaxed<M> {
    fn ground_size(&self) -> usize {
        self.base.ground_size()
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        set.len() <= self.l || self.base_rank(set) + self.l >= set.len()
    }

    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        Some(set.len().min(self.base_rank(set) + self.l))
    }
}

/// Union of the free matroid on `S` and the uniform matroid of rank `m` on
/// the complement `T`: `Q` is independent iff `|Q \ S| <= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeUniformUnion {
    in_free_part: Vec<bool>,
    m: usize,
}

pub fn free_uniform_union(n: usize, free_part: &[ElementId], m: usize) -> Result<FreeUniformUnion> {
    let mut in_free_part = vec![false; n];
    for &e in free_part {
        if e >= n {
            return Err(Error::Parameter(format!(
                "free-part element {e} outside ground set of size {n}"
            )));
        }
        in_free_part[e] = true;
    }
    Ok(FreeUniformUnion { in_free_part, m })
}

impl FreeUniformUnion {
    pub fn free_part(&self) -> Vec<ElementId> {
        (0..self.in_free_part.len())
            .filter(|&e| self.in_free_part[e])
            .collect()
    }

    pub fn uniform_rank(&self) -> usize {
        self.m
    }

    fn outside(&self, set: &[ElementId]) -> usize {
        set.iter().filter(|&&e| !self.in_free_part[e]).count()
    }
}

impl Matroid for FreeUniformUnion {
    fn ground_size(&self) -> usize {
        self.in_free_part.len()
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        self.outside(set) <= self.m
    }

    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        let outside = self.outside(set);
        Some(set.len() - outside + outside.min(self.m))
    }
}

/// Element weights with ties broken by element id, giving a strict total
/// order: `e` is heavier than `f` iff `(w_e, e) > (w_f, f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TieBrokenWeights {
    weights: Vec<f64>,
}

impl TieBrokenWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(e) = weights.iter().position(|w| w.is_nan()) {
            return Err(Error::Parameter(format!("weight of element {e} is NaN")));
        }
        Ok(Self { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, e: ElementId) -> f64 {
        self.weights[e]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn compare(&self, a: ElementId, b: ElementId) -> Ordering {
        self.weights[a]
            .total_cmp(&self.weights[b])
            .then(a.cmp(&b))
    }

    /// `elems` from heaviest to lightest.
    pub fn order_elements(&self, elems: &[ElementId]) -> Vec<ElementId> {
        let mut ordered = elems.to_vec();
        ordered.sort_unstable_by(|&a, &b| self.compare(b, a));
        ordered
    }

    pub fn total(&self, elems: &[ElementId]) -> f64 {
        elems.iter().map(|&e| self.weights[e]).sum()
    }
}
