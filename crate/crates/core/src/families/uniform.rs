use crate::error::{Error, Result};
use crate::oracle::Matroid;
use crate::ElementId;

/// `U_{r,n}`: every set of size at most `r` is independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMatroid {
    n: usize,
    r: usize,
}

impl UniformMatroid {
    /// Panics if `r > n`; use [`UniformMatroid::try_new`] for untrusted input.
    pub fn new(n: usize, r: usize) -> Self {
        Self::try_new(n, r).expect("uniform rank exceeds ground size")
    }

    pub fn try_new(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::Parameter(format!(
                "uniform rank {r} exceeds ground size {n}"
            )));
        }
        Ok(Self { n, r })
    }

    pub fn rank_bound(&self) -> usize {
        self.r
    }
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        set.len() <= self.r
    }

    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        Some(set.len().min(self.r))
    }
}

/// The free matroid: every subset is independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeMatroid {
    n: usize,
}

impl FreeMatroid {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl Matroid for FreeMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_independent(&self, _set: &[ElementId]) -> bool {
        true
    }

    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        Some(set.len())
    }
}
