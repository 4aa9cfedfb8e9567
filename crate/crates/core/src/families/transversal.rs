use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::oracle::Matroid;
use crate::ElementId;

/// Inclusive 1-based position range `[a, b]`.
pub type Interval = (usize, usize);

/// Convex transversal matroid: each element may be matched to any position
/// inside its interval, and a set is independent iff all of its elements
/// can be matched to distinct positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexTransversalMatroid {
    positions: usize,
    intervals: Vec<Interval>,
}

impl ConvexTransversalMatroid {
    pub fn new(positions: usize, intervals: Vec<Interval>) -> Result<Self> {
        if let Some(i) = intervals
            .iter()
            .position(|&(a, b)| a < 1 || a > b || b > positions)
        {
            let (a, b) = intervals[i];
            return Err(Error::Parameter(format!(
                "interval [{a}, {b}] of element {i} is not inside [1, {positions}]"
            )));
        }
        Ok(Self {
            positions,
            intervals,
        })
    }

    /// Simple job scheduling: element `x` may use any of the positions
    /// `1..=deadline[x]`.
    pub fn job_scheduling(positions: usize, deadlines: &[usize]) -> Result<Self> {
        Self::new(positions, deadlines.iter().map(|&d| (1, d)).collect())
    }

    pub fn positions(&self) -> usize {
        self.positions
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }
}

/// Free positions stored as maximal runs `start -> end`.
struct FreeRuns(BTreeMap<usize, usize>);

impl FreeRuns {
    fn new(last: usize) -> Self {
        let mut runs = BTreeMap::new();
        if last >= 1 {
            runs.insert(1, last);
        }
        Self(runs)
    }

    /// Takes the smallest free position inside `[a, b]`, if any.
    fn take(&mut self, a: usize, b: usize) -> Option<usize> {
        let run = match self.0.range(..=a).next_back() {
            Some((&start, &end)) if end >= a => Some((start, end)),
            _ => self.0.range(a..).next().map(|(&s, &e)| (s, e)),
        }?;
        let (start, end) = run;
        let pos = start.max(a);
        if pos > b {
            return None;
        }
        self.0.remove(&start);
        if start < pos {
            self.0.insert(start, pos - 1);
        }
        if pos < end {
            self.0.insert(pos + 1, end);
        }
        Some(pos)
    }
}

impl Matroid for ConvexTransversalMatroid {
    fn ground_size(&self) -> usize {
        self.intervals.len()
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        if set.len() > self.positions {
            return false;
        }
        let mut jobs: Vec<Interval> = set.iter().map(|&x| self.intervals[x]).collect();
        jobs.sort_unstable_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)));
        let mut free = FreeRuns::new(self.positions);
        jobs.into_iter().all(|(a, b)| free.take(a, b).is_some())
    }
}
