
use crate::error::{Error, Result};
use crate::oracle::Matroid;
use crate::ElementId;

/// Partition matroid: `I` is independent iff `|I ∩ E_j| <= c_j` for every
/// part `j`. A part with capacity 0 turns each of its elements into a loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    part_of: Vec<usize>,
    capacities: Vec<usize>,
}

impl PartitionMatroid {
    /// Builds the matroid from explicit parts, which must cover `0..n`
    /// exactly once.
    pub fn new(parts: &[Vec<ElementId>], capacities: Vec<usize>) -> Result<Self> {
        if parts.len() != capacities.len() {
            return Err(Error::Parameter(format!(
                "{} parts but {} capacities",
                parts.len(),
                capacities.len()
            )));
        }
        let n: usize = parts.iter().map(Vec::len).sum();
        let mut part_of = vec![usize::MAX; n];
        for (j, part) in parts.iter().enumerate() {
            for &e in part {
                if e >= n {
                    return Err(Error::Parameter(format!(
                        "element {e} out of range for a ground set of size {n}"
                    )));
                }
                if part_of[e] != usize::MAX {
                    return Err(Error::Parameter(format!("element {e} appears in two parts")));
                }
                part_of[e] = j;
            }
        }
        Ok(Self {
            part_of,
            capacities,
        })
    }

    /// Builds the matroid from an element → part assignment.
    pub fn from_assignment(part_of: Vec<usize>, capacities: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = part_of.iter().find(|&&j| j >= capacities.len()) {
            return Err(Error::Parameter(format!(
                "part index {bad} has no capacity"
            )));
        }
        Ok(Self {
            part_of,
            capacities,
        })
    }

    pub fn part_of(&self, e: ElementId) -> usize {
        self.part_of[e]
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }

    /// `(part, count)` for every part that `set` meets.
    fn part_counts(&self, set: &[ElementId]) -> impl Iterator<Item = (usize, usize)> {
        let mut ids: Vec<usize> = set.iter().map(|&e| self.part_of[e]).collect();
        ids.sort_unstable();
        let mut at = 0;
        std::iter::from_fn(move || {
            let j = *ids.get(at)?;
            let start = at;
            while ids.get(at) == Some(&j) {
                at += 1;
            }
            Some((j, at - start))
        })
    }

    pub fn parts(&self) -> Vec<Vec<ElementId>> {
        let mut parts = vec![Vec::new(); self.capacities.len()];
        for (e, &j) in self.part_of.iter().enumerate() {
            parts[j].push(e);
        }
        parts
    }
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.part_of.len()
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        self.part_counts(set).all(|(j, d)| d <= self.capacities[j])
    }

    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        Some(
            self.part_counts(set)
                .map(|(j, d)| d.min(self.capacities[j]))
                .sum(),
        )
    }
}
