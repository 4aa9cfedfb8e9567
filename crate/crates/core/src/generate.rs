//! Seeded generation of instance descriptors, shared by the CLI and the
//! benchmark runner.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::families::random::{parallel_pairs, random_intervals, random_multigraph, random_partition};
use crate::hard::{sample_partition_instance, sample_rank_instance, PartitionHardParams, RankHardParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    GraphicRandom,
    BicircularRandom,
    ParallelPairs,
    PartitionRandom,
    TransversalRandom,
    Uniform,
    Free,
    RankHard,
    PartitionHard,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::GraphicRandom,
        FamilyKind::BicircularRandom,
        FamilyKind::ParallelPairs,
        FamilyKind::PartitionRandom,
        FamilyKind::TransversalRandom,
        FamilyKind::Uniform,
        FamilyKind::Free,
        FamilyKind::RankHard,
        FamilyKind::PartitionHard,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::GraphicRandom => "graphic-random",
            FamilyKind::BicircularRandom => "bicircular-random",
            FamilyKind::ParallelPairs => "parallel-pairs",
            FamilyKind::PartitionRandom => "partition-random",
            FamilyKind::TransversalRandom => "transversal-random",
            FamilyKind::Uniform => "uniform",
            FamilyKind::Free => "free",
            FamilyKind::RankHard => "rank-hard",
            FamilyKind::PartitionHard => "partition-hard",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = FamilyKind::ALL.iter().map(|k| k.name()).collect();
                Error::Parameter(format!("unknown family `{s}` (known: {})", known.join(", ")))
            })
    }
}

/// Family-specific parameters; unset fields fall back to defaults derived
/// from the ground-set size.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GenParams {
    pub n: Option<usize>,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub positions: Option<usize>,
    pub parts: Option<usize>,
    pub max_capacity: Option<usize>,
    pub r: Option<usize>,
    pub m: Option<usize>,
    pub epsilon: Option<f64>,
    pub alpha: Option<usize>,
    /// `None` flips a fair coin.
    pub truncated: Option<bool>,
}

impl GenParams {
    /// Parameters that make `kind` produce a ground set of about `n` elements.
    pub fn for_size(kind: FamilyKind, n: usize) -> Self {
        let mut params = GenParams {
            n: Some(n),
            ..GenParams::default()
        };
        match kind {
            FamilyKind::RankHard => params.m = Some((n / 3).max(2)),
            FamilyKind::PartitionHard => {
                let alpha = 3;
                params.alpha = Some(alpha);
                params.m = Some(((n / (alpha + 1)) / alpha).max(1) * alpha);
            }
            _ => {}
        }
        params
    }
}

fn require(value: Option<usize>, name: &str) -> Result<usize> {
    value.ok_or_else(|| Error::Parameter(format!("missing parameter --{name}")))
}

/// Draws one instance of `kind`.
pub fn generate<R: Rng + ?Sized>(kind: FamilyKind, params: &GenParams, rng: &mut R) -> Result<Descriptor> {
    let truncated = |rng: &mut R| params.truncated.unwrap_or_else(|| rng.random_bool(0.5));
    Ok(match kind {
        FamilyKind::GraphicRandom | FamilyKind::BicircularRandom => {
            let edges = params.edges.or(params.n);
            let edges = require(edges, "edges")?;
            let vertices = params.vertices.unwrap_or((edges / 2).max(2));
            if vertices < 2 {
                return Err(Error::Parameter("random graphs need at least 2 vertices".into()));
            }
            let edges = random_multigraph(vertices, edges, false, rng);
            if kind == FamilyKind::GraphicRandom {
                Descriptor::Graphic { vertices, edges }
            } else {
                Descriptor::Bicircular { vertices, edges }
            }
        }
        FamilyKind::ParallelPairs => {
            let n = require(params.n, "n")?;
            if n % 2 != 0 {
                return Err(Error::Parameter(format!("parallel pairs need an even n, got {n}")));
            }
            let (vertices, edges) = parallel_pairs(n / 2);
            Descriptor::Graphic { vertices, edges }
        }
        FamilyKind::PartitionRandom => {
            let n = require(params.n, "n")?;
            let parts = params.parts.unwrap_or((n / 4).max(1));
            let max_cap = params.max_capacity.unwrap_or(2).max(1);
            let matroid = random_partition(n, parts, 1, max_cap, rng);
            Descriptor::Partition {
                parts: matroid.parts(),
                capacities: matroid.capacities().to_vec(),
            }
        }
        FamilyKind::TransversalRandom => {
            let n = require(params.n, "n")?;
            let positions = params.positions.unwrap_or((n / 2).max(1));
            Descriptor::Transversal {
                positions,
                intervals: random_intervals(n, positions, rng),
            }
        }
        FamilyKind::Uniform => {
            let n = require(params.n, "n")?;
            Descriptor::Uniform {
                n,
                r: params.r.unwrap_or(n / 2),
            }
        }
        FamilyKind::Free => Descriptor::Free {
            n: require(params.n, "n")?,
        },
        FamilyKind::RankHard => {
            let m = require(params.m, "m")?;
            let hard = match params.epsilon {
                Some(eps) => RankHardParams::from_epsilon(m, eps, truncated(rng))?,
                None => RankHardParams::new(m, (m / 10).max(1), truncated(rng))?,
            };
            Descriptor::from_hard_instance(&sample_rank_instance(hard, rng)?)
        }
        FamilyKind::PartitionHard => {
            let m = require(params.m, "m")?;
            let alpha = require(params.alpha, "alpha")?;
            let hard = PartitionHardParams::new(m, alpha, truncated(rng))?;
            Descriptor::from_hard_instance(&sample_partition_instance(hard, rng)?)
        }
    })
}
