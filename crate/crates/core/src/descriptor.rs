//! JSON instance descriptors: one matroid per document, tagged by `family`.
//!
//! ```json
//! {"family": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}
//! {"family": "truncate", "r": 2, "base": {"family": "free", "n": 5}}
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::combinators::{free_uniform_union, l_relax, truncate};
use crate::error::{Error, Result};
use crate::families::{
    BicircularMatroid, ConvexTransversalMatroid, Edge, FreeMatroid, GraphicMatroid, Interval,
    PartitionMatroid, UniformMatroid,
};
use crate::hard::{
    partition_instance, rank_instance, HardInstance, HardParams, PartitionHardParams,
    RankHardParams, Secret,
};
use crate::oracle::SharedMatroid;
use crate::ElementId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Descriptor {
    Partition {
        parts: Vec<Vec<ElementId>>,
        capacities: Vec<usize>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<Edge>,
    },
    Bicircular {
        vertices: usize,
        edges: Vec<Edge>,
    },
    Transversal {
        positions: usize,
        /// 1-based inclusive `[a, b]`.
        intervals: Vec<Interval>,
    },
    Uniform {
        n: usize,
        r: usize,
    },
    Free {
        n: usize,
    },
    Truncate {
        r: usize,
        base: Box<Descriptor>,
    },
    #[serde(rename = "l_relax")]
    LRelax {
        l: usize,
        base: Box<Descriptor>,
    },
    FreeUniformUnion {
        n: usize,
        m: usize,
        #[serde(rename = "S")]
        free_part: Vec<ElementId>,
    },
    RankHard {
        m: usize,
        eps_times_m: usize,
        truncated: bool,
        #[serde(rename = "S")]
        secret: Vec<ElementId>,
    },
    PartitionHard {
        m: usize,
        alpha: usize,
        truncated: bool,
        parts: Vec<Vec<ElementId>>,
    },
}

impl Descriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptors always serialize")
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Descriptor::Partition { .. } => "partition",
            Descriptor::Graphic { .. } => "graphic",
            Descriptor::Bicircular { .. } => "bicircular",
            Descriptor::Transversal { .. } => "transversal",
            Descriptor::Uniform { .. } => "uniform",
            Descriptor::Free { .. } => "free",
            Descriptor::Truncate { .. } => "truncate",
            Descriptor::LRelax { .. } => "l_relax",
            Descriptor::FreeUniformUnion { .. } => "free_uniform_union",
            Descriptor::RankHard { .. } => "rank_hard",
            Descriptor::PartitionHard { .. } => "partition_hard",
        }
    }

    /// Threshold above which a query counts as useful: `m` for the rank
    /// family, `m/α` for the partition family, 0 otherwise.
    pub fn useful_threshold(&self) -> usize {
        match *self {
            Descriptor::RankHard { m, .. } => m,
            Descriptor::PartitionHard { m, alpha, .. } if alpha > 0 => m / alpha,
            _ => 0,
        }
    }

    /// The realized hard instance, for the two lower-bound families.
    pub fn hard_instance(&self) -> Result<Option<HardInstance>> {
        match self {
            Descriptor::RankHard {
                m,
                eps_times_m,
                truncated,
                secret,
            } => rank_instance(RankHardParams::new(*m, *eps_times_m, *truncated)?, secret).map(Some),
            Descriptor::PartitionHard {
                m,
                alpha,
                truncated,
                parts,
            } => {
                let params = PartitionHardParams::new(*m, *alpha, *truncated)?;
                check_cover(params.ground_size(), parts)?;
                partition_instance(params, parts).map(Some)
            }
            _ => Ok(None),
        }
    }

    pub fn from_hard_instance(instance: &HardInstance) -> Self {
        match (&instance.params, &instance.secret) {
            (HardParams::Rank(p), Secret::Set(s)) => Descriptor::RankHard {
                m: p.m,
                eps_times_m: p.eps_times_m,
                truncated: p.truncated,
                secret: s.clone(),
            },
            (HardParams::Partition(p), Secret::Partition(parts)) => Descriptor::PartitionHard {
                m: p.m,
                alpha: p.alpha,
                truncated: p.truncated,
                parts: parts.clone(),
            },
            _ => unreachable!("hard instance params and secret kinds always agree"),
        }
    }

    pub fn build(&self) -> Result<SharedMatroid> {
        let invalid = |e: Error| match e {
            Error::Parameter(msg) => Error::Descriptor(format!("{}: {msg}", self.family_name())),
            other => other,
        };
        let matroid: SharedMatroid = match self {
            Descriptor::Partition { parts, capacities } => {
                Arc::new(PartitionMatroid::new(parts, capacities.clone()).map_err(invalid)?)
            }
            Descriptor::Graphic { vertices, edges } => {
                Arc::new(GraphicMatroid::new(*vertices, edges.clone()).map_err(invalid)?)
            }
            Descriptor::Bicircular { vertices, edges } => {
                Arc::new(BicircularMatroid::new(*vertices, edges.clone()).map_err(invalid)?)
            }
            Descriptor::Transversal {
                positions,
                intervals,
            } => Arc::new(
                ConvexTransversalMatroid::new(*positions, intervals.clone()).map_err(invalid)?,
            ),
            Descriptor::Uniform { n, r } => {
                Arc::new(UniformMatroid::try_new(*n, *r).map_err(invalid)?)
            }
            Descriptor::Free { n } => Arc::new(FreeMatroid::new(*n)),
            Descriptor::Truncate { r, base } => Arc::new(truncate(base.build()?, *r).map_err(invalid)?),
            Descriptor::LRelax { l, base } => Arc::new(l_relax(base.build()?, *l).map_err(invalid)?),
            Descriptor::FreeUniformUnion { n, m, free_part } => {
                Arc::new(free_uniform_union(*n, free_part, *m).map_err(invalid)?)
            }
            Descriptor::RankHard { .. } | Descriptor::PartitionHard { .. } => {
                self.hard_instance()
                    .map_err(invalid)?
                    .expect("hard families realize an instance")
                    .matroid
            }
        };
        Ok(matroid)
    }
}

fn check_cover(n: usize, parts: &[Vec<ElementId>]) -> Result<()> {
    let mut seen = vec![false; n];
    for &e in parts.iter().flatten() {
        if e >= n || std::mem::replace(&mut seen[e], true) {
            return Err(Error::Parameter(format!(
                "parts must cover 0..{n} exactly once (element {e})"
            )));
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Parameter(format!("parts must cover 0..{n}")));
    }
    Ok(())
}
