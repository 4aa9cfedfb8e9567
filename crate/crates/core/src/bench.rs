//! Scaling benchmarks: run a task on freshly generated instances over a
//! range of sizes, record one [`BenchRecord`] per trial, and fit the slope of
//! log cost against log n.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{greedy_basis, max_weight_basis_bounded_circ, partition_size, BoundedCircParams};
use crate::combinators::TieBrokenWeights;
use crate::error::{Error, Result};
use crate::generate::{generate, FamilyKind, GenParams};
use crate::oracle::{CostModel, IndependenceOracle, MeteredOracle};

pub const CSV_HEADER: &str =
    "task,family,n,seed,cost_model,total_cost,query_count,max_query_size,useful_query_count,answer,wall_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    GreedyBasis,
    BoundedCircBasis,
    PartitionSize,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::GreedyBasis => "greedy-basis",
            Task::BoundedCircBasis => "bounded-circ-basis",
            Task::PartitionSize => "partition-size",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Task::GreedyBasis, Task::BoundedCircBasis, Task::PartitionSize]
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown task `{s}`")))
    }
}

/// One benchmark trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub task: String,
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub cost_model: String,
    pub total_cost: String,
    pub query_count: u64,
    pub max_query_size: usize,
    pub useful_query_count: u64,
    pub answer: String,
    pub wall_ms: f64,
    #[serde(skip)]
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub task: Task,
    pub family: FamilyKind,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub cost_model: CostModel,
    /// Circumference bound handed to the bounded-circumference algorithm.
    pub c: u32,
}

impl BenchConfig {
    pub fn new(task: Task, family: FamilyKind, sizes: Vec<usize>) -> Self {
        Self {
            task,
            family,
            sizes,
            trials: 10,
            seed: 0,
            cost_model: CostModel::linear(),
            c: 2,
        }
    }
}

/// Seed of trial `trial` at size `n`, derived from the master seed alone so
/// that trials can run in any order.
pub fn trial_seed(master: u64, n: usize, trial: usize) -> u64 {
    let mut z = master
        ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (trial as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run_trial(config: &BenchConfig, n: usize, seed: u64) -> Result<BenchRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let descriptor = generate(config.family, &GenParams::for_size(config.family, n), &mut rng)?;
    let matroid = descriptor.build()?;
    let ground = matroid.ground_size();
    let mut oracle = MeteredOracle::new(matroid, config.cost_model.clone())
        .with_useful_threshold(descriptor.useful_threshold());

    let started = Instant::now();
    let answer = match config.task {
        Task::GreedyBasis => {
            let order: Vec<_> = (0..ground).collect();
            format!("rank={}", greedy_basis(&mut oracle, &order)?.rank)
        }
        Task::BoundedCircBasis => {
            let weights = TieBrokenWeights::new((0..ground).map(|_| rng.random::<f64>()).collect())?;
            let params = BoundedCircParams::new(config.c, rng.random())?;
            let result = max_weight_basis_bounded_circ(&mut oracle, &weights, params)?;
            format!("rank={};weight={:.6}", result.rank, weights.total(&result.basis))
        }
        Task::PartitionSize => match partition_size(&mut oracle) {
            Ok(result) => format!("k={}", result.k),
            Err(Error::LoopElement(e)) => format!("loop={e}"),
            Err(e) => return Err(e),
        },
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;
    let ledger = oracle.ledger_snapshot();
    Ok(BenchRecord {
        task: config.task.to_string(),
        family: config.family.to_string(),
        n: oracle.ground_size(),
        seed,
        cost_model: config.cost_model.to_string(),
        total_cost: ledger.total_cost.to_string(),
        query_count: ledger.query_count,
        max_query_size: ledger.max_query_size,
        useful_query_count: oracle.useful_query_count(),
        answer,
        wall_ms,
        cost: ledger.total_cost.as_f64(),
    })
}

/// Runs every `(size, trial)` pair, in parallel, and returns the records in
/// size-then-trial order.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let jobs: Vec<(usize, u64)> = config
        .sizes
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, trial_seed(config.seed, n, t))))
        .collect();
    jobs.par_iter()
        .map(|&(n, seed)| run_trial(config, n, seed))
        .collect()
}

pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parameter(format!("writing CSV: {e}"));
    for record in records {
        writer.serialize(record).map_err(io)?;
    }
    if records.is_empty() {
        writer
            .write_record(CSV_HEADER.split(','))
            .map_err(io)?;
    }
    writer.flush().map_err(|e| Error::Parameter(format!("writing CSV: {e}")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

/// Least-squares line through `(ln n, ln cost)`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<SlopeFit> {
    let mut distinct: Vec<f64> = points.iter().map(|p| p.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::Parameter(format!(
            "slope fit needs at least 3 distinct sizes, got {}",
            distinct.len()
        )));
    }
    if let Some(&(n, c)) = points.iter().find(|&&(n, c)| !(n > 0.0 && c > 0.0)) {
        return Err(Error::Parameter(format!(
            "slope fit needs positive values, got ({n}, {c})"
        )));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, c)| (n.ln(), c.ln())).collect();
    let k = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = (logs
        .iter()
        .map(|&(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    Ok(SlopeFit {
        points: points.to_vec(),
        slope,
        intercept,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SizeSummary {
    pub n: usize,
    pub trials: usize,
    pub mean_cost: f64,
    pub median_cost: f64,
    pub std_error: f64,
    pub mean_queries: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSummary {
    pub sizes: Vec<SizeSummary>,
    /// Fit over per-size mean costs; `None` with fewer than 3 sizes.
    pub fit: Option<SlopeFit>,
}

pub fn summarize(records: &[BenchRecord]) -> BenchSummary {
    let mut sizes: Vec<usize> = records.iter().map(|r| r.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let sizes: Vec<SizeSummary> = sizes
        .into_iter()
        .map(|n| {
            let mut costs: Vec<f64> = records.iter().filter(|r| r.n == n).map(|r| r.cost).collect();
            costs.sort_by(f64::total_cmp);
            let k = costs.len() as f64;
            let mean = costs.iter().sum::<f64>() / k;
            let median = if costs.len() % 2 == 1 {
                costs[costs.len() / 2]
            } else {
                (costs[costs.len() / 2 - 1] + costs[costs.len() / 2]) / 2.0
            };
            let std_error = if costs.len() > 1 {
                (costs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt() / k.sqrt()
            } else {
                0.0
            };
            let mean_queries = records
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.query_count as f64)
                .sum::<f64>()
                / k;
            SizeSummary {
                n,
                trials: costs.len(),
                mean_cost: mean,
                median_cost: median,
                std_error,
                mean_queries,
            }
        })
        .collect();
    let points: Vec<(f64, f64)> = sizes.iter().map(|s| (s.n as f64, s.mean_cost)).collect();
    BenchSummary {
        fit: fit_loglog_slope(&points).ok(),
        sizes,
    }
}

impl fmt::Display for BenchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>8} {:>7} {:>16} {:>16} {:>12} {:>12}", "n", "trials", "mean_cost", "median_cost", "std_err", "queries")?;
        for s in &self.sizes {
            writeln!(
                f,
                "{:>8} {:>7} {:>16.1} {:>16.1} {:>12.1} {:>12.1}",
                s.n, s.trials, s.mean_cost, s.median_cost, s.std_error, s.mean_queries
            )?;
        }
        match &self.fit {
            Some(fit) => write!(
                f,
                "slope={:.4} intercept={:.4} residual={:.4}",
                fit.slope, fit.intercept, fit.residual
            ),
            None => write!(f, "slope unavailable (fewer than 3 sizes)"),
        }
    }
}
