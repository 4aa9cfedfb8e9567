//! The matroid abstraction, the size-sensitive cost model and the metered
//! oracle through which every algorithm issues its independence queries.
//!
//! Queries cross the oracle boundary as sorted, duplicate-free slices of
//! element ids. A query `Q` is charged `f(|Q|)` under the active
//! [`CostModel`]; malformed queries are rejected and charge nothing.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ElementId;

/// An immutable matroid with an independence test.
///
/// `is_independent` is only ever called with sorted, duplicate-free,
/// in-range slices; [`MeteredOracle`] enforces this at the boundary.
pub trait Matroid: Send + Sync {
    fn ground_size(&self) -> usize;

    fn is_independent(&self, set: &[ElementId]) -> bool;

    /// Rank of a subset, for families that can compute it in time near
    /// linear in `|set|`. `None` means the family has no such procedure.
    fn subset_rank(&self, _set: &[ElementId]) -> Option<usize> {
        None
    }

    fn supports_subset_rank(&self) -> bool {
        self.subset_rank(&[]).is_some()
    }
}

impl<M: Matroid + ?Sized> Matroid for &M {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, set: &[ElementId]) -> bool {
        (**self).is_independent(set)
    }
    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        (**self).subset_rank(set)
    }
}

impl<M: Matroid + ?Sized> Matroid for Box<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, set: &[ElementId]) -> bool {
        (**self).is_independent(set)
    }
    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        (**self).subset_rank(set)
    }
}

impl<M: Matroid + ?Sized> Matroid for Arc<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn is_independent(&self, set: &[ElementId]) -> bool {
        (**self).is_independent(set)
    }
    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        (**self).subset_rank(set)
    }
}

pub type SharedMatroid = Arc<dyn Matroid>;

/// Checks that `set` is strictly increasing and inside `0..ground_size`.
pub fn validate_set(set: &[ElementId], ground_size: usize) -> Result<()> {
    for (position, pair) in set.windows(2).enumerate() {
        if pair[0] >= pair[1] {
            return Err(Error::NotASet {
                position: position + 1,
            });
        }
    }
    match set.last() {
        Some(&last) if last >= ground_size => Err(Error::ElementOutOfRange {
            element: last,
            ground_size,
        }),
        _ => Ok(()),
    }
}

/// A query cost: exact for integral models, floating point for fractional
/// powers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cost {
    Exact(u128),
    Real(f64),
}

impl Cost {
    pub fn as_f64(self) -> f64 {
        match self {
            Cost::Exact(v) => v as f64,
            Cost::Real(v) => v,
        }
    }

    pub fn exact(self) -> Option<u128> {
        match self {
            Cost::Exact(v) => Some(v),
            Cost::Real(_) => None,
        }
    }

    fn add(self, other: Cost) -> Cost {
        match (self, other) {
            (Cost::Exact(a), Cost::Exact(b)) => Cost::Exact(a.saturating_add(b)),
            (a, b) => Cost::Real(a.as_f64() + b.as_f64()),
        }
    }
}

impl Default for Cost {
    fn default() -> Self {
        Cost::Exact(0)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Exact(v) => write!(f, "{v}"),
            Cost::Real(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Unit,
    Linear,
    IntPower(u32),
    RealPower(f64),
}

/// A non-decreasing query cost function `f(k)` of the query size `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostModel {
    kind: Kind,
    label: String,
}

impl CostModel {
    pub fn unit() -> Self {
        Self {
            kind: Kind::Unit,
            label: "unit".into(),
        }
    }

    pub fn linear() -> Self {
        Self {
            kind: Kind::Linear,
            label: "linear".into(),
        }
    }

    /// `f(k) = k^p` with `f(0) = 0`. Integral exponents are evaluated exactly.
    pub fn power(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::CostModel(format!("poly:{p}")));
        }
        let kind = if p.fract() == 0.0 && p <= u32::MAX as f64 {
            Kind::IntPower(p as u32)
        } else {
            Kind::RealPower(p)
        };
        Ok(Self {
            kind,
            label: format!("poly:{p}"),
        })
    }

    /// Whether the model is evaluated in exact integer arithmetic.
    pub fn is_exact(&self) -> bool {
        !matches!(self.kind, Kind::RealPower(_))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, k: usize) -> Cost {
        match self.kind {
            Kind::Unit => Cost::Exact(1),
            Kind::Linear => Cost::Exact(k as u128),
            Kind::IntPower(_) | Kind::RealPower(_) if k == 0 => Cost::Exact(0),
            Kind::IntPower(p) => match (k as u128).checked_pow(p) {
                Some(v) => Cost::Exact(v),
                None => Cost::Exact(u128::MAX),
            },
            Kind::RealPower(p) => Cost::Real((k as f64).powf(p)),
        }
    }

    pub fn zero(&self) -> Cost {
        if self.is_exact() {
            Cost::Exact(0)
        } else {
            Cost::Real(0.0)
        }
    }
}

fn parse_exponent(text: &str) -> Option<f64> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: f64 = num.trim().parse().ok()?;
        let den: f64 = den.trim().parse().ok()?;
        if den == 0.0 {
            return None;
        }
        return Some(num / den);
    }
    text.parse().ok()
}

impl FromStr for CostModel {
    type Err = Error;

    /// Parses `unit`, `linear`, or `poly:p` where `p` is a non-negative
    /// decimal or fraction such as `3/2`.
    fn from_str(spec: &str) -> Result<Self> {
        let malformed = || Error::CostModel(spec.to_string());
        match spec.trim() {
            "unit" => Ok(Self::unit()),
            "linear" => Ok(Self::linear()),
            other => {
                let exponent = other.strip_prefix("poly:").ok_or_else(malformed)?;
                let p = parse_exponent(exponent).ok_or_else(malformed)?;
                let mut model = Self::power(p).map_err(|_| malformed())?;
                model.label = other.to_string();
                Ok(model)
            }
        }
    }
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Accumulated cost of the queries issued through one oracle.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CostLedger {
    pub total_cost: Cost,
    pub query_count: u64,
    pub max_query_size: usize,
}

impl CostLedger {
    pub fn new(model: &CostModel) -> Self {
        Self {
            total_cost: model.zero(),
            query_count: 0,
            max_query_size: 0,
        }
    }

    fn charge(&mut self, size: usize, cost: Cost) {
        self.total_cost = self.total_cost.add(cost);
        self.query_count += 1;
        self.max_query_size = self.max_query_size.max(size);
    }

    /// Sum of two ledgers, as if their queries had gone through one meter.
    pub fn merged(&self, other: &CostLedger) -> CostLedger {
        CostLedger {
            total_cost: self.total_cost.add(other.total_cost),
            query_count: self.query_count + other.query_count,
            max_query_size: self.max_query_size.max(other.max_query_size),
        }
    }
}

/// Anything that answers independence queries over a ground set `0..n`.
pub trait IndependenceOracle {
    fn ground_size(&self) -> usize;

    /// `set` must be sorted and duplicate-free.
    fn query(&mut self, set: &[ElementId]) -> Result<bool>;
}

impl<O: IndependenceOracle + ?Sized> IndependenceOracle for &mut O {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn query(&mut self, set: &[ElementId]) -> Result<bool> {
        (**self).query(set)
    }
}

/// One entry of a query trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub size: usize,
    pub independent: bool,
}

/// Wraps a matroid and charges `f(|Q|)` for every answered query.
pub struct MeteredOracle<M> {
    matroid: M,
    model: CostModel,
    ledger: CostLedger,
    window: CostLedger,
    useful_threshold: usize,
    useful_queries: u64,
    trace: Option<Vec<TraceEntry>>,
}

impl<M: Matroid> MeteredOracle<M> {
    pub fn new(matroid: M, model: CostModel) -> Self {
        let ledger = CostLedger::new(&model);
        Self {
            matroid,
            model,
            ledger,
            window: ledger,
            useful_threshold: 0,
            useful_queries: 0,
            trace: None,
        }
    }

    /// Queries strictly larger than `threshold` are counted as useful.
    pub fn with_useful_threshold(mut self, threshold: usize) -> Self {
        self.useful_threshold = threshold;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn matroid(&self) -> &M {
        &self.matroid
    }

    pub fn cost_model(&self) -> &CostModel {
        &self.model
    }

    pub fn ledger_snapshot(&self) -> CostLedger {
        self.ledger
    }

    /// Ledger of the queries issued since the previous call (or since
    /// construction), then starts a new window.
    pub fn take_window(&mut self) -> CostLedger {
        std::mem::replace(&mut self.window, CostLedger::new(&self.model))
    }

    pub fn useful_query_count(&self) -> u64 {
        self.useful_queries
    }

    pub fn trace(&self) -> Option<&[TraceEntry]> {
        self.trace.as_deref()
    }
}

impl<M: Matroid> IndependenceOracle for MeteredOracle<M> {
    fn ground_size(&self) -> usize {
        self.matroid.ground_size()
    }

    fn query(&mut self, set: &[ElementId]) -> Result<bool> {
        validate_set(set, self.matroid.ground_size())?;
        let independent = self.matroid.is_independent(set);
        let cost = self.model.eval(set.len());
        self.ledger.charge(set.len(), cost);
        self.window.charge(set.len(), cost);
        if set.len() > self.useful_threshold {
            self.useful_queries += 1;
        }
        if let Some(trace) = self.trace.as_mut() {
            trace.push(TraceEntry {
                size: set.len(),
                independent,
            });
        }
        Ok(independent)
    }
}

/// Renders a trace as `size,verdict` lines.
pub fn format_trace(trace: &[TraceEntry]) -> String {
    let mut out = String::with_capacity(trace.len() * 8);
    for entry in trace {
        out.push_str(&format!("{},{}\n", entry.size, entry.independent));
    }
    out
}
