//! Python bindings: matroids built from descriptors or family constructors,
//! the metered oracle, the algorithms, the hard families and the
//! brute-force verifiers.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::IntoPyObjectExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use matroid_cost as mc;
use mc::algorithms;
use mc::combinators::TieBrokenWeights;
use mc::hard;
use mc::oracle::SharedMatroid;
use mc::verify;
use mc::{Cost, CostModel, Descriptor, IndependenceOracle, Matroid};

fn err(e: mc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sorted_set(mut set: Vec<usize>) -> Vec<usize> {
    set.sort_unstable();
    set.dedup();
    set
}

fn cost_value(py: Python<'_>, cost: Cost) -> PyResult<Py<PyAny>> {
    match cost {
        Cost::Exact(v) => v.into_py_any(py),
        Cost::Real(v) => v.into_py_any(py),
    }
}

#[pyclass(name = "Matroid", module = "matroid_cost", frozen)]
struct PyMatroid {
    descriptor: Descriptor,
    inner: SharedMatroid,
}

impl PyMatroid {
    fn build(descriptor: Descriptor) -> PyResult<Self> {
        let inner = descriptor.build().map_err(err)?;
        Ok(Self { descriptor, inner })
    }
}

#[pymethods]
impl PyMatroid {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Self::build(Descriptor::from_json(text).map_err(err)?)
    }

    #[staticmethod]
    fn partition(parts: Vec<Vec<usize>>, capacities: Vec<usize>) -> PyResult<Self> {
        Self::build(Descriptor::Partition { parts, capacities })
    }

    #[staticmethod]
    fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Self::build(Descriptor::Graphic { vertices, edges })
    }

    #[staticmethod]
    fn bicircular(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Self::build(Descriptor::Bicircular { vertices, edges })
    }

    /// Intervals are 1-based and inclusive.
    #[staticmethod]
    fn transversal(positions: usize, intervals: Vec<(usize, usize)>) -> PyResult<Self> {
        Self::build(Descriptor::Transversal {
            positions,
            intervals,
        })
    }

    #[staticmethod]
    fn uniform(n: usize, r: usize) -> PyResult<Self> {
        Self::build(Descriptor::Uniform { n, r })
    }

    #[staticmethod]
    fn free(n: usize) -> PyResult<Self> {
        Self::build(Descriptor::Free { n })
    }

    #[staticmethod]
    fn free_uniform_union(n: usize, free_part: Vec<usize>, m: usize) -> PyResult<Self> {
        Self::build(Descriptor::FreeUniformUnion { n, m, free_part })
    }

    fn truncate(&self, r: usize) -> PyResult<Self> {
        Self::build(Descriptor::Truncate {
            r,
            base: Box::new(self.descriptor.clone()),
        })
    }

    fn l_relax(&self, l: usize) -> PyResult<Self> {
        Self::build(Descriptor::LRelax {
            l,
            base: Box::new(self.descriptor.clone()),
        })
    }

    #[getter]
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.descriptor.family_name()
    }

    /// Uncharged independence test; elements may come in any order.
    fn is_independent(&self, set: Vec<usize>) -> PyResult<bool> {
        let set = sorted_set(set);
        mc::oracle::validate_set(&set, self.inner.ground_size()).map_err(err)?;
        Ok(self.inner.is_independent(&set))
    }

    fn to_json(&self) -> String {
        self.descriptor.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.ground_size()
    }

    fn __repr__(&self) -> String {
        format!("Matroid({})", self.descriptor.to_json())
    }
}

#[pyclass(name = "CostLedger", module = "matroid_cost", frozen, get_all)]
struct PyCostLedger {
    total_cost: Py<PyAny>,
    query_count: u64,
    max_query_size: usize,
}

#[pymethods]
impl PyCostLedger {
    fn __repr__(&self) -> String {
        format!(
            "CostLedger(total_cost={}, query_count={}, max_query_size={})",
            self.total_cost, self.query_count, self.max_query_size
        )
    }
}

fn ledger(py: Python<'_>, l: &mc::CostLedger) -> PyResult<PyCostLedger> {
    Ok(PyCostLedger {
        total_cost: cost_value(py, l.total_cost)?,
        query_count: l.query_count,
        max_query_size: l.max_query_size,
    })
}

#[pyclass(name = "MeteredOracle", module = "matroid_cost")]
struct PyMeteredOracle {
    inner: mc::MeteredOracle<SharedMatroid>,
}

#[pymethods]
impl PyMeteredOracle {
    #[new]
    #[pyo3(signature = (matroid, cost_model = "linear", trace = false))]
    fn new(matroid: &PyMatroid, cost_model: &str, trace: bool) -> PyResult<Self> {
        let model: CostModel = cost_model.parse().map_err(err)?;
        let mut inner = mc::MeteredOracle::new(matroid.inner.clone(), model)
            .with_useful_threshold(matroid.descriptor.useful_threshold());
        if trace {
            inner = inner.with_trace();
        }
        Ok(Self { inner })
    }

    /// Charged independence query; the set must be sorted and duplicate-free.
    fn query(&mut self, set: Vec<usize>) -> PyResult<bool> {
        self.inner.query(&set).map_err(err)
    }

    fn ledger(&self, py: Python<'_>) -> PyResult<PyCostLedger> {
        ledger(py, &self.inner.ledger_snapshot())
    }

    #[getter]
    fn useful_query_count(&self) -> u64 {
        self.inner.useful_query_count()
    }

    /// `(size, independent)` per query, or `None` without tracing.
    fn trace(&self) -> Option<Vec<(usize, bool)>> {
        self.inner
            .trace()
            .map(|t| t.iter().map(|e| (e.size, e.independent)).collect())
    }
}

#[pyclass(name = "BasisResult", module = "matroid_cost", frozen, get_all)]
struct PyBasisResult {
    basis: Vec<usize>,
    rank: usize,
    ledger: Py<PyCostLedger>,
}

#[pymethods]
impl PyBasisResult {
    fn __repr__(&self) -> String {
        format!("BasisResult(basis={:?}, rank={})", self.basis, self.rank)
    }
}

fn basis_result(py: Python<'_>, r: algorithms::BasisResult) -> PyResult<PyBasisResult> {
    Ok(PyBasisResult {
        basis: r.basis,
        rank: r.rank,
        ledger: Py::new(py, ledger(py, &r.ledger)?)?,
    })
}

/// Greedy basis along `order`, natural order when omitted.
#[pyfunction]
#[pyo3(signature = (oracle, order = None))]
fn greedy_basis(py: Python<'_>, oracle: &mut PyMeteredOracle, order: Option<Vec<usize>>) -> PyResult<PyBasisResult> {
    let order = order.unwrap_or_else(|| (0..oracle.inner.ground_size()).collect());
    let result = algorithms::greedy_basis(&mut oracle.inner, &order).map_err(err)?;
    basis_result(py, result)
}

#[pyfunction]
fn rank(oracle: &mut PyMeteredOracle) -> PyResult<usize> {
    algorithms::rank(&mut oracle.inner).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (oracle, weights, c = 2, seed = 0))]
fn max_weight_basis_bounded_circ(
    py: Python<'_>,
    oracle: &mut PyMeteredOracle,
    weights: Vec<f64>,
    c: u32,
    seed: u64,
) -> PyResult<PyBasisResult> {
    let weights = TieBrokenWeights::new(weights).map_err(err)?;
    let params = algorithms::BoundedCircParams::new(c, seed).map_err(err)?;
    let result = algorithms::max_weight_basis_bounded_circ(&mut oracle.inner, &weights, params).map_err(err)?;
    basis_result(py, result)
}

/// `(k, parts)` for the smallest partition into independent sets.
#[pyfunction]
fn partition_size(oracle: &mut PyMeteredOracle) -> PyResult<(usize, Vec<Vec<usize>>)> {
    let result = algorithms::partition_size(&mut oracle.inner).map_err(err)?;
    Ok((result.k, result.parts))
}

#[pyfunction]
#[pyo3(signature = (m, eps_times_m, truncated, seed = 0))]
fn sample_rank_instance(m: usize, eps_times_m: usize, truncated: bool, seed: u64) -> PyResult<PyMatroid> {
    let params = hard::RankHardParams::new(m, eps_times_m, truncated).map_err(err)?;
    let inst = hard::sample_rank_instance(params, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(err)?;
    PyMatroid::build(Descriptor::from_hard_instance(&inst))
}

#[pyfunction]
#[pyo3(signature = (m, alpha, truncated, seed = 0))]
fn sample_partition_instance(m: usize, alpha: usize, truncated: bool, seed: u64) -> PyResult<PyMatroid> {
    let params = hard::PartitionHardParams::new(m, alpha, truncated).map_err(err)?;
    let inst = hard::sample_partition_instance(params, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(err)?;
    PyMatroid::build(Descriptor::from_hard_instance(&inst))
}

#[pyfunction]
fn is_rank_witness(w: Vec<usize>, secret: Vec<usize>, m: usize, eps_times_m: usize) -> bool {
    hard::is_rank_witness(&w, &secret, m, eps_times_m)
}

#[pyfunction]
fn is_partition_witness(w: Vec<usize>, parts: Vec<Vec<usize>>, m: usize, alpha: usize) -> bool {
    hard::is_partition_witness(&w, &parts, m, alpha)
}

#[pyfunction]
fn count_rank_witness_sets(w: Vec<usize>, m: usize, eps_times_m: usize) -> PyResult<u64> {
    hard::count_rank_witness_sets(&w, m, eps_times_m).map_err(err)
}

#[pyfunction]
fn rank_witness_count_bound(m: usize, witness_size: usize) -> u128 {
    hard::rank_witness_count_bound(m, witness_size)
}

#[pyfunction]
fn count_partition_witness_partitions(w: Vec<usize>, m: usize, alpha: usize) -> PyResult<u64> {
    hard::count_partition_witness_partitions(&w, m, alpha).map_err(err)
}

#[pyfunction]
fn partition_witness_count_bound(m: usize, alpha: usize) -> u128 {
    hard::partition_witness_count_bound(m, alpha)
}

#[pyfunction]
fn gamma(alpha: f64) -> PyResult<f64> {
    hard::gamma(alpha).map_err(err)
}

#[pyfunction]
fn bf_rank(matroid: &PyMatroid) -> PyResult<usize> {
    verify::bf_rank(&*matroid.inner).map_err(err)
}

#[pyfunction]
fn bf_partition_size(matroid: &PyMatroid) -> PyResult<usize> {
    verify::bf_partition_size(&*matroid.inner).map_err(err)
}

#[pyfunction]
fn bf_circumference(matroid: &PyMatroid) -> PyResult<usize> {
    verify::bf_circumference(&*matroid.inner).map_err(err)
}

#[pyfunction]
fn bf_max_weight_basis(matroid: &PyMatroid, weights: Vec<f64>) -> PyResult<Vec<usize>> {
    let weights = TieBrokenWeights::new(weights).map_err(err)?;
    verify::bf_max_weight_basis(&*matroid.inner, &weights).map_err(err)
}

/// `None` when the axioms hold, otherwise a description of the violation.
#[pyfunction]
fn check_matroid_axioms(matroid: &PyMatroid) -> PyResult<Option<String>> {
    match verify::check_matroid_axioms(&*matroid.inner).map_err(err)? {
        verify::AxiomVerdict::Pass => Ok(None),
        verify::AxiomVerdict::Fail(v) => Ok(Some(format!("{v:?}"))),
    }
}

/// Least-squares `(slope, intercept, residual)` of log cost against log n.
#[pyfunction]
fn fit_loglog_slope(points: Vec<(f64, f64)>) -> PyResult<(f64, f64, f64)> {
    let fit = mc::bench::fit_loglog_slope(&points).map_err(err)?;
    Ok((fit.slope, fit.intercept, fit.residual))
}

/// A generated instance of a named family with about `n` elements.
#[pyfunction]
#[pyo3(signature = (family, n, seed = 0))]
fn generate(family: &str, n: usize, seed: u64) -> PyResult<PyMatroid> {
    let kind: mc::generate::FamilyKind = family.parse().map_err(err)?;
    let params = mc::generate::GenParams::for_size(kind, n);
    let descriptor =
        mc::generate::generate(kind, &params, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(err)?;
    PyMatroid::build(descriptor)
}

#[pymodule]
#[pyo3(name = "matroid_cost")]
fn matroid_cost_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatroid>()?;
    m.add_class::<PyCostLedger>()?;
    m.add_class::<PyMeteredOracle>()?;
    m.add_class::<PyBasisResult>()?;
    m.add_function(wrap_pyfunction!(greedy_basis, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(max_weight_basis_bounded_circ, m)?)?;
    m.add_function(wrap_pyfunction!(partition_size, m)?)?;
    m.add_function(wrap_pyfunction!(sample_rank_instance, m)?)?;
    m.add_function(wrap_pyfunction!(sample_partition_instance, m)?)?;
    m.add_function(wrap_pyfunction!(is_rank_witness, m)?)?;
    m.add_function(wrap_pyfunction!(is_partition_witness, m)?)?;
    m.add_function(wrap_pyfunction!(count_rank_witness_sets, m)?)?;
    m.add_function(wrap_pyfunction!(rank_witness_count_bound, m)?)?;
    m.add_function(wrap_pyfunction!(count_partition_witness_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(partition_witness_count_bound, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(bf_rank, m)?)?;
    m.add_function(wrap_pyfunction!(bf_partition_size, m)?)?;
    m.add_function(wrap_pyfunction!(bf_circumference, m)?)?;
    m.add_function(wrap_pyfunction!(bf_max_weight_basis, m)?)?;
    m.add_function(wrap_pyfunction!(check_matroid_axioms, m)?)?;
    m.add_function(wrap_pyfunction!(fit_loglog_slope, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
