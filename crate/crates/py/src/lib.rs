use hyperstate::dense::{self, DenseState};
use hyperstate::entanglement::{self, ClosedForm, GeoMeasureResult};
use hyperstate::hypergraph::{self, Edges};
use hyperstate::nonlocality::{self, RobustnessVariant};
use hyperstate::transforms::{self, Branch, Pauli};
use hyperstate::{Complex64, Error};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(hyperstate_py, HyperstateError, PyValueError);
create_exception!(hyperstate_py, CrossCheckError, HyperstateError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::CrossCheck { .. } => CrossCheckError::new_err(e.to_string()),
        _ => HyperstateError::new_err(e.to_string()),
    }
}

fn pauli(s: &str) -> PyResult<Pauli> {
    Pauli::parse(s).ok_or_else(|| HyperstateError::new_err(format!("unknown Pauli {s:?}")))
}

fn branch(s: &str) -> PyResult<Branch> {
    match s {
        "+" | "plus" => Ok(Branch::Plus),
        "-" | "minus" => Ok(Branch::Minus),
        _ => Err(HyperstateError::new_err(format!("branch must be 'plus' or 'minus', got {s:?}"))),
    }
}

/// Hypergraph with either complete cardinality layers or explicit edges.
#[pyclass(frozen, module = "hyperstate_py")]
#[derive(Clone)]
struct HypergraphSpec(hypergraph::HypergraphSpec);

#[pymethods]
impl HypergraphSpec {
    #[new]
    #[pyo3(signature = (n, k=None, edges=None))]
    fn new(n: usize, k: Option<Vec<usize>>, edges: Option<Vec<Vec<usize>>>) -> PyResult<Self> {
        let spec = match (k, edges) {
            (Some(k), None) => hypergraph::HypergraphSpec::uniform(n, &k),
            (None, Some(e)) => hypergraph::HypergraphSpec::explicit(n, &e),
            _ => return Err(HyperstateError::new_err("give exactly one of k or edges")),
        };
        spec.map(Self).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n_qubits()
    }

    #[getter]
    fn k(&self) -> Option<Vec<usize>> {
        self.0.cardinalities().map(|k| k.to_vec())
    }

    #[getter]
    fn edges(&self) -> Option<Vec<Vec<usize>>> {
        match self.0.edges() {
            Edges::Explicit(e) => Some(e.clone()),
            Edges::Cardinalities(_) => None,
        }
    }

    fn __repr__(&self) -> String {
        format!("HypergraphSpec({})", self.0)
    }
}

/// Permutation-symmetric state stored as one amplitude per Hamming weight.
#[pyclass(frozen, module = "hyperstate_py")]
#[derive(Clone)]
struct SymmetricState(hypergraph::SymmetricState);

#[pymethods]
impl SymmetricState {
    #[new]
    fn new(amplitudes: Vec<Complex64>) -> PyResult<Self> {
        hypergraph::SymmetricState::new(amplitudes).map(Self).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n_qubits()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.amplitudes().to_vec()
    }

    fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }

    fn inner(&self, other: &SymmetricState) -> PyResult<Complex64> {
        self.0.inner(&other.0).map_err(to_py)
    }

    /// Full `2^N` amplitude vector, qubit 0 most significant.
    fn to_dense(&self) -> PyResult<Vec<Complex64>> {
        hypergraph::symmetric_to_dense(&self.0).map(|d| d.amplitudes().to_vec()).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("SymmetricState(n={})", self.0.n_qubits())
    }
}

fn geo_dict<'py>(py: Python<'py>, r: &GeoMeasureResult, method: &str) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", r.value)?;
    d.set_item("theta", r.theta)?;
    d.set_item("phi", r.phi)?;
    d.set_item("method", method)?;
    Ok(d)
}

#[pyfunction]
fn build_symmetric(spec: &HypergraphSpec) -> PyResult<SymmetricState> {
    hypergraph::build_symmetric(&spec.0).map(SymmetricState).map_err(to_py)
}

#[pyfunction]
fn build_dense(spec: &HypergraphSpec) -> PyResult<Vec<Complex64>> {
    dense::build_dense(&spec.0).map(|d| d.amplitudes().to_vec()).map_err(to_py)
}

/// Local Pauli stabilizer label: `"+X"`, `"-X"`, `"+Y"` or `"none"`.
#[pyfunction]
fn classify(spec: &HypergraphSpec) -> PyResult<&'static str> {
    hypergraph::classify_stabilizer(&spec.0).map(|c| c.label()).map_err(to_py)
}

/// Stabilizers found by direct eigenvalue tests on the dense state.
#[pyfunction]
fn oracle_stabilizers(spec: &HypergraphSpec) -> PyResult<Vec<&'static str>> {
    let d = dense::build_dense(&spec.0).map_err(to_py)?;
    Ok(hypergraph::oracle_stabilizers(&d).into_iter().map(|c| c.label()).collect())
}

/// The 2x2 matrix of `sqrt(P)` on the given branch, as nested rows.
#[pyfunction]
#[pyo3(signature = (p, branch_name="plus"))]
fn sqrt_pauli(p: &str, branch_name: &str) -> PyResult<Vec<Vec<Complex64>>> {
    let m = transforms::sqrt_pauli(pauli(p)?, branch(branch_name)?).m;
    Ok(m.iter().map(|row| row.to_vec()).collect())
}

/// `sqrt(P)^N` applied to a symmetric state.
#[pyfunction]
#[pyo3(signature = (state, p, branch_name="plus"))]
fn apply_sqrt_pauli(state: &SymmetricState, p: &str, branch_name: &str) -> PyResult<SymmetricState> {
    let op = transforms::sqrt_pauli(pauli(p)?, branch(branch_name)?);
    transforms::apply_tensor_power(&state.0, &op).map(SymmetricState).map_err(to_py)
}

/// GHZ plus odd-weight split of a transformed state.
#[pyfunction]
fn ghz_odd_decompose<'py>(py: Python<'py>, state: &SymmetricState) -> PyResult<Bound<'py, PyDict>> {
    let r = transforms::ghz_odd_decompose(&state.0).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("basis", format!("{:?}", r.basis))?;
    d.set_item("ghz_phase", r.ghz_phase)?;
    d.set_item("ghz_sign", r.ghz_sign)?;
    d.set_item("relative_sign", r.relative_sign)?;
    d.set_item("odd_amp", r.odd_amp)?;
    d.set_item("residual", r.residual)?;
    Ok(d)
}

/// Closed-form geometric measure, or `{"lower", "upper"}` bounds for families without one.
#[pyfunction]
fn geomeasure_closed<'py>(py: Python<'py>, spec: &HypergraphSpec) -> PyResult<Bound<'py, PyDict>> {
    match entanglement::geomeasure_closed(&spec.0).map_err(to_py)? {
        ClosedForm::Exact(r) => geo_dict(py, &r, "closed_form"),
        ClosedForm::Bounds(b) => {
            let d = PyDict::new(py);
            d.set_item("lower", b.lower)?;
            d.set_item("upper", b.upper)?;
            d.set_item("method", "closed_form_bounds")?;
            Ok(d)
        }
    }
}

#[pyfunction]
#[pyo3(signature = (state, allow_phase=true))]
fn geomeasure_numeric<'py>(py: Python<'py>, state: &SymmetricState, allow_phase: bool) -> PyResult<Bound<'py, PyDict>> {
    let r = entanglement::geomeasure_symmetric_numeric(&state.0, allow_phase).map_err(to_py)?;
    geo_dict(py, &r, "numeric_opt")
}

/// Multi-start product-state optimization on a dense amplitude vector.
#[pyfunction]
#[pyo3(signature = (n, amplitudes, restarts=dense::DEFAULT_RESTARTS, seed=0))]
fn geomeasure_oracle<'py>(
    py: Python<'py>,
    n: usize,
    amplitudes: Vec<Complex64>,
    restarts: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let d = DenseState::new(n, amplitudes).map_err(to_py)?;
    let r = py.allow_threads(|| entanglement::geomeasure_oracle(&d, restarts, seed)).map_err(to_py)?;
    geo_dict(py, &r, "oracle")
}

#[pyfunction]
fn single_edge_geomeasure(n: usize) -> PyResult<f64> {
    entanglement::single_edge_geomeasure(n).map(|r| r.value).map_err(to_py)
}

/// Mermin quantum value with its classical and separability bounds.
#[pyfunction]
#[pyo3(signature = (spec, p="X"))]
fn mermin<'py>(py: Python<'py>, spec: &HypergraphSpec, p: &str) -> PyResult<Bound<'py, PyDict>> {
    let r = nonlocality::mermin_quantum_value(&spec.0, pauli(p)?).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("quantum_value", r.quantum_value)?;
    d.set_item("classical_bound", r.classical_bound)?;
    d.set_item("separability_bound", r.separability_bound)?;
    d.set_item("ratio_log2", r.ratio_log2)?;
    d.set_item("stabilizer", r.stabilizer.label())?;
    d.set_item("hypothesis_holds", r.hypothesis_holds)?;
    d.set_item("predicted", r.predicted)?;
    Ok(d)
}

#[pyfunction]
fn mermin_odd_correction(r: u32, n: usize) -> PyResult<f64> {
    nonlocality::mermin_odd_correction(r, n).map_err(to_py)
}

/// Bell value of the three-uniform state after losing `lost` qubits.
#[pyfunction]
#[pyo3(signature = (n, lost, variant="auto"))]
fn robustness<'py>(py: Python<'py>, n: usize, lost: usize, variant: &str) -> PyResult<Bound<'py, PyDict>> {
    let v = match variant {
        "auto" => RobustnessVariant::Auto,
        "m0" | "M0" => RobustnessVariant::M0,
        "m1" | "M1" => RobustnessVariant::M1,
        _ => return Err(HyperstateError::new_err(format!("unknown variant {variant:?}"))),
    };
    let r = nonlocality::robustness_value(n, lost, v).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("quantum_value", r.quantum_value.abs())?;
    d.set_item("expectation", r.quantum_value)?;
    d.set_item("operator", format!("{:?}", r.operator))?;
    d.set_item("row", r.row.map(|x| format!("{x:?}")))?;
    d.set_item("closed_form", r.closed_form)?;
    d.set_item("separability_bound", r.separability_bound)?;
    d.set_item("violates_separability", r.violates_separability)?;
    Ok(d)
}

/// Residue class and stabilizer of a consecutive cardinality family.
#[pyfunction]
#[pyo3(signature = (k, max_n=16))]
fn table1_family<'py>(py: Python<'py>, k: Vec<usize>, max_n: usize) -> PyResult<Bound<'py, PyDict>> {
    let f = nonlocality::table1_families(&k).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("modulus", f.modulus)?;
    d.set_item("residue", f.residue)?;
    d.set_item("stabilizer", f.stabilizer.label())?;
    d.set_item("members", f.members(max_n))?;
    d.set_item("consistent", f.inconsistencies(max_n).is_empty())?;
    Ok(d)
}

#[pymodule]
fn hyperstate_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HyperstateError", m.py().get_type::<HyperstateError>())?;
    m.add("CrossCheckError", m.py().get_type::<CrossCheckError>())?;
    m.add_class::<HypergraphSpec>()?;
    m.add_class::<SymmetricState>()?;
    m.add_function(wrap_pyfunction!(build_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(build_dense, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_stabilizers, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_pauli, m)?)?;
    m.add_function(wrap_pyfunction!(apply_sqrt_pauli, m)?)?;
    m.add_function(wrap_pyfunction!(ghz_odd_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(geomeasure_closed, m)?)?;
    m.add_function(wrap_pyfunction!(geomeasure_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(geomeasure_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(single_edge_geomeasure, m)?)?;
    m.add_function(wrap_pyfunction!(mermin, m)?)?;
    m.add_function(wrap_pyfunction!(mermin_odd_correction, m)?)?;
    m.add_function(wrap_pyfunction!(robustness, m)?)?;
    m.add_function(wrap_pyfunction!(table1_family, m)?)?;
    Ok(())
}
