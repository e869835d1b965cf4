//! Python bindings: states, measurement records, detection and witnesses.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use limwit::io::{density_from_json, density_to_json, witness_to_json};
use limwit::linalg::{Complex64, ComplexMatrix};
use limwit::witnesses::{example1_witness, example2_witness, example3_witness, mc_witness, reduction_witness};

create_exception!(limwit, LimwitError, PyException);

fn err(e: limwit::Error) -> PyErr {
    LimwitError::new_err(e.to_string())
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect()).collect()
}

#[pyclass(name = "DensityMatrix", module = "limwit", frozen)]
struct PyDensityMatrix {
    inner: limwit::DensityMatrix,
}

#[pymethods]
impl PyDensityMatrix {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self {
            inner: density_from_json(s).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        density_to_json(&self.inner).map_err(err)
    }

    #[getter]
    fn dims(&self) -> (usize, usize) {
        self.inner.dims()
    }

    /// Row-major nested lists of complex numbers.
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        rows(self.inner.matrix())
    }

    fn ppt_min_eigenvalue(&self) -> PyResult<f64> {
        limwit::ppt_min_eigenvalue(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(dims={:?})", self.inner.dims())
    }
}

#[pyclass(name = "MeasurementRecord", module = "limwit", frozen)]
struct PyRecord {
    inner: limwit::MeasurementRecord,
}

#[pymethods]
impl PyRecord {
    #[new]
    #[pyo3(signature = (exx, eyy, ezz, ax=0.0, ay=0.0, az=0.0, bx=0.0, by=0.0, bz=0.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(exx: f64, eyy: f64, ezz: f64, ax: f64, ay: f64, az: f64, bx: f64, by: f64, bz: f64) -> Self {
        Self {
            inner: limwit::MeasurementRecord::from_entries([exx, eyy, ezz, ax, ay, az, bx, by, bz]),
        }
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self {
            inner: limwit::MeasurementRecord::from_json(s).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    /// `exx, eyy, ezz, ax, ay, az, bx, by, bz`.
    fn entries(&self) -> [f64; 9] {
        self.inner.entries()
    }

    #[getter]
    fn shots(&self) -> Option<u64> {
        self.inner.shots
    }

    #[getter]
    fn std_err(&self) -> Option<[f64; 9]> {
        self.inner.std_err.map(|e| e.as_array())
    }

    fn __repr__(&self) -> String {
        format!("MeasurementRecord({:?})", self.inner.entries())
    }
}

#[pyclass(name = "DetectionResult", module = "limwit", frozen, get_all)]
struct PyDetection {
    min_value: f64,
    best_family: u8,
    best_a: f64,
    entangled: bool,
    significance: Option<f64>,
}

#[pymethods]
impl PyDetection {
    fn __repr__(&self) -> String {
        format!(
            "DetectionResult(min_value={}, best_family={}, best_a={}, entangled={}, significance={:?})",
            self.min_value, self.best_family, self.best_a, self.entangled, self.significance
        )
    }
}

impl From<limwit::DetectionResult> for PyDetection {
    fn from(r: limwit::DetectionResult) -> Self {
        Self {
            min_value: r.min_value,
            best_family: r.best_family,
            best_a: r.best_a,
            entangled: r.entangled,
            significance: r.significance,
        }
    }
}

#[pyclass(name = "WitnessVerdict", module = "limwit", frozen, get_all)]
struct PyVerdict {
    min_product_value: f64,
    min_eigenvalue: f64,
    is_block_positive: bool,
    is_witness: bool,
    restarts_used: usize,
}

#[pymethods]
impl PyVerdict {
    fn __repr__(&self) -> String {
        format!(
            "WitnessVerdict(min_product_value={}, min_eigenvalue={}, is_block_positive={}, is_witness={})",
            self.min_product_value, self.min_eigenvalue, self.is_block_positive, self.is_witness
        )
    }
}

#[pyclass(name = "Witness", module = "limwit", frozen)]
struct PyWitness {
    inner: limwit::Witness,
    /// Parameter predicate for constructions that have one.
    #[pyo3(get)]
    is_valid: Option<bool>,
}

#[pymethods]
impl PyWitness {
    #[getter]
    fn dims(&self) -> (usize, usize) {
        self.inner.dims()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        rows(self.inner.matrix())
    }

    fn min_eigenvalue(&self) -> f64 {
        self.inner.min_eigenvalue()
    }

    fn expectation(&self, rho: &PyDensityMatrix) -> PyResult<f64> {
        self.inner.expectation(&rho.inner).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        witness_to_json(&self.inner).map_err(err)
    }

    #[pyo3(signature = (restarts=64, iters=200, seed=0, bp_tol=1e-6, eig_tol=1e-10))]
    fn certify(&self, py: Python<'_>, restarts: usize, iters: usize, seed: u64, bp_tol: f64, eig_tol: f64) -> PyResult<PyVerdict> {
        let opts = limwit::CertifyOptions {
            restarts,
            iters,
            seed,
            bp_tol,
            eig_tol,
            ..limwit::CertifyOptions::default()
        };
        let v = py
            .detach(|| limwit::block_positivity_min(&self.inner, &opts))
            .map_err(err)?;
        Ok(PyVerdict {
            min_product_value: v.min_product_value,
            min_eigenvalue: v.min_eigenvalue,
            is_block_positive: v.is_block_positive,
            is_witness: v.is_witness,
            restarts_used: v.restarts_used,
        })
    }

    fn __repr__(&self) -> String {
        format!("Witness({:?})", self.inner.provenance())
    }
}

impl PyWitness {
    fn plain(inner: limwit::Witness) -> Self {
        Self { inner, is_valid: None }
    }
}

fn density(inner: limwit::DensityMatrix) -> PyDensityMatrix {
    PyDensityMatrix { inner }
}

#[pyfunction]
fn werner(f: f64) -> PyResult<PyDensityMatrix> {
    limwit::werner(f).map(density).map_err(err)
}

#[pyfunction]
fn isotropic(p: f64) -> PyResult<PyDensityMatrix> {
    limwit::isotropic(p).map(density).map_err(err)
}

#[pyfunction]
fn bell_diagonal(p: [f64; 4]) -> PyResult<PyDensityMatrix> {
    limwit::bell_diagonal(p).map(density).map_err(err)
}

/// `kind` is one of `phi+`, `phi-`, `psi+`, `psi-`.
#[pyfunction]
#[pyo3(signature = (kind="phi+"))]
fn bell_state(kind: &str) -> PyResult<PyDensityMatrix> {
    use limwit::BellKind::*;
    let k = match kind {
        "phi+" => PhiPlus,
        "phi-" => PhiMinus,
        "psi+" => PsiPlus,
        "psi-" => PsiMinus,
        other => return Err(LimwitError::new_err(format!("unknown Bell state {other:?}"))),
    };
    Ok(density(limwit::bell_state(k).to_density()))
}

#[pyfunction]
fn damped_bell(gamma: f64) -> PyResult<PyDensityMatrix> {
    limwit::damped_bell(gamma).map(density).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (family, a, negative_b=false))]
fn theorem1_state(family: u8, a: f64, negative_b: bool) -> PyResult<PyDensityMatrix> {
    let p = limwit::FamilyParams::with_b_sign(family, a, negative_b).map_err(err)?;
    Ok(density(limwit::theorem1_state(&p).to_density()))
}

#[pyfunction]
fn exact_record(rho: &PyDensityMatrix) -> PyResult<PyRecord> {
    Ok(PyRecord {
        inner: limwit::exact_record(&rho.inner).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (rho, shots, seed=0))]
fn sampled_record(rho: &PyDensityMatrix, shots: u64, seed: u64) -> PyResult<PyRecord> {
    Ok(PyRecord {
        inner: limwit::sampled_record(&rho.inner, shots, seed).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (record, sigma_threshold=3.0))]
fn detect(record: &PyRecord, sigma_threshold: f64) -> PyDetection {
    limwit::detect_with(&record.inner, &limwit::DetectOptions { sigma_threshold }).into()
}

#[pyfunction]
#[pyo3(signature = (record, family, a, negative_b=false))]
fn witness_value(record: &PyRecord, family: u8, a: f64, negative_b: bool) -> PyResult<f64> {
    let p = limwit::FamilyParams::with_b_sign(family, a, negative_b).map_err(err)?;
    Ok(limwit::witness_value(&record.inner, &p))
}

/// Rows of `(gamma, a_lower, a_upper, min_value)`.
#[pyfunction]
fn gamma_scan(gammas: Vec<f64>) -> PyResult<Vec<(f64, Option<f64>, Option<f64>, f64)>> {
    let rows = limwit::gamma_scan(&gammas).map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.gamma, r.a_lower, r.a_upper, r.min_value)).collect())
}

#[pyfunction]
#[pyo3(signature = (family, a, negative_b=false))]
fn extremal_witness(family: u8, a: f64, negative_b: bool) -> PyResult<PyWitness> {
    let p = limwit::FamilyParams::with_b_sign(family, a, negative_b).map_err(err)?;
    Ok(PyWitness::plain(limwit::extremal_witness(&p)))
}

#[pyfunction]
fn reduction(d: usize) -> PyResult<PyWitness> {
    reduction_witness(d).map(PyWitness::plain).map_err(err)
}

#[pyfunction]
fn example1(d: usize, k: usize) -> PyResult<PyWitness> {
    example1_witness(d, k).map(PyWitness::plain).map_err(err)
}

#[pyfunction]
fn example2(d: usize, p0: f64, p: Vec<f64>) -> PyResult<PyWitness> {
    let (inner, valid) = example2_witness(d, p0, &p).map_err(err)?;
    Ok(PyWitness {
        inner,
        is_valid: Some(valid),
    })
}

#[pyfunction]
fn example3(a: f64, b: f64, c: f64) -> PyResult<PyWitness> {
    let e = example3_witness(a, b, c).map_err(err)?;
    Ok(PyWitness {
        inner: e.witness,
        is_valid: Some(e.class.is_valid),
    })
}

#[pyfunction]
fn mc(lambda: f64, x: Vec<f64>) -> PyResult<PyWitness> {
    let m = mc_witness(lambda, &x).map_err(err)?;
    Ok(PyWitness {
        inner: m.witness,
        is_valid: Some(m.conditions.is_valid),
    })
}

#[pymodule]
#[pyo3(name = "limwit")]
pub fn limwit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LimwitError", m.py().get_type::<LimwitError>())?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyRecord>()?;
    m.add_class::<PyDetection>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(werner, m)?)?;
    m.add_function(wrap_pyfunction!(isotropic, m)?)?;
    m.add_function(wrap_pyfunction!(bell_diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(bell_state, m)?)?;
    m.add_function(wrap_pyfunction!(damped_bell, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1_state, m)?)?;
    m.add_function(wrap_pyfunction!(exact_record, m)?)?;
    m.add_function(wrap_pyfunction!(sampled_record, m)?)?;
    m.add_function(wrap_pyfunction!(detect, m)?)?;
    m.add_function(wrap_pyfunction!(witness_value, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_scan, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_witness, m)?)?;
    m.add_function(wrap_pyfunction!(reduction, m)?)?;
    m.add_function(wrap_pyfunction!(example1, m)?)?;
    m.add_function(wrap_pyfunction!(example2, m)?)?;
    m.add_function(wrap_pyfunction!(example3, m)?)?;
    m.add_function(wrap_pyfunction!(mc, m)?)?;
    Ok(())
}
