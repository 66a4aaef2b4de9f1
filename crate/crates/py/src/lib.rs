//! Python bindings. Rationals cross the boundary as strings such as `"2/7"`.
#![allow(clippy::useless_conversion)]

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use bispectral_core::bispectral::{self as bisp, DualOptions};
use bispectral_core::cli::BundleFile;
use bispectral_core::darboux::{self, check_admissible};
use bispectral_core::exact::rat::{fmt_rat, parse_rat, Rat};
use bispectral_core::json::DiffOpJson;
use bispectral_core::{example, jacobi, ndiff, Error};

create_exception!(bispectral, BispectralError, PyException);
create_exception!(bispectral, ConditionError, BispectralError);
create_exception!(bispectral, InadmissibleError, BispectralError);
create_exception!(bispectral, ScopeError, BispectralError);
create_exception!(bispectral, VerificationError, BispectralError);

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Conditions(_) => ConditionError::new_err(msg),
        Error::Inadmissible(_) => InadmissibleError::new_err(msg),
        Error::Scope(_) => ScopeError::new_err(msg),
        Error::Verification(_) => VerificationError::new_err(msg),
        _ => BispectralError::new_err(msg),
    }
}

fn rat_arg(s: &str) -> PyResult<Rat> {
    parse_rat(s).map_err(py_err)
}

fn rats(v: &[String]) -> PyResult<Vec<Rat>> {
    v.iter().map(|s| rat_arg(s)).collect()
}

/// The parameter triple (α, β, ε).
#[pyclass(name = "Params", frozen)]
#[derive(Clone)]
struct PyParams(bispectral_core::ParamSet);

#[pymethods]
impl PyParams {
    #[new]
    fn new(alpha: &str, beta: &str, eps: &str) -> PyResult<Self> {
        bispectral_core::ParamSet::new(rat_arg(alpha)?, rat_arg(beta)?, rat_arg(eps)?)
            .map(PyParams)
            .map_err(py_err)
    }

    #[getter]
    fn alpha(&self) -> String {
        fmt_rat(&self.0.alpha)
    }

    #[getter]
    fn beta(&self) -> String {
        fmt_rat(&self.0.beta)
    }

    #[getter]
    fn eps(&self) -> String {
        fmt_rat(&self.0.eps)
    }

    /// λ(n) = (n+ε)(n+ε+α+β+1) as text.
    fn lambda_fn(&self) -> String {
        self.0.lambda().display("n")
    }

    fn __repr__(&self) -> String {
        format!("Params(alpha={}, beta={}, eps={})", self.alpha(), self.beta(), self.eps())
    }
}

/// A difference operator Σ b_i(n) T^i with coefficients in ℚ(n)[σ].
#[pyclass(name = "DiffOp", frozen)]
#[derive(Clone)]
struct PyDiffOp(ndiff::DiffOp);

#[pymethods]
impl PyDiffOp {
    #[staticmethod]
    fn identity() -> Self {
        PyDiffOp(ndiff::DiffOp::identity())
    }

    #[staticmethod]
    fn shift(k: i64) -> Self {
        PyDiffOp(ndiff::DiffOp::t(k))
    }

    #[staticmethod]
    fn constant(c: &str) -> PyResult<Self> {
        Ok(PyDiffOp(ndiff::DiffOp::constant(rat_arg(c)?)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: DiffOpJson = serde_json::from_str(text).map_err(|e| py_err(e.into()))?;
        j.to_op().map(PyDiffOp).map_err(py_err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&DiffOpJson::from(&self.0)).expect("operator serialises")
    }

    /// `(lowest, highest)` shift, or `None` for the zero operator.
    fn support(&self) -> Option<(i64, i64)> {
        self.0.support()
    }

    fn compose(&self, other: &PyDiffOp) -> Self {
        PyDiffOp(self.0.compose(&other.0))
    }

    fn pow(&self, k: usize) -> Self {
        PyDiffOp(self.0.pow(k))
    }

    /// Image under the involution n ↦ −(n+2ε+α+β+1), T ↦ T⁻¹.
    fn involution(&self, params: &PyParams) -> PyResult<Self> {
        self.0.involution_i(&params.0).map(PyDiffOp).map_err(py_err)
    }

    fn is_regular(&self) -> bool {
        self.0.is_regular()
    }

    fn __add__(&self, other: &PyDiffOp) -> Self {
        PyDiffOp(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyDiffOp) -> Self {
        PyDiffOp(&self.0 - &other.0)
    }

    fn __matmul__(&self, other: &PyDiffOp) -> Self {
        self.compose(other)
    }

    fn __eq__(&self, other: &PyDiffOp) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.display()
    }

    fn __repr__(&self) -> String {
        format!("DiffOp({})", self.0.display())
    }
}

#[pyfunction]
fn jacobi_l(params: &PyParams) -> PyDiffOp {
    PyDiffOp(jacobi::jacobi_l(&params.0))
}

/// The gauge-conjugated operator φ⁻¹ L φ.
#[pyfunction]
fn jacobi_l_tilde(params: &PyParams) -> PyDiffOp {
    PyDiffOp(jacobi::jacobi_l_tilde(&params.0))
}

/// One of the contiguous maps: "alpha_up", "alpha_down", "beta_up", "beta_down".
#[pyfunction]
fn contiguous_d(kind: &str, params: &PyParams) -> PyResult<PyDiffOp> {
    let k = match kind {
        "alpha_up" => jacobi::Contiguous::AlphaUp,
        "alpha_down" => jacobi::Contiguous::AlphaDown,
        "beta_up" => jacobi::Contiguous::BetaUp,
        "beta_down" => jacobi::Contiguous::BetaDown,
        _ => return Err(BispectralError::new_err(format!("unknown contiguous map {kind:?}"))),
    };
    jacobi::contiguous_d(k, &params.0).map(PyDiffOp).map_err(py_err)
}

#[pyclass(name = "DarbouxSpec", frozen)]
#[derive(Clone)]
struct PySpec(darboux::DarbouxSpec);

#[pymethods]
impl PySpec {
    #[new]
    #[pyo3(signature = (params, k, l, a=vec![], b=vec![], c=vec![], d=vec![]))]
    fn new(
        params: &PyParams,
        k: usize,
        l: usize,
        a: Vec<String>,
        b: Vec<String>,
        c: Vec<String>,
        d: Vec<String>,
    ) -> PyResult<Self> {
        darboux::DarbouxSpec::new(params.0.clone(), k, l, rats(&a)?, rats(&b)?, rats(&c)?, rats(&d)?)
            .map(PySpec)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let s: darboux::DarbouxSpec = serde_json::from_str(text).map_err(|e| py_err(e.into()))?;
        s.validate().map_err(py_err)?;
        Ok(PySpec(s))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("spec serialises")
    }

    #[getter]
    fn params(&self) -> PyParams {
        PyParams(self.0.params.clone())
    }

    /// Integer zeros of the Casoratian, or `None` when it vanishes identically.
    fn casoratian_integer_zeros(&self) -> PyResult<Option<Vec<i64>>> {
        let adm = check_admissible(&self.0).map_err(py_err)?;
        Ok((!adm.identically_zero).then(|| adm.witness.into_iter().collect()))
    }

    fn is_admissible(&self) -> PyResult<bool> {
        Ok(check_admissible(&self.0).map_err(py_err)?.admissible())
    }

    fn __repr__(&self) -> String {
        format!("DarbouxSpec({})", self.to_json())
    }
}

/// The operators P, L, Q of one Darboux transformation.
#[pyclass(name = "DarbouxBundle", frozen)]
struct PyBundle(darboux::DarbouxBundle);

#[pymethods]
impl PyBundle {
    #[new]
    fn new(spec: &PySpec) -> PyResult<Self> {
        darboux::DarbouxBundle::new(&spec.0).map(PyBundle).map_err(py_err)
    }

    #[getter(P)]
    fn p(&self) -> PyDiffOp {
        PyDiffOp(self.0.p.clone())
    }

    #[getter(L)]
    fn l(&self) -> PyDiffOp {
        PyDiffOp(self.0.l.clone())
    }

    #[getter(Q)]
    fn q(&self) -> PyDiffOp {
        PyDiffOp(self.0.q.clone())
    }

    #[getter(L0)]
    fn l0(&self) -> PyDiffOp {
        PyDiffOp(self.0.l0())
    }

    #[getter]
    fn eigen_poly(&self) -> String {
        self.0.eigen_poly.display("x")
    }

    /// L∘P = P∘L₀, Q∘P = q(L₀) and P∘Q = q(L).
    fn check_identities(&self) -> bool {
        let (b, l0) = (&self.0, self.0.l0());
        b.l.compose(&b.p) == b.p.compose(&l0)
            && b.q.compose(&b.p) == l0.poly_eval(&b.eigen_poly)
            && b.p.compose(&b.q) == b.l.poly_eval(&b.eigen_poly)
    }

    /// Same JSON layout as the command-line `build` output.
    fn to_json(&self) -> PyResult<String> {
        Ok(BundleFile::from_bundle(&self.0).map_err(py_err)?.to_json())
    }
}

#[pyclass(name = "Decomposition", frozen)]
struct PyDecomposition(bisp::Decomposition);

#[pymethods]
impl PyDecomposition {
    #[getter]
    fn denom(&self) -> String {
        self.0.denom.display("λ")
    }

    #[getter]
    fn word(&self) -> String {
        format!("{:?}", self.0.word)
    }

    fn is_lambda_only(&self) -> bool {
        self.0.word.is_lambda_only()
    }

    fn evaluate(&self, params: &PyParams) -> PyResult<PyDiffOp> {
        self.0.evaluate(&params.0).map(PyDiffOp).map_err(py_err)
    }
}

/// Writes `op` as `denom(λ)⁻¹ · word` with the scalar on the left.
#[pyfunction]
fn decompose_left(op: &PyDiffOp, params: &PyParams) -> PyResult<PyDecomposition> {
    bisp::decompose_left(&op.0, &params.0).map(PyDecomposition).map_err(py_err)
}

/// Writes `op` as `word · denom(λ)⁻¹` with the scalar on the right.
#[pyfunction]
fn decompose_right(op: &PyDiffOp, params: &PyParams) -> PyResult<PyDecomposition> {
    bisp::decompose_right(&op.0, &params.0).map(PyDecomposition).map_err(py_err)
}

#[pyclass(name = "DualCertificate", frozen)]
struct PyCertificate {
    cert: bisp::DualCertificate,
    ino: bool,
}

#[pymethods]
impl PyCertificate {
    #[getter(B)]
    fn b(&self) -> String {
        self.cert.b.display()
    }

    #[getter]
    fn eigen(&self) -> String {
        self.cert.eigen.display("x")
    }

    #[getter]
    fn shift(&self) -> i64 {
        self.cert.shift
    }

    #[getter]
    fn verified_order(&self) -> i64 {
        self.cert.verified_order
    }

    #[getter]
    fn b_order(&self) -> Option<usize> {
        self.cert.b.order()
    }

    /// Whether the factor-wise identity G_Q ∘ q⁻¹ ∘ G_P = b(ν) b(μ) held.
    #[getter]
    fn ino(&self) -> bool {
        self.ino
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.cert).expect("certificate serialises")
    }
}

/// Constructs the dual differential operator and checks it on series.
#[pyfunction]
#[pyo3(signature = (bundle, order=48, window=(-8, 8)))]
fn build_dual(py: Python<'_>, bundle: &PyBundle, order: usize, window: (i64, i64)) -> PyResult<PyCertificate> {
    let c = py
        .allow_threads(|| bisp::build_dual(&bundle.0, &DualOptions { order, window }))
        .map_err(py_err)?;
    let ino = bisp::verify_ino(
        &c.g_p,
        &c.g_q,
        &c.left.denom,
        &c.right.denom,
        &c.working.eigen_poly,
        c.working.params(),
    );
    Ok(PyCertificate { cert: c.certificate, ino: ino.ok })
}

/// Checks the (α, β, k, l) = (2, 0, 2, 0) example; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (eps="1/3", b0="2", b1="5/7", order=40, window=(-6, 6)))]
fn reproduce_example(
    py: Python<'_>,
    eps: &str,
    b0: &str,
    b1: &str,
    order: usize,
    window: (i64, i64),
) -> PyResult<String> {
    let (e, x, y) = (rat_arg(eps)?, rat_arg(b0)?, rat_arg(b1)?);
    let rep = py
        .allow_threads(|| example::reproduce(&e, &x, &y, order, window, false))
        .map_err(py_err)?;
    Ok(serde_json::to_string_pretty(&rep).expect("report serialises"))
}

#[pymodule]
pub fn bispectral(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("BispectralError", py.get_type_bound::<BispectralError>())?;
    m.add("ConditionError", py.get_type_bound::<ConditionError>())?;
    m.add("InadmissibleError", py.get_type_bound::<InadmissibleError>())?;
    m.add("ScopeError", py.get_type_bound::<ScopeError>())?;
    m.add("VerificationError", py.get_type_bound::<VerificationError>())?;
    m.add_class::<PyParams>()?;
    m.add_class::<PyDiffOp>()?;
    m.add_class::<PySpec>()?;
    m.add_class::<PyBundle>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(jacobi_l, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_l_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(contiguous_d, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_left, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_right, m)?)?;
    m.add_function(wrap_pyfunction!(build_dual, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_example, m)?)?;
    Ok(())
}
