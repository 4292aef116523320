//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! (inputs may also be `int` or strings like `"1/2"`), polynomials as strings
//! in the `c0 + c1*X + c2*X^2` format.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use ivp_core::closure::{is_integrally_closed_order, maximal_order};
use ivp_core::corpus;
use ivp_core::decision::{decide_pruefer, verify_certificate, PrueferCertificate, Verdict};
use ivp_core::hurwitz;
use ivp_core::ivp::{
    budget_from_env, int_member_finite, int_member_order, pointwise_integrally_closed, pruefer_transform,
    ramification_profile, transform_sequence, RamificationProfile,
};
use ivp_core::order::Reducedness;
use ivp_core::rational::{fmt_rational, parse_rational, to_q, Q};
use ivp_core::{load_order, AlgebraElement, RationalPolynomial, ZOrder};

create_exception!(ivp, IvpError, PyValueError, "Error raised by the ivp engine; args are (code, message).");
create_exception!(ivp, ResourceLimit, IvpError, "A search or enumeration budget ran out.");

fn err(e: ivp_core::Error) -> PyErr {
    let args = (e.code(), e.to_string());
    if e.is_resource_limit() {
        ResourceLimit::new_err(args)
    } else {
        IvpError::new_err(args)
    }
}

fn fraction<'py>(py: Python<'py>, x: &Q) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_rational(x),))
}

fn fractions<'py>(py: Python<'py>, v: &[Q]) -> PyResult<Bound<'py, PyList>> {
    PyList::new(py, v.iter().map(|x| fraction(py, x)).collect::<PyResult<Vec<_>>>()?)
}

/// Accepts anything whose `str()` is a rational: int, Fraction or str.
fn rational(x: &Bound<'_, PyAny>) -> PyResult<Q> {
    parse_rational(&x.str()?.to_cow()?).map_err(err)
}

fn element(order: &ZOrder, coords: &Bound<'_, PyAny>) -> PyResult<AlgebraElement> {
    let v = coords.try_iter()?.map(|x| rational(&x?)).collect::<PyResult<Vec<Q>>>()?;
    if v.len() != order.dim() {
        return Err(err(ivp_core::Error::DimensionMismatch { expected: order.dim(), got: v.len() }));
    }
    Ok(AlgebraElement::new(v))
}

fn poly(s: &str) -> PyResult<RationalPolynomial> {
    RationalPolynomial::parse(s).map_err(err)
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "YES",
        Verdict::No => "NO",
        Verdict::Indeterminate => "INDETERMINATE",
    }
}

/// A Z-order given by structure constants.
#[pyclass(name = "Order", module = "ivp", frozen)]
pub struct PyOrder {
    inner: ZOrder,
}

#[pymethods]
impl PyOrder {
    /// Parse the JSON order format (`dim`, `basis_names`, `one`, `table`).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: load_order(text).map_err(err)? })
    }

    /// One of the bundled example orders, e.g. `"z_sqrt5"`.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        corpus::by_name(name)
            .map(|inner| Self { inner })
            .ok_or_else(|| IvpError::new_err(("MALFORMED_INPUT", format!("no bundled order {name:?}"))))
    }

    #[staticmethod]
    fn bundled_names() -> Vec<&'static str> {
        corpus::ALL.iter().map(|(n, _)| *n).collect()
    }

    /// `Z[X]/(f)` for a monic integer polynomial, coefficients lowest first.
    #[staticmethod]
    fn monogenic(coeffs: Vec<i64>) -> PyResult<Self> {
        Ok(Self { inner: corpus::monogenic(&coeffs).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn basis_names(&self) -> Vec<String> {
        self.inner.basis_names().to_vec()
    }

    /// Direct product with another order.
    fn product(&self, other: &PyOrder) -> Self {
        Self { inner: self.inner.product(&other.inner) }
    }

    fn multiply<'py>(&self, py: Python<'py>, a: &Bound<'py, PyAny>, b: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyList>> {
        let (a, b) = (element(&self.inner, a)?, element(&self.inner, b)?);
        fractions(py, self.inner.mul(&a, &b).map_err(err)?.coords())
    }

    fn contains(&self, a: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.inner.contains(&element(&self.inner, a)?).map_err(err)
    }

    fn minimal_polynomial(&self, a: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.inner.minimal_polynomial(&element(&self.inner, a)?).map_err(err)?.to_string())
    }

    fn discriminant(&self) -> String {
        self.inner.discriminant().to_string()
    }

    fn is_commutative(&self) -> bool {
        matches!(self.inner.is_commutative(), ivp_core::order::Commutativity::Commutative)
    }

    /// True, False, or None when the radical test is inconclusive.
    fn is_reduced(&self) -> Option<bool> {
        match self.inner.is_reduced() {
            Reducedness::Reduced => Some(true),
            Reducedness::NotReduced { .. } => Some(false),
            Reducedness::UndecidedSemisimple => None,
        }
    }

    fn __repr__(&self) -> String {
        format!("Order(dim={}, basis={:?})", self.inner.dim(), self.inner.basis_names())
    }
}

/// Outcome of the Pruefer decision, re-checkable with [`Certificate::verify`].
#[pyclass(name = "Certificate", module = "ivp", frozen)]
pub struct PyCertificate {
    inner: PrueferCertificate,
}

#[pymethods]
impl PyCertificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: PrueferCertificate::from_json(text).map_err(err)? })
    }

    #[getter]
    fn verdict(&self) -> &'static str {
        verdict_str(self.inner.verdict)
    }

    #[getter]
    fn reason(&self) -> String {
        self.inner.reason.clone()
    }

    #[getter]
    fn citation(&self) -> String {
        self.inner.citation.clone()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Independent re-check against `order`.
    fn verify(&self, order: &PyOrder) -> PyResult<bool> {
        verify_certificate(&order.inner, &self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Certificate(verdict={}, reason={})", self.verdict(), self.inner.reason)
    }
}

/// Decide whether `Int_Q(A)` is a Pruefer domain.
#[pyfunction]
fn decide(order: &PyOrder) -> PyResult<PyCertificate> {
    Ok(PyCertificate { inner: decide_pruefer(&order.inner).map_err(err)? })
}

/// With `points`, whether `f(s) ∈ A` for each point; otherwise whether
/// `f ∈ Int_Q(A)`, by residue enumeration within `budget`.
#[pyfunction]
#[pyo3(signature = (order, f, points = None, budget = None))]
fn is_member(order: &PyOrder, f: &str, points: Option<&Bound<'_, PyAny>>, budget: Option<u64>) -> PyResult<bool> {
    let f = poly(f)?;
    match points {
        Some(ps) => {
            let ps = ps.try_iter()?.map(|p| element(&order.inner, &p?)).collect::<PyResult<Vec<_>>>()?;
            Ok(int_member_finite(&order.inner, &ps, &f).map_err(err)?.is_none())
        }
        None => Ok(int_member_order(&order.inner, &f, budget.unwrap_or_else(budget_from_env))
            .map_err(err)?
            .member),
    }
}

/// `{"closed", "minpoly", "intersection", "witness"}` for `A ∩ Q[a]`.
#[pyfunction]
fn pointwise<'py>(py: Python<'py>, order: &PyOrder, a: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    let v = pointwise_integrally_closed(&order.inner, &element(&order.inner, a)?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("closed", v.closed)?;
    d.set_item("minpoly", v.minpoly.to_string())?;
    let rows = v.intersection.basis().iter().map(|r| fractions(py, &to_q(r))).collect::<PyResult<Vec<_>>>()?;
    d.set_item("intersection", rows)?;
    match &v.witness {
        Some((w, mu)) => d.set_item("witness", (fractions(py, w.coords())?, mu.to_string()))?,
        None => d.set_item("witness", py.None())?,
    }
    Ok(d)
}

/// Basis rows (coordinates in `A`) of the maximal order containing `A`.
#[pyfunction]
fn maximal_order_basis<'py>(py: Python<'py>, order: &PyOrder) -> PyResult<Vec<Bound<'py, PyList>>> {
    let m = maximal_order(&order.inner).map_err(err)?;
    m.basis.iter().map(|r| fractions(py, r)).collect()
}

/// An integral element outside `A`, or None if `A` is integrally closed.
#[pyfunction]
fn integral_witness<'py>(py: Python<'py>, order: &PyOrder) -> PyResult<Option<Bound<'py, PyList>>> {
    is_integrally_closed_order(&order.inner).map_err(err)?.map(|w| fractions(py, w.coords())).transpose()
}

fn profile_dict<'py>(py: Python<'py>, p: &RamificationProfile) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("p", p.p)?;
    d.set_item("primes", p.primes.clone())?;
    d.set_item("e_set", p.e_set.clone())?;
    d.set_item("f_set", p.f_set.clone())?;
    d.set_item("s", p.s)?;
    d.set_item("r", py.import("builtins")?.getattr("int")?.call1((p.r.to_string(),))?)?;
    Ok(d)
}

/// Ramification of `p` in a maximal order of a number field.
#[pyfunction]
fn ramification<'py>(py: Python<'py>, order: &PyOrder, p: u64) -> PyResult<Bound<'py, PyDict>> {
    profile_dict(py, &ramification_profile(&order.inner, p).map_err(err)?)
}

/// `(f^r - f)^s / p` with `s = e!`, `r = p^(f!)`.
#[pyfunction]
fn transform(f: &str, p: u64, e: u64, f_deg: u64) -> PyResult<String> {
    let prof = RamificationProfile::from_bounds(p, e, f_deg).map_err(err)?;
    Ok(pruefer_transform(&poly(f)?, &prof).map_err(err)?.to_string())
}

/// `[f_0, ..., f_k]` for the same parameters as [`transform`].
#[pyfunction]
fn sequence(f: &str, p: u64, e: u64, f_deg: u64, k: usize) -> PyResult<Vec<String>> {
    let prof = RamificationProfile::from_bounds(p, e, f_deg).map_err(err)?;
    Ok(transform_sequence(&poly(f)?, &prof, k).map_err(err)?.iter().map(|g| g.to_string()).collect())
}

/// Whether all solutions mod `4^n` of a sum of four squares are even.
#[pyfunction]
fn four_square_lemma(n: u32) -> PyResult<bool> {
    hurwitz::four_square_lemma_check(n).map_err(err)
}

/// `(samples, integral, members, counterexamples)` for seeded quaternions.
#[pyfunction]
#[pyo3(signature = (samples = 10_000, seed = 1))]
fn hurwitz_closure(samples: u64, seed: u64) -> PyResult<(u64, u64, u64, usize)> {
    let r = hurwitz::closure_check(samples, seed).map_err(err)?;
    Ok((r.samples, r.integral, r.members, r.counterexamples.len()))
}

#[pymodule]
pub fn ivp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOrder>()?;
    m.add_class::<PyCertificate>()?;
    m.add("IvpError", m.py().get_type::<IvpError>())?;
    m.add("ResourceLimit", m.py().get_type::<ResourceLimit>())?;
    m.add("DEFAULT_BUDGET", ivp_core::ivp::DEFAULT_BUDGET)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(is_member, m)?)?;
    m.add_function(wrap_pyfunction!(pointwise, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_order_basis, m)?)?;
    m.add_function(wrap_pyfunction!(integral_witness, m)?)?;
    m.add_function(wrap_pyfunction!(ramification, m)?)?;
    m.add_function(wrap_pyfunction!(transform, m)?)?;
    m.add_function(wrap_pyfunction!(sequence, m)?)?;
    m.add_function(wrap_pyfunction!(four_square_lemma, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_closure, m)?)?;
    Ok(())
}
