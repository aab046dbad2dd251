//! Python bindings: curves, gluing, the construction pipeline and its
//! certificates.
use g2core::arith::{factor, parse_factors};
use g2core::config::Config;
use g2core::construct::{
    construct_genus2, count_genus2_points, verify_certificate, verify_fixture_with, CurveCertificate, FixtureParams,
};
use g2core::elliptic::{ec_order, is_isomorphic, EllipticCurve as CoreCurve};
use g2core::ff::{Fp, Polynomial, PrimeField};
use g2core::gluing::{glue2 as core_glue2, glue3 as core_glue3, Genus2Curve as CoreGenus2};
use g2core::quadratic_cm::{class_polynomial as core_class_polynomial, ClassPolyCache};
use g2core::weil;
use num_bigint::{BigInt, BigUint};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::path::PathBuf;

create_exception!(g2py, ConstructionFailed, PyException);

fn err(e: g2core::Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.code()))
}

#[pyclass(module = "g2py", frozen)]
#[derive(Clone)]
struct EllipticCurve {
    inner: CoreCurve,
}

#[pymethods]
impl EllipticCurve {
    /// `y^2 = x^3 + a x + b` over `F_p`.
    #[new]
    fn new(p: BigUint, a: BigInt, b: BigInt) -> PyResult<Self> {
        let f = PrimeField::new(p).map_err(err)?;
        Ok(EllipticCurve { inner: CoreCurve::from_ints(&f, &a, &b).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> BigUint {
        self.inner.p().clone()
    }

    #[getter]
    fn a(&self) -> BigUint {
        self.inner.a().value().clone()
    }

    #[getter]
    fn b(&self) -> BigUint {
        self.inner.b().value().clone()
    }

    fn j_invariant(&self) -> BigUint {
        self.inner.j_invariant().value().clone()
    }

    /// Exact group order (counting or baby-step giant-step, p < 2^50).
    fn order(&self) -> PyResult<BigUint> {
        ec_order(&self.inner).map_err(err)
    }

    fn is_isomorphic(&self, other: &EllipticCurve) -> bool {
        is_isomorphic(&self.inner, &other.inner)
    }

    fn __repr__(&self) -> String {
        format!("EllipticCurve(p={}, a={}, b={})", self.p(), self.a(), self.b())
    }
}

#[pyclass(module = "g2py", frozen)]
#[derive(Clone)]
struct Genus2Curve {
    inner: CoreGenus2,
}

#[pymethods]
impl Genus2Curve {
    /// `t y^2 = f(x)`, coefficients lowest degree first.
    #[new]
    #[pyo3(signature = (p, f_coeffs, t=BigUint::from(1u32)))]
    fn new(p: BigUint, f_coeffs: Vec<BigInt>, t: BigUint) -> PyResult<Self> {
        let f = PrimeField::new(p).map_err(err)?;
        let poly = Polynomial::from_bigints(&f, &f_coeffs);
        let t = Fp::new(&f, t % f.p());
        Ok(Genus2Curve { inner: CoreGenus2::new(t, poly).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> BigUint {
        self.inner.p().clone()
    }

    #[getter]
    fn t(&self) -> BigUint {
        self.inner.t().value().clone()
    }

    #[getter]
    fn f_coeffs(&self) -> Vec<BigUint> {
        self.inner.coeff_values()
    }

    /// `#C(F_{p^k})` for `k` in {1, 2}, by enumeration.
    #[pyo3(signature = (k=1))]
    fn count_points(&self, k: u32) -> PyResult<BigUint> {
        count_genus2_points(&self.inner, k).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Genus2Curve(p={}, f_coeffs={:?}, t={})", self.p(), self.f_coeffs(), self.t())
    }

    fn __eq__(&self, other: &Genus2Curve) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(module = "g2py", frozen)]
struct Certificate {
    inner: CurveCertificate,
}

#[pymethods]
impl Certificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Certificate { inner: CurveCertificate::from_json(text).map_err(err)? })
    }

    /// Canonical compact JSON.
    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// `(True, None)` or `(False, "stage: reason")`.
    fn verify(&self) -> (bool, Option<String>) {
        match verify_certificate(&self.inner) {
            Ok(()) => (true, None),
            Err(r) => (false, Some(r.to_string())),
        }
    }

    #[getter]
    fn n(&self) -> BigUint {
        self.inner.n.0.clone()
    }

    #[getter]
    fn p(&self) -> BigUint {
        self.inner.p.0.clone()
    }

    #[getter]
    fn glue_method(&self) -> &'static str {
        self.inner.glue_method.as_str()
    }

    #[getter]
    fn curve(&self) -> PyResult<Genus2Curve> {
        Ok(Genus2Curve { inner: self.inner.curve().map_err(err)? })
    }

    #[getter]
    fn e1(&self) -> PyResult<EllipticCurve> {
        EllipticCurve::new(self.p(), self.inner.e1.a.0.clone().into(), self.inner.e1.b.0.clone().into())
    }

    #[getter]
    fn e2(&self) -> PyResult<EllipticCurve> {
        EllipticCurve::new(self.p(), self.inner.e2.a.0.clone().into(), self.inner.e2.b.0.clone().into())
    }

    fn __repr__(&self) -> String {
        format!("Certificate(N={}, p={}, glue_method={:?})", self.n(), self.p(), self.glue_method())
    }
}

/// Runs the construction; raises `ConstructionFailed` with the stable reason
/// string first in the message.
#[pyfunction]
#[pyo3(signature = (n, factors=None, seed=1, discriminant_budget=100_000, cache_dir=None))]
fn construct(
    py: Python<'_>,
    n: BigUint,
    factors: Option<&str>,
    seed: u64,
    discriminant_budget: u64,
    cache_dir: Option<PathBuf>,
) -> PyResult<Certificate> {
    let fac = match factors {
        Some(t) => parse_factors(t, &n).map_err(err)?,
        None => factor(&n, 1 << 24).map_err(err)?,
    };
    let cfg = Config { discriminant_budget, prng_seed: seed, cache_dir, ..Config::default() };
    let cert = py
        .allow_threads(|| construct_genus2(&n, &fac, &cfg, seed))
        .map_err(|e| ConstructionFailed::new_err(e.to_string()))?;
    Ok(Certificate { inner: cert })
}

#[pyfunction]
fn glue2(e1: &EllipticCurve, e2: &EllipticCurve) -> PyResult<Vec<Genus2Curve>> {
    Ok(core_glue2(&e1.inner, &e2.inner).map_err(err)?.into_iter().map(|inner| Genus2Curve { inner }).collect())
}

#[pyfunction]
fn glue3(e1: &EllipticCurve, e2: &EllipticCurve) -> PyResult<Vec<Genus2Curve>> {
    Ok(core_glue3(&e1.inner, &e2.inner).map_err(err)?.into_iter().map(|inner| Genus2Curve { inner }).collect())
}

/// Coefficients of the Hilbert class polynomial, lowest degree first.
#[pyfunction]
#[pyo3(signature = (d, cache_dir=None))]
fn class_polynomial(d: i64, cache_dir: Option<PathBuf>) -> PyResult<Vec<BigInt>> {
    let cache = cache_dir.as_deref().map(ClassPolyCache::open);
    core_class_polynomial(d, cache.as_ref()).map_err(err)
}

/// `(a, b)` for `N` in the central interval of a prime `q`.
#[pyfunction]
fn central_weil(q: i128, n: i128) -> PyResult<(i128, i128)> {
    let w = weil::central_weil(q, n).map_err(err)?;
    Ok((w.a, w.b))
}

/// `(q, a, b, ordinary, irreducible)` for every realization of `N`.
#[pyfunction]
fn weil_realizations(n: i128) -> Vec<(i128, i128, i128, bool, bool)> {
    weil::enumerate_realizations(n, None)
        .into_iter()
        .map(|r| (r.weil.q, r.weil.a, r.weil.b, r.ordinary, r.irreducible))
        .collect()
}

#[pyfunction]
fn minimal_delta(n: i128) -> PyResult<BigInt> {
    Ok(weil::minimal_delta(n, 1 << 24).map_err(err)?.delta)
}

/// The 10^2013 check with chosen exponents; returns a dict or raises
/// `ConstructionFailed` with the stage tag.
#[pyfunction]
#[pyo3(signature = (five, four, one, root=0, seed=1))]
fn verify_fixture<'py>(
    py: Python<'py>,
    five: u32,
    four: u32,
    one: u32,
    root: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let params = FixtureParams { five, four, one };
    let r = py
        .allow_threads(|| verify_fixture_with(params, root, seed))
        .map_err(|e| ConstructionFailed::new_err(e.to_string()))?;
    let d = PyDict::new_bound(py);
    d.set_item("N", r.n.clone())?;
    d.set_item("p", r.p.clone())?;
    d.set_item("digits", r.digits)?;
    d.set_item("u", r.u.value().clone())?;
    d.set_item("point_count", r.point_count())?;
    d.set_item("lcm", r.certificate.lcm.clone())?;
    d.set_item("count", r.count.clone())?;
    Ok(d)
}

#[pymodule]
fn g2py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EllipticCurve>()?;
    m.add_class::<Genus2Curve>()?;
    m.add_class::<Certificate>()?;
    m.add("ConstructionFailed", m.py().get_type_bound::<ConstructionFailed>())?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(glue2, m)?)?;
    m.add_function(wrap_pyfunction!(glue3, m)?)?;
    m.add_function(wrap_pyfunction!(class_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(central_weil, m)?)?;
    m.add_function(wrap_pyfunction!(weil_realizations, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_delta, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fixture, m)?)?;
    Ok(())
}
