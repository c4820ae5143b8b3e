//! Python bindings: the Poly type plus the library's main operations.
//! Experiment reports cross the boundary as plain dicts mirroring the JSON
//! schema, so results look the same from Python and from the CLI.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};

use polyprod::error::Error;
use polyprod::poly::IntPoly;

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        serde_json::Value::Null => py.None().into_bound(py),
        serde_json::Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        serde_json::Value::String(s) => PyString::new(py, s).into_any(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn report_to_py<'py, T: serde::Serialize>(
    py: Python<'py>,
    report: &T,
) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(report)
        .map_err(|e| PyValueError::new_err(format!("serialization: {e}")))?;
    json_to_py(py, &value)
}

/// Integer-coefficient univariate polynomial.
#[pyclass(frozen, module = "polyprod_py", skip_from_py_object)]
#[derive(Clone)]
pub struct Poly {
    inner: IntPoly,
}

#[pymethods]
impl Poly {
    /// Parse "x^2+1", "2x^3-x+5", or "coeffs:c0,c1,...".
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Poly {
            inner: polyprod::parse::parse_polynomial(text).map_err(to_py_err)?,
        })
    }

    /// Build from ascending coefficients [c0, c1, ..., cd].
    #[staticmethod]
    fn from_coeffs(coeffs: Vec<BigInt>) -> PyResult<Self> {
        let p = IntPoly::new(coeffs);
        if p.is_zero() {
            return Err(PyValueError::new_err("zero polynomial rejected"));
        }
        Ok(Poly { inner: p })
    }

    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn coeffs(&self) -> Vec<BigInt> {
        self.inner.coeffs().to_vec()
    }

    fn evaluate(&self, x: BigInt) -> BigInt {
        self.inner.evaluate(&x)
    }

    fn derivative(&self) -> Poly {
        Poly {
            inner: self.inner.derivative(),
        }
    }

    /// f(x + k).
    fn shift(&self, k: BigInt) -> Poly {
        Poly {
            inner: self.inner.shift(&k),
        }
    }

    fn discriminant(&self) -> PyResult<BigInt> {
        polyprod::poly::discriminant(&self.inner).map_err(to_py_err)
    }

    /// Complex roots of a squarefree polynomial as Python complex numbers.
    #[pyo3(signature = (tol = 1e-10))]
    fn complex_roots(&self, tol: f64) -> PyResult<Vec<Complex64>> {
        polyprod::poly::complex_roots(&self.inner, tol).map_err(to_py_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly(\"{}\")", self.inner)
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.inner == other.inner
    }
}

#[pyfunction]
fn is_prime(n: BigInt) -> bool {
    match n.to_biguint() {
        Some(m) => polyprod::arith::is_prime(&m),
        None => false,
    }
}

#[pyfunction]
fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    polyprod::arith::primes_in(lo, hi)
}

#[pyfunction]
fn jacobi(a: BigInt, n: BigInt) -> PyResult<i32> {
    polyprod::arith::jacobi(&a, &n).map_err(to_py_err)
}

/// Complete factorization as (sign, [(prime, exponent), ...]).
#[pyfunction]
fn factorize(n: BigInt) -> PyResult<(i8, Vec<(BigInt, u32)>)> {
    let f = polyprod::arith::factorize(&n).map_err(to_py_err)?;
    let entries = f
        .entries()
        .iter()
        .map(|(p, e)| (BigInt::from(p.clone()), *e))
        .collect();
    Ok((f.sign(), entries))
}

/// Signed squarefree kernel d with n = d t^2.
#[pyfunction]
fn squarefree_kernel(n: BigInt) -> PyResult<BigInt> {
    Ok(polyprod::arith::factorize(&n)
        .map_err(to_py_err)?
        .squarefree_kernel())
}

#[pyfunction]
fn is_perfect_kth_power(a: BigInt, k: u32) -> PyResult<Option<BigInt>> {
    polyprod::arith::is_perfect_kth_power(&a, k).map_err(to_py_err)
}

#[pyfunction]
fn count_roots_mod(poly: &Poly, p: u64) -> PyResult<usize> {
    let reduced = polyprod::poly::ModPoly::reduce(&poly.inner, p);
    polyprod::poly::count_roots_mod(&reduced).map_err(to_py_err)
}

#[pyfunction]
fn roots_mod(poly: &Poly, p: u64) -> PyResult<Vec<u64>> {
    let reduced = polyprod::poly::ModPoly::reduce(&poly.inner, p);
    polyprod::poly::roots_mod(&reduced).map_err(to_py_err)
}

#[pyfunction]
fn is_square_poly_mod(poly: &Poly, p: u64) -> PyResult<bool> {
    let reduced = polyprod::poly::ModPoly::reduce(&poly.inner, p);
    polyprod::poly::is_square_poly_mod(&reduced).map_err(to_py_err)
}

#[pyfunction]
fn binomial_irreducible_over_q(d: u64, a: BigInt) -> PyResult<bool> {
    polyprod::poly::binomial_irreducible_over_q(d, &a).map_err(to_py_err)
}

/// Residues F_P(1..p) mod p.
#[pyfunction]
fn orbit_mod(poly: &Poly, p: u64) -> PyResult<Vec<u64>> {
    Ok(polyprod::products::orbit_mod(&poly.inner, p)
        .map_err(to_py_err)?
        .values()
        .to_vec())
}

/// F_h(x) = P(x+1)...P(x+h).
#[pyfunction]
fn shifted_product(poly: &Poly, h: u64) -> Poly {
    Poly {
        inner: polyprod::products::shifted_product(&poly.inner, h),
    }
}

/// f_n(x) = P(x)...P(x+n-1) - 1.
#[pyfunction]
fn shifted_product_minus_one(poly: &Poly, n: u64) -> Poly {
    Poly {
        inner: polyprod::products::shifted_product_minus_one(&poly.inner, n),
    }
}

/// Kernels d(n) of F_P(n) for n = 1..N, as a dict n -> d.
#[pyfunction]
fn kernel_trace(poly: &Poly, n: u64) -> PyResult<std::collections::BTreeMap<u64, BigInt>> {
    let trace = polyprod::products::kernel_trace(&poly.inner, n).map_err(to_py_err)?;
    Ok(trace.kernels().clone())
}

#[pyfunction]
fn largest_prime_factor_of_f(poly: &Poly, n: u64) -> PyResult<BigInt> {
    polyprod::products::largest_prime_factor_of_f(&poly.inner, n)
        .map(BigInt::from)
        .map_err(to_py_err)
}

/// None when p is good for P; otherwise the smallest root index n0.
#[pyfunction]
fn classify_prime(poly: &Poly, p: u64) -> PyResult<Option<u64>> {
    use polyprod::dynamics::PrimeClass;
    match polyprod::dynamics::classify_prime(&poly.inner, p).map_err(to_py_err)? {
        PrimeClass::Good => Ok(None),
        PrimeClass::Bad { n0 } => Ok(Some(n0)),
    }
}

/// Image statistics dict: p, good, n0, image_size, missing_count,
/// lower_bound, bound_ok, missing.
#[pyfunction]
fn image_stats<'py>(py: Python<'py>, poly: &Poly, p: u64) -> PyResult<Bound<'py, PyAny>> {
    let stats = polyprod::dynamics::image_stats(&poly.inner, p).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("p", stats.p())?;
    dict.set_item("good", stats.is_good())?;
    dict.set_item("n0", stats.n0())?;
    dict.set_item("image_size", stats.image_size())?;
    dict.set_item("missing_count", stats.missing_count())?;
    dict.set_item("lower_bound", stats.lower_bound())?;
    dict.set_item("bound_ok", stats.bound_ok())?;
    dict.set_item("missing", stats.missing_residues())?;
    Ok(dict.into_any())
}

/// Verified collisions as dicts {n, t0, lhs_index, rhs_index}.
#[pyfunction]
fn collision_witnesses<'py>(
    py: Python<'py>,
    poly: &Poly,
    p: u64,
    n_max: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let ws = polyprod::dynamics::collision_witnesses(&poly.inner, p, n_max).map_err(to_py_err)?;
    report_to_py(py, &ws)
}

#[pyfunction]
fn missing_average<'py>(
    py: Python<'py>,
    poly: &Poly,
    x: u64,
    n_max: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let r = polyprod::dynamics::missing_average(&poly.inner, x, n_max).map_err(to_py_err)?;
    report_to_py(py, &r)
}

#[pyfunction]
fn find_power_solutions<'py>(
    py: Python<'py>,
    poly: &Poly,
    k: u32,
    n_max: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let r = polyprod::experiments::find_power_solutions(&poly.inner, k, n_max).map_err(to_py_err)?;
    report_to_py(py, &r)
}

#[pyfunction]
fn s_d_census<'py>(py: Python<'py>, poly: &Poly, m: u64, n: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = polyprod::experiments::s_d_census(&poly.inner, m, n).map_err(to_py_err)?;
    report_to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (poly, d, m, n, h = None, z = None))]
fn square_sieve<'py>(
    py: Python<'py>,
    poly: &Poly,
    d: BigInt,
    m: u64,
    n: u64,
    h: Option<u64>,
    z: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = polyprod::experiments::square_sieve(&poly.inner, &d, m, n, h, z).map_err(to_py_err)?;
    report_to_py(py, &r)
}

#[pyfunction]
fn weil_ratio<'py>(
    py: Python<'py>,
    poly: &Poly,
    l: u64,
    p: u64,
    m: u64,
    n: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let r = polyprod::experiments::weil_ratio(&poly.inner, l, p, m, n).map_err(to_py_err)?;
    report_to_py(py, &r)
}

#[pyfunction]
fn chebotarev_census<'py>(py: Python<'py>, poly: &Poly, z: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = polyprod::experiments::chebotarev_census(&poly.inner, z).map_err(to_py_err)?;
    report_to_py(py, &r)
}

#[pyfunction]
fn exceptional_prime_census<'py>(
    py: Python<'py>,
    poly: &Poly,
    h_max: u64,
    x: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let r =
        polyprod::experiments::exceptional_prime_census(&poly.inner, h_max, x).map_err(to_py_err)?;
    report_to_py(py, &r)
}

#[pyfunction]
fn random_permutation_model<'py>(
    py: Python<'py>,
    p: u64,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let r =
        polyprod::experiments::random_permutation_model(p, trials, seed).map_err(to_py_err)?;
    report_to_py(py, &r)
}

#[pyfunction]
fn binomial_shift_check<'py>(
    py: Python<'py>,
    d: u64,
    a: i64,
    k_list: Vec<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = polyprod::experiments::binomial_shift_check(d, a, &k_list).map_err(to_py_err)?;
    report_to_py(py, &r)
}

#[pymodule]
fn polyprod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(primes_in, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(squarefree_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(is_perfect_kth_power, m)?)?;
    m.add_function(wrap_pyfunction!(count_roots_mod, m)?)?;
    m.add_function(wrap_pyfunction!(roots_mod, m)?)?;
    m.add_function(wrap_pyfunction!(is_square_poly_mod, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_irreducible_over_q, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_mod, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_product, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_product_minus_one, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_trace, m)?)?;
    m.add_function(wrap_pyfunction!(largest_prime_factor_of_f, m)?)?;
    m.add_function(wrap_pyfunction!(classify_prime, m)?)?;
    m.add_function(wrap_pyfunction!(image_stats, m)?)?;
    m.add_function(wrap_pyfunction!(collision_witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(missing_average, m)?)?;
    m.add_function(wrap_pyfunction!(find_power_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(s_d_census, m)?)?;
    m.add_function(wrap_pyfunction!(square_sieve, m)?)?;
    m.add_function(wrap_pyfunction!(weil_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(chebotarev_census, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_prime_census, m)?)?;
    m.add_function(wrap_pyfunction!(random_permutation_model, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_shift_check, m)?)?;
    Ok(())
}
