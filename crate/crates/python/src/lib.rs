//! Python bindings. High-precision values cross the boundary as decimal
//! strings; a float is provided alongside where convenient.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use rug::{Integer, Rational};

use stieltjes::asymptotics;
use stieltjes::finite_diff;
use stieltjes::mp::{to_decimal, BigComplex, PrecisionContext};
use stieltjes::saddle::{self, Branch};
use stieltjes::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Precision(_) | Error::Domain(_) | Error::Parse(_) | Error::Pole(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn ctx(digits: u32) -> PyResult<PrecisionContext> {
    PrecisionContext::new(digits).map_err(py_err)
}

fn rational(s: &str) -> PyResult<Rational> {
    s.parse().map_err(|_| PyValueError::new_err(format!("not a rational: {s:?}")))
}

/// γ_n to `digits` digits: (decimal string, certified digits, certified).
#[pyfunction]
#[pyo3(signature = (n, digits=30, epsilon="1/32"))]
fn gamma_exact(n: usize, digits: u32, epsilon: &str) -> PyResult<(String, u32, bool)> {
    let r = finite_diff::gamma_exact(n, &rational(epsilon)?, None, &ctx(digits)?).map_err(py_err)?;
    let shown = digits.min(r.digits_certified).max(1) as usize;
    Ok((to_decimal(&r.value, shown), r.digits_certified, r.certified))
}

/// Saddle-point estimate of γ_n as a float.
#[pyfunction]
#[pyo3(signature = (n, refined=false))]
fn gamma_asymptotic(n: u64, refined: bool) -> PyResult<f64> {
    let c = ctx(30)?;
    let n = Integer::from(n);
    let est = if refined {
        asymptotics::gamma_asymptotic_refined(&n, &c)
    } else {
        asymptotics::gamma_asymptotic(&n, &c)
    };
    Ok(est.map_err(py_err)?.value.to_f64())
}

/// Sign of γ_n for n given as "123", "1e100" or "10^100": (sign, certified).
#[pyfunction]
fn sign(n: &str) -> PyResult<(i8, bool)> {
    let p = asymptotics::sign_gamma(n, &ctx(30)?).map_err(py_err)?;
    Ok((p.sign, p.certified))
}

/// Saddle point s_n on the upper (plus) or lower branch.
#[pyfunction]
#[pyo3(signature = (n, upper=true))]
fn saddle_point(n: u64, upper: bool) -> PyResult<(f64, f64)> {
    let branch = if upper { Branch::Plus } else { Branch::Minus };
    let sp = saddle::saddle_for_n(&Integer::from(n), branch, &ctx(30)?).map_err(py_err)?;
    Ok((sp.location.re().to_f64(), sp.location.im().to_f64()))
}

/// Lambert W on branch `k` at a complex argument.
#[pyfunction]
#[pyo3(signature = (z, k=0))]
fn lambert_w(z: (f64, f64), k: i64) -> PyResult<(f64, f64)> {
    let c = ctx(30)?;
    let z = BigComplex::with_val(c.bits(), z.0, z.1);
    let w = saddle::lambert_w(&z, k, &c).map_err(py_err)?;
    Ok((w.re().to_f64(), w.im().to_f64()))
}

#[pymodule]
fn stieltjes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gamma_exact, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(sign, m)?)?;
    m.add_function(wrap_pyfunction!(saddle_point, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_w, m)?)?;
    Ok(())
}
