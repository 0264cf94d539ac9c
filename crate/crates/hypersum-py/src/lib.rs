//! Python bindings: exact hypersum evaluation, factored closed forms, and
//! the coefficient tables, with rationals crossing the boundary as
//! `fractions.Fraction` and big integers as plain `int`.

use num::bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hypersum::cli::{render_latex, render_text, FactoredFormDocument};
use hypersum::coefficients as coeffs;
use hypersum::hypersums;
use hypersum::oracles;
use hypersum::power_sums;
use hypersum::rat::Rat;
use hypersum::selfcheck;

/// Factored closed form of `S_k^(L)` in the variable `y = N(N+L+1)`.
#[pyclass(frozen, name = "FactoredForm")]
struct FactoredForm {
    inner: hypersums::FactoredHypersum,
}

#[pymethods]
impl FactoredForm {
    #[getter]
    fn level(&self) -> u32 {
        self.inner.level
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k
    }

    #[getter]
    fn prefactor(&self) -> Rat {
        self.inner.prefactor.clone()
    }

    #[getter]
    fn sqrt_exponent(&self) -> u8 {
        self.inner.sqrt_exponent
    }

    #[getter]
    fn linear_offsets(&self) -> Vec<i64> {
        self.inner.linear_offsets.clone()
    }

    /// Integer coefficients of the primitive core polynomial, ascending in y.
    #[getter]
    fn core_coeffs(&self) -> Vec<BigInt> {
        self.inner
            .core
            .coeffs()
            .iter()
            .map(|c| c.numer().clone())
            .collect()
    }

    #[getter]
    fn core_scale(&self) -> Rat {
        self.inner.core_scale.clone()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn m(&self) -> u64 {
        self.inner.m
    }

    /// Exact value at integer N.
    fn eval_at(&self, n: i64) -> Rat {
        self.inner.eval_at(n)
    }

    /// Dense polynomial in N, ascending coefficients.
    fn expand_in_n(&self) -> Vec<Rat> {
        self.inner.expand_in_n()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&FactoredFormDocument::from_factored(&self.inner))
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: FactoredFormDocument =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let inner = doc.to_factored().map_err(PyValueError::new_err)?;
        Ok(FactoredForm { inner })
    }

    fn latex(&self) -> String {
        render_latex(&self.inner)
    }

    fn __str__(&self) -> String {
        render_text(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("FactoredForm(L={}, k={})", self.inner.level, self.inner.k)
    }
}

/// Factored closed form of S_k^(L); k >= 1.
#[pyfunction]
fn factored(level: u32, k: u32) -> PyResult<FactoredForm> {
    if k == 0 {
        return Err(PyValueError::new_err("factored form needs k >= 1"));
    }
    Ok(FactoredForm {
        inner: hypersums::theorem3_factored(level, k),
    })
}

/// Exact S_k^(L)(N) by the chosen route; "all" evaluates every applicable
/// route and raises on disagreement.
#[pyfunction]
#[pyo3(signature = (level, k, n, method = "all"))]
fn eval(level: u32, k: u32, n: i64, method: &str) -> PyResult<Rat> {
    let check_l0 = |name: &str| {
        if level != 0 {
            Err(PyValueError::new_err(format!(
                "method {name:?} is defined for level 0 only"
            )))
        } else {
            Ok(())
        }
    };
    match method {
        "brute" => {
            if n < 0 {
                return Err(PyValueError::new_err("brute summation needs N >= 0"));
            }
            Ok(Rat::from_integer(oracles::hypersum_brute(
                level, k, n as u64,
            )))
        }
        "stirling" => Ok(oracles::hypersum_stirling(level, k, n)),
        "faulhaber" => {
            check_l0("faulhaber")?;
            if k == 0 {
                return Err(PyValueError::new_err("faulhaber needs k >= 1"));
            }
            Ok(power_sums::faulhaber_eval(k, n))
        }
        "theorem1" => {
            check_l0("theorem1")?;
            Ok(power_sums::theorem1_eval(k, n))
        }
        "theorem2" => Ok(hypersums::theorem2_eval(level, k, n)),
        "theorem3" => Ok(hypersums::theorem3_eval(level, k, n)),
        "all" => {
            let mut results: Vec<(&str, Rat)> = Vec::new();
            if n >= 0 {
                results.push((
                    "brute",
                    Rat::from_integer(oracles::hypersum_brute(level, k, n as u64)),
                ));
            }
            results.push(("stirling", oracles::hypersum_stirling(level, k, n)));
            results.push(("theorem2", hypersums::theorem2_eval(level, k, n)));
            results.push(("theorem3", hypersums::theorem3_eval(level, k, n)));
            if level == 0 {
                if k >= 1 {
                    results.push(("faulhaber", power_sums::faulhaber_eval(k, n)));
                }
                results.push(("theorem1", power_sums::theorem1_eval(k, n)));
            }
            let first = results[0].1.clone();
            if results.iter().all(|(_, v)| *v == first) {
                Ok(first)
            } else {
                let detail: Vec<String> = results.iter().map(|(m, v)| format!("{m}={v}")).collect();
                Err(PyValueError::new_err(format!(
                    "disagreement: {}",
                    detail.join(", ")
                )))
            }
        }
        other => Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
}

/// Literal nested summation (integer result).
#[pyfunction]
fn hypersum_brute(level: u32, k: u32, n: u64) -> BigInt {
    oracles::hypersum_brute(level, k, n)
}

/// Coefficient table C_p^(L) for p = 0..=p_max.
#[pyfunction]
#[pyo3(signature = (p_max, level = 0))]
fn coefficients(p_max: usize, level: u32) -> Vec<Rat> {
    coeffs::c_hyper_table(level, p_max).values().to_vec()
}

/// Bernoulli number B_n (B_1 = -1/2).
#[pyfunction]
fn bernoulli(n: u64) -> Rat {
    coeffs::bernoulli(n)
}

/// Stirling number of the second kind.
#[pyfunction]
fn stirling2(k: usize, q: usize) -> PyResult<BigInt> {
    if q > k {
        return Err(PyValueError::new_err(format!(
            "stirling2({k},{q}): need q <= k"
        )));
    }
    Ok(oracles::stirling2(k, q))
}

/// Runs the library's invariant suites; returns (name, cases, failures)
/// triples in a fixed order.
#[pyfunction]
#[pyo3(signature = (p_max = 10, l_max = 6, k_max = 10, n_max = 15))]
fn selfcheck_report(
    p_max: usize,
    l_max: u32,
    k_max: u32,
    n_max: u64,
) -> Vec<(String, usize, Vec<String>)> {
    selfcheck::run_all(&selfcheck::Bounds {
        p_max,
        l_max,
        k_max,
        n_max,
    })
    .into_iter()
    .map(|o| (o.name.to_string(), o.cases, o.failures))
    .collect()
}

#[pymodule]
fn hypersum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FactoredForm>()?;
    m.add_function(wrap_pyfunction!(factored, m)?)?;
    m.add_function(wrap_pyfunction!(eval, m)?)?;
    m.add_function(wrap_pyfunction!(hypersum_brute, m)?)?;
    m.add_function(wrap_pyfunction!(coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(stirling2, m)?)?;
    m.add_function(wrap_pyfunction!(selfcheck_report, m)?)?;
    Ok(())
}
