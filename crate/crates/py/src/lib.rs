//! Python bindings for `cycdes-core`.
//!
//! Counts are returned as Python ints of arbitrary size; reports that carry
//! nested structure are returned as JSON strings.

use std::collections::BTreeMap;

use cycdes_core::{self as core, DesignLimits, Error, FieldElement, DEFAULT_BUDGET};
use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } | Error::BruteForceTooLarge { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn element(field: &core::Field, code: u64) -> PyResult<FieldElement> {
    field
        .element(code)
        .ok_or_else(|| PyValueError::new_err(format!("{code} is not an element of GF({})", field.q())))
}

/// GF(p^m) with elements encoded as integers 0..q.
#[pyclass(name = "Field", frozen)]
struct PyField {
    inner: core::Field,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(p: u64, m: u32) -> PyResult<Self> {
        Ok(PyField {
            inner: core::Field::new(p, m).map_err(to_py)?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    /// Coefficients of the modulus, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    #[getter]
    fn alpha(&self) -> u32 {
        self.inner.alpha().code()
    }

    fn add(&self, x: u64, y: u64) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.add(element(f, x)?, element(f, y)?).code())
    }

    fn mul(&self, x: u64, y: u64) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.mul(element(f, x)?, element(f, y)?).code())
    }

    fn inv(&self, x: u64) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.inv(element(f, x)?).map_err(to_py)?.code())
    }

    fn pow(&self, x: u64, e: u64) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.pow(element(f, x)?, e).code())
    }

    fn frobenius(&self, x: u64, k: u64) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.frobenius(element(f, x)?, k).code())
    }

    /// The field element at 1-based coordinate `i`.
    fn tau(&self, i: u64) -> PyResult<u32> {
        Ok(self.inner.tau(i).map_err(to_py)?.code())
    }

    fn tau_inv(&self, x: u64) -> PyResult<u64> {
        let f = &self.inner;
        Ok(f.tau_inv(element(f, x)?))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, m={})", self.inner.p(), self.inner.m())
    }
}

#[pyfunction]
fn gaussian_binomial(n: i64, k: i64, p: u64) -> BigUint {
    core::gaussian_binomial(n, k, p)
}

/// Closed-form A_{q-p^j}.
#[pyfunction]
fn weight_count_formula(p: u64, m: u32, h: u32, j: u32) -> PyResult<BigUint> {
    core::weight_count_formula(p, m, h, j).map_err(to_py)
}

/// Closed-form weight distribution as `{weight: count}`.
#[pyfunction]
fn weight_distribution_formula(p: u64, m: u32, h: u32) -> PyResult<BTreeMap<u64, BigUint>> {
    Ok(core::WeightDistribution::from_formula(p, m, h).map_err(to_py)?.counts)
}

/// Weight distribution by exhaustive enumeration of every codeword.
#[pyfunction]
#[pyo3(signature = (p, m, h, budget = DEFAULT_BUDGET, naive = false))]
fn weight_distribution(
    py: Python<'_>,
    p: u64,
    m: u32,
    h: usize,
    budget: u64,
    naive: bool,
) -> PyResult<BTreeMap<u64, BigUint>> {
    let field = core::Field::new(p, m).map_err(to_py)?;
    let dist = py.detach(|| {
        if naive {
            core::weight_distribution_naive(&field, h, budget)
        } else {
            core::weight_distribution(&field, h, budget)
        }
    });
    Ok(dist.map_err(to_py)?.counts)
}

/// `(t, n, k, lambda, blocks)` of the 2-design held by weight q - p^j.
#[pyfunction]
fn two_design_lambda(p: u64, m: u32, h: u32, j: u32) -> PyResult<(u32, u64, u64, BigUint, BigUint)> {
    let d = core::two_design_lambda(p, m, h, j).map_err(to_py)?;
    Ok((d.t, d.n, d.k, d.lambda, d.block_count))
}

/// `(t, n, k, lambda, blocks)` of the binary 3-design held by weight 2^m - 2^h.
#[pyfunction]
fn three_design_lambda(m: u32, h: u32) -> PyResult<(u32, u64, u64, BigUint, BigUint)> {
    let d = core::three_design_lambda(m, h).map_err(to_py)?;
    Ok((d.t, d.n, d.k, d.lambda, d.block_count))
}

/// Distinct supports of the weight-`w` codewords as sorted 1-based point lists.
#[pyfunction]
#[pyo3(signature = (p, m, h, w, budget = DEFAULT_BUDGET))]
fn blocks_of_weight(py: Python<'_>, p: u64, m: u32, h: usize, w: u64, budget: u64) -> PyResult<Vec<Vec<u64>>> {
    let field = core::Field::new(p, m).map_err(to_py)?;
    let set = py
        .detach(|| core::blocks_of_weight(&field, h, w, budget))
        .map_err(to_py)?;
    Ok(set.blocks.iter().map(|b| b.points().collect()).collect())
}

/// Checks whether `blocks` on points 1..=n form a t-design.
/// Returns `(holds, lambda)` with `lambda` None when the cover count varies.
#[pyfunction]
fn verify_t_design(py: Python<'_>, n: u64, blocks: Vec<Vec<u64>>, t: u32) -> PyResult<(bool, Option<BigUint>)> {
    let set = core::BlockSet::from_blocks(n, blocks).map_err(to_py)?;
    let v = py
        .detach(|| core::verify_t_design(&set, t, &DesignLimits::default()))
        .map_err(to_py)?;
    Ok((v.holds, v.lambda))
}

/// Full design report for every weight class, as JSON.
#[pyfunction]
#[pyo3(signature = (p, m, h, t_max = 2, budget = DEFAULT_BUDGET))]
fn design_report(py: Python<'_>, p: u64, m: u32, h: usize, t_max: u32, budget: u64) -> PyResult<String> {
    let field = core::Field::new(p, m).map_err(to_py)?;
    let report = py
        .detach(|| core::design_report(&field, h, t_max, budget, &DesignLimits::default()))
        .map_err(to_py)?;
    Ok(report.to_json())
}

#[pymodule]
fn cycdes(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_function(wrap_pyfunction!(gaussian_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(weight_count_formula, m)?)?;
    m.add_function(wrap_pyfunction!(weight_distribution_formula, m)?)?;
    m.add_function(wrap_pyfunction!(weight_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(two_design_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(three_design_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(blocks_of_weight, m)?)?;
    m.add_function(wrap_pyfunction!(verify_t_design, m)?)?;
    m.add_function(wrap_pyfunction!(design_report, m)?)?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
