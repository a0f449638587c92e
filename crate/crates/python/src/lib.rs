//! Python bindings for `ped-core`.
//!
//! Exposes partitions, the four maps, the named series and the verifier:
//!
//!     import ped
//!     ped.count_class(5, "ped")            # 6
//!     ped.phi3([4, 3, 1]).image            # [5, 4, 1]
//!     ped.series("t3-lhs", 5)              # [0, 1, 0, 1, 2, 3]
//!     all(r.passed for r in ped.verify_all(10, 50))

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ped_core::bijection::{self, Bijection, MappedPartition};
use ped_core::partition::{self, PartitionClass};
use ped_core::qseries::{self, Length, PochhammerSpec, SeriesExpr, Sign, Theorem};
use ped_core::report::{IdentityId, IdentityReport, Method};
use ped_core::verify::{self, Fault, Verifier};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_class(name: &str) -> PyResult<PartitionClass> {
    name.parse().map_err(value_err)
}

fn to_partition(parts: Vec<i64>) -> PyResult<partition::Partition> {
    partition::Partition::from_signed(&parts).map_err(value_err)
}

/// A partition in canonical non-increasing order.
#[pyclass(name = "Partition", frozen, eq, hash, skip_from_py_object, module = "ped")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition {
    inner: partition::Partition,
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: Vec<i64>) -> PyResult<Self> {
        Ok(Self { inner: to_partition(parts)? })
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.inner.parts().to_vec()
    }

    #[getter]
    fn weight(&self) -> u64 {
        self.inner.weight()
    }

    /// Membership in "ped", "4regular", "de1", "de2", "de3" or "ped-gt1".
    fn is_member(&self, class: &str) -> PyResult<bool> {
        Ok(self.inner.is_member(parse_class(class)?))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Partition{}", self.inner)
    }
}

/// Image of a map with the case that produced it.
#[pyclass(name = "MappedPartition", frozen, module = "ped")]
struct PyMapped {
    inner: MappedPartition,
}

#[pymethods]
impl PyMapped {
    #[getter]
    fn image(&self) -> Vec<u32> {
        self.inner.image.parts().to_vec()
    }

    #[getter]
    fn case(&self) -> &'static str {
        self.inner.case_tag.name()
    }

    #[getter]
    fn target_weight(&self) -> u64 {
        self.inner.target_weight
    }

    fn __repr__(&self) -> String {
        format!(
            "MappedPartition(image={}, case={}, target_weight={})",
            self.inner.image, self.inner.case_tag, self.inner.target_weight
        )
    }
}

/// Outcome of one identity check.
#[pyclass(name = "IdentityReport", frozen, module = "ped")]
struct PyReport {
    inner: IdentityReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn identity(&self) -> &'static str {
        self.inner.identity().name()
    }

    #[getter]
    fn method(&self) -> &'static str {
        self.inner.method().name()
    }

    #[getter]
    fn range(&self) -> (u64, u64) {
        let r = self.inner.range();
        (r.start, r.end)
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn witness(&self) -> Option<String> {
        self.inner.witness().map(|w| w.to_string())
    }

    /// The report as a JSON object string.
    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("IdentityReport({})", self.inner)
    }
}

#[pyfunction]
fn enumerate_all(n: u32) -> Vec<PyPartition> {
    partition::enumerate_all(n).into_iter().map(|inner| PyPartition { inner }).collect()
}

#[pyfunction]
fn enumerate_class(n: u32, class: &str) -> PyResult<Vec<PyPartition>> {
    let class = parse_class(class)?;
    Ok(partition::enumerate_class(n, class).into_iter().map(|inner| PyPartition { inner }).collect())
}

#[pyfunction]
fn count_class(py: Python<'_>, n: u32, class: &str) -> PyResult<u64> {
    let class = parse_class(class)?;
    Ok(py.detach(|| partition::count_class(n, class)))
}

fn mapped(result: Result<MappedPartition, bijection::BijectionError>) -> PyResult<PyMapped> {
    result.map(|inner| PyMapped { inner }).map_err(value_err)
}

#[pyfunction]
fn phi1(parts: Vec<i64>) -> PyResult<PyMapped> {
    mapped(bijection::phi1(&to_partition(parts)?))
}

#[pyfunction]
fn psi1(parts: Vec<i64>, n: u64) -> PyResult<PyMapped> {
    mapped(bijection::psi1(&to_partition(parts)?, n))
}

#[pyfunction]
fn phi3(parts: Vec<i64>) -> PyResult<PyMapped> {
    mapped(bijection::phi3(&to_partition(parts)?))
}

#[pyfunction]
fn psi3(parts: Vec<i64>, n: u64) -> PyResult<PyMapped> {
    mapped(bijection::psi3(&to_partition(parts)?, n))
}

/// Coefficients 0..=order of a named series such as "de1" or "t2-rhs".
#[pyfunction]
fn series(expr: &str, order: usize) -> PyResult<Vec<i128>> {
    let expr: SeriesExpr = expr.parse().map_err(value_err)?;
    expr.build(order).map(|s| s.into_coeffs()).map_err(value_err)
}

/// Coefficients of `prod_{j<length} (1 - sign q^(offset + j*step))`; `length=None` is infinite.
#[pyfunction]
#[pyo3(signature = (sign, offset, step, length, order))]
fn pochhammer(sign: i32, offset: u32, step: u32, length: Option<u32>, order: usize) -> PyResult<Vec<i128>> {
    let sign = match sign {
        1 => Sign::Plus,
        -1 => Sign::Minus,
        other => return Err(PyValueError::new_err(format!("sign must be 1 or -1, got {other}"))),
    };
    let length = length.map_or(Length::Infinite, Length::Finite);
    let spec = PochhammerSpec::new(sign, offset, step, length).map_err(value_err)?;
    qseries::pochhammer(&spec, order).map(|s| s.into_coeffs()).map_err(value_err)
}

#[pyfunction]
fn theorem_sides(which: &str, order: usize) -> PyResult<(Vec<i128>, Vec<i128>)> {
    let theorem = match which.to_ascii_uppercase().as_str() {
        "T1" => Theorem::T1,
        "T2" => Theorem::T2,
        "T3" => Theorem::T3,
        _ => return Err(PyValueError::new_err(format!("unknown theorem {which:?}"))),
    };
    let (lhs, rhs) = qseries::theorem_sides(theorem, order).map_err(value_err)?;
    Ok((lhs.into_coeffs(), rhs.into_coeffs()))
}

#[pyfunction]
fn verify_bijection_layer(n: u64, which: &str) -> PyResult<PyReport> {
    let which = match which.to_ascii_lowercase().as_str() {
        "phi1" => Bijection::Phi1,
        "phi3" => Bijection::Phi3,
        _ => return Err(PyValueError::new_err(format!("unknown bijection {which:?}"))),
    };
    if n == 0 {
        return Err(PyValueError::new_err("bijection layers start at n = 1"));
    }
    Ok(PyReport { inner: bijection::verify_bijection_layer(n, which) })
}

fn build_verifier(faults: Vec<String>) -> PyResult<Verifier> {
    faults.iter().try_fold(Verifier::new(), |v, f| Ok(v.with_fault(f.parse::<Fault>().map_err(value_err)?)))
}

#[pyfunction]
#[pyo3(signature = (identity, bound, method, faults = Vec::new()))]
fn verify_identity(py: Python<'_>, identity: &str, bound: u64, method: &str, faults: Vec<String>) -> PyResult<PyReport> {
    let id: IdentityId = identity.parse().map_err(value_err)?;
    let method: Method = method.parse().map_err(value_err)?;
    let verifier = build_verifier(faults)?;
    let inner = py.detach(|| verifier.verify_identity(id, bound, method)).map_err(value_err)?;
    Ok(PyReport { inner })
}

#[pyfunction]
#[pyo3(signature = (bound_enum = verify::DEFAULT_ENUM_BOUND, bound_series = verify::DEFAULT_SERIES_BOUND, faults = Vec::new()))]
fn verify_all(py: Python<'_>, bound_enum: u64, bound_series: u64, faults: Vec<String>) -> PyResult<Vec<PyReport>> {
    let verifier = build_verifier(faults)?;
    let reports = py.detach(|| verifier.verify_all(bound_enum, bound_series)).map_err(value_err)?;
    Ok(reports.into_iter().map(|inner| PyReport { inner }).collect())
}

#[pymodule]
fn ped(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyMapped>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(enumerate_all, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_class, m)?)?;
    m.add_function(wrap_pyfunction!(count_class, m)?)?;
    m.add_function(wrap_pyfunction!(phi1, m)?)?;
    m.add_function(wrap_pyfunction!(psi1, m)?)?;
    m.add_function(wrap_pyfunction!(phi3, m)?)?;
    m.add_function(wrap_pyfunction!(psi3, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(pochhammer, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_sides, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bijection_layer, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identity, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
