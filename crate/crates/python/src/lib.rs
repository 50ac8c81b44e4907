//! Python bindings: rings, polynomials, ideals with Groebner bases and
//! certified membership, the catalog, and the verification scenarios.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use stratachow::catalog::catalog;
use stratachow::chern::compute_c9;
use stratachow::groebner::{self, GbOptions};
use stratachow::scenario;
use stratachow::{GradedRing, Polynomial};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Ring", frozen, skip_from_py_object, module = "stratachow")]
#[derive(Clone)]
struct PyRing(GradedRing);

#[pymethods]
impl PyRing {
    /// `Ring([("x", 1), ("y", 2)])`
    #[new]
    fn new(variables: Vec<(String, u32)>) -> PyResult<Self> {
        GradedRing::new(variables).map(PyRing).map_err(value_error)
    }

    fn parse(&self, text: &str) -> PyResult<PyPolynomial> {
        self.0.parse(text).map(PyPolynomial).map_err(value_error)
    }

    fn variables(&self) -> Vec<(String, u32)> {
        (0..self.0.nvars()).map(|i| (self.0.name(i).to_string(), self.0.degree_of(i))).collect()
    }

    fn __repr__(&self) -> String {
        let vars: Vec<String> = self.variables().into_iter().map(|(n, d)| format!("{n}:{d}")).collect();
        format!("Ring[{}]", vars.join(", "))
    }
}

#[pyclass(name = "Polynomial", frozen, from_py_object, module = "stratachow")]
#[derive(Clone)]
struct PyPolynomial(Polynomial);

impl PyPolynomial {
    fn same_ring(&self, other: &PyPolynomial) -> PyResult<()> {
        if self.0.ring().same_as(other.0.ring()) {
            Ok(())
        } else {
            Err(PyValueError::new_err("polynomials live in different rings"))
        }
    }
}

#[pymethods]
impl PyPolynomial {
    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// Terms as `(exponents, "numerator/denominator")`, leading term first.
    fn terms(&self) -> Vec<(Vec<u32>, String)> {
        self.0.terms().iter().map(|(m, c)| (m.exponents().to_vec(), c.to_string())).collect()
    }

    fn __add__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        self.same_ring(other)?;
        Ok(PyPolynomial(&self.0 + &other.0))
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        self.same_ring(other)?;
        Ok(PyPolynomial(&self.0 - &other.0))
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        self.same_ring(other)?;
        Ok(PyPolynomial(&self.0 * &other.0))
    }

    fn __neg__(&self) -> PyPolynomial {
        PyPolynomial(-&self.0)
    }

    fn __pow__(&self, exponent: u32, modulo: Option<u32>) -> PyResult<PyPolynomial> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular powers are not supported"));
        }
        Ok(PyPolynomial(self.0.pow(exponent)))
    }

    fn __eq__(&self, other: &PyPolynomial) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.0)
    }
}

#[pyclass(name = "MembershipReport", frozen, get_all, module = "stratachow")]
struct PyMembershipReport {
    member_over_q: bool,
    smooth_over_z16: bool,
    remainder: PyPolynomial,
    /// One cofactor per generator, present for members.
    cofactors: Option<Vec<PyPolynomial>>,
}

#[pymethods]
impl PyMembershipReport {
    fn __repr__(&self) -> String {
        format!(
            "MembershipReport(member_over_q={}, smooth_over_z16={}, remainder={})",
            self.member_over_q, self.smooth_over_z16, self.remainder.0
        )
    }
}

#[pyclass(name = "GroebnerBasis", frozen, module = "stratachow")]
struct PyGroebnerBasis(groebner::GroebnerBasis);

#[pymethods]
impl PyGroebnerBasis {
    fn basis(&self) -> Vec<PyPolynomial> {
        self.0.basis().into_iter().map(PyPolynomial).collect()
    }

    fn reduce(&self, p: &PyPolynomial) -> PyResult<PyPolynomial> {
        self.0.reduce(&p.0).map(PyPolynomial).map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyclass(name = "Ideal", frozen, skip_from_py_object, module = "stratachow")]
#[derive(Clone)]
struct PyIdeal(groebner::Ideal);

#[pymethods]
impl PyIdeal {
    #[new]
    fn new(ring: &PyRing, generators: Vec<PyPolynomial>) -> PyResult<Self> {
        groebner::Ideal::new(&ring.0, generators.into_iter().map(|p| p.0).collect()).map(PyIdeal).map_err(value_error)
    }

    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    fn generators(&self) -> Vec<PyPolynomial> {
        self.0.generators().iter().cloned().map(PyPolynomial).collect()
    }

    #[pyo3(signature = (degree_cap=None))]
    fn groebner_basis(&self, degree_cap: Option<u32>) -> PyResult<PyGroebnerBasis> {
        groebner::groebner_basis_with(&self.0, &GbOptions { degree_cap, ..GbOptions::default() })
            .map(PyGroebnerBasis)
            .map_err(value_error)
    }

    /// Membership decided by a Groebner basis, with a certificate.
    fn member(&self, p: &PyPolynomial) -> PyResult<PyMembershipReport> {
        let r = groebner::is_member(&p.0, &self.0).map_err(value_error)?;
        Ok(PyMembershipReport {
            member_over_q: r.member_over_q,
            smooth_over_z16: r.smooth_over_z16,
            remainder: PyPolynomial(r.certificate.remainder),
            cofactors: r
                .certificate
                .cofactors
                .filter(|_| r.member_over_q)
                .map(|c| c.into_iter().map(PyPolynomial).collect()),
        })
    }

    /// Membership decided by linear algebra in one degree.
    fn member_linear(&self, p: &PyPolynomial) -> bool {
        groebner::member_linear_oracle(&p.0, &self.0)
    }

    fn equals(&self, other: &PyIdeal) -> PyResult<bool> {
        groebner::ideal_equal(&self.0, &other.0).map_err(value_error)
    }

    fn is_nonzerodivisor(&self, f: &PyPolynomial) -> PyResult<bool> {
        groebner::is_nonzerodivisor(&f.0, &self.0).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Ideal({} generators)", self.0.generators().len())
    }
}

#[pyclass(name = "Report", frozen, get_all, module = "stratachow")]
struct PyReport {
    name: String,
    passed: bool,
    text: String,
    json: String,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!("Report({}, passed={})", self.name, self.passed)
    }
}

#[pyfunction]
fn catalog_ideal(name: &str) -> PyResult<PyIdeal> {
    catalog().ideal(name).map(PyIdeal).ok_or_else(|| PyKeyError::new_err(name.to_string()))
}

#[pyfunction]
fn catalog_class(name: &str) -> PyResult<PyPolynomial> {
    catalog().class(name).cloned().map(PyPolynomial).ok_or_else(|| PyKeyError::new_err(name.to_string()))
}

#[pyfunction]
fn catalog_ring(name: &str) -> PyResult<PyRing> {
    catalog().ring(name).cloned().map(PyRing).ok_or_else(|| PyKeyError::new_err(name.to_string()))
}

/// `(kind, name)` for every catalog entry.
#[pyfunction]
fn catalog_entries() -> Vec<(String, String)> {
    catalog().entries.iter().map(|e| (e.kind.keyword().to_string(), e.name.clone())).collect()
}

#[pyfunction]
fn scenarios() -> Vec<&'static str> {
    scenario::SCENARIOS.to_vec()
}

#[pyfunction]
fn run_scenario(py: Python<'_>, name: &str) -> PyResult<PyReport> {
    let r = py.detach(|| scenario::run_scenario(name)).map_err(value_error)?;
    Ok(PyReport { name: r.name.clone(), passed: r.pass, text: r.to_text(), json: r.to_json().to_string() })
}

#[pyfunction(name = "compute_c9")]
fn py_compute_c9(py: Python<'_>) -> PyResult<PyPolynomial> {
    py.detach(compute_c9).map(PyPolynomial).map_err(value_error)
}

#[pymodule]
#[pyo3(name = "stratachow")]
fn stratachow_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyGroebnerBasis>()?;
    m.add_class::<PyMembershipReport>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(catalog_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_class, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_ring, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_entries, m)?)?;
    m.add_function(wrap_pyfunction!(scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(py_compute_c9, m)?)?;
    Ok(())
}
