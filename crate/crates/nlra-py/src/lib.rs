//! Python bindings: a thin veneer over the nlra kernel. Bundles come in as
//! JSON text (the same format the CLI reads), reports and constructions go
//! back out as plain Python dicts and JSON strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use nlra::cohomology::{Alternation, Complex};
use nlra::rep::{adjoint_kernel_rep, regular_rep, trivial_rep, Representation};

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into()
            } else {
                n.as_f64()
                    .expect("number is i64 or f64")
                    .into_pyobject(py)?
                    .unbind()
                    .into()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.unbind().into(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.unbind().into()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, to_py(py, val)?)?;
            }
            dict.unbind().into()
        }
    })
}

fn report_to_py(py: Python<'_>, report: &nlra::Report) -> PyResult<Py<PyAny>> {
    let value = serde_json::to_value(report).map_err(err)?;
    to_py(py, &value)
}

fn err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// A structure bundle: the n-Lie Rinehart data plus optional payload
/// blocks, parsed from the JSON wire format.
#[pyclass]
struct Bundle {
    inner: nlra::bundle::Bundle,
}

impl Bundle {
    fn coefficients(&self, which: &str) -> PyResult<Representation> {
        let r = &self.inner.rinehart;
        match which {
            "trivial" => trivial_rep(r).map_err(err),
            "anchor" => Ok(regular_rep(r)),
            "adjoint-kernel" => Ok(adjoint_kernel_rep(r).map_err(err)?.0),
            "file" => self
                .inner
                .representation
                .clone()
                .ok_or_else(|| PyValueError::new_err("bundle has no representation block")),
            other => Err(PyValueError::new_err(format!(
                "unknown coefficients `{other}` (trivial, anchor, adjoint-kernel, file)"
            ))),
        }
    }
}

#[pymethods]
impl Bundle {
    /// Parse a bundle from JSON text.
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        let inner = nlra::bundle::Bundle::from_json(json)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Bundle { inner })
    }

    /// Parse a bundle from a file path.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Bundle::new(&text)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.rinehart.dim()
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.rinehart.arity()
    }

    #[getter]
    fn base_dim(&self) -> usize {
        self.inner.rinehart.base().dim()
    }

    /// Itemized axiom verification; `weak` skips the anchor A-linearity.
    #[pyo3(signature = (weak = false))]
    fn verify(&self, py: Python<'_>, weak: bool) -> PyResult<Py<PyAny>> {
        report_to_py(py, &self.inner.rinehart.verify(weak))
    }

    /// Cohomology dimensions at degree `p` with the named coefficients.
    #[pyo3(signature = (p, coefficients = "trivial", strict = false))]
    fn cohomology(
        &self,
        py: Python<'_>,
        p: usize,
        coefficients: &str,
        strict: bool,
    ) -> PyResult<Py<PyAny>> {
        let rep = self.coefficients(coefficients)?;
        let mode = if strict {
            Alternation::Strict
        } else {
            Alternation::Block
        };
        let cx = Complex::new(&self.inner.rinehart, &rep, mode);
        let h = cx.cohomology(p).map_err(err)?;
        let dict = PyDict::new(py);
        dict.set_item("p", h.degree)?;
        dict.set_item("dim_cochains", h.dim_cochains)?;
        dict.set_item("dim_cocycles", h.dim_cocycles)?;
        dict.set_item("dim_coboundaries", h.dim_coboundaries)?;
        dict.set_item("dim_h", h.dim_h)?;
        Ok(dict.unbind().into())
    }

    /// Build an extension (`central`, `ttheta`, `semidirect`, `tensor`,
    /// `append_a`) from the bundle's payload blocks. Returns the verify
    /// report of the output and the constructed bundle as JSON text.
    fn extend(&self, py: Python<'_>, mode: &str) -> PyResult<(Py<PyAny>, String)> {
        let r = &self.inner.rinehart;
        let built =
            match mode {
                "central" => {
                    let phi = self
                        .inner
                        .phi
                        .as_ref()
                        .ok_or_else(|| PyValueError::new_err("bundle has no phi block"))?;
                    nlra::ext::central_extend(r, phi).map_err(err)?
                }
                "ttheta" => {
                    let rep = self.inner.representation.as_ref().ok_or_else(|| {
                        PyValueError::new_err("bundle has no representation block")
                    })?;
                    let theta = self
                        .inner
                        .theta
                        .as_ref()
                        .ok_or_else(|| PyValueError::new_err("bundle has no theta block"))?;
                    nlra::ext::t_theta_extend(r, rep, theta).map_err(err)?
                }
                "semidirect" => {
                    let rep = self.inner.representation.as_ref().ok_or_else(|| {
                        PyValueError::new_err("bundle has no representation block")
                    })?;
                    nlra::rep::semidirect(r, rep).map_err(err)?
                }
                "tensor" => r.tensor_extend().map_err(err)?,
                "append_a" => r.append_a().map_err(err)?,
                other => {
                    return Err(PyValueError::new_err(format!("unknown mode `{other}`")));
                }
            };
        let report = report_to_py(py, &built.verify(false))?;
        let doc = nlra::bundle::rinehart_to_json(&built);
        Ok((report, serde_json::to_string_pretty(&doc).map_err(err)?))
    }

    /// Crossed-module axioms CM0..CM4 of the bundle's crossed block.
    fn crossed_verify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let x = self
            .inner
            .crossed
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("bundle has no crossed block"))?;
        report_to_py(py, &nlra::crossed::verify_crossed(&self.inner.rinehart, x))
    }

    /// The degree-3 invariant of the crossed block (ternary case).
    fn h_class(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let x = self
            .inner
            .crossed
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("bundle has no crossed block"))?;
        let trace = nlra::crossed::h_class(&self.inner.rinehart, x, None, None).map_err(err)?;
        let dict = PyDict::new(py);
        dict.set_item("kernel_dim", trace.cokernel.kernel.dim())?;
        dict.set_item("cokernel_dim", trace.cokernel.quotient.dim())?;
        dict.set_item("h_zero", trace.h.is_zero())?;
        dict.set_item("square_zero", trace.square_zero)?;
        dict.set_item("class_zero", trace.class_zero)?;
        Ok(dict.unbind().into())
    }

    /// The bundle re-serialized in canonical form.
    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner.to_json()).map_err(err)
    }
}

/// Parse a scalar string and return its canonical form.
#[pyfunction]
fn canonical_scalar(text: &str) -> PyResult<String> {
    let s = nlra::exact::parse_scalar(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(nlra::exact::format_scalar(&s))
}

#[pymodule]
fn nlra_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Bundle>()?;
    m.add_function(wrap_pyfunction!(canonical_scalar, m)?)?;
    Ok(())
}
