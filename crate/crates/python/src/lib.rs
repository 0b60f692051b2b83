//! Python access to `tdembed`. Every function takes and returns JSON text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;


/// Runs a `tdembed` command line (without the program name). Returns the
/// exit code and the JSON report.
#[pyfunction]
fn run_command(args: Vec<String>) -> PyResult<(i32, String)> {
    let (code, report) = tdembed::cli::run_args(std::iter::once("tdembed".to_string()).chain(args))
        .map_err(PyValueError::new_err)?;
    Ok((code, report.to_string()))
}

#[pyfunction]
fn catalog(name: &str) -> PyResult<String> {
    let g = tdembed::groupcat::catalog(name).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let mut v = g.to_json();
    v["order"] = g.order().into();
    Ok(v.to_string())
}

/// Verification report of an embedding; raises on a violated axiom.
#[pyfunction]
fn verify(embedding: &str) -> PyResult<String> {
    let v: serde_json::Value = serde_json::from_str(embedding).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let e = tdembed::embedding::EmbeddedTD::from_json(&v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let r = tdembed::embedding::verify_embedding(&e).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(r.to_json().to_string())
}

#[pymodule]
fn tdembed_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run_command, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
