//! Python bindings: thin wrappers over the core types plus module-level
//! helpers for parsing, construction, checking and enumeration.

use pyo3::prelude::*;

#[pymodule]
fn trellis_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
