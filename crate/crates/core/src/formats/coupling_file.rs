//! Coupling map files: `{"qubits": n, "edges": [[control, target], ...]}`.

use serde::Deserialize;
use thiserror::Error;

use crate::coupling::{CouplingError, CouplingMap};

#[derive(Debug, Error)]
pub enum CouplingFileError {
    #[error("malformed coupling file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid coupling map: {0}")]
    Invalid(#[from] CouplingError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CouplingFile {
    qubits: usize,
    edges: Vec<[usize; 2]>,
}

pub fn parse_coupling_file(source: &str) -> Result<CouplingMap, CouplingFileError> {
    let file: CouplingFile = serde_json::from_str(source)?;
    Ok(CouplingMap::new(
        file.qubits,
        file.edges.into_iter().map(|[c, t]| (c, t)),
    )?)
}

pub fn emit_coupling_file(map: &CouplingMap) -> String {
    let edges: Vec<[usize; 2]> = map.edges().map(|(c, t)| [c, t]).collect();
    serde_json::json!({ "qubits": map.qubits(), "edges": edges }).to_string()
}
