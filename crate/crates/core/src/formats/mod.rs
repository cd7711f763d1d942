//! External file formats.

mod coupling_file;
mod qasm;

pub use coupling_file::{emit_coupling_file, parse_coupling_file, CouplingFileError};
pub use qasm::{emit_qasm, parse_qasm, ParseError, MAX_QREG};
