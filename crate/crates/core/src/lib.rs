//! Mapping and optimization of Clifford+T circuits for the IBM QX2 and QX4
//! five-qubit devices.
//!
//! The pipeline is: parse a circuit ([`formats`]), choose a placement of its
//! lines on the device ([`optimizer`]), rewrite CNOTs the coupling map does
//! not support ([`mapper`]), then cancel and merge gates ([`rewriter`]).
//! [`simulator`] checks every step by comparing unitaries.

pub mod circuit;
pub mod cli;
pub mod coupling;
pub mod formats;
pub mod mapper;
pub mod optimizer;
pub mod rewriter;
pub mod simulator;

pub use circuit::{depth, permute_lines, Circuit, CircuitError, Gate, GateKind, LinePlacement};
pub use coupling::{builtin_map, classify_cnot, CnotClass, CouplingError, CouplingMap, RouteCase};
pub use formats::{emit_qasm, parse_coupling_file, parse_qasm, CouplingFileError, ParseError};
pub use mapper::{map_circuit, map_reversed_cnot, map_routed_cnot, MapError, MappingStrategy};
pub use optimizer::{
    cost, enumerate_placements, optimize, CostOrder, CostReport, OptimizeError, OptimizeOptions,
    OptimizeResult,
};
pub use rewriter::{
    commutes, exchange_lines, merge_adjacent, reduce, relabel_tail, ReductionOutcome, RewriteError,
};
pub use simulator::{circuit_unitary, equivalent, SimError, Unitary};
