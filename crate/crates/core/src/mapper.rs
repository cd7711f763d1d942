//! Rewrites CNOTs that the coupling map cannot execute directly.
//!
//! Reversed CNOTs are conjugated by Hadamards on both qubits. Routed CNOTs
//! `cx(a, c)` go through a middle qubit `m` adjacent to both, using one of
//! two families of identities:
//!
//! * **Swap**: exchange `m` with one endpoint via a SWAP built from three
//!   CNOTs (with Hadamard direction fixes), run the CNOT on the native edge,
//!   exchange back, then cancel commuting CNOT and Hadamard pairs. Always
//!   11 gates.
//! * **Template**: the four-CNOT identity `cx(a,c) = cx(a,m) cx(m,c) cx(a,m)
//!   cx(m,c)` with Hadamard direction fixes where an orientation is wrong.
//!   4 to 10 gates depending on the orientation case.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::coupling::{classify_cnot, CnotClass, CouplingError, CouplingMap, RouteCase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Coupling(#[from] CouplingError),
    #[error("cx({control},{target}) via {middle}: case {case} edges are not native")]
    OrientationMismatch {
        control: usize,
        target: usize,
        middle: usize,
        case: RouteCase,
    },
    #[error("expected a routed classification")]
    NotRouted,
    #[error("circuit has {lines} lines but the map has only {qubits} qubits")]
    TooManyLines { lines: usize, qubits: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MappingStrategy {
    Swap,
    Template,
}

impl MappingStrategy {
    pub const ALL: [MappingStrategy; 2] = [MappingStrategy::Swap, MappingStrategy::Template];

    pub fn name(self) -> &'static str {
        match self {
            MappingStrategy::Swap => "swap",
            MappingStrategy::Template => "template",
        }
    }
}

impl fmt::Display for MappingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MappingStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "swap" => Ok(MappingStrategy::Swap),
            "template" => Ok(MappingStrategy::Template),
            _ => Err(format!(
                "unknown strategy {s:?} (expected swap or template)"
            )),
        }
    }
}

/// `cx(control, target)` executed on the native edge `target -> control`.
pub fn map_reversed_cnot(control: usize, target: usize) -> Vec<Gate> {
    use Gate as G;
    vec![
        G::h(control),
        G::h(target),
        G::cx(target, control),
        G::h(control),
        G::h(target),
    ]
}

/// Native replacement for `cx(control, target)` routed through `cls`'s
/// middle qubit.
pub fn map_routed_cnot(
    map: &CouplingMap,
    cls: CnotClass,
    control: usize,
    target: usize,
    strategy: MappingStrategy,
) -> Result<Vec<Gate>, MapError> {
    let CnotClass::Routed { middle, case } = cls else {
        return Err(MapError::NotRouted);
    };
    if control == target || middle == control || middle == target {
        return Err(CouplingError::ControlEqualsTarget(middle).into());
    }
    if !case.holds(map, control, middle, target) {
        return Err(MapError::OrientationMismatch {
            control,
            target,
            middle,
            case,
        });
    }
    Ok(match strategy {
        MappingStrategy::Template => template_sequence(case, control, middle, target),
        MappingStrategy::Swap => swap_sequence(case, control, middle, target),
    })
}

fn template_sequence(case: RouteCase, a: usize, m: usize, c: usize) -> Vec<Gate> {
    use Gate as G;
    match case {
        RouteCase::A => vec![
            G::cx(a, m),
            G::h(m),
            G::h(c),
            G::cx(c, m),
            G::h(m),
            G::cx(a, m),
            G::h(m),
            G::cx(c, m),
            G::h(m),
            G::h(c),
        ],
        RouteCase::B => vec![
            G::cx(m, c),
            G::h(a),
            G::h(m),
            G::cx(m, a),
            G::h(m),
            G::cx(m, c),
            G::h(m),
            G::cx(m, a),
            G::h(m),
            G::h(a),
        ],
        // Reverse the whole CNOT, then route cx(c, a) along c -> m -> a.
        RouteCase::C => vec![
            G::h(a),
            G::h(c),
            G::cx(c, m),
            G::cx(m, a),
            G::cx(c, m),
            G::cx(m, a),
            G::h(c),
            G::h(a),
        ],
        RouteCase::D => vec![G::cx(a, m), G::cx(m, c), G::cx(a, m), G::cx(m, c)],
    }
}

fn swap_sequence(case: RouteCase, a: usize, m: usize, c: usize) -> Vec<Gate> {
    use Gate as G;
    match case {
        // SWAP(c,m) cx(a,m) SWAP(c,m), SWAP native on c -> m.
        RouteCase::A => vec![
            G::cx(c, m),
            G::h(c),
            G::h(m),
            G::cx(c, m),
            G::h(m),
            G::cx(a, m),
            G::h(m),
            G::cx(c, m),
            G::h(m),
            G::h(c),
            G::cx(c, m),
        ],
        // SWAP(a,m) cx(m,c) SWAP(a,m), SWAP native on m -> a.
        RouteCase::B => vec![
            G::cx(m, a),
            G::h(a),
            G::h(m),
            G::cx(m, a),
            G::h(m),
            G::cx(m, c),
            G::h(m),
            G::cx(m, a),
            G::h(m),
            G::h(a),
            G::cx(m, a),
        ],
        // SWAP(c,m) cx(a,m) SWAP(c,m) with cx(a,m) reversed onto m -> a.
        RouteCase::C => vec![
            G::cx(c, m),
            G::h(c),
            G::h(m),
            G::cx(c, m),
            G::h(a),
            G::cx(m, a),
            G::h(a),
            G::cx(c, m),
            G::h(c),
            G::h(m),
            G::cx(c, m),
        ],
        // cx(a,c) = H H cx(c,a) H H, and a -> m, m -> c is case C for
        // cx(c,a). The outer Hadamards on c cancel against the case C ones.
        RouteCase::D => vec![
            G::h(a),
            G::cx(a, m),
            G::h(a),
            G::h(m),
            G::cx(a, m),
            G::cx(m, c),
            G::cx(a, m),
            G::h(a),
            G::h(m),
            G::cx(a, m),
            G::h(a),
        ],
    }
}

/// Native gate sequence for one CNOT under `map`.
pub fn map_cnot(
    map: &CouplingMap,
    control: usize,
    target: usize,
    strategy: MappingStrategy,
) -> Result<Vec<Gate>, MapError> {
    match classify_cnot(map, control, target)? {
        CnotClass::Direct => Ok(vec![Gate::cx(control, target)]),
        CnotClass::Reversed => Ok(map_reversed_cnot(control, target)),
        cls => map_routed_cnot(map, cls, control, target, strategy),
    }
}

/// Makes every CNOT native. Lines are taken as physical qubits; the result
/// has `map.qubits()` lines and keeps the output map.
pub fn map_circuit(
    c: &Circuit,
    map: &CouplingMap,
    strategy: MappingStrategy,
) -> Result<Circuit, MapError> {
    if c.lines() > map.qubits() {
        return Err(MapError::TooManyLines {
            lines: c.lines(),
            qubits: map.qubits(),
        });
    }
    let mut gates = Vec::with_capacity(c.len());
    for g in c.gates() {
        match (g.control(), g.target()) {
            (Some(ctl), Some(tgt)) => gates.extend(map_cnot(map, ctl, tgt, strategy)?),
            _ => gates.push(*g),
        }
    }
    let mut output_map: Vec<usize> = (0..map.qubits()).collect();
    output_map[..c.lines()].copy_from_slice(c.output_map());
    let out = Circuit::from_gates(map.qubits(), gates)
        .and_then(|m| m.with_output_map(output_map))
        .expect("mapped gates stay on the map's qubits");
    Ok(out)
}

/// Whether every CNOT in `c` runs on a native edge of `map`.
pub fn is_legal(c: &Circuit, map: &CouplingMap) -> bool {
    c.lines() <= map.qubits()
        && c.gates().iter().all(|g| match (g.control(), g.target()) {
            (Some(ctl), Some(tgt)) => map.has_edge(ctl, tgt),
            _ => true,
        })
}
