//! Circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered list of Clifford+T [`Gate`]s over a fixed
//! number of qubit lines, plus an output map recording which logical output
//! each wire carries once the last gate has run. Lines are numbered from 0.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("circuit must have at least one line")]
    NoLines,
    #[error("gate {kind} expects {expected} qubit(s), got {got}")]
    Arity {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("control equals target ({0})")]
    ControlEqualsTarget(usize),
    #[error("qubit {qubit} out of range for {lines} line(s)")]
    QubitOutOfRange { qubit: usize, lines: usize },
    #[error("output map is not a permutation of 0..{0}")]
    InvalidOutputMap(usize),
    #[error("invalid placement: {0}")]
    InvalidPlacement(String),
}

/// The eight gate kinds of the Clifford+T library handled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    X,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Cx,
}

impl GateKind {
    pub const ALL: [GateKind; 8] = [
        GateKind::H,
        GateKind::X,
        GateKind::Z,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Cx,
    ];

    pub const SINGLE_QUBIT: [GateKind; 7] = [
        GateKind::H,
        GateKind::X,
        GateKind::Z,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cx => 2,
            _ => 1,
        }
    }

    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            k => k,
        }
    }

    /// Diagonal in the computational basis: Z, S, S†, T, T†.
    pub fn is_diagonal(self) -> bool {
        matches!(
            self,
            GateKind::Z | GateKind::S | GateKind::Sdg | GateKind::T | GateKind::Tdg
        )
    }

    /// Lower-case OpenQASM 2.0 mnemonic.
    pub fn qasm_name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Cx => "cx",
        }
    }

    pub fn from_qasm_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.qasm_name() == name)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.qasm_name())
    }
}

/// A gate bound to qubit lines. For CX the qubits are `[control, target]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    qubits: [usize; 2],
}

impl Gate {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Gate, CircuitError> {
        if qubits.len() != kind.arity() {
            return Err(CircuitError::Arity {
                kind,
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        match *qubits {
            [q] => Ok(Gate::single(kind, q)),
            [c, t] if c == t => Err(CircuitError::ControlEqualsTarget(c)),
            [c, t] => Ok(Gate {
                kind,
                qubits: [c, t],
            }),
            _ => unreachable!(),
        }
    }

    /// Single-qubit gate. Panics if `kind` is CX.
    pub fn single(kind: GateKind, qubit: usize) -> Gate {
        assert_eq!(kind.arity(), 1, "{kind} is not a single-qubit gate");
        Gate {
            kind,
            qubits: [qubit, qubit],
        }
    }

    /// CNOT gate. Panics if `control == target`.
    pub fn cx(control: usize, target: usize) -> Gate {
        assert_ne!(control, target, "CX control equals target");
        Gate {
            kind: GateKind::Cx,
            qubits: [control, target],
        }
    }

    pub fn h(q: usize) -> Gate {
        Gate::single(GateKind::H, q)
    }
    pub fn x(q: usize) -> Gate {
        Gate::single(GateKind::X, q)
    }
    pub fn z(q: usize) -> Gate {
        Gate::single(GateKind::Z, q)
    }
    pub fn s(q: usize) -> Gate {
        Gate::single(GateKind::S, q)
    }
    pub fn sdg(q: usize) -> Gate {
        Gate::single(GateKind::Sdg, q)
    }
    pub fn t(q: usize) -> Gate {
        Gate::single(GateKind::T, q)
    }
    pub fn tdg(q: usize) -> Gate {
        Gate::single(GateKind::Tdg, q)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    pub fn is_cx(&self) -> bool {
        self.kind == GateKind::Cx
    }

    /// The qubit of a single-qubit gate, or the control of a CX.
    pub fn first(&self) -> usize {
        self.qubits[0]
    }

    pub fn control(&self) -> Option<usize> {
        self.is_cx().then_some(self.qubits[0])
    }

    pub fn target(&self) -> Option<usize> {
        self.is_cx().then_some(self.qubits[1])
    }

    pub fn acts_on(&self, q: usize) -> bool {
        self.qubits().contains(&q)
    }

    pub fn shares_qubit(&self, other: &Gate) -> bool {
        self.qubits().iter().any(|&q| other.acts_on(q))
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            qubits: self.qubits,
        }
    }

    /// Rewrites every qubit index through `f`.
    pub fn map_qubits(&self, mut f: impl FnMut(usize) -> usize) -> Gate {
        Gate {
            kind: self.kind,
            qubits: [f(self.qubits[0]), f(self.qubits[1])],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.qubits() {
            [q] => write!(f, "{}({q})", self.kind),
            [c, t] => write!(f, "{}({c},{t})", self.kind),
            _ => unreachable!(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    lines: usize,
    gates: Vec<Gate>,
    output_map: Vec<usize>,
}

impl Circuit {
    pub fn new(lines: usize) -> Result<Circuit, CircuitError> {
        if lines == 0 {
            return Err(CircuitError::NoLines);
        }
        Ok(Circuit {
            lines,
            gates: Vec::new(),
            output_map: (0..lines).collect(),
        })
    }

    pub fn from_gates(
        lines: usize,
        gates: impl IntoIterator<Item = Gate>,
    ) -> Result<Circuit, CircuitError> {
        let mut c = Circuit::new(lines)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.lines) {
            return Err(CircuitError::QubitOutOfRange {
                qubit: q,
                lines: self.lines,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Replaces the output map. `map[w]` is the logical output carried by
    /// wire `w` at the end of the circuit.
    pub fn with_output_map(mut self, map: Vec<usize>) -> Result<Circuit, CircuitError> {
        if !is_permutation(&map, self.lines) {
            return Err(CircuitError::InvalidOutputMap(self.lines));
        }
        self.output_map = map;
        Ok(self)
    }

    /// Same lines and output map, different gate list. Callers guarantee
    /// the gates are in range.
    pub(crate) fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        debug_assert!(gates
            .iter()
            .all(|g| g.qubits().iter().all(|&q| q < self.lines)));
        Circuit {
            lines: self.lines,
            gates,
            output_map: self.output_map.clone(),
        }
    }

    pub fn lines(&self) -> usize {
        self.lines
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn output_map(&self) -> &[usize] {
        &self.output_map
    }

    pub fn has_identity_output_map(&self) -> bool {
        self.output_map.iter().enumerate().all(|(i, &o)| i == o)
    }

    /// Number of levels under greedy as-soon-as-possible layering.
    pub fn depth(&self) -> usize {
        depth(self)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

fn is_permutation(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in map {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    true
}

/// Injective assignment of logical lines to physical qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinePlacement {
    mapping: Vec<usize>,
}

impl LinePlacement {
    pub fn new(mapping: Vec<usize>) -> Result<LinePlacement, CircuitError> {
        let mut sorted = mapping.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(CircuitError::InvalidPlacement(format!(
                "physical qubit {} assigned twice",
                w[0]
            )));
        }
        Ok(LinePlacement { mapping })
    }

    pub fn identity(lines: usize) -> LinePlacement {
        LinePlacement {
            mapping: (0..lines).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.mapping[logical]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Smallest line count that holds every image.
    pub fn min_lines(&self) -> usize {
        self.mapping.iter().max().map_or(0, |&m| m + 1)
    }
}

impl fmt::Display for LinePlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.mapping.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}:{p}")?;
        }
        Ok(())
    }
}

pub fn depth(c: &Circuit) -> usize {
    let mut level = vec![0usize; c.lines()];
    let mut max = 0;
    for g in c.gates() {
        let l = 1 + g.qubits().iter().map(|&q| level[q]).max().unwrap_or(0);
        for &q in g.qubits() {
            level[q] = l;
        }
        max = max.max(l);
    }
    max
}

/// Relabels every line `l` of `c` as `p(l)` on a circuit of `target_lines`
/// lines. Unplaced target lines are idle and keep their own output label.
pub fn permute_lines(
    c: &Circuit,
    p: &LinePlacement,
    target_lines: usize,
) -> Result<Circuit, CircuitError> {
    if p.len() != c.lines() {
        return Err(CircuitError::InvalidPlacement(format!(
            "placement covers {} line(s), circuit has {}",
            p.len(),
            c.lines()
        )));
    }
    if p.min_lines() > target_lines {
        return Err(CircuitError::InvalidPlacement(format!(
            "placement image exceeds {target_lines} line(s)"
        )));
    }
    // LinePlacement::new already rejects duplicates; this guards clones of
    // other placements built elsewhere in the crate.
    LinePlacement::new(p.as_slice().to_vec())?;

    let gates = c
        .gates()
        .iter()
        .map(|g| g.map_qubits(|q| p.physical(q)))
        .collect();
    let mut output_map: Vec<usize> = (0..target_lines).collect();
    for (l, &o) in c.output_map().iter().enumerate() {
        output_map[p.physical(l)] = p.physical(o);
    }
    Ok(Circuit {
        lines: target_lines,
        gates,
        output_map,
    })
}
