//! Directed coupling graphs and CNOT classification.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CouplingError {
    #[error("unknown architecture {0:?}; valid names: qx2, qx4")]
    UnknownArchitecture(String),
    #[error("self-loop on qubit {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0},{1}) references a qubit >= {2}")]
    QubitOutOfRange(usize, usize, usize),
    #[error("qubit count {0} outside 2..=10")]
    QubitCount(usize),
    #[error("qubit {qubit} out of range for {qubits}-qubit map")]
    NotOnMap { qubit: usize, qubits: usize },
    #[error("control equals target ({0})")]
    ControlEqualsTarget(usize),
    #[error("no single-hop route for cx({0},{1})")]
    NoRoute(usize, usize),
}

pub const MIN_QUBITS: usize = 2;
pub const MAX_QUBITS: usize = 10;

const QX2_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 2), (3, 2), (3, 4), (4, 2)];
const QX4_EDGES: [(usize, usize); 6] = [(1, 0), (2, 0), (2, 1), (3, 2), (3, 4), (2, 4)];

/// Set of natively executable CNOT orientations `(control, target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingMap {
    qubits: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl CouplingMap {
    pub fn new(
        qubits: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<CouplingMap, CouplingError> {
        if !(MIN_QUBITS..=MAX_QUBITS).contains(&qubits) {
            return Err(CouplingError::QubitCount(qubits));
        }
        let mut set = BTreeSet::new();
        for (c, t) in edges {
            if c == t {
                return Err(CouplingError::SelfLoop(c));
            }
            if c >= qubits || t >= qubits {
                return Err(CouplingError::QubitOutOfRange(c, t, qubits));
            }
            if !set.insert((c, t)) {
                return Err(CouplingError::DuplicateEdge(c, t));
            }
        }
        Ok(CouplingMap { qubits, edges: set })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, control: usize, target: usize) -> bool {
        self.edges.contains(&(control, target))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has_edge(a, b) || self.has_edge(b, a)
    }
}

impl fmt::Display for CouplingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} qubits:", self.qubits)?;
        for (c, t) in &self.edges {
            write!(f, " {c}->{t}")?;
        }
        Ok(())
    }
}

/// IBM QX2 (`"qx2"`) or QX4 (`"qx4"`).
pub fn builtin_map(name: &str) -> Result<CouplingMap, CouplingError> {
    let edges = match name.to_ascii_lowercase().as_str() {
        "qx2" => QX2_EDGES,
        "qx4" => QX4_EDGES,
        _ => return Err(CouplingError::UnknownArchitecture(name.to_string())),
    };
    CouplingMap::new(5, edges)
}

/// Orientation of the two edges through the middle qubit of a routed CNOT
/// `cx(a, c)` with middle `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RouteCase {
    /// `a -> m` and `c -> m`.
    A,
    /// `m -> a` and `m -> c`.
    B,
    /// `m -> a` and `c -> m`.
    C,
    /// `a -> m` and `m -> c`.
    D,
}

impl RouteCase {
    /// Whether the two middle edges this case relies on exist in `map`.
    pub fn holds(self, map: &CouplingMap, control: usize, middle: usize, target: usize) -> bool {
        let (a, m, c) = (control, middle, target);
        match self {
            RouteCase::A => map.has_edge(a, m) && map.has_edge(c, m),
            RouteCase::B => map.has_edge(m, a) && map.has_edge(m, c),
            RouteCase::C => map.has_edge(m, a) && map.has_edge(c, m),
            RouteCase::D => map.has_edge(a, m) && map.has_edge(m, c),
        }
    }
}

impl fmt::Display for RouteCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RouteCase::A => "A",
            RouteCase::B => "B",
            RouteCase::C => "C",
            RouteCase::D => "D",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CnotClass {
    Direct,
    Reversed,
    Routed { middle: usize, case: RouteCase },
}

pub fn classify_cnot(
    map: &CouplingMap,
    control: usize,
    target: usize,
) -> Result<CnotClass, CouplingError> {
    for q in [control, target] {
        if q >= map.qubits() {
            return Err(CouplingError::NotOnMap {
                qubit: q,
                qubits: map.qubits(),
            });
        }
    }
    if control == target {
        return Err(CouplingError::ControlEqualsTarget(control));
    }
    if map.has_edge(control, target) {
        return Ok(CnotClass::Direct);
    }
    if map.has_edge(target, control) {
        return Ok(CnotClass::Reversed);
    }
    let middle = (0..map.qubits())
        .filter(|&m| m != control && m != target)
        .find(|&m| map.adjacent(control, m) && map.adjacent(target, m))
        .ok_or(CouplingError::NoRoute(control, target))?;
    // Cheapest rewrite first.
    let case = [RouteCase::D, RouteCase::C, RouteCase::B, RouteCase::A]
        .into_iter()
        .find(|case| case.holds(map, control, middle, target))
        .expect("adjacent middle always matches one orientation case");
    Ok(CnotClass::Routed { middle, case })
}
