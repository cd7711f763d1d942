//! Placement search: map and reduce the circuit under every injective
//! assignment of its lines to physical qubits and keep the cheapest result.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{permute_lines, Circuit, CircuitError, LinePlacement};
use crate::coupling::CouplingMap;
use crate::mapper::{map_circuit, MapError, MappingStrategy};
use crate::rewriter::reduce;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OptimizeError {
    #[error("cannot place {lines} line(s) on {qubits} qubit(s)")]
    TooManyLines { lines: usize, qubits: usize },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CostReport {
    pub gate_count: usize,
    pub depth: usize,
}

impl CostReport {
    pub fn of(c: &Circuit) -> CostReport {
        CostReport {
            gate_count: c.len(),
            depth: c.depth(),
        }
    }

    pub fn compare(&self, other: &CostReport, order: CostOrder) -> Ordering {
        match order {
            CostOrder::GatesFirst => {
                (self.gate_count, self.depth).cmp(&(other.gate_count, other.depth))
            }
            CostOrder::DepthFirst => {
                (self.depth, self.gate_count).cmp(&(other.depth, other.gate_count))
            }
        }
    }
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gates: {}, depth: {}", self.gate_count, self.depth)
    }
}

pub fn cost(c: &Circuit) -> CostReport {
    CostReport::of(c)
}

/// Which cost component decides first; the other breaks ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CostOrder {
    #[default]
    GatesFirst,
    DepthFirst,
}

impl FromStr for CostOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gates" => Ok(CostOrder::GatesFirst),
            "depth" => Ok(CostOrder::DepthFirst),
            _ => Err(format!(
                "unknown cost order {s:?} (expected gates or depth)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimizeOptions {
    pub strategy: MappingStrategy,
    pub search: bool,
    pub order: CostOrder,
    /// Let diagonal gates commute through CNOT controls during reduction.
    pub extended_rules: bool,
}

impl OptimizeOptions {
    pub fn new(strategy: MappingStrategy) -> OptimizeOptions {
        OptimizeOptions {
            strategy,
            search: true,
            order: CostOrder::GatesFirst,
            extended_rules: true,
        }
    }

    pub fn search(mut self, search: bool) -> OptimizeOptions {
        self.search = search;
        self
    }

    pub fn order(mut self, order: CostOrder) -> OptimizeOptions {
        self.order = order;
        self
    }

    pub fn extended_rules(mut self, on: bool) -> OptimizeOptions {
        self.extended_rules = on;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimizeResult {
    pub circuit: Circuit,
    pub placement: LinePlacement,
    pub cost: CostReport,
    pub strategy: MappingStrategy,
}

/// All injective maps `0..logical -> 0..physical`, lexicographic by image.
pub fn enumerate_placements(
    logical: usize,
    physical: usize,
) -> Result<Vec<LinePlacement>, OptimizeError> {
    if logical > physical {
        return Err(OptimizeError::TooManyLines {
            lines: logical,
            qubits: physical,
        });
    }
    Ok((0..physical)
        .permutations(logical)
        .map(|p| LinePlacement::new(p).expect("permutations are injective"))
        .collect())
}

/// Places, maps and reduces `c` for one placement.
pub fn evaluate_placement(
    c: &Circuit,
    map: &CouplingMap,
    placement: &LinePlacement,
    opts: &OptimizeOptions,
) -> Result<Circuit, OptimizeError> {
    let placed = permute_lines(c, placement, map.qubits())?;
    let mapped = map_circuit(&placed, map, opts.strategy)?;
    Ok(reduce(&mapped, opts.extended_rules))
}

/// Maps `c` onto `map`, trying every placement when `opts.search` is set.
///
/// Candidates are evaluated in parallel; the winner is the minimum cost,
/// ties going to the earliest placement in enumeration order. The identity
/// placement comes first, so the unsearched result is the baseline.
pub fn optimize(
    c: &Circuit,
    map: &CouplingMap,
    opts: &OptimizeOptions,
) -> Result<OptimizeResult, OptimizeError> {
    let placements = if opts.search {
        enumerate_placements(c.lines(), map.qubits())?
    } else {
        if c.lines() > map.qubits() {
            return Err(OptimizeError::TooManyLines {
                lines: c.lines(),
                qubits: map.qubits(),
            });
        }
        vec![LinePlacement::identity(c.lines())]
    };
    debug_assert!(placements[0].is_identity());

    let candidates = placements
        .into_par_iter()
        .enumerate()
        .map(|(idx, p)| {
            let circuit = evaluate_placement(c, map, &p, opts)?;
            Ok((idx, p, circuit))
        })
        .collect::<Result<Vec<_>, OptimizeError>>()?;

    let (_, placement, circuit) = candidates
        .into_iter()
        .min_by(|(ia, _, a), (ib, _, b)| cost(a).compare(&cost(b), opts.order).then(ia.cmp(ib)))
        .expect("at least the identity placement");
    Ok(OptimizeResult {
        cost: cost(&circuit),
        circuit,
        placement,
        strategy: opts.strategy,
    })
}
