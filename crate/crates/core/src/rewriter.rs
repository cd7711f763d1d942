//! Commutation-driven gate reduction and line exchange.

use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("position {position} out of range for {len} gate(s)")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("cannot exchange line {0} with itself")]
    SameLine(usize),
    #[error("line {line} out of range for {lines} line(s)")]
    LineOutOfRange { line: usize, lines: usize },
}

/// Result of fusing two adjacent gates on the same qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// The pair is the identity.
    Eliminate,
    /// The pair equals a single gate.
    Merge(Gate),
    NoMatch,
}

/// Whether `g1 g2 = g2 g1` by the rule table.
///
/// With `extended`, a diagonal gate on a CNOT's control also commutes with
/// that CNOT, so `cx · T(control) · cx` collapses to `T(control)`.
pub fn commutes(g1: &Gate, g2: &Gate, extended: bool) -> bool {
    if !g1.shares_qubit(g2) {
        return true;
    }
    match (g1.control(), g2.control()) {
        (None, None) => g1.kind().is_diagonal() && g2.kind().is_diagonal(),
        (Some(x), Some(z)) => {
            let (y, w) = (g1.target().unwrap(), g2.target().unwrap());
            x != w && y != z
        }
        (Some(ctl), None) => extended && g2.kind().is_diagonal() && g2.first() == ctl,
        (None, Some(ctl)) => extended && g1.kind().is_diagonal() && g1.first() == ctl,
    }
}

pub fn merge_adjacent(g1: &Gate, g2: &Gate) -> ReductionOutcome {
    use GateKind::*;
    if g1.qubits() != g2.qubits() {
        return ReductionOutcome::NoMatch;
    }
    let q = g1.first();
    match (g1.kind(), g2.kind()) {
        (H, H) | (X, X) | (Z, Z) | (Cx, Cx) => ReductionOutcome::Eliminate,
        (T, Tdg) | (Tdg, T) | (S, Sdg) | (Sdg, S) => ReductionOutcome::Eliminate,
        (T, T) => ReductionOutcome::Merge(Gate::s(q)),
        (Tdg, Tdg) => ReductionOutcome::Merge(Gate::sdg(q)),
        (S, S) | (Sdg, Sdg) => ReductionOutcome::Merge(Gate::z(q)),
        _ => ReductionOutcome::NoMatch,
    }
}

/// Moves each gate left across the gates it commutes with, looking for a
/// partner to cancel or merge with, and repeats until nothing changes.
///
/// A gate only moves when the move ends in a reduction; otherwise it stays
/// where it was, so the result is deterministic and a fixpoint.
pub fn reduce(c: &Circuit, extended: bool) -> Circuit {
    let mut gates = c.gates().to_vec();
    while reduce_pass(&mut gates, extended) {}
    c.with_gates(gates)
}

fn reduce_pass(gates: &mut Vec<Gate>, extended: bool) -> bool {
    let mut changed = false;
    let mut i = 1;
    while i < gates.len() {
        let g = gates[i];
        let mut found = None;
        for j in (0..i).rev() {
            match merge_adjacent(&gates[j], &g) {
                ReductionOutcome::NoMatch => {}
                outcome => {
                    found = Some((j, outcome));
                    break;
                }
            }
            if !commutes(&gates[j], &g, extended) {
                break;
            }
        }
        match found {
            Some((j, ReductionOutcome::Merge(r))) => {
                gates.remove(i);
                gates[j] = r;
                changed = true;
            }
            Some((j, _)) => {
                gates.remove(i);
                gates.remove(j);
                i = (i - 1).max(1);
                changed = true;
            }
            None => i += 1,
        }
    }
    changed
}

fn check_exchange(c: &Circuit, position: usize, q1: usize, q2: usize) -> Result<(), RewriteError> {
    if position > c.len() {
        return Err(RewriteError::PositionOutOfRange {
            position,
            len: c.len(),
        });
    }
    if q1 == q2 {
        return Err(RewriteError::SameLine(q1));
    }
    if let Some(&line) = [q1, q2].iter().find(|&&q| q >= c.lines()) {
        return Err(RewriteError::LineOutOfRange {
            line,
            lines: c.lines(),
        });
    }
    Ok(())
}

/// Swaps `q1` and `q2` in every gate from `position` on and in the output map.
///
/// This is a pure relabeling: the wire crossing at `position` is implied,
/// not emitted. The result implements the original circuit only once a
/// SWAP(q1, q2) is realized there; [`exchange_lines`] emits that SWAP.
pub fn relabel_tail(
    c: &Circuit,
    position: usize,
    q1: usize,
    q2: usize,
) -> Result<Circuit, RewriteError> {
    check_exchange(c, position, q1, q2)?;
    let swap = |q| match q {
        q if q == q1 => q2,
        q if q == q2 => q1,
        q => q,
    };
    let gates = c
        .gates()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if i >= position {
                g.map_qubits(swap)
            } else {
                *g
            }
        })
        .collect();
    let mut output_map = c.output_map().to_vec();
    output_map.swap(q1, q2);
    Ok(c.with_gates(gates)
        .with_output_map(output_map)
        .expect("transposed permutation"))
}

/// Exchanges lines `q1` and `q2` at `position` with a three-CNOT SWAP and
/// relabels the tail and outputs so the circuit keeps its meaning.
pub fn exchange_lines(
    c: &Circuit,
    position: usize,
    q1: usize,
    q2: usize,
) -> Result<Circuit, RewriteError> {
    check_exchange(c, position, q1, q2)?;
    let mut gates = c.gates().to_vec();
    gates.splice(
        position..position,
        [Gate::cx(q1, q2), Gate::cx(q2, q1), Gate::cx(q1, q2)],
    );
    relabel_tail(&c.with_gates(gates), position + 3, q1, q2)
}
