//! Dense unitary construction and the equivalence oracle.
//!
//! Bit convention: line `i` is bit `i` of a basis index, so line 0 is the
//! least significant bit. Every matrix in this module follows [`LINE_BIT`].

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind, LinePlacement};

/// Line `i` contributes `1 << (LINE_BIT * i)`; little-endian.
pub const LINE_BIT: usize = 1;

pub const MAX_LINES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("dimension too large: {0} lines (max {MAX_LINES})")]
    TooManyLines(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[inline]
fn bit(line: usize) -> usize {
    1 << (LINE_BIT * line)
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// 2x2 matrix of a single-qubit kind, row-major.
pub fn single_qubit_matrix(kind: GateKind) -> [[Complex64; 2]; 2] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let h = FRAC_1_SQRT_2;
    match kind {
        GateKind::H => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
        GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::Z => [[ONE, ZERO], [ZERO, c(-1.0, 0.0)]],
        GateKind::S => [[ONE, ZERO], [ZERO, c(0.0, 1.0)]],
        GateKind::Sdg => [[ONE, ZERO], [ZERO, c(0.0, -1.0)]],
        GateKind::T => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, FRAC_PI_4)]],
        GateKind::Tdg => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, -FRAC_PI_4)]],
        GateKind::Cx => panic!("cx is not a single-qubit gate"),
    }
}

/// Square complex matrix over `lines` qubits, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    lines: usize,
    data: Vec<Complex64>,
}

impl Unitary {
    pub fn identity(lines: usize) -> Result<Unitary, SimError> {
        if lines > MAX_LINES {
            return Err(SimError::TooManyLines(lines));
        }
        let dim = 1 << lines;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Ok(Unitary { lines, data })
    }

    /// Basis permutation moving the value of line `i` to line `perm[i]`.
    pub fn line_permutation(perm: &[usize]) -> Result<Unitary, SimError> {
        let lines = perm.len();
        let mut u = Unitary::identity(lines)?;
        let dim = u.dim();
        u.data.fill(ZERO);
        for x in 0..dim {
            let y = move_bits(x, perm);
            u.data[y * dim + x] = ONE;
        }
        Ok(u)
    }

    pub fn of_gate(gate: &Gate, lines: usize) -> Result<Unitary, SimError> {
        let mut u = Unitary::identity(lines)?;
        u.apply(gate);
        Ok(u)
    }

    pub fn lines(&self) -> usize {
        self.lines
    }

    pub fn dim(&self) -> usize {
        1 << self.lines
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Left-multiplies by the gate's unitary.
    pub fn apply(&mut self, gate: &Gate) {
        let dim = self.dim();
        match *gate.qubits() {
            [q] => {
                let m = single_qubit_matrix(gate.kind());
                let b = bit(q);
                for r0 in (0..dim).filter(|r| r & b == 0) {
                    let r1 = r0 | b;
                    for col in 0..dim {
                        let a0 = self.data[r0 * dim + col];
                        let a1 = self.data[r1 * dim + col];
                        self.data[r0 * dim + col] = m[0][0] * a0 + m[0][1] * a1;
                        self.data[r1 * dim + col] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
            [c, t] => {
                let (cb, tb) = (bit(c), bit(t));
                for r0 in (0..dim).filter(|r| r & cb != 0 && r & tb == 0) {
                    let r1 = r0 | tb;
                    for col in 0..dim {
                        self.data.swap(r0 * dim + col, r1 * dim + col);
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &Unitary) -> Result<Unitary, SimError> {
        if self.lines != rhs.lines {
            return Err(SimError::DimensionMismatch(format!(
                "{} vs {} lines",
                self.lines, rhs.lines
            )));
        }
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.data[i * dim + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..dim {
                    data[i * dim + j] += a * rhs.data[k * dim + j];
                }
            }
        }
        Ok(Unitary {
            lines: self.lines,
            data,
        })
    }

    pub fn adjoint(&self) -> Unitary {
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[j * dim + i] = self.data[i * dim + j].conj();
            }
        }
        Unitary {
            lines: self.lines,
            data,
        }
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Unitary) -> f64 {
        if self.lines != other.lines {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Unitary, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Frobenius norm of `U†U - I`.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().mul(self).expect("same shape");
        let dim = self.dim();
        let mut sum = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let e = if i == j { ONE } else { ZERO };
                sum += (p.data[i * dim + j] - e).norm_sqr();
            }
        }
        sum.sqrt()
    }

    /// Row permutation that realizes an output map on top of `self`.
    fn permute_rows(&self, perm: &[usize]) -> Unitary {
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for x in 0..dim {
            let y = move_bits(x, perm);
            data[y * dim..(y + 1) * dim].copy_from_slice(&self.data[x * dim..(x + 1) * dim]);
        }
        Unitary {
            lines: self.lines,
            data,
        }
    }
}

/// Moves the value of bit `i` in `x` to bit `perm[i]`.
fn move_bits(x: usize, perm: &[usize]) -> usize {
    perm.iter()
        .enumerate()
        .filter(|&(i, _)| x & bit(i) != 0)
        .fold(0, |acc, (_, &p)| acc | bit(p))
}

/// Product of the gate unitaries; the output map is ignored.
pub fn circuit_unitary(c: &Circuit) -> Result<Unitary, SimError> {
    let mut u = Unitary::identity(c.lines())?;
    for g in c.gates() {
        u.apply(g);
    }
    Ok(u)
}

/// Gate unitary followed by the wire permutation that routes wire `w` to
/// its logical output `output_map[w]`.
pub fn effective_unitary(c: &Circuit) -> Result<Unitary, SimError> {
    let u = circuit_unitary(c)?;
    if c.has_identity_output_map() {
        Ok(u)
    } else {
        Ok(u.permute_rows(c.output_map()))
    }
}

/// Whether `c2` implements `c1` once `c1`'s lines are placed onto `c2`'s
/// qubits through `placement`, honoring both output maps and allowing a
/// global phase.
pub fn equivalent(
    c1: &Circuit,
    c2: &Circuit,
    placement: &LinePlacement,
    tol: f64,
) -> Result<bool, SimError> {
    if placement.len() != c1.lines() {
        return Err(SimError::DimensionMismatch(format!(
            "placement covers {} line(s), first circuit has {}",
            placement.len(),
            c1.lines()
        )));
    }
    if placement.min_lines() > c2.lines() {
        return Err(SimError::DimensionMismatch(format!(
            "placement reaches qubit {}, second circuit has {} line(s)",
            placement.min_lines() - 1,
            c2.lines()
        )));
    }
    let inner = effective_unitary(c1)?;
    let outer = effective_unitary(c2)?;
    let reference = embed(&inner, placement, c2.lines());
    Ok(equal_up_to_phase(&reference, &outer, tol))
}

/// `P (U ⊗ I) P⁻¹` for the placement's basis permutation `P`.
fn embed(u: &Unitary, placement: &LinePlacement, lines: usize) -> Unitary {
    let dim = 1usize << lines;
    let placed_mask = placement.as_slice().iter().fold(0, |m, &p| m | bit(p));
    let logical = |x: usize| {
        placement
            .as_slice()
            .iter()
            .enumerate()
            .filter(|&(_, &p)| x & bit(p) != 0)
            .fold(0, |acc, (l, _)| acc | bit(l))
    };
    let mut data = vec![ZERO; dim * dim];
    for x in 0..dim {
        let lx = logical(x);
        for y in (0..dim).filter(|y| y & !placed_mask == x & !placed_mask) {
            data[x * dim + y] = u.get(lx, logical(y));
        }
    }
    Unitary { lines, data }
}

fn equal_up_to_phase(reference: &Unitary, candidate: &Unitary, tol: f64) -> bool {
    if reference.lines != candidate.lines {
        return false;
    }
    let Some((k, pivot)) = reference
        .data
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
    else {
        return true;
    };
    let ratio = candidate.data[k] / pivot;
    if (ratio.norm() - 1.0).abs() > tol {
        return false;
    }
    let phase = ratio / ratio.norm();
    reference
        .data
        .iter()
        .zip(&candidate.data)
        .all(|(r, c)| (c - phase * r).norm() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_line(gates: &[Gate]) -> Unitary {
        circuit_unitary(&Circuit::from_gates(1, gates.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn empty_is_identity() {
        let u = one_line(&[]);
        assert_eq!(u, Unitary::identity(1).unwrap());
    }

    #[test]
    fn x_matrix() {
        let u = one_line(&[Gate::x(0)]);
        assert_eq!(u.get(0, 0), ZERO);
        assert_eq!(u.get(0, 1), ONE);
        assert_eq!(u.get(1, 0), ONE);
        assert_eq!(u.get(1, 1), ZERO);
    }

    #[test]
    fn hh_and_t8_are_identity() {
        let id = Unitary::identity(1).unwrap();
        assert!(one_line(&[Gate::h(0), Gate::h(0)]).approx_eq(&id, 1e-12));
        assert!(one_line(&[Gate::t(0); 8]).approx_eq(&id, 1e-12));
        assert!(!one_line(&[Gate::t(0); 7]).approx_eq(&id, 1e-3));
    }

    #[test]
    fn cx_follows_little_endian() {
        // CX(0,1): control is bit 0, so |01> (index 1) maps to |11> (index 3).
        let u = Unitary::of_gate(&Gate::cx(0, 1), 2).unwrap();
        assert_eq!(u.get(3, 1), ONE);
        assert_eq!(u.get(1, 3), ONE);
        assert_eq!(u.get(2, 2), ONE);
        assert_eq!(u.get(0, 0), ONE);
    }

    #[test]
    fn gate_matrices_are_unitary() {
        for k in GateKind::SINGLE_QUBIT {
            let u = Unitary::of_gate(&Gate::single(k, 0), 1).unwrap();
            assert!(u.unitarity_error() < 1e-14, "{k}");
        }
        let u = Unitary::of_gate(&Gate::cx(1, 0), 2).unwrap();
        assert!(u.unitarity_error() < 1e-14);
    }

    #[test]
    fn too_many_lines() {
        let c = Circuit::new(11).unwrap();
        assert_eq!(circuit_unitary(&c), Err(SimError::TooManyLines(11)));
    }

    #[test]
    fn equivalence_examples() {
        let cx = Circuit::from_gates(5, [Gate::cx(4, 3)]).unwrap();
        let mapped = Circuit::from_gates(
            5,
            [
                Gate::h(4),
                Gate::h(3),
                Gate::cx(3, 4),
                Gate::h(4),
                Gate::h(3),
            ],
        )
        .unwrap();
        assert!(equivalent(&cx, &mapped, &LinePlacement::identity(5), 1e-10).unwrap());

        let h = Circuit::from_gates(1, [Gate::h(0)]).unwrap();
        let x = Circuit::from_gates(1, [Gate::x(0)]).unwrap();
        assert!(!equivalent(&h, &x, &LinePlacement::identity(1), 1e-10).unwrap());

        let a = Circuit::from_gates(2, [Gate::cx(0, 1)]).unwrap();
        let b = Circuit::from_gates(5, [Gate::cx(2, 4)]).unwrap();
        let p = LinePlacement::new(vec![2, 4]).unwrap();
        assert!(equivalent(&a, &b, &p, 1e-10).unwrap());
        let wrong = LinePlacement::new(vec![4, 2]).unwrap();
        assert!(!equivalent(&a, &b, &wrong, 1e-10).unwrap());
    }

    #[test]
    fn global_phase_is_ignored() {
        // Z X Z X = -I
        let a = Circuit::new(1).unwrap();
        let b = Circuit::from_gates(1, [Gate::z(0), Gate::x(0), Gate::z(0), Gate::x(0)]).unwrap();
        assert!(equivalent(&a, &b, &LinePlacement::identity(1), 1e-12).unwrap());
    }

    #[test]
    fn output_map_is_a_terminal_wire_permutation() {
        // CX(0,1) then SWAP(0,1) as three CNOTs equals CX(0,1) with outputs exchanged.
        let a = Circuit::from_gates(2, [Gate::cx(0, 1)]).unwrap();
        let swapped = Circuit::from_gates(
            2,
            [
                Gate::cx(0, 1),
                Gate::cx(0, 1),
                Gate::cx(1, 0),
                Gate::cx(0, 1),
            ],
        )
        .unwrap()
        .with_output_map(vec![1, 0])
        .unwrap();
        assert!(equivalent(&a, &swapped, &LinePlacement::identity(2), 1e-12).unwrap());
        assert!(!equivalent(
            &a,
            &swapped.with_output_map(vec![0, 1]).unwrap(),
            &LinePlacement::identity(2),
            1e-12
        )
        .unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let a = Circuit::new(3).unwrap();
        let b = Circuit::new(2).unwrap();
        assert!(equivalent(&a, &b, &LinePlacement::identity(3), 1e-10).is_err());
        assert!(equivalent(&a, &b, &LinePlacement::identity(2), 1e-10).is_err());
    }
}
