#![allow(dead_code)]

use num_complex::Complex64;
use qxmap::{Circuit, Gate, GateKind, LinePlacement, Unitary};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x51ab_2018;

/// Random circuit with `1..=max_lines` lines and `0..=max_gates` gates.
/// Roughly a third of the gates are CNOTs when there are two or more lines.
pub fn random_circuit(rng: &mut impl Rng, max_lines: usize, max_gates: usize) -> Circuit {
    let lines = rng.gen_range(1..=max_lines);
    let count = rng.gen_range(0..=max_gates);
    let mut c = Circuit::new(lines).unwrap();
    for _ in 0..count {
        let g = if lines >= 2 && rng.gen_bool(0.35) {
            let a = rng.gen_range(0..lines);
            let mut b = rng.gen_range(0..lines - 1);
            if b >= a {
                b += 1;
            }
            Gate::cx(a, b)
        } else {
            let k = GateKind::SINGLE_QUBIT[rng.gen_range(0..GateKind::SINGLE_QUBIT.len())];
            Gate::single(k, rng.gen_range(0..lines))
        };
        c.push(g).unwrap();
    }
    c
}

pub fn corpus(n: usize, max_lines: usize, max_gates: usize) -> Vec<Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..n)
        .map(|_| random_circuit(&mut rng, max_lines, max_gates))
        .collect()
}

/// The usual 15-gate Clifford+T Toffoli: controls 0 and 1, target 2.
pub fn toffoli() -> Circuit {
    Circuit::from_gates(
        3,
        [
            Gate::h(2),
            Gate::cx(1, 2),
            Gate::tdg(2),
            Gate::cx(0, 2),
            Gate::t(2),
            Gate::cx(1, 2),
            Gate::tdg(2),
            Gate::cx(0, 2),
            Gate::t(1),
            Gate::t(2),
            Gate::h(2),
            Gate::cx(0, 1),
            Gate::t(0),
            Gate::tdg(1),
            Gate::cx(0, 1),
        ],
    )
    .unwrap()
}

/// Dense row-major matrix of a reversible classical map on `lines` bits,
/// built from the truth table alone.
pub fn classical_matrix(lines: usize, f: impl Fn(usize) -> usize) -> Vec<Complex64> {
    let dim = 1 << lines;
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for x in 0..dim {
        m[f(x) * dim + x] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn matmul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let dim = (a.len() as f64).sqrt() as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            for j in 0..dim {
                out[i * dim + j] += a[i * dim + k] * b[k * dim + j];
            }
        }
    }
    out
}

/// Placement extended to a full permutation of `lines` lines: unplaced
/// lines fill the unused qubits in increasing order.
pub fn full_permutation(p: &LinePlacement, lines: usize) -> Vec<usize> {
    let mut perm = p.as_slice().to_vec();
    let unused = (0..lines).filter(|q| !perm.contains(q)).collect::<Vec<_>>();
    perm.extend(unused);
    perm
}

/// Matrix sending basis state x to the state whose bit `perm[i]` is bit `i` of x.
pub fn bit_permutation_matrix(perm: &[usize]) -> Vec<Complex64> {
    classical_matrix(perm.len(), |x| {
        perm.iter()
            .enumerate()
            .filter(|&(i, _)| x >> i & 1 == 1)
            .fold(0, |acc, (_, &p)| acc | 1 << p)
    })
}

pub fn unitary_entries(c: &Circuit) -> Vec<Complex64> {
    qxmap::circuit_unitary(c).unwrap().entries().to_vec()
}

pub fn widen(c: &Circuit, lines: usize) -> Circuit {
    Circuit::from_gates(lines, c.gates().iter().copied()).unwrap()
}

pub fn identity_entries(lines: usize) -> Vec<Complex64> {
    Unitary::identity(lines).unwrap().entries().to_vec()
}

fn single_matrix(kind: GateKind) -> [[Complex64; 2]; 2] {
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let phase = |theta: f64| Complex64::from_polar(1.0, theta);
    let diag = |d: Complex64| [[o, z], [z, d]];
    match kind {
        GateKind::H => [[o * r, o * r], [o * r, -o * r]],
        GateKind::X => [[z, o], [o, z]],
        GateKind::Z => diag(-o),
        GateKind::S => diag(Complex64::i()),
        GateKind::Sdg => diag(-Complex64::i()),
        GateKind::T => diag(phase(std::f64::consts::FRAC_PI_4)),
        GateKind::Tdg => diag(phase(-std::f64::consts::FRAC_PI_4)),
        GateKind::Cx => unreachable!(),
    }
}

/// Full matrix of one gate, element by element from the basis action.
pub fn gate_matrix(g: &Gate, lines: usize) -> Vec<Complex64> {
    if let (Some(c), Some(t)) = (g.control(), g.target()) {
        return classical_matrix(lines, |x| if x >> c & 1 == 1 { x ^ 1 << t } else { x });
    }
    let q = g.first();
    let m = single_matrix(g.kind());
    let dim = 1 << lines;
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for row in 0..dim {
        for col in 0..dim {
            if row & !(1 << q) == col & !(1 << q) {
                out[row * dim + col] = m[row >> q & 1][col >> q & 1];
            }
        }
    }
    out
}

/// Circuit matrix as the product of per-gate matrices, ignoring the output map.
pub fn reference_unitary(c: &Circuit) -> Vec<Complex64> {
    c.gates()
        .iter()
        .fold(identity_entries(c.lines()), |acc, g| {
            matmul(&gate_matrix(g, c.lines()), &acc)
        })
}
