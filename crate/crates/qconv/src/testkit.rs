//! Shared helpers for unit tests, including an independent dense-matrix
//! circuit oracle. The oracle builds full 2^n x 2^n gate matrices and
//! multiplies them against amplitude vectors directly, so it shares no code
//! path with the bit-kernel implementation it cross-checks.

use num_complex::Complex64;
use rand::Rng;

use crate::rng::seeded_rng;
use crate::state::StateVector;

pub fn assert_close(got: f64, want: f64, tol: f64) {
    assert!(
        (got - want).abs() <= tol,
        "got {got}, want {want} (tol {tol})"
    );
}

/// Haar-ish random state: i.i.d. complex Gaussians, normalized. Good enough
/// for property tests.
pub fn random_state(num_qubits: usize, seed: u64) -> StateVector {
    let mut rng = seeded_rng(seed);
    let dim = 1usize << num_qubits;
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|_| {
            // Box-Muller pairs
            let u1: f64 = rng.random::<f64>().max(1e-12);
            let u2: f64 = rng.random();
            let r = (-2.0 * u1.ln()).sqrt();
            Complex64::new(
                r * (std::f64::consts::TAU * u2).cos(),
                r * (std::f64::consts::TAU * u2).sin(),
            )
        })
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(amps).unwrap()
}

pub fn basis_state(num_qubits: usize, index: usize) -> StateVector {
    let mut amps = vec![Complex64::ZERO; 1 << num_qubits];
    amps[index] = Complex64::ONE;
    StateVector::from_amplitudes(amps).unwrap()
}

/// Two random states with ⟨x|y⟩ = 0, via Gram-Schmidt.
pub fn random_orthonormal_pair(num_qubits: usize, seed: u64) -> (StateVector, StateVector) {
    let x = random_state(num_qubits, seed);
    let raw = random_state(num_qubits, seed.wrapping_add(1));
    let overlap: Complex64 = x
        .amplitudes()
        .iter()
        .zip(raw.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum();
    let mut amps: Vec<Complex64> = raw
        .amplitudes()
        .iter()
        .zip(x.amplitudes())
        .map(|(b, a)| b - overlap * a)
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    (x, StateVector::from_amplitudes(amps).unwrap())
}

/// Frobenius deviation of C†C from identity, where C's columns are given.
pub fn unitarity_deviation_of_columns(cols: &[Vec<Complex64>]) -> f64 {
    let d = cols.len();
    let mut acc = 0.0;
    for r in 0..d {
        for c in 0..d {
            let mut e: Complex64 = cols[r]
                .iter()
                .zip(cols[c].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            if r == c {
                e -= Complex64::ONE;
            }
            acc += e.norm_sqr();
        }
    }
    acc.sqrt()
}

// ---------------------------------------------------------------------------
// Dense-matrix oracle
// ---------------------------------------------------------------------------

/// Dense row-major complex matrix.
pub struct DenseMat {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl DenseMat {
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }
}

fn mat2_ry(theta: f64) -> [Complex64; 4] {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = Complex64::new((theta / 2.0).sin(), 0.0);
    [c, -s, s, c]
}

fn mat2_rz(theta: f64) -> [Complex64; 4] {
    [
        Complex64::from_polar(1.0, -theta / 2.0),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::from_polar(1.0, theta / 2.0),
    ]
}

/// Embed a 2x2 matrix on one qubit of an n-qubit register (qubit 0 = LSB).
pub fn embed_single(n: usize, qubit: usize, m: [Complex64; 4]) -> DenseMat {
    let dim = 1usize << n;
    let mask = 1usize << qubit;
    let mut out = DenseMat {
        dim,
        data: vec![Complex64::ZERO; dim * dim],
    };
    for col in 0..dim {
        let bit = (col & mask != 0) as usize;
        for row_bit in 0..2 {
            let row = (col & !mask) | (row_bit << qubit);
            out.set(row, col, m[row_bit * 2 + bit]);
        }
    }
    out
}

pub fn embed_ry(n: usize, qubit: usize, theta: f64) -> DenseMat {
    embed_single(n, qubit, mat2_ry(theta))
}

pub fn embed_rz(n: usize, qubit: usize, theta: f64) -> DenseMat {
    embed_single(n, qubit, mat2_rz(theta))
}

/// Full-register CNOT permutation matrix.
pub fn embed_cnot(n: usize, control: usize, target: usize) -> DenseMat {
    let dim = 1usize << n;
    let mut out = DenseMat {
        dim,
        data: vec![Complex64::ZERO; dim * dim],
    };
    for col in 0..dim {
        let row = if col & (1 << control) != 0 {
            col ^ (1 << target)
        } else {
            col
        };
        out.set(row, col, Complex64::ONE);
    }
    out
}
