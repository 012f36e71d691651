//! Dense statevector simulation: state allocation, gate kernels, exact
//! probability extraction, and seeded shot sampling.
//!
//! Qubit ordering convention, used everywhere in this crate: **qubit 0 is the
//! least-significant bit of the basis index**. A basis ket written |b_{n-1}
//! ... b_1 b_0⟩ lives at index `b_0 + 2*b_1 + ... + 2^{n-1}*b_{n-1}`.
//!
//! Gate application mutates the state in place; the previous value is gone
//! afterward. Comparisons in tests go through [`StateVector::fidelity`]
//! (phase-insensitive) rather than amplitude equality, since RZ and state
//! preparation introduce benign global phases.

use num_complex::Complex64;
use rand_distr::Distribution;

use crate::error::{Error, Result};
use crate::rng::{derive_seed, seeded_rng};

/// Default cap on register width: 2^24 complex doubles is 256 MiB.
pub const MAX_QUBITS: usize = 24;

/// Evaluation mode for circuit readout: exact marginals or seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Shots { count: u64, seed: u64 },
}

impl Mode {
    /// Child mode for stream `index`: same shot count, derived seed.
    ///
    /// Exact mode is unchanged. This is how per-window and per-shift
    /// evaluations stay independent of scheduling order.
    pub fn derive(self, index: u64) -> Mode {
        match self {
            Mode::Exact => Mode::Exact,
            Mode::Shots { count, seed } => Mode::Shots {
                count,
                seed: derive_seed(seed, index),
            },
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Mode::Exact)
    }
}

/// Outcome of reading one qubit: exact marginal plus, in shots mode, a
/// binomial draw. Exact mode sets `shots = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementResult {
    pub shots: u64,
    pub zero_count: u64,
    pub exact_p0: f64,
}

impl MeasurementResult {
    pub fn exact(p0: f64) -> Self {
        MeasurementResult {
            shots: 0,
            zero_count: 0,
            exact_p0: p0,
        }
    }

    /// The probability estimate this result carries: the sampled frequency
    /// in shots mode, the exact marginal otherwise.
    pub fn p0(&self) -> f64 {
        if self.shots == 0 {
            self.exact_p0
        } else {
            self.zero_count as f64 / self.shots as f64
        }
    }
}

/// A pure n-qubit state: 2^n complex amplitudes, unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Ground state |0...0⟩ on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Result<Self> {
        Self::new_with_cap(num_qubits, MAX_QUBITS)
    }

    /// Ground state with a caller-chosen width cap.
    pub fn new_with_cap(num_qubits: usize, cap: usize) -> Result<Self> {
        if num_qubits < 1 || num_qubits > cap {
            return Err(Error::QubitCountOutOfRange {
                got: num_qubits,
                max: cap,
            });
        }
        let mut amps = vec![Complex64::ZERO; 1 << num_qubits];
        amps[0] = Complex64::ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// Build a state from explicit amplitudes (power-of-two length, unit norm
    /// within 1e-10).
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(Error::NotUnitNorm {
                norm: norm_sqr.sqrt(),
            });
        }
        Ok(StateVector {
            num_qubits: dim.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitIndexOutOfRange {
                index: qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_distinct(qubits: &[usize]) -> Result<()> {
        for (i, a) in qubits.iter().enumerate() {
            if qubits[i + 1..].contains(a) {
                return Err(Error::DuplicateQubits(qubits.to_vec()));
            }
        }
        Ok(())
    }

    /// Apply a 2x2 matrix [[u00, u01], [u10, u11]] to one qubit.
    fn apply_one_qubit(&mut self, qubit: usize, u: [Complex64; 4]) {
        let mask = 1usize << qubit;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let a = self.amps[i];
                let b = self.amps[j];
                self.amps[i] = u[0] * a + u[1] * b;
                self.amps[j] = u[2] * a + u[3] * b;
            }
        }
        debug_assert!((self.norm_sqr() - 1.0).abs() < 1e-9, "norm drifted");
    }

    /// RY(θ) = [[cos(θ/2), -sin(θ/2)], [sin(θ/2), cos(θ/2)]].
    pub fn apply_ry(&mut self, qubit: usize, theta: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::new((theta / 2.0).sin(), 0.0);
        self.apply_one_qubit(qubit, [c, -s, s, c]);
        Ok(())
    }

    /// RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2}).
    pub fn apply_rz(&mut self, qubit: usize, theta: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        let mask = 1usize << qubit;
        let lo = Complex64::from_polar(1.0, -theta / 2.0);
        let hi = Complex64::from_polar(1.0, theta / 2.0);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            *amp *= if i & mask == 0 { lo } else { hi };
        }
        Ok(())
    }

    /// Hadamard on one qubit.
    pub fn apply_h(&mut self, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        let f = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        self.apply_one_qubit(qubit, [f, f, f, -f]);
        Ok(())
    }

    /// CNOT: flip `target` where `control` is set.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        Self::check_distinct(&[control, target])?;
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
        Ok(())
    }

    /// Controlled swap: exchange qubits `a` and `b` where `control` is set.
    pub fn apply_cswap(&mut self, control: usize, a: usize, b: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        Self::check_distinct(&[control, a, b])?;
        let cmask = 1usize << control;
        let amask = 1usize << a;
        let bmask = 1usize << b;
        for i in 0..self.amps.len() {
            if i & cmask != 0 && i & amask != 0 && i & bmask == 0 {
                self.amps.swap(i, i ^ amask ^ bmask);
            }
        }
        Ok(())
    }

    /// Apply a 2^k x 2^k unitary to an ordered list of k qubits.
    ///
    /// `qubits[j]` carries bit j of the matrix's basis index, i.e. the first
    /// listed qubit is the least-significant bit of the sub-register. With an
    /// ascending list this matches the global ordering.
    pub fn apply_unitary(&mut self, qubits: &[usize], u: &UnitaryMatrix) -> Result<()> {
        for &q in qubits {
            self.check_qubit(q)?;
        }
        Self::check_distinct(qubits)?;
        if u.dim() != 1 << qubits.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << qubits.len(),
                got: u.dim(),
            });
        }
        let k = qubits.len();
        let sub = 1usize << k;
        let addressed: usize = qubits.iter().map(|&q| 1usize << q).sum();
        let mut gathered = vec![Complex64::ZERO; sub];
        let mut updated = vec![Complex64::ZERO; sub];
        // Deposit sub-index bits into their global qubit positions.
        let deposit = |s: usize| -> usize {
            let mut g = 0usize;
            for (j, &q) in qubits.iter().enumerate() {
                g |= ((s >> j) & 1) << q;
            }
            g
        };
        let offsets: Vec<usize> = (0..sub).map(deposit).collect();
        for base in 0..self.amps.len() {
            if base & addressed != 0 {
                continue;
            }
            for s in 0..sub {
                gathered[s] = self.amps[base | offsets[s]];
            }
            for (r, slot) in updated.iter_mut().enumerate() {
                let mut acc = Complex64::ZERO;
                for (c, g) in gathered.iter().enumerate() {
                    acc += u.entry(r, c) * g;
                }
                *slot = acc;
            }
            for s in 0..sub {
                self.amps[base | offsets[s]] = updated[s];
            }
        }
        debug_assert!((self.norm_sqr() - 1.0).abs() < 1e-9, "norm drifted");
        Ok(())
    }

    /// Exact marginal probability that a Z-basis readout of `qubit` gives 0.
    /// No collapse.
    pub fn prob_zero(&self, qubit: usize) -> Result<f64> {
        self.check_qubit(qubit)?;
        let mask = 1usize << qubit;
        let p = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        Ok(p)
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let ip: Complex64 = self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(ip.norm_sqr())
    }

    /// Product state with `self` on the low qubits and `higher` above them.
    pub fn tensor(&self, higher: &StateVector) -> StateVector {
        let lo_dim = self.dim();
        let mut amps = Vec::with_capacity(lo_dim * higher.dim());
        for hi in higher.amps.iter() {
            for lo in self.amps.iter() {
                amps.push(lo * hi);
            }
        }
        StateVector {
            num_qubits: self.num_qubits + higher.num_qubits,
            amps,
        }
    }

    /// Draw `shots` Z-basis readouts of `qubit` as one binomial sample from a
    /// deterministic seeded generator. The exact marginal is recorded
    /// alongside.
    pub fn sample_measure(&self, qubit: usize, shots: u64, seed: u64) -> Result<MeasurementResult> {
        if shots < 1 {
            return Err(Error::ZeroShots);
        }
        let exact_p0 = self.prob_zero(qubit)?;
        let p = exact_p0.clamp(0.0, 1.0);
        let binom =
            rand_distr::Binomial::new(shots, p).expect("clamped probability is always valid");
        let zero_count = binom.sample(&mut seeded_rng(seed));
        Ok(MeasurementResult {
            shots,
            zero_count,
            exact_p0,
        })
    }

    /// Read `qubit` according to `mode`.
    pub fn measure(&self, qubit: usize, mode: Mode) -> Result<MeasurementResult> {
        match mode {
            Mode::Exact => Ok(MeasurementResult::exact(self.prob_zero(qubit)?)),
            Mode::Shots { count, seed } => self.sample_measure(qubit, count, seed),
        }
    }
}

/// A dense unitary on a power-of-two dimension, row-major storage.
/// Construction verifies U†U = I to 1e-10 in Frobenius norm.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let u = UnitaryMatrix { dim, entries };
        let dev = u.unitarity_deviation();
        if dev > 1e-10 {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(u)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            entries[r * dim + r] = Complex64::ONE;
        }
        Ok(UnitaryMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Column `c` as a vector; column 0 is what the matrix prepares from the
    /// ground state.
    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.entry(r, c)).collect()
    }

    /// Frobenius norm of U†U - I.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut acc = 0.0;
        for r in 0..d {
            for c in 0..d {
                let mut e = Complex64::ZERO;
                for k in 0..d {
                    e += self.entry(k, r).conj() * self.entry(k, c);
                }
                if r == c {
                    e -= Complex64::ONE;
                }
                acc += e.norm_sqr();
            }
        }
        acc.sqrt()
    }
}
