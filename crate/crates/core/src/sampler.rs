//! Reproducible sampling from the unitarily invariant measure on pure states
//! and from the flat measure on the probability simplex.
//!
//! Every random stream is a ChaCha20 generator keyed by a 64-bit seed and a
//! 64-bit stream id ([`SamplerSeed`]). Gaussian components come from
//! `rand_distr::StandardNormal` (ziggurat) and exponential components from
//! `rand_distr::Exp1`; both are drawn in a fixed order so that a given
//! `(seed, stream_id)` always reproduces the same state.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::entropy::{self, LogBase, Spectrum};
use crate::state::{check_qubits, check_unitary, Bipartition, DensityMatrix, PureState, Side};
use crate::stats::NeumaierSum;
use crate::{Error, Result, C64};

/// Generator behind every sampling stream.
pub type StreamRng = ChaCha20Rng;

const MIN_NORM: f64 = 1e-100;

/// Key of one independent random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplerSeed {
    pub seed: u64,
    pub stream_id: u64,
}

impl SamplerSeed {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Stream id packing a tag, a group (for example a subsystem size) and a
    /// sample index.
    pub fn keyed(seed: u64, tag: u8, group: u32, index: u32) -> Self {
        let stream_id = (u64::from(tag) << 56) | (u64::from(group & 0x00ff_ffff) << 32) | u64::from(index);
        Self { seed, stream_id }
    }

    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Haar-random pure state: `2·2^n` independent standard normals as real and
/// imaginary parts, then normalized.
pub fn sample_haar_pure<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<PureState> {
    check_qubits(n_qubits, 1)?;
    let d = 1usize << n_qubits;
    for _ in 0..2 {
        let mut amps: Vec<C64> = (0..d)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                C64::new(re, im)
            })
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm >= MIN_NORM {
            amps.iter_mut().for_each(|a| *a /= norm);
            return Ok(PureState::from_raw(n_qubits, amps));
        }
    }
    Err(Error::DegenerateSample)
}

/// `U|ψ⟩` for a unitary `U`.
pub fn rotate_state(state: &PureState, u: &DMatrix<C64>) -> Result<PureState> {
    if u.nrows() != state.dim() {
        return Err(Error::DimensionMismatch { expected: state.dim(), got: u.nrows() });
    }
    check_unitary(u)?;
    let psi = DVector::from_column_slice(state.amplitudes());
    let out = u * psi;
    Ok(PureState::from_raw(state.n_qubits(), out.iter().copied().collect()))
}

/// Single-qubit Hadamard gate.
pub fn hadamard() -> DMatrix<C64> {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    DMatrix::from_row_slice(2, 2, &[h, h, h, -h])
}

/// Discrete Fourier transform on `d` levels, a fixed entangling unitary.
pub fn fourier_unitary(d: usize) -> DMatrix<C64> {
    let scale = 1.0 / (d as f64).sqrt();
    DMatrix::from_fn(d, d, |j, k| {
        let phase = 2.0 * std::f64::consts::PI * ((j * k) % d) as f64 / d as f64;
        C64::from_polar(scale, phase)
    })
}

/// Probability vector over `2^n_bits` outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalState {
    n_bits: usize,
    probabilities: Vec<f64>,
}

impl ClassicalState {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        let len = probabilities.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { len });
        }
        let n_bits = len.trailing_zeros() as usize;
        check_qubits(n_bits, 1)?;
        if let Some(p) = probabilities.iter().find(|p| !(**p >= 0.0)) {
            return Err(Error::InvalidArgument(format!("negative probability {p}")));
        }
        let mut total = NeumaierSum::default();
        probabilities.iter().for_each(|&p| total += p);
        if (total.value() - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(total.value()));
        }
        Ok(Self { n_bits, probabilities })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Shannon entropy.
    pub fn entropy(&self, base: LogBase) -> Result<f64> {
        let s = Spectrum::from_eigenvalues(self.probabilities.clone())?;
        Ok(entropy::von_neumann_entropy(&s, base))
    }

    /// `Σ p_i²`.
    pub fn purity(&self) -> f64 {
        self.probabilities.iter().map(|p| p * p).sum()
    }

    /// The diagonal density matrix with these probabilities.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::diagonal(&self.probabilities)
    }
}

/// Draw from the flat Dirichlet measure on the simplex of `2^n_bits` outcomes.
pub fn sample_classical_uniform<R: Rng + ?Sized>(n_bits: usize, rng: &mut R) -> Result<ClassicalState> {
    check_qubits(n_bits, 1)?;
    let d = 1usize << n_bits;
    let mut p: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let mut total = NeumaierSum::default();
    p.iter().for_each(|&x| total += x);
    let total = total.value();
    p.iter_mut().for_each(|x| *x /= total);
    Ok(ClassicalState { n_bits, probabilities: p })
}

/// Marginal distribution on side A.
///
/// An empty subsystem yields the one-outcome distribution `[1]` with
/// `n_bits() == 0`.
pub fn classical_marginal(state: &ClassicalState, part: &Bipartition) -> Result<ClassicalState> {
    classical_marginal_on(state, part, Side::A)
}

/// Marginal distribution on the given side.
pub fn classical_marginal_on(state: &ClassicalState, part: &Bipartition, keep: Side) -> Result<ClassicalState> {
    if state.n_bits() != part.n_qubits() {
        return Err(Error::DimensionMismatch { expected: part.n_qubits(), got: state.n_bits() });
    }
    let (n_keep, d_keep, d_other) = match keep {
        Side::A => (part.n_a(), part.d_a(), part.d_b()),
        Side::B => (part.n_b(), part.d_b(), part.d_a()),
    };
    if d_keep == 1 {
        return Ok(ClassicalState { n_bits: 0, probabilities: vec![1.0] });
    }
    let p = &state.probabilities;
    let probabilities = (0..d_keep)
        .map(|k| {
            (0..d_other)
                .map(|o| match keep {
                    Side::A => p[part.join(k, o)],
                    Side::B => p[part.join(o, k)],
                })
                .sum()
        })
        .collect();
    Ok(ClassicalState { n_bits: n_keep, probabilities })
}
