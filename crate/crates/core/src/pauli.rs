//! Pauli strings and the predictability budget.
//!
//! A string over `n` qubits is stored as a base-4 code with one digit per
//! qubit (`0 = I`, `1 = X`, `2 = Y`, `3 = Z`). Qubit `0` is the most
//! significant digit, matching the bit order of basis indices, so `"XZI"`
//! has code `1·16 + 3·4 + 0 = 28`.
//!
//! Strings act on basis states by bit manipulation: `X` flips a bit, `Z`
//! multiplies by `(-1)^bit`, and `Y = iXZ` does both. An expectation value
//! therefore costs `O(2^n)` and never touches a `2^n × 2^n` matrix.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::state::{check_qubits, Bipartition, DensityMatrix, PureState};
use crate::stats::{Accumulator, EnsembleEstimate, NeumaierSum};
use crate::{Error, Result, C64};

/// Largest register for which [`predictability_budget`] enumerates all strings.
pub const MAX_EXHAUSTIVE_QUBITS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_digit(d: u64) -> Self {
        match d & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    fn digit(self) -> u64 {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Element of `{I, X, Y, Z}^⊗n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliString {
    n_qubits: usize,
    code: u64,
}

impl PauliString {
    pub fn new(n_qubits: usize, code: u64) -> Result<Self> {
        check_qubits(n_qubits, 1)?;
        if code >= Self::count(n_qubits) {
            return Err(Error::InvalidPauli(format!(
                "code {code} out of range for {n_qubits} qubits"
            )));
        }
        Ok(Self { n_qubits, code })
    }

    /// The all-identity string `g₀`.
    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, 0)
    }

    pub fn from_letters(letters: &[Pauli]) -> Result<Self> {
        let code = letters.iter().fold(0u64, |acc, p| acc * 4 + p.digit());
        Self::new(letters.len(), code)
    }

    /// Number of strings on `n` qubits, `4^n`.
    pub fn count(n_qubits: usize) -> u64 {
        1u64 << (2 * n_qubits)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_identity(&self) -> bool {
        self.code == 0
    }

    pub fn letter(&self, qubit: usize) -> Pauli {
        Pauli::from_digit(self.code >> (2 * (self.n_qubits - 1 - qubit)))
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n_qubits).map(|q| self.letter(q)).collect()
    }

    /// Identity on every qubit outside A. Decided from the code digits alone.
    pub fn is_local_to(&self, part: &Bipartition) -> bool {
        part.n_qubits() == self.n_qubits
            && (0..self.n_qubits).all(|q| part.contains(q) || self.letter(q) == Pauli::I)
    }

    /// Bit-flip mask, phase-flip mask and number of `Y` factors.
    fn action(&self) -> (usize, usize, u32) {
        let mut x = 0usize;
        let mut z = 0usize;
        let mut ny = 0u32;
        for q in 0..self.n_qubits {
            let bit = 1usize << (self.n_qubits - 1 - q);
            match self.letter(q) {
                Pauli::I => {}
                Pauli::X => x |= bit,
                Pauli::Z => z |= bit,
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                    ny += 1;
                }
            }
        }
        (x, z, ny)
    }

    /// `g|j⟩ = phase(j) |j ⊕ x⟩`; returns `(x, phase)`.
    #[inline]
    fn apply_basis(x: usize, z: usize, y_phase: C64, j: usize) -> (usize, C64) {
        let sign = if (j & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        (j ^ x, y_phase * sign)
    }
}

fn i_pow(k: u32) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters().iter().try_for_each(|p| write!(f, "{}", p.symbol()))
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::InvalidPauli(format!("unknown letter '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_letters(&letters)
    }
}

/// `⟨ψ|g|ψ⟩`.
pub fn pauli_expectation(state: &PureState, g: &PauliString) -> Result<f64> {
    if state.n_qubits() != g.n_qubits() {
        return Err(Error::DimensionMismatch { expected: g.n_qubits(), got: state.n_qubits() });
    }
    Ok(expectation_unchecked(state.amplitudes(), g))
}

fn expectation_unchecked(psi: &[C64], g: &PauliString) -> f64 {
    let (x, z, ny) = g.action();
    let y_phase = i_pow(ny);
    let mut acc = C64::new(0.0, 0.0);
    for (j, a) in psi.iter().enumerate() {
        let (k, phase) = PauliString::apply_basis(x, z, y_phase, j);
        acc += psi[k].conj() * phase * a;
    }
    debug_assert!(acc.im.abs() < 1e-10, "imaginary residue {}", acc.im);
    acc.re
}

/// `tr(ρ g)`.
pub fn pauli_expectation_mixed(rho: &DensityMatrix, g: &PauliString) -> Result<f64> {
    let d = 1usize << g.n_qubits();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: rho.dim() });
    }
    let (x, z, ny) = g.action();
    let y_phase = i_pow(ny);
    let m = rho.entries();
    let acc: C64 = (0..d)
        .map(|j| {
            let (k, phase) = PauliString::apply_basis(x, z, y_phase, j);
            phase * m[(j, k)]
        })
        .sum();
    Ok(acc.re)
}

/// Coefficient `ξ_g = tr(ρ g) / d` of `g` in the expansion `ρ = Σ ξ_g g`.
pub fn expansion_coefficient(rho: &DensityMatrix, g: &PauliString) -> Result<f64> {
    Ok(pauli_expectation_mixed(rho, g)? / rho.dim() as f64)
}

/// `⟨g⟩` for every string on the register of `rho`, indexed by code.
pub fn pauli_expectations_mixed(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let n = rho
        .n_qubits()
        .ok_or_else(|| Error::InvalidArgument("density matrix is not a qubit register".into()))?;
    if n > MAX_EXHAUSTIVE_QUBITS {
        return Err(Error::TooLargeForExhaustive { got: n, max: MAX_EXHAUSTIVE_QUBITS });
    }
    if n == 0 {
        return Ok(vec![rho.trace().re]);
    }
    (0..PauliString::count(n))
        .into_par_iter()
        .map(|code| pauli_expectation_mixed(rho, &PauliString { n_qubits: n, code }))
        .collect()
}

/// Split of `Σ_{g ≠ I} ⟨g⟩²` into strings local to A and the rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictabilityBudget {
    pub total: f64,
    pub local_a: f64,
    pub nonlocal: f64,
    pub d: usize,
    pub d_a: usize,
    pub d_b: usize,
    /// Number of non-identity strings counted in `local_a`.
    pub local_strings: u64,
}

/// Which purity to recover from a budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BudgetSide {
    A,
    Total,
}

/// Exhaustive budget over all `4^n - 1` non-identity strings.
pub fn predictability_budget(state: &PureState, part: &Bipartition) -> Result<PredictabilityBudget> {
    let n = state.n_qubits();
    if part.n_qubits() != n {
        return Err(Error::DimensionMismatch { expected: part.n_qubits(), got: n });
    }
    if n > MAX_EXHAUSTIVE_QUBITS {
        return Err(Error::TooLargeForExhaustive { got: n, max: MAX_EXHAUSTIVE_QUBITS });
    }
    let psi = state.amplitudes();
    let terms: Vec<(f64, bool)> = (1..PauliString::count(n))
        .into_par_iter()
        .map(|code| {
            let g = PauliString { n_qubits: n, code };
            let e = expectation_unchecked(psi, &g);
            (e * e, g.is_local_to(part))
        })
        .collect();
    let mut total = NeumaierSum::default();
    let mut local = NeumaierSum::default();
    let mut local_strings = 0u64;
    for &(p, is_local) in &terms {
        total += p;
        if is_local {
            local += p;
            local_strings += 1;
        }
    }
    let (total, local_a) = (total.value(), local.value());
    Ok(PredictabilityBudget {
        total,
        local_a,
        nonlocal: total - local_a,
        d: 1 << n,
        d_a: part.d_a(),
        d_b: part.d_b(),
        local_strings,
    })
}

/// `(1 + Σ⟨g⟩²) / d` on the chosen side.
pub fn purity_from_budget(budget: &PredictabilityBudget, side: BudgetSide) -> f64 {
    match side {
        BudgetSide::Total => (1.0 + budget.total) / budget.d as f64,
        BudgetSide::A => (1.0 + budget.local_a) / budget.d_a as f64,
    }
}

fn check_power_of_two(d: usize, name: &str) -> Result<()> {
    if d == 0 || !d.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("{name} = {d} must be a power of two")));
    }
    Ok(())
}

/// Haar average of `⟨g⟩²` for any fixed non-identity string: `(d-1)/(d²-1)`.
pub fn expected_predictability(d: usize) -> Result<f64> {
    check_power_of_two(d, "d")?;
    if d < 2 {
        return Err(Error::InvalidArgument("d must be at least 2".into()));
    }
    let d = d as f64;
    Ok((d - 1.0) / (d * d - 1.0))
}

/// Haar average of the predictability local to A: `(d_A²-1)(d-1)/(d²-1)`.
pub fn expected_local_predictability(d_a: usize, d: usize) -> Result<f64> {
    check_power_of_two(d_a, "d_a")?;
    check_power_of_two(d, "d")?;
    if d < 2 || d_a > d {
        return Err(Error::InvalidArgument(format!("d_a = {d_a} must divide d = {d} ≥ 2")));
    }
    let (da, d) = (d_a as f64, d as f64);
    Ok((da * da - 1.0) * (d - 1.0) / (d * d - 1.0))
}

/// Budget estimated from uniformly sampled strings, for registers too large
/// to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledBudget {
    /// Estimate of `Σ_{g ≠ I} ⟨g⟩²`.
    pub total: EnsembleEstimate,
    /// Estimate of the A-local share; `None` when A is empty.
    pub local_a: Option<EnsembleEstimate>,
    pub d: usize,
    pub d_a: usize,
}

/// Monte Carlo budget: `(4^n - 1)` times the mean of `⟨g⟩²` over random
/// non-identity strings, and likewise over strings local to A.
pub fn sampled_budget<R: Rng + ?Sized>(
    state: &PureState,
    part: &Bipartition,
    n_strings: usize,
    rng: &mut R,
) -> Result<SampledBudget> {
    let n = state.n_qubits();
    if part.n_qubits() != n {
        return Err(Error::DimensionMismatch { expected: part.n_qubits(), got: n });
    }
    if n_strings < 2 {
        return Err(Error::DegenerateStatistics("need at least 2 sampled strings".into()));
    }
    let psi = state.amplitudes();
    let scale = |e: EnsembleEstimate, k: f64| {
        EnsembleEstimate::new(e.mean * k, e.variance * k * k, e.count)
    };

    let n_all = PauliString::count(n) - 1;
    let all: Accumulator = (0..n_strings)
        .map(|_| {
            let g = PauliString { n_qubits: n, code: rng.random_range(1..=n_all) };
            expectation_unchecked(psi, &g).powi(2)
        })
        .collect();
    let total = scale(all.estimate()?, n_all as f64);

    let local_a = if part.n_a() == 0 {
        None
    } else {
        let a = part.a_indices();
        let n_local = PauliString::count(a.len()) - 1;
        let acc: Accumulator = (0..n_strings)
            .map(|_| {
                let sub = rng.random_range(1..=n_local);
                let code = a.iter().enumerate().fold(0u64, |acc, (pos, &q)| {
                    let digit = (sub >> (2 * (a.len() - 1 - pos))) & 3;
                    acc | (digit << (2 * (n - 1 - q)))
                });
                expectation_unchecked(psi, &PauliString { n_qubits: n, code }).powi(2)
            })
            .collect();
        Some(scale(acc.estimate()?, n_local as f64))
    };
    Ok(SampledBudget { total, local_a, d: 1 << n, d_a: part.d_a() })
}
