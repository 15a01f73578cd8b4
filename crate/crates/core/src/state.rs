//! Pure and mixed states on qubit registers.
//!
//! Basis indices follow the crate-wide convention: qubit `0` is the most
//! significant bit. A [`Bipartition`] may select any subset of qubits as
//! subsystem A; its reduced indices keep the qubits in ascending order, so
//! the lowest-numbered qubit of A is again the most significant bit of the
//! A-index.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64, MAX_QUBITS};

pub(crate) const NORM_TOL: f64 = 1e-12;
pub(crate) const HERMITIAN_TOL: f64 = 1e-12;
pub(crate) const TRACE_TOL: f64 = 1e-12;
pub(crate) const PSD_TOL: f64 = 1e-10;
pub(crate) const UNITARY_TOL: f64 = 1e-10;

/// Normalized amplitude vector over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Validates length and normalization.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { n_qubits, amplitudes })
    }

    /// Scales an arbitrary non-zero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n_qubits, amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits, 1)?;
        let d = 1usize << n_qubits;
        if index >= d {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); d];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    /// `self ⊗ other`, with `self` on the lower-numbered qubits.
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        check_qubits(n, 1)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(Self { n_qubits: n, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    /// Builds from an already-normalized vector without re-checking.
    pub(crate) fn from_raw(n_qubits: usize, amplitudes: Vec<C64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n_qubits);
        Self { n_qubits, amplitudes }
    }
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len });
    }
    let n = len.trailing_zeros() as usize;
    check_qubits(n, 1)?;
    Ok(n)
}

pub(crate) fn check_qubits(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_QUBITS {
        return Err(Error::QubitRange { got: n, min, max: MAX_QUBITS });
    }
    Ok(())
}

/// Hermitian, unit-trace, positive semi-definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                got: entries.ncols(),
            });
        }
        let dev = hermitian_deviation(&entries);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min_eig = entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -PSD_TOL {
            return Err(Error::NotPsd(min_eig));
        }
        Ok(Self { entries })
    }

    /// Wraps a matrix that is a density matrix by construction.
    pub(crate) fn from_trusted(entries: DMatrix<C64>) -> Self {
        debug_assert!(entries.is_square());
        Self { entries }
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &PureState) -> Self {
        let psi = nalgebra::DVector::from_column_slice(state.amplitudes());
        Self { entries: &psi * psi.adjoint() }
    }

    /// Diagonal embedding of a probability vector.
    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        let diag = nalgebra::DVector::from_iterator(
            probabilities.len(),
            probabilities.iter().map(|&p| C64::new(p, 0.0)),
        );
        Self::new(DMatrix::from_diagonal(&diag))
    }

    /// `1/d` times the identity.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let entries = DMatrix::from_diagonal_element(dim, dim, C64::new(1.0 / dim as f64, 0.0));
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Number of qubits, if the dimension is a power of two.
    pub fn n_qubits(&self) -> Option<usize> {
        let d = self.dim();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &DMatrix<C64>) -> Result<Self> {
        check_unitary(u)?;
        if u.nrows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: u.nrows() });
        }
        Ok(Self { entries: u * &self.entries * u.adjoint() })
    }
}

pub(crate) fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Fails unless `u† u = 1` within `1e-10` entrywise.
pub fn check_unitary(u: &DMatrix<C64>) -> Result<()> {
    if !u.is_square() {
        return Err(Error::NotUnitary(f64::INFINITY));
    }
    let prod = u.adjoint() * u;
    let dev = (prod - DMatrix::<C64>::identity(u.nrows(), u.ncols()))
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    if dev > UNITARY_TOL {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

/// Which side of a bipartition to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Split of `n_qubits` qubits into subsystem A (given indices) and its
/// complement B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    n_qubits: usize,
    a_indices: Vec<usize>,
    #[serde(skip)]
    a_offsets: Vec<usize>,
    #[serde(skip)]
    b_offsets: Vec<usize>,
}

impl Bipartition {
    /// A must be a non-empty proper subset.
    pub fn new(n_qubits: usize, a_indices: &[usize]) -> Result<Self> {
        let part = Self::allowing_trivial(n_qubits, a_indices)?;
        if part.n_a() == 0 || part.n_b() == 0 {
            return Err(Error::InvalidPartition(
                "subsystem A must be a non-empty proper subset".into(),
            ));
        }
        Ok(part)
    }

    /// Like [`Bipartition::new`] but accepts the empty and full subsets.
    pub fn allowing_trivial(n_qubits: usize, a_indices: &[usize]) -> Result<Self> {
        check_qubits(n_qubits, 1)?;
        let mut a: Vec<usize> = a_indices.to_vec();
        a.sort_unstable();
        if a.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition("duplicate qubit index".into()));
        }
        if let Some(&q) = a.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::InvalidPartition(format!(
                "qubit {q} out of range for {n_qubits} qubits"
            )));
        }
        let b: Vec<usize> = (0..n_qubits).filter(|q| a.binary_search(q).is_err()).collect();
        let a_offsets = offsets(n_qubits, &a);
        let b_offsets = offsets(n_qubits, &b);
        Ok(Self { n_qubits, a_indices: a, a_offsets, b_offsets })
    }

    /// A = the first `n_a` qubits; trivial cuts allowed.
    pub fn prefix(n_qubits: usize, n_a: usize) -> Result<Self> {
        if n_a > n_qubits {
            return Err(Error::InvalidPartition(format!(
                "n_a = {n_a} exceeds {n_qubits} qubits"
            )));
        }
        let a: Vec<usize> = (0..n_a).collect();
        Self::allowing_trivial(n_qubits, &a)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn a_indices(&self) -> &[usize] {
        &self.a_indices
    }

    pub fn b_indices(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|q| self.a_indices.binary_search(q).is_err())
            .collect()
    }

    pub fn n_a(&self) -> usize {
        self.a_indices.len()
    }

    pub fn n_b(&self) -> usize {
        self.n_qubits - self.n_a()
    }

    pub fn d_a(&self) -> usize {
        1 << self.n_a()
    }

    pub fn d_b(&self) -> usize {
        1 << self.n_b()
    }

    pub fn dim(&self, side: Side) -> usize {
        match side {
            Side::A => self.d_a(),
            Side::B => self.d_b(),
        }
    }

    pub fn contains(&self, qubit: usize) -> bool {
        self.a_indices.binary_search(&qubit).is_ok()
    }

    /// Same cut with the roles of A and B exchanged.
    pub fn complement(&self) -> Self {
        Self::allowing_trivial(self.n_qubits, &self.b_indices())
            .expect("complement of a valid partition is valid")
    }

    /// Full-register index of the basis state `|ia⟩_A |ib⟩_B`.
    #[inline]
    pub fn join(&self, ia: usize, ib: usize) -> usize {
        self.a_offsets[ia] | self.b_offsets[ib]
    }

    /// Bit mask (over the full register) of the qubits in A.
    pub fn a_mask(&self) -> usize {
        self.a_offsets.last().copied().unwrap_or(0)
    }

    fn side_offsets(&self, side: Side) -> (&[usize], &[usize]) {
        match side {
            Side::A => (&self.a_offsets, &self.b_offsets),
            Side::B => (&self.b_offsets, &self.a_offsets),
        }
    }
}

/// For each packed sub-index, the full-register bits it sets.
fn offsets(n_qubits: usize, qubits: &[usize]) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|sub| {
            qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
                let bit = (sub >> (k - 1 - pos)) & 1;
                acc | (bit << (n_qubits - 1 - q))
            })
        })
        .collect()
}

/// Traces out the side not in `keep`.
///
/// Keeping a side that spans the whole register returns the input unchanged.
pub fn partial_trace(rho: &DensityMatrix, part: &Bipartition, keep: Side) -> Result<DensityMatrix> {
    let d = 1usize << part.n_qubits();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: rho.dim() });
    }
    let (kept, traced) = part.side_offsets(keep);
    if traced.len() == 1 {
        return Ok(rho.clone());
    }
    let dk = kept.len();
    if dk == 1 {
        return Ok(DensityMatrix::from_trusted(DMatrix::from_element(1, 1, C64::new(1.0, 0.0))));
    }
    let m = rho.entries();
    let out = DMatrix::from_fn(dk, dk, |i, j| {
        traced
            .iter()
            .map(|&t| m[(kept[i] | t, kept[j] | t)])
            .sum::<C64>()
    });
    Ok(DensityMatrix::from_trusted(out))
}

/// Amplitudes arranged as a `d_keep × d_other` matrix.
pub(crate) fn coefficient_matrix(state: &PureState, part: &Bipartition, rows: Side) -> DMatrix<C64> {
    let (row_off, col_off) = part.side_offsets(rows);
    let amps = state.amplitudes();
    DMatrix::from_fn(row_off.len(), col_off.len(), |i, j| amps[row_off[i] | col_off[j]])
}

/// Reduced state of a pure state on one side, without forming `|ψ⟩⟨ψ|`.
///
/// The 1×1 reduced state of an empty subsystem is exactly `[1]`.
pub fn reduced_density(state: &PureState, part: &Bipartition, keep: Side) -> Result<DensityMatrix> {
    if state.n_qubits() != part.n_qubits() {
        return Err(Error::DimensionMismatch { expected: part.n_qubits(), got: state.n_qubits() });
    }
    if part.dim(keep) == 1 {
        return Ok(DensityMatrix::from_trusted(DMatrix::from_element(1, 1, C64::new(1.0, 0.0))));
    }
    let m = coefficient_matrix(state, part, keep);
    Ok(DensityMatrix::from_trusted(&m * m.adjoint()))
}

/// Schmidt coefficients `μ_k`, sorted in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtSpectrum {
    coefficients: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `μ_k²`: the common eigenvalues of both reduced states.
    pub fn weights(&self) -> Vec<f64> {
        self.coefficients.iter().map(|m| m * m).collect()
    }

    /// Number of coefficients above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.coefficients.iter().filter(|&&m| m > tol).count()
    }
}

/// Singular values of the `d_A × d_B` coefficient matrix.
pub fn schmidt_decompose(state: &PureState, part: &Bipartition) -> Result<SchmidtSpectrum> {
    if state.n_qubits() != part.n_qubits() {
        return Err(Error::DimensionMismatch { expected: part.n_qubits(), got: state.n_qubits() });
    }
    if part.d_a() == 1 || part.d_b() == 1 {
        return Ok(SchmidtSpectrum { coefficients: vec![1.0] });
    }
    let m = coefficient_matrix(state, part, Side::A);
    let mut coefficients: Vec<f64> = m.singular_values().iter().copied().collect();
    coefficients.sort_by(|a, b| b.total_cmp(a));
    Ok(SchmidtSpectrum { coefficients })
}

/// Pauli expectation values `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` of a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        if v.norm_sqr() > 1.0 + PSD_TOL {
            return Err(Error::InvalidArgument(format!(
                "Bloch vector length² {} exceeds 1",
                v.norm_sqr()
            )));
        }
        Ok(v)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// `ρ = (1 + xX + yY + zZ) / 2`.
    pub fn to_density(&self) -> DensityMatrix {
        let h = 0.5;
        let entries = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(h * (1.0 + self.z), 0.0),
                C64::new(h * self.x, -h * self.y),
                C64::new(h * self.x, h * self.y),
                C64::new(h * (1.0 - self.z), 0.0),
            ],
        );
        DensityMatrix::from_trusted(entries)
    }
}

/// `(tr ρX, tr ρY, tr ρZ)` of a qubit density matrix.
pub fn bloch_vector(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: rho.dim() });
    }
    let off = rho.get(0, 1);
    Ok(BlochVector {
        x: 2.0 * off.re,
        y: -2.0 * off.im,
        z: (rho.get(0, 0) - rho.get(1, 1)).re,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn bell() -> PureState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap()
    }

    fn assert_matrix_close(a: &DMatrix<C64>, b: &DMatrix<C64>, tol: f64) {
        assert_eq!(a.shape(), b.shape());
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn pure_state_validation() {
        assert!(matches!(
            PureState::new(vec![c(1.0, 0.0); 3]),
            Err(Error::NotPowerOfTwo { len: 3 })
        ));
        assert!(matches!(
            PureState::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        let s = PureState::normalized(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(s.n_qubits(), 1);
        assert!(PureState::normalized(vec![c(0.0, 0.0); 2]).is_err());
        assert!(PureState::basis(2, 4).is_err());
    }

    #[test]
    fn density_of_basis_and_plus() {
        let rho = DensityMatrix::from_pure(&PureState::basis(1, 0).unwrap());
        let expect = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_matrix_close(rho.entries(), &expect, 0.0);

        let plus = PureState::normalized(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let rho = DensityMatrix::from_pure(&plus);
        for z in rho.entries().iter() {
            assert!((z - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn density_validation_rejects_bad_matrices() {
        let not_herm = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.5, 0.0)]);
        assert!(matches!(DensityMatrix::new(not_herm), Err(Error::NotHermitian(_))));
        let bad_trace = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.6, 0.0)]);
        assert!(matches!(DensityMatrix::new(bad_trace), Err(Error::InvalidTrace(_))));
        let not_psd = DMatrix::from_row_slice(2, 2, &[c(1.2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.2, 0.0)]);
        assert!(matches!(DensityMatrix::new(not_psd), Err(Error::NotPsd(_))));
    }

    #[test]
    fn bipartition_rules() {
        assert!(Bipartition::new(3, &[]).is_err());
        assert!(Bipartition::new(3, &[0, 1, 2]).is_err());
        assert!(Bipartition::new(3, &[0, 0]).is_err());
        assert!(Bipartition::new(3, &[3]).is_err());
        let p = Bipartition::new(4, &[2, 0]).unwrap();
        assert_eq!(p.a_indices(), &[0, 2]);
        assert_eq!(p.b_indices(), vec![1, 3]);
        assert_eq!(p.d_a() * p.d_b(), 16);
        // qubit 0 is the MSB: |ia=0b10, ib=0b01⟩ sets qubit 0 (bit 3) and qubit 3 (bit 0)
        assert_eq!(p.join(0b10, 0b01), 0b1001);
        assert_eq!(p.a_mask(), 0b1010);
        let full = Bipartition::prefix(3, 3).unwrap();
        assert_eq!(full.d_b(), 1);
        assert_eq!(Bipartition::prefix(3, 0).unwrap().d_a(), 1);
    }

    #[test]
    fn bell_reduces_to_maximally_mixed() {
        let part = Bipartition::new(2, &[0]).unwrap();
        let rho = DensityMatrix::from_pure(&bell());
        let ra = partial_trace(&rho, &part, Side::A).unwrap();
        assert_matrix_close(ra.entries(), DensityMatrix::maximally_mixed(2).unwrap().entries(), 1e-15);
    }

    #[test]
    fn product_state_factorizes() {
        let zero = PureState::basis(1, 0).unwrap();
        let plus = PureState::normalized(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let psi = zero.tensor(&plus).unwrap();
        let part = Bipartition::new(2, &[0]).unwrap();
        let ra = partial_trace(&DensityMatrix::from_pure(&psi), &part, Side::A).unwrap();
        assert_matrix_close(ra.entries(), DensityMatrix::from_pure(&zero).entries(), 1e-15);
        let rb = reduced_density(&psi, &part, Side::B).unwrap();
        assert_matrix_close(rb.entries(), DensityMatrix::from_pure(&plus).entries(), 1e-15);
    }

    #[test]
    fn partial_trace_dimension_mismatch_and_full_keep() {
        let part = Bipartition::prefix(2, 2).unwrap();
        let rho = DensityMatrix::from_pure(&bell());
        assert_eq!(partial_trace(&rho, &part, Side::A).unwrap(), rho);
        let wrong = Bipartition::new(3, &[0]).unwrap();
        assert!(matches!(
            partial_trace(&rho, &wrong, Side::A),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn schmidt_product_and_bell() {
        let part = Bipartition::new(2, &[0]).unwrap();
        let prod = PureState::basis(2, 0b01).unwrap();
        let s = schmidt_decompose(&prod, &part).unwrap();
        assert!((s.coefficients()[0] - 1.0).abs() < 1e-12);
        assert_eq!(s.rank(1e-12), 1);

        let s = schmidt_decompose(&bell(), &part).unwrap();
        for m in s.coefficients() {
            assert!((m - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn bloch_examples() {
        let v = bloch_vector(&DensityMatrix::from_pure(&PureState::basis(1, 0).unwrap())).unwrap();
        assert_eq!((v.x, v.y, v.z), (0.0, 0.0, 1.0));
        let v = bloch_vector(&DensityMatrix::maximally_mixed(2).unwrap()).unwrap();
        assert_eq!((v.x, v.y, v.z), (0.0, 0.0, 0.0));
        // |+i⟩ = (|0⟩ + i|1⟩)/√2 points along +y
        let plus_i = PureState::normalized(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let v = bloch_vector(&DensityMatrix::from_pure(&plus_i)).unwrap();
        assert!((v.y - 1.0).abs() < 1e-15 && v.x.abs() < 1e-15);
        assert!(bloch_vector(&DensityMatrix::maximally_mixed(4).unwrap()).is_err());
        assert!(BlochVector::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn unitary_check() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let had = DMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]);
        assert!(check_unitary(&had).is_ok());
        let not = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(check_unitary(&not), Err(Error::NotUnitary(_))));
    }
}
