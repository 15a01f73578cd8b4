//! Reference implementations used as test oracles. Deliberately naive and
//! independent of the library's index bookkeeping and linear algebra.

#![allow(dead_code)]

use nalgebra::DMatrix;
use pagelab::C64;

/// Bit of `qubit` in `index` for an `n`-qubit register (qubit 0 = MSB).
pub fn bit(index: usize, n: usize, qubit: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Packs the bits of `qubits` (in the given order) into a sub-index.
pub fn pack(index: usize, n: usize, qubits: &[usize]) -> usize {
    qubits.iter().fold(0, |acc, &q| (acc << 1) | bit(index, n, q))
}

/// `(ρ_A)_{ab} = Σ_{i,j : B(i)=B(j)} ρ_{ij} [A(i)=a][A(j)=b]`, straight from
/// the definition of marginalization.
pub fn brute_partial_trace(rho: &DMatrix<C64>, n: usize, a: &[usize]) -> DMatrix<C64> {
    let b: Vec<usize> = (0..n).filter(|q| !a.contains(q)).collect();
    let da = 1 << a.len();
    let mut out = DMatrix::from_element(da, da, C64::new(0.0, 0.0));
    let d = 1 << n;
    for i in 0..d {
        for j in 0..d {
            if pack(i, n, &b) == pack(j, n, &b) {
                out[(pack(i, n, a), pack(j, n, a))] += rho[(i, j)];
            }
        }
    }
    out
}

pub fn pauli_matrix(letter: char) -> DMatrix<C64> {
    let z = C64::new(0.0, 0.0);
    let o = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match letter {
        'I' => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        other => panic!("bad letter {other}"),
    }
}

/// Dense Kronecker product, leftmost letter acting on qubit 0.
pub fn dense_pauli(letters: &str) -> DMatrix<C64> {
    letters
        .chars()
        .fold(DMatrix::from_element(1, 1, C64::new(1.0, 0.0)), |acc, c| acc.kronecker(&pauli_matrix(c)))
}

/// `⟨ψ|G|ψ⟩` by dense matrix-vector product.
pub fn dense_expectation(psi: &[C64], g: &DMatrix<C64>) -> C64 {
    let v = nalgebra::DVector::from_column_slice(psi);
    (v.adjoint() * g * &v)[(0, 0)]
}

/// Eigenvalues of a Hermitian matrix via cyclic Jacobi rotations on its real
/// symmetric embedding `[[Re, -Im], [Im, Re]]`, whose spectrum is that of
/// the Hermitian matrix with every eigenvalue doubled. Sorted descending.
pub fn jacobi_eigenvalues(h: &DMatrix<C64>) -> Vec<f64> {
    let n = h.nrows();
    let m = 2 * n;
    let mut a = vec![vec![0.0f64; m]; m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            a[i][j] = z.re;
            a[i + n][j + n] = z.re;
            a[i][j + n] = -z.im;
            a[i + n][j] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    eig.into_iter().step_by(2).collect()
}

/// Sorted-descending comparison of two multisets, padding with zeros.
pub fn max_multiset_gap(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    let len = a.len().max(b.len());
    a.resize(len, 0.0);
    b.resize(len, 0.0);
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn max_entry_gap(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
