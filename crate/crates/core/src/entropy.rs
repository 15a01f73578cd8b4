//! Entropy and purity of density matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::state::{DensityMatrix, PSD_TOL};
use crate::{Error, Result};

/// Eigenvalues at or below this are treated as exact zeros in `λ log λ` and `λ^q`.
pub const ZERO_EIGENVALUE: f64 = 1e-15;
/// Eigenvalues above this count towards the rank used by the order-0 entropy.
pub const RANK_THRESHOLD: f64 = 1e-10;

const RENORMALIZE_DRIFT: f64 = 1e-12;
const MAX_DRIFT: f64 = 1e-10;

/// Order `q` of a Rényi entropy; `q = 1` is the von Neumann limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub enum EntropyOrder {
    VonNeumann,
    Renyi(f64),
}

impl EntropyOrder {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "entropy order must be a finite non-negative number, got {q}"
            )));
        }
        Ok(if q == 1.0 { Self::VonNeumann } else { Self::Renyi(q) })
    }

    pub fn q(self) -> f64 {
        match self {
            Self::VonNeumann => 1.0,
            Self::Renyi(q) => q,
        }
    }
}

impl TryFrom<f64> for EntropyOrder {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        Self::new(q)
    }
}

impl From<EntropyOrder> for f64 {
    fn from(order: EntropyOrder) -> f64 {
        order.q()
    }
}

impl fmt::Display for EntropyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q())
    }
}

/// Logarithm base: bits or nats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Two,
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            Self::Two => x.log2(),
            Self::E => x.ln(),
        }
    }

    /// Converts a value in nats into this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            Self::Two => nats / std::f64::consts::LN_2,
            Self::E => nats,
        }
    }

    /// `log 2` in this base.
    pub fn log2_unit(self) -> f64 {
        match self {
            Self::Two => 1.0,
            Self::E => std::f64::consts::LN_2,
        }
    }

    /// `b^x`, the inverse of [`LogBase::log`].
    pub fn exp(self, x: f64) -> f64 {
        match self {
            Self::Two => x.exp2(),
            Self::E => x.exp(),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Two => "2",
            Self::E => "e",
        })
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" | "two" | "bits" => Ok(Self::Two),
            "e" | "nats" => Ok(Self::E),
            other => Err(Error::InvalidArgument(format!("unknown log base '{other}'"))),
        }
    }
}

/// Eigenvalues of a density matrix: each in `[0, 1]`, sorted descending,
/// summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    /// Clamps in-tolerance negatives to zero and renormalizes small drift.
    ///
    /// Eigenvalues below `-1e-10`, or a sum off by more than `1e-10`, are errors.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidArgument("empty spectrum".into()));
        }
        if let Some(bad) = eigenvalues.iter().find(|l| !l.is_finite()) {
            return Err(Error::Numerical(format!("non-finite eigenvalue {bad}")));
        }
        let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        for l in eigenvalues.iter_mut() {
            *l = l.clamp(0.0, 1.0);
        }
        let sum: f64 = eigenvalues.iter().sum();
        let drift = (sum - 1.0).abs();
        if drift > MAX_DRIFT {
            return Err(Error::SpectrumDrift(drift));
        }
        if drift > RENORMALIZE_DRIFT {
            eigenvalues.iter_mut().for_each(|l| *l /= sum);
        }
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { eigenvalues })
    }

    /// Flat spectrum of length `d`.
    pub fn uniform(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("empty spectrum".into()));
        }
        Ok(Self { eigenvalues: vec![1.0 / d as f64; d] })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Count of eigenvalues above [`RANK_THRESHOLD`].
    pub fn rank(&self) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > RANK_THRESHOLD).count()
    }

    /// `Σ λ_i²`.
    pub fn purity(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l * l).sum()
    }

    fn support(&self) -> impl Iterator<Item = f64> + '_ {
        self.eigenvalues.iter().copied().filter(|&l| l > ZERO_EIGENVALUE)
    }
}

/// Eigenvalues of `rho`.
pub fn spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    if rho.dim() == 1 {
        return Spectrum::from_eigenvalues(vec![rho.get(0, 0).re]);
    }
    let eig = rho.entries().clone().symmetric_eigenvalues();
    Spectrum::from_eigenvalues(eig.iter().copied().collect())
}

/// `S_q = log(Σ λ_i^q) / (1 - q)`, with the `q = 0` and `q = 1` limits.
pub fn renyi_entropy(s: &Spectrum, order: EntropyOrder, base: LogBase) -> f64 {
    let value = match order {
        EntropyOrder::VonNeumann => return von_neumann_entropy(s, base),
        EntropyOrder::Renyi(q) if q == 0.0 => base.log(s.rank().max(1) as f64),
        EntropyOrder::Renyi(q) if q == 2.0 => -base.log(s.support().map(|l| l * l).sum::<f64>()),
        EntropyOrder::Renyi(q) => base.log(s.support().map(|l| l.powf(q)).sum::<f64>()) / (1.0 - q),
    };
    value.clamp(0.0, base.log(s.len() as f64))
}

/// `Σ λ_i log(1/λ_i)` with `0 log(1/0) = 0`.
pub fn von_neumann_entropy(s: &Spectrum, base: LogBase) -> f64 {
    let nats: f64 = s.support().map(|l| -l * l.ln()).sum();
    base.from_nats(nats).clamp(0.0, base.log(s.len() as f64))
}

/// `tr ρ² = Σ_{jk} |ρ_jk|²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.entries().iter().map(|z| z.norm_sqr()).sum()
}

/// Rényi entropies at `q = 1 ∓ ε`, bracketing the von Neumann value.
pub fn renyi_continuity_check(s: &Spectrum, epsilon: f64, base: LogBase) -> Result<(f64, f64)> {
    if !(epsilon > 0.0 && epsilon <= 0.01) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 0.01], got {epsilon}")));
    }
    Ok((
        renyi_entropy(s, EntropyOrder::Renyi(1.0 - epsilon), base),
        renyi_entropy(s, EntropyOrder::Renyi(1.0 + epsilon), base),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PureState;
    use crate::C64;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn spectrum_of(v: &[f64]) -> Spectrum {
        Spectrum::from_eigenvalues(v.to_vec()).unwrap()
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(&DensityMatrix::maximally_mixed(2).unwrap()).unwrap();
        assert!(s.eigenvalues().iter().all(|l| (l - 0.5).abs() < 1e-15));
        let psi = PureState::normalized(vec![C64::new(1.0, 0.0), C64::new(0.0, 2.0)]).unwrap();
        let s = spectrum(&DensityMatrix::from_pure(&psi)).unwrap();
        assert!((s.eigenvalues()[0] - 1.0).abs() < 1e-12);
        assert!(s.eigenvalues()[1].abs() < 1e-12);
    }

    #[test]
    fn spectrum_rejects_negative_and_drift() {
        assert!(matches!(Spectrum::from_eigenvalues(vec![1.1, -0.1]), Err(Error::NotPsd(_))));
        assert!(matches!(Spectrum::from_eigenvalues(vec![0.5, 0.6]), Err(Error::SpectrumDrift(_))));
        let s = Spectrum::from_eigenvalues(vec![1.0 + 5e-11, -5e-11]).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 0.0]);
        let s = Spectrum::from_eigenvalues(vec![0.25, 0.75 + 5e-11]).unwrap();
        assert!((s.eigenvalues().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(s.eigenvalues()[0] > s.eigenvalues()[1]);
    }

    #[test]
    fn renyi_examples() {
        let half = spectrum_of(&[0.5, 0.5]);
        assert!((renyi_entropy(&half, EntropyOrder::Renyi(2.0), LogBase::Two) - 1.0).abs() < 1e-15);

        let s = spectrum_of(&[0.5, 0.25, 0.25]);
        let expect = 2.0 * (0.5f64.sqrt() + 2.0 * 0.25f64.sqrt()).log2();
        let got = renyi_entropy(&s, EntropyOrder::Renyi(0.5), LogBase::Two);
        assert!((got - expect).abs() < 1e-14);
        assert!((got - 1.5431).abs() < 1e-4);

        let s2 = renyi_entropy(&s, EntropyOrder::Renyi(2.0), LogBase::Two);
        assert!((s2 + (0.25f64 + 0.0625 + 0.0625).log2()).abs() < 1e-15);

        // q = 0 counts the support
        assert!((renyi_entropy(&s, EntropyOrder::Renyi(0.0), LogBase::Two) - 3f64.log2()).abs() < 1e-15);
        assert_eq!(renyi_entropy(&spectrum_of(&[1.0, 0.0, 0.0]), EntropyOrder::Renyi(0.0), LogBase::Two), 0.0);
    }

    #[test]
    fn von_neumann_examples() {
        assert_eq!(von_neumann_entropy(&spectrum_of(&[1.0, 0.0]), LogBase::Two), 0.0);
        for d in [2usize, 3, 8, 16] {
            let u = Spectrum::uniform(d).unwrap();
            assert!((von_neumann_entropy(&u, LogBase::Two) - (d as f64).log2()).abs() < 1e-12);
            assert!((von_neumann_entropy(&u, LogBase::E) - (d as f64).ln()).abs() < 1e-12);
        }
        // hand evaluation: 0.5·1 + 2·0.25·2 = 1.5 bits
        assert!((von_neumann_entropy(&spectrum_of(&[0.5, 0.25, 0.25]), LogBase::Two) - 1.5).abs() < 1e-15);
        assert_eq!(
            renyi_entropy(&spectrum_of(&[0.5, 0.25, 0.25]), EntropyOrder::VonNeumann, LogBase::Two),
            von_neumann_entropy(&spectrum_of(&[0.5, 0.25, 0.25]), LogBase::Two)
        );
    }

    #[test]
    fn purity_examples() {
        let psi = PureState::normalized(vec![C64::new(0.3, 0.1), C64::new(-0.2, 0.9)]).unwrap();
        assert!((purity(&DensityMatrix::from_pure(&psi)) - 1.0).abs() < 1e-15);
        assert!((purity(&DensityMatrix::maximally_mixed(4).unwrap()) - 0.25).abs() < 1e-15);
        let rho = DensityMatrix::new(DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.7, 0.0), C64::new(0.1, 0.2), C64::new(0.1, -0.2), C64::new(0.3, 0.0)],
        ))
        .unwrap();
        let s2 = renyi_entropy(&spectrum(&rho).unwrap(), EntropyOrder::Renyi(2.0), LogBase::Two);
        assert!((purity(&rho) - (-s2).exp2()).abs() < 1e-10);
    }

    #[test]
    fn continuity_examples() {
        let (lo, hi) = renyi_continuity_check(&Spectrum::uniform(2).unwrap(), 1e-4, LogBase::Two).unwrap();
        assert!((lo - 1.0).abs() < 1e-3 && (hi - 1.0).abs() < 1e-3);
        let (lo, hi) = renyi_continuity_check(&spectrum_of(&[1.0, 0.0]), 1e-4, LogBase::Two).unwrap();
        assert!(lo.abs() < 1e-6 && hi.abs() < 1e-6);
        // -0.7 log2 0.7 - 0.3 log2 0.3 = 0.881291
        let (lo, hi) = renyi_continuity_check(&spectrum_of(&[0.7, 0.3]), 1e-4, LogBase::Two).unwrap();
        assert!((lo - 0.8813).abs() < 1e-3 && (hi - 0.8813).abs() < 1e-3);
        assert!(lo >= hi);
        assert!(renyi_continuity_check(&spectrum_of(&[0.7, 0.3]), 0.0, LogBase::Two).is_err());
        assert!(renyi_continuity_check(&spectrum_of(&[0.7, 0.3]), 0.02, LogBase::Two).is_err());
    }

    #[test]
    fn order_parsing() {
        assert_eq!(EntropyOrder::new(1.0).unwrap(), EntropyOrder::VonNeumann);
        assert_eq!(EntropyOrder::new(2.0).unwrap(), EntropyOrder::Renyi(2.0));
        assert!(EntropyOrder::new(-0.5).is_err());
        assert!(EntropyOrder::new(f64::NAN).is_err());
        assert_eq!("e".parse::<LogBase>().unwrap(), LogBase::E);
        assert!("10".parse::<LogBase>().is_err());
    }

    fn arb_spectrum() -> impl Strategy<Value = Spectrum> {
        prop::collection::vec(0.0f64..1.0, 1..12).prop_filter_map("zero mass", |mut v| {
            let s: f64 = v.iter().sum();
            (s > 1e-6).then(|| {
                v.iter_mut().for_each(|x| *x /= s);
                Spectrum::from_eigenvalues(v).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn renyi_non_increasing_in_q(s in arb_spectrum()) {
            let grid = [0.0, 0.25, 0.5, 0.9, 0.999, 1.0, 1.001, 1.5, 2.0, 3.0, 7.0];
            let vals: Vec<f64> = grid
                .iter()
                .map(|&q| renyi_entropy(&s, EntropyOrder::new(q).unwrap(), LogBase::Two))
                .collect();
            for w in vals.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-9, "{:?}", vals);
            }
        }

        #[test]
        fn base_conversion(s in arb_spectrum(), q in 0.0f64..4.0) {
            let order = EntropyOrder::new(q).unwrap();
            let bits = renyi_entropy(&s, order, LogBase::Two);
            let nats = renyi_entropy(&s, order, LogBase::E);
            prop_assert!((nats - bits * std::f64::consts::LN_2).abs() < 1e-12);
        }

        #[test]
        fn entropy_bounded_by_log_dimension(s in arb_spectrum(), q in 0.0f64..4.0) {
            let v = renyi_entropy(&s, EntropyOrder::new(q).unwrap(), LogBase::Two);
            prop_assert!(v >= 0.0 && v <= (s.len() as f64).log2() + 1e-12);
        }
    }
}
