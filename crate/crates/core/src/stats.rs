//! Compensated accumulation and Monte Carlo estimates.

use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Kahan–Babuška–Neumaier running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn merge(&mut self, other: &NeumaierSum) {
        *self += other.sum;
        *self += other.compensation;
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }
}

/// Partial `(sum, sum of squares, count)` triple produced by one worker.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    sum: NeumaierSum,
    sum_sq: NeumaierSum,
    count: u64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
        self.count += 1;
    }

    pub fn merge(&mut self, other: &Accumulator) {
        self.sum.merge(&other.sum);
        self.sum_sq.merge(&other.sum_sq);
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Sample mean and unbiased variance; needs at least two samples.
    pub fn estimate(&self) -> Result<EnsembleEstimate> {
        if self.count < 2 {
            return Err(Error::DegenerateStatistics(format!(
                "variance needs at least 2 samples, got {}",
                self.count
            )));
        }
        let n = self.count as f64;
        let sum = self.sum.value();
        let mean = sum / n;
        let variance = ((self.sum_sq.value() - sum * mean) / (n - 1.0)).max(0.0);
        Ok(EnsembleEstimate::new(mean, variance, self.count))
    }
}

impl FromIterator<f64> for Accumulator {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Accumulator::new();
        iter.into_iter().for_each(|x| acc.push(x));
        acc
    }
}

/// Sample mean, sample variance, count and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleEstimate {
    pub mean: f64,
    pub variance: f64,
    pub count: u64,
    pub std_error: f64,
}

impl EnsembleEstimate {
    pub fn new(mean: f64, variance: f64, count: u64) -> Self {
        Self { mean, variance, count, std_error: (variance / count as f64).sqrt() }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    /// `|mean - target| / std_error`; zero when both numerator and error vanish.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.mean - target).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }

    /// Whether `target` lies within `k` standard errors of the mean.
    pub fn within(&self, target: f64, k: f64) -> bool {
        self.z_score(target) <= k
    }
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F₁ - F₂|`.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::DegenerateStatistics("KS test needs non-empty samples".into()));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::DegenerateStatistics("NaN in KS sample".into()));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Asymptotic critical value of the two-sample KS statistic at level `alpha`.
pub fn ks_critical_value(n: usize, m: usize, alpha: f64) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    let (n, m) = (n as f64, m as f64);
    c * ((n + m) / (n * m)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let mut s = NeumaierSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s += x;
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn estimate_basic() {
        let acc: Accumulator = [1.0, 2.0, 3.0, 4.0].into_iter().collect();
        let e = acc.estimate().unwrap();
        assert_eq!(e.mean, 2.5);
        assert!((e.variance - 5.0 / 3.0).abs() < 1e-15);
        assert!((e.std_error - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert_eq!(e.count, 4);
    }

    #[test]
    fn constant_samples_have_zero_variance() {
        let acc: Accumulator = std::iter::repeat(1.0).take(2000).collect();
        let e = acc.estimate().unwrap();
        assert_eq!((e.mean, e.variance, e.std_error), (1.0, 0.0, 0.0));
        assert!(e.within(1.0, 3.0));
        assert!(!e.within(1.0 + 1e-15, 3.0));
    }

    #[test]
    fn single_sample_is_degenerate() {
        let acc: Accumulator = [0.3].into_iter().collect();
        assert!(matches!(acc.estimate(), Err(Error::DegenerateStatistics(_))));
    }

    #[test]
    fn ks_identical_and_disjoint() {
        let a = [0.1, 0.2, 0.3];
        assert_eq!(ks_statistic(&a, &a).unwrap(), 0.0);
        assert_eq!(ks_statistic(&a, &[1.0, 2.0]).unwrap(), 1.0);
        assert!((ks_statistic(&[1.0, 2.0, 3.0, 4.0], &[2.5]).unwrap() - 0.5).abs() < 1e-15);
        // c(0.01) = 1.6276
        assert!((ks_critical_value(1, 1, 0.01) / 2f64.sqrt() - 1.6276).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn merge_order_does_not_matter(
            xs in prop::collection::vec(-1e3f64..1e3, 2..200),
            split in 0usize..200,
        ) {
            let split = split % xs.len();
            let whole: Accumulator = xs.iter().copied().collect();
            let mut left: Accumulator = xs[..split].iter().copied().collect();
            let right: Accumulator = xs[split..].iter().copied().collect();
            let mut rl = right;
            rl.merge(&left);
            left.merge(&right);
            let (w, a, b) = (whole.estimate().unwrap(), left.estimate().unwrap(), rl.estimate().unwrap());
            for e in [a, b] {
                prop_assert!((e.mean - w.mean).abs() <= 1e-12 * (1.0 + w.mean.abs()));
                prop_assert!((e.variance - w.variance).abs() <= 1e-12 * (1.0 + w.variance));
            }
        }
    }
}
