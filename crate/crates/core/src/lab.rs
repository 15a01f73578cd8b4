//! Monte Carlo estimation of the Page curve and its analytic references.
//!
//! Every sample owns a random stream keyed by `(seed, tag, n_a, index)`, and
//! samples are reduced in fixed-size chunks whose partial accumulators are
//! merged in chunk order. Results are therefore bit-identical for any worker
//! count.

use rand::seq::index::sample as sample_indices;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{self, EntropyOrder, LogBase};
use crate::pauli::{pauli_expectation, PauliString};
use crate::sampler::{
    classical_marginal, rotate_state, sample_classical_uniform, sample_haar_pure, SamplerSeed,
};
use crate::state::{reduced_density, Bipartition, PureState, Side};
use crate::stats::{ks_statistic, ks_critical_value, Accumulator, EnsembleEstimate};
use crate::{Error, Result, C64, MAX_QUBITS};

/// Samples per reduction chunk. Fixed so the merge tree does not depend on
/// the worker count.
const CHUNK: usize = 64;

/// Default memory budget for [`estimate_page_curve`].
pub const DEFAULT_MEMORY_LIMIT: u64 = 2 << 30;

/// Smallest allowed `samples_per_point`.
pub const MIN_SAMPLES: usize = 100;

mod tag {
    pub const QUANTUM: u8 = 0;
    pub const CLASSICAL: u8 = 1;
    pub const CONCENTRATION: u8 = 2;
    pub const SUBSET: u8 = 3;
    pub const INVARIANCE: u8 = 4;
    pub const PREDICTABILITY: u8 = 5;
}

/// `E tr ρ_A² = (d_A + d_B) / (d_A d_B + 1)` under the Haar measure.
pub fn lubkin_expected_purity(d_a: usize, d_b: usize) -> Result<f64> {
    check_dims(d_a, d_b)?;
    let (a, b) = (d_a as f64, d_b as f64);
    Ok((a + b) / (a * b + 1.0))
}

/// The same expectation assembled from the local predictability share:
/// `(1/d)(1 + (d_A²-1)(d-1)/(d²-1))` scaled to subsystem A.
pub fn expected_purity_from_predictability(d_a: usize, d_b: usize) -> Result<f64> {
    check_dims(d_a, d_b)?;
    let (a, d) = (d_a as f64, (d_a * d_b) as f64);
    if d == 1.0 {
        return Ok(1.0);
    }
    Ok((1.0 + (a * a - 1.0) * (d - 1.0) / (d * d - 1.0)) / a)
}

/// `E Σ p_A²` for the marginal of a flat-Dirichlet distribution:
/// `(d_B + 1) / (d + 1)`.
pub fn classical_expected_purity(d_a: usize, d_b: usize) -> Result<f64> {
    check_dims(d_a, d_b)?;
    Ok((d_b as f64 + 1.0) / ((d_a * d_b) as f64 + 1.0))
}

fn check_dims(d_a: usize, d_b: usize) -> Result<()> {
    if d_a == 0 || d_b == 0 {
        return Err(Error::InvalidArgument("subsystem dimensions must be ≥ 1".into()));
    }
    Ok(())
}

/// Maximal subsystem entropy `n_a log 2`, the monotone reference line.
pub fn semiclassical_curve(n_qubits: usize, n_a: usize, base: LogBase) -> Result<f64> {
    if n_a > n_qubits {
        return Err(Error::InvalidArgument(format!("n_a = {n_a} exceeds n = {n_qubits}")));
    }
    Ok(n_a as f64 * base.log2_unit())
}

/// Which qubits form subsystem A for each sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsystemChoice {
    /// The first `n_a` qubits.
    #[default]
    Prefix,
    /// A uniformly random `n_a`-subset, drawn per sample.
    RandomSubset,
}

/// Ensemble the curve is averaged over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// Haar-random pure states.
    #[default]
    Quantum,
    /// Flat-Dirichlet probability vectors; entropies are Shannon entropies
    /// of marginals.
    Classical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageCurveConfig {
    pub ensemble: Ensemble,
    pub n_qubits: usize,
    pub entropy_order: EntropyOrder,
    pub log_base: LogBase,
    pub samples_per_point: usize,
    pub seed: u64,
    pub subsystem: SubsystemChoice,
    /// Worker threads; `0` means one per available core. Never affects output.
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip, default = "default_memory_limit")]
    pub memory_limit: u64,
}

fn default_memory_limit() -> u64 {
    DEFAULT_MEMORY_LIMIT
}

impl PageCurveConfig {
    pub fn new(n_qubits: usize, samples_per_point: usize, seed: u64) -> Self {
        Self {
            ensemble: Ensemble::Quantum,
            n_qubits,
            entropy_order: EntropyOrder::VonNeumann,
            log_base: LogBase::Two,
            samples_per_point,
            seed,
            subsystem: SubsystemChoice::Prefix,
            workers: 0,
            memory_limit: DEFAULT_MEMORY_LIMIT,
        }
    }

    pub fn order(mut self, order: EntropyOrder) -> Self {
        self.entropy_order = order;
        self
    }

    pub fn base(mut self, base: LogBase) -> Self {
        self.log_base = base;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn subsystem(mut self, choice: SubsystemChoice) -> Self {
        self.subsystem = choice;
        self
    }

    pub fn ensemble(mut self, ensemble: Ensemble) -> Self {
        self.ensemble = ensemble;
        self
    }

    pub fn memory_limit(mut self, bytes: u64) -> Self {
        self.memory_limit = bytes;
        self
    }
}

/// Bytes of working memory a run would need: a state vector, its coefficient
/// matrix and the reduced-state buffers for each worker.
pub fn estimated_memory(n_qubits: usize, workers: usize) -> u128 {
    let d = if n_qubits >= 120 { u128::MAX >> 8 } else { 1u128 << n_qubits };
    let per_worker = d.saturating_mul(5 * std::mem::size_of::<C64>() as u128);
    per_worker.saturating_mul(workers.max(1) as u128)
}

/// Fails with [`Error::MemoryGuard`] when a run would exceed `limit` bytes.
pub fn check_memory(n_qubits: usize, workers: usize, limit: u64) -> Result<()> {
    let required = estimated_memory(n_qubits, effective_workers(workers));
    if required > u128::from(limit) {
        return Err(Error::MemoryGuard { required, limit: u128::from(limit) });
    }
    Ok(())
}

fn effective_workers(workers: usize) -> usize {
    if workers == 0 {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    } else {
        workers
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(effective_workers(workers))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

/// Entropy and purity of one sampled subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleValue {
    pub entropy: f64,
    pub purity: f64,
}

/// One point of an estimated curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageCurvePoint {
    pub n_a: usize,
    pub mean_entropy: EnsembleEstimate,
    pub mean_purity: EnsembleEstimate,
    /// Closed-form expected purity (Lubkin for the quantum ensemble, the
    /// flat-Dirichlet marginal purity for the classical one).
    pub analytic_purity: f64,
    pub semiclassical_entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageCurveResult {
    pub config: PageCurveConfig,
    pub points: Vec<PageCurvePoint>,
}

impl PageCurveResult {
    /// Subsystem size with the largest mean entropy.
    pub fn argmax_entropy(&self) -> usize {
        self.points
            .iter()
            .max_by(|a, b| a.mean_entropy.mean.total_cmp(&b.mean_entropy.mean))
            .map(|p| p.n_a)
            .unwrap_or(0)
    }
}

/// Stream for quantum sample `index` at subsystem size `n_a`.
pub fn quantum_sample_seed(seed: u64, n_a: usize, index: usize) -> SamplerSeed {
    SamplerSeed::keyed(seed, tag::QUANTUM, n_a as u32, index as u32)
}

/// The pure state drawn for sample `index` at subsystem size `n_a`.
pub fn quantum_sample_state(seed: u64, n_qubits: usize, n_a: usize, index: usize) -> Result<PureState> {
    sample_haar_pure(n_qubits, &mut quantum_sample_seed(seed, n_a, index).rng())
}

/// Subsystem A used for sample `index`.
pub fn sample_partition(
    seed: u64,
    n_qubits: usize,
    n_a: usize,
    index: usize,
    choice: SubsystemChoice,
) -> Result<Bipartition> {
    match choice {
        SubsystemChoice::Prefix => Bipartition::prefix(n_qubits, n_a),
        SubsystemChoice::RandomSubset => {
            if n_a > n_qubits {
                return Bipartition::prefix(n_qubits, n_a);
            }
            let mut rng = SamplerSeed::keyed(seed, tag::SUBSET, n_a as u32, index as u32).rng();
            let a = sample_indices(&mut rng, n_qubits, n_a).into_vec();
            Bipartition::allowing_trivial(n_qubits, &a)
        }
    }
}

/// Subsystem entropy and purity of a pure state.
///
/// The smaller reduced state is diagonalized; both sides share the same
/// non-zero spectrum, so this equals the value on A.
pub fn evaluate_pure_sample(
    state: &PureState,
    part: &Bipartition,
    order: EntropyOrder,
    base: LogBase,
) -> Result<SampleValue> {
    let side = if part.n_a() <= part.n_b() { Side::A } else { Side::B };
    let rho = reduced_density(state, part, side)?;
    let purity = entropy::purity(&rho);
    let spectrum = entropy::spectrum(&rho)?;
    Ok(SampleValue { entropy: entropy::renyi_entropy(&spectrum, order, base), purity })
}

fn quantum_value(config: &PageCurveConfig, n_a: usize, index: usize) -> Result<SampleValue> {
    let state = quantum_sample_state(config.seed, config.n_qubits, n_a, index)?;
    let part = sample_partition(config.seed, config.n_qubits, n_a, index, config.subsystem)?;
    evaluate_pure_sample(&state, &part, config.entropy_order, config.log_base)
}

fn classical_value(config: &PageCurveConfig, n_a: usize, index: usize) -> Result<SampleValue> {
    let mut rng = SamplerSeed::keyed(config.seed, tag::CLASSICAL, n_a as u32, index as u32).rng();
    let state = sample_classical_uniform(config.n_qubits, &mut rng)?;
    let part = sample_partition(config.seed, config.n_qubits, n_a, index, config.subsystem)?;
    let marginal = classical_marginal(&state, &part)?;
    let spectrum = entropy::Spectrum::from_eigenvalues(marginal.probabilities().to_vec())?;
    Ok(SampleValue {
        entropy: entropy::renyi_entropy(&spectrum, config.entropy_order, config.log_base),
        purity: marginal.purity(),
    })
}

/// Chunked parallel map-reduce over `count` samples.
fn reduce_samples<F>(count: usize, f: F) -> Result<(Accumulator, Accumulator)>
where
    F: Fn(usize) -> Result<SampleValue> + Sync,
{
    let chunks: Vec<(Accumulator, Accumulator)> = (0..count.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut ent = Accumulator::new();
            let mut pur = Accumulator::new();
            for i in c * CHUNK..((c + 1) * CHUNK).min(count) {
                let v = f(i)?;
                ent.push(v.entropy);
                pur.push(v.purity);
            }
            Ok((ent, pur))
        })
        .collect::<Result<_>>()?;
    let mut ent = Accumulator::new();
    let mut pur = Accumulator::new();
    for (e, p) in &chunks {
        ent.merge(e);
        pur.merge(p);
    }
    Ok((ent, pur))
}

/// Estimates mean subsystem entropy and purity for every `n_a` in `0..=n`.
pub fn estimate_page_curve(config: &PageCurveConfig) -> Result<PageCurveResult> {
    check_memory(config.n_qubits, config.workers, config.memory_limit)?;
    if config.n_qubits < 2 || config.n_qubits > MAX_QUBITS {
        return Err(Error::QubitRange { got: config.n_qubits, min: 2, max: MAX_QUBITS });
    }
    if config.samples_per_point < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "samples_per_point must be ≥ {MIN_SAMPLES}, got {}",
            config.samples_per_point
        )));
    }
    let n = config.n_qubits;
    let pool = pool(config.workers)?;
    let points = (0..=n)
        .map(|n_a| {
            let (ent, pur) = pool.install(|| {
                reduce_samples(config.samples_per_point, |i| match config.ensemble {
                    Ensemble::Quantum => quantum_value(config, n_a, i),
                    Ensemble::Classical => classical_value(config, n_a, i),
                })
            })?;
            let (d_a, d_b) = (1usize << n_a, 1usize << (n - n_a));
            let analytic_purity = match config.ensemble {
                Ensemble::Quantum => lubkin_expected_purity(d_a, d_b)?,
                Ensemble::Classical => classical_expected_purity(d_a, d_b)?,
            };
            Ok(PageCurvePoint {
                n_a,
                mean_entropy: ent.estimate()?,
                mean_purity: pur.estimate()?,
                analytic_purity,
                semiclassical_entropy: semiclassical_curve(n, n_a, config.log_base)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PageCurveResult { config: config.clone(), points })
}

/// Classical analogue: flat-Dirichlet distributions on `n_bits` bits and
/// Shannon entropies of their marginals.
pub fn classical_page_curve(n_bits: usize, samples: usize, seed: u64) -> Result<PageCurveResult> {
    estimate_page_curve(&PageCurveConfig::new(n_bits, samples, seed).ensemble(Ensemble::Classical))
}

/// Per-point comparison of the purity channel with the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PurityCheck {
    pub n_a: usize,
    pub mean: f64,
    pub std_error: f64,
    pub analytic: f64,
    pub z_score: f64,
    pub passed: bool,
}

/// `|mean − analytic| / SE` for every point; passes within `k` standard errors.
pub fn verify_purity(result: &PageCurveResult, k: f64) -> Vec<PurityCheck> {
    result
        .points
        .iter()
        .map(|p| {
            let z = p.mean_purity.z_score(p.analytic_purity);
            PurityCheck {
                n_a: p.n_a,
                mean: p.mean_purity.mean,
                std_error: p.mean_purity.std_error,
                analytic: p.analytic_purity,
                z_score: z,
                passed: z <= k,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationRow {
    pub n: usize,
    pub n_a: usize,
    pub mean_purity: f64,
    pub std_purity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub samples: usize,
    pub seed: u64,
    pub rows: Vec<ConcentrationRow>,
}

impl ConcentrationReport {
    /// Whether the spread shrinks strictly from row to row.
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].std_purity < w[0].std_purity)
    }
}

/// Sample standard deviation of the half-cut purity for each `n`.
pub fn concentration_report(n_list: &[usize], samples: usize, seed: u64, workers: usize) -> Result<ConcentrationReport> {
    if samples < 2 {
        return Err(Error::DegenerateStatistics(format!(
            "standard deviation needs at least 2 samples, got {samples}"
        )));
    }
    let pool = pool(workers)?;
    let rows = n_list
        .iter()
        .map(|&n| {
            if !(2..=12).contains(&n) {
                return Err(Error::QubitRange { got: n, min: 2, max: 12 });
            }
            let part = Bipartition::prefix(n, n / 2)?;
            let (_, pur) = pool.install(|| {
                reduce_samples(samples, |i| {
                    let mut rng = SamplerSeed::keyed(seed, tag::CONCENTRATION, n as u32, i as u32).rng();
                    let psi = sample_haar_pure(n, &mut rng)?;
                    evaluate_pure_sample(&psi, &part, EntropyOrder::Renyi(2.0), LogBase::Two)
                })
            })?;
            let e = pur.estimate()?;
            Ok(ConcentrationRow { n, n_a: n / 2, mean_purity: e.mean, std_purity: e.std_dev() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConcentrationReport { samples, seed, rows })
}

/// Mean of `⟨g⟩²` over Haar samples for a fixed string.
pub fn predictability_estimate(g: &PauliString, samples: usize, seed: u64) -> Result<EnsembleEstimate> {
    let n = g.n_qubits();
    let values = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = SamplerSeed::keyed(seed, tag::PREDICTABILITY, g.code() as u32, i as u32).rng();
            let psi = sample_haar_pure(n, &mut rng)?;
            Ok(pauli_expectation(&psi, g)?.powi(2))
        })
        .collect::<Result<Vec<f64>>>()?;
    values.into_iter().collect::<Accumulator>().estimate()
}

/// Two-sample KS comparison of subsystem entropies with and without a fixed
/// unitary applied to every sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub samples: usize,
    pub statistic: f64,
    pub critical_value: f64,
    pub alpha: f64,
    pub passed: bool,
}

pub fn unitary_invariance_test(
    part: &Bipartition,
    unitary: &nalgebra::DMatrix<C64>,
    samples: usize,
    seed: u64,
    alpha: f64,
) -> Result<InvarianceReport> {
    let n = part.n_qubits();
    let pairs = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = SamplerSeed::keyed(seed, tag::INVARIANCE, n as u32, i as u32).rng();
            let psi = sample_haar_pure(n, &mut rng)?;
            let rotated = rotate_state(&psi, unitary)?;
            let f = |s: &PureState| {
                evaluate_pure_sample(s, part, EntropyOrder::VonNeumann, LogBase::Two).map(|v| v.entropy)
            };
            Ok((f(&psi)?, f(&rotated)?))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let (raw, rot): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let statistic = ks_statistic(&raw, &rot)?;
    let critical_value = ks_critical_value(samples, samples, alpha);
    Ok(InvarianceReport { samples, statistic, critical_value, alpha, passed: statistic <= critical_value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lubkin_examples() {
        for d_b in [1usize, 2, 16, 1024] {
            assert_eq!(lubkin_expected_purity(1, d_b).unwrap(), 1.0);
        }
        assert!((lubkin_expected_purity(2, 2).unwrap() - 0.8).abs() < 1e-15);
        let best = (0..=6)
            .map(|k| (1usize << k, lubkin_expected_purity(1 << k, 64 >> k).unwrap()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert_eq!(best.0, 8);
        assert!(lubkin_expected_purity(0, 4).is_err());
    }

    #[test]
    fn both_expected_purity_forms_agree() {
        for n in 0..=12 {
            for k in 0..=n {
                let (da, db) = (1usize << k, 1usize << (n - k));
                let a = lubkin_expected_purity(da, db).unwrap();
                let b = expected_purity_from_predictability(da, db).unwrap();
                assert!((a - b).abs() < 1e-12, "{da} {db}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn semiclassical_examples() {
        assert_eq!(semiclassical_curve(8, 0, LogBase::Two).unwrap(), 0.0);
        assert_eq!(semiclassical_curve(8, 8, LogBase::Two).unwrap(), 8.0);
        assert!((semiclassical_curve(8, 1, LogBase::E).unwrap() - 0.6931).abs() < 1e-4);
        assert!(semiclassical_curve(3, 4, LogBase::Two).is_err());
    }

    #[test]
    fn classical_expected_purity_limits() {
        assert_eq!(classical_expected_purity(1, 64).unwrap(), 1.0);
        assert!((classical_expected_purity(64, 1).unwrap() - 2.0 / 65.0).abs() < 1e-15);
    }

    #[test]
    fn endpoints_are_exact() {
        let r = estimate_page_curve(&PageCurveConfig::new(2, 100, 1).workers(2)).unwrap();
        assert_eq!(r.points.len(), 3);
        for p in [&r.points[0], &r.points[2]] {
            assert_eq!(p.mean_entropy.mean, 0.0);
            assert_eq!(p.mean_purity.mean, 1.0);
            assert_eq!(p.mean_purity.std_error, 0.0);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let base = PageCurveConfig::new(5, 300, 77).order(EntropyOrder::Renyi(2.0));
        let a = estimate_page_curve(&base.clone().workers(1)).unwrap();
        let b = estimate_page_curve(&base.workers(3)).unwrap();
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            estimate_page_curve(&PageCurveConfig::new(1, 100, 0)),
            Err(Error::QubitRange { .. })
        ));
        assert!(estimate_page_curve(&PageCurveConfig::new(4, 99, 0)).is_err());
        assert!(matches!(
            estimate_page_curve(&PageCurveConfig::new(40, 100, 0)),
            Err(Error::MemoryGuard { .. })
        ));
        assert!(matches!(
            estimate_page_curve(&PageCurveConfig::new(10, 100, 0).workers(1).memory_limit(1 << 10)),
            Err(Error::MemoryGuard { .. })
        ));
    }

    #[test]
    fn random_subsets_are_valid_and_reproducible() {
        for i in 0..20 {
            let p = sample_partition(9, 6, 3, i, SubsystemChoice::RandomSubset).unwrap();
            assert_eq!(p.n_a(), 3);
            assert_eq!(p, sample_partition(9, 6, 3, i, SubsystemChoice::RandomSubset).unwrap());
        }
    }

    #[test]
    fn concentration_needs_two_samples() {
        assert!(matches!(concentration_report(&[4], 1, 0, 1), Err(Error::DegenerateStatistics(_))));
        assert!(concentration_report(&[13], 10, 0, 1).is_err());
    }

    #[test]
    fn concentration_is_deterministic() {
        let a = concentration_report(&[4], 200, 5, 1).unwrap();
        let b = concentration_report(&[4], 200, 5, 4).unwrap();
        assert_eq!(a, b);
    }
}
