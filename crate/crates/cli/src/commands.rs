use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use pagelab::entropy::{self, EntropyOrder, LogBase};
use pagelab::lab::{self, Ensemble, PageCurveConfig, SubsystemChoice};
use pagelab::pauli::{predictability_budget, purity_from_budget, sampled_budget, BudgetSide, MAX_EXHAUSTIVE_QUBITS};
use pagelab::report;
use pagelab::sampler::{sample_haar_pure, SamplerSeed};
use pagelab::state::{reduced_density, schmidt_decompose, Bipartition, PureState, Side};

use crate::input::read_state;
use crate::{BudgetArgs, ConcentrationArgs, CurveArgs, Failure, Format, LubkinArgs, PartitionArgs, SchmidtArgs};

type CmdResult = Result<(), Failure>;

/// Stream tag for states sampled by `pauli-budget`.
const BUDGET_TAG: u8 = 16;

const SYMMETRY_TOL: f64 = 1e-9;
const BUDGET_TOL: f64 = 1e-8;

fn write_out(path: Option<&Path>, content: &str) -> CmdResult {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// One destination per format. A single format goes to `--output` (or
/// stdout); several need `--output` and share its stem.
fn destinations(out: &[Format], output: Option<&Path>) -> Result<Vec<(Format, Option<PathBuf>)>, Failure> {
    let mut formats: Vec<Format> = Vec::new();
    for f in out {
        if !formats.contains(f) {
            formats.push(*f);
        }
    }
    match (formats.len(), output) {
        (0, _) => Err(Failure::Usage("no output format given".into())),
        (1, out) => Ok(vec![(formats[0], out.map(Path::to_path_buf))]),
        (_, None) => Err(Failure::Usage("several --out formats need --output".into())),
        (_, Some(p)) => Ok(formats.into_iter().map(|f| (f, Some(p.with_extension(f.extension())))).collect()),
    }
}

fn order(q: f64) -> Result<EntropyOrder, Failure> {
    EntropyOrder::new(q).map_err(Failure::from)
}

pub fn page_curve(args: CurveArgs, ensemble: Ensemble) -> CmdResult {
    let dests = destinations(&args.out, args.common.output.as_deref())?;
    let config = PageCurveConfig::new(args.qubits, args.samples, args.common.seed)
        .ensemble(ensemble)
        .order(order(args.q)?)
        .base(args.base.into())
        .subsystem(if args.random_subsets { SubsystemChoice::RandomSubset } else { SubsystemChoice::Prefix })
        .workers(args.common.workers)
        .memory_limit(args.common.memory_limit);
    let result = lab::estimate_page_curve(&config)?;
    for (format, path) in dests {
        let text = match format {
            Format::Csv => report::to_csv(&result),
            Format::Json => report::to_json(&result)?,
            Format::Svg => report::to_svg(&result),
        };
        write_out(path.as_deref(), &text)?;
    }
    Ok(())
}

pub fn verify_lubkin(args: LubkinArgs) -> CmdResult {
    let config = PageCurveConfig::new(args.qubits, args.samples, args.common.seed)
        .order(EntropyOrder::Renyi(2.0))
        .workers(args.common.workers)
        .memory_limit(args.common.memory_limit);
    let result = lab::estimate_page_curve(&config)?;
    let checks = lab::verify_purity(&result, args.sigmas);
    let mut out = String::new();
    let _ = writeln!(out, "# n = {}, samples = {}, seed = {}, band = {} SE", args.qubits, args.samples, args.common.seed, args.sigmas);
    let _ = writeln!(out, "n_a\tmean_purity\tstd_error\tlubkin\tz\tstatus");
    for c in &checks {
        let _ = writeln!(
            out,
            "{}\t{:.8}\t{:.3e}\t{:.8}\t{:.3}\t{}",
            c.n_a,
            c.mean,
            c.std_error,
            c.analytic,
            c.z_score,
            if c.passed { "pass" } else { "FAIL" }
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(out, "{}", if failed == 0 { "PASS" } else { "FAIL" });
    write_out(args.common.output.as_deref(), &out)?;
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} point(s) outside {} SE", args.sigmas)));
    }
    Ok(())
}

fn bipartition(n: usize, args: &PartitionArgs) -> Result<Bipartition, Failure> {
    let part = match (&args.partition, args.na) {
        (Some(list), _) => Bipartition::new(n, list),
        (None, Some(na)) => Bipartition::prefix(n, na).and_then(|p| Bipartition::new(n, p.a_indices())),
        (None, None) => Bipartition::prefix(n, (n / 2).max(1)).and_then(|p| Bipartition::new(n, p.a_indices())),
    };
    part.map_err(Failure::from)
}

fn parse_basis(bits: &str) -> Result<PureState, Failure> {
    if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
        return Err(Failure::Usage(format!("basis state '{bits}' must be a string of 0/1")));
    }
    let index = usize::from_str_radix(bits, 2).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(PureState::basis(bits.len(), index)?)
}

pub fn pauli_budget(args: BudgetArgs) -> CmdResult {
    let states: Vec<(String, PureState)> = if let Some(path) = &args.state {
        vec![(path.display().to_string(), read_state(path).map_err(Failure::Usage)?)]
    } else if !args.basis.is_empty() {
        args.basis
            .iter()
            .map(|b| Ok((format!("|{b}>"), parse_basis(b)?)))
            .collect::<Result<_, Failure>>()?
    } else {
        let n = args.qubits.ok_or_else(|| Failure::Usage("--qubits is required for sampled states".into()))?;
        if args.samples == 0 {
            return Err(Failure::Usage("--samples must be positive".into()));
        }
        (0..args.samples)
            .map(|i| {
                let mut rng = SamplerSeed::keyed(args.common.seed, BUDGET_TAG, n as u32, i as u32).rng();
                Ok((format!("haar#{i}"), sample_haar_pure(n, &mut rng)?))
            })
            .collect::<Result<_, Failure>>()?
    };
    let n = states[0].1.n_qubits();
    if states.iter().any(|(_, s)| s.n_qubits() != n) {
        return Err(Failure::Usage("all basis states must have the same length".into()));
    }
    if let Some(q) = args.qubits {
        if q != n {
            return Err(Failure::Usage(format!("--qubits {q} does not match the {n}-qubit input")));
        }
    }
    let part = bipartition(n, &args.partition)?;
    let d = (1usize << n) as f64;

    let mut out = String::new();
    let _ = writeln!(out, "# n = {n}, A = {:?}, d = {}, d_A = {}", part.a_indices(), 1usize << n, part.d_a());
    let mut failures = 0;
    if n <= MAX_EXHAUSTIVE_QUBITS {
        let _ = writeln!(out, "state\ttotal\tlocal_a\tnonlocal\tpurity_a\ttotal_minus_(d-1)\tstatus");
        for (label, psi) in &states {
            let b = predictability_budget(psi, &part)?;
            let dev = b.total - (d - 1.0);
            let ok = dev.abs() <= BUDGET_TOL;
            failures += usize::from(!ok);
            let _ = writeln!(
                out,
                "{label}\t{:.10}\t{:.10}\t{:.10}\t{:.10}\t{:.2e}\t{}",
                b.total,
                b.local_a,
                b.nonlocal,
                purity_from_budget(&b, BudgetSide::A),
                dev,
                if ok { "pass" } else { "FAIL" }
            );
        }
    } else {
        let _ = writeln!(out, "# sampled mode: {} strings per estimate", args.strings);
        let _ = writeln!(out, "state\ttotal\ttotal_se\tlocal_a\tlocal_a_se\tz_total");
        for (i, (label, psi)) in states.iter().enumerate() {
            let mut rng = SamplerSeed::keyed(args.common.seed, BUDGET_TAG + 1, n as u32, i as u32).rng();
            let b = sampled_budget(psi, &part, args.strings, &mut rng)?;
            let (la, la_se) = b.local_a.map_or((0.0, 0.0), |e| (e.mean, e.std_error));
            let _ = writeln!(
                out,
                "{label}\t{:.6}\t{:.3e}\t{:.6}\t{:.3e}\t{:.3}",
                b.total.mean,
                b.total.std_error,
                la,
                la_se,
                b.total.z_score(d - 1.0)
            );
        }
    }
    write_out(args.common.output.as_deref(), &out)?;
    if failures > 0 {
        return Err(Failure::Verification(format!("{failures} state(s) violate Σ⟨g⟩² = d - 1")));
    }
    Ok(())
}

pub fn schmidt(args: SchmidtArgs) -> CmdResult {
    let psi = read_state(&args.state).map_err(Failure::Usage)?;
    let part = bipartition(psi.n_qubits(), &args.partition)?;
    let order = order(args.q)?;
    let base: LogBase = args.base.into();
    let spectrum = schmidt_decompose(&psi, &part)?;

    let entropy_of = |side: Side| -> Result<f64, Failure> {
        let rho = reduced_density(&psi, &part, side)?;
        Ok(entropy::renyi_entropy(&entropy::spectrum(&rho)?, order, base))
    };
    let (s_a, s_b) = (entropy_of(Side::A)?, entropy_of(Side::B)?);
    let gap = (s_a - s_b).abs();

    let mut out = String::new();
    let _ = writeln!(out, "# n = {}, A = {:?}, B = {:?}", psi.n_qubits(), part.a_indices(), part.b_indices());
    let _ = writeln!(out, "k\tmu\tmu_sq");
    for (k, mu) in spectrum.coefficients().iter().enumerate() {
        let _ = writeln!(out, "{k}\t{mu:.12}\t{:.12}", mu * mu);
    }
    let _ = writeln!(out, "schmidt_rank\t{}", spectrum.rank(1e-10));
    let _ = writeln!(out, "S_A\t{s_a:.12}");
    let _ = writeln!(out, "S_B\t{s_b:.12}");
    let _ = writeln!(out, "abs(S_A-S_B)\t{gap:.3e}\t{}", if gap <= SYMMETRY_TOL { "pass" } else { "FAIL" });
    write_out(args.common.output.as_deref(), &out)?;
    if gap > SYMMETRY_TOL {
        return Err(Failure::Verification("S(ρ_A) ≠ S(ρ_B)".into()));
    }
    Ok(())
}

pub fn concentration(args: ConcentrationArgs) -> CmdResult {
    lab::check_memory(args.sizes.iter().copied().max().unwrap_or(0), args.common.workers, args.common.memory_limit)?;
    let report = lab::concentration_report(&args.sizes, args.samples, args.common.seed, args.common.workers)?;
    let mut out = String::new();
    let _ = writeln!(out, "# samples = {}, seed = {}", report.samples, report.seed);
    let _ = writeln!(out, "n\tn_a\tmean_purity\tstd_purity");
    for r in &report.rows {
        let _ = writeln!(out, "{}\t{}\t{:.8}\t{:.8}", r.n, r.n_a, r.mean_purity, r.std_purity);
    }
    let decreasing = report.strictly_decreasing();
    let _ = writeln!(out, "strictly_decreasing\t{}", if decreasing { "yes" } else { "no" });
    write_out(args.common.output.as_deref(), &out)?;
    if !decreasing {
        return Err(Failure::Verification("purity spread is not strictly decreasing".into()));
    }
    Ok(())
}
