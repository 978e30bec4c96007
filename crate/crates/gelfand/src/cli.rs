//! The `gelfand` command line: one subcommand per module, machine-readable
//! JSON/CSV output, deterministic given the seed.
//!
//! Exit codes: 0 success, 1 domain error, 2 numerical failure, 64 usage.

use crate::asymptotics;
use crate::bump::RadialTestFunction;
use crate::constants::{self, HrQuery, HrVariant};
use crate::error::{Error, Result};
use crate::explicit::ExplicitSolution;
use crate::jsonfmt::to_string_17;
use crate::radial_ode::{integrate, InitialConditions, IntegratorConfig, ProblemSpec, Trajectory};
use crate::shooting::{self, classify, Outcome};
use crate::spectrum;
use crate::stability::{self, CutoffFamily};
use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "gelfand",
    about = "Numerical laboratory for radial entire solutions of (-Δ)^m u = e^u",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the radial Cauchy problem and write a trajectory CSV + JSON sidecar
    Integrate(IntegrateArgs),
    /// Locate the global-existence threshold Φ_α by bisection
    Shoot(ShootArgs),
    /// Φ_α along one coordinate axis of β'
    ScanPhi(ScanPhiArgs),
    /// Tail-regime report for a stored trajectory
    Asymptotics(AsymptoticsArgs),
    /// Closed-form constants table, optionally verified by quadrature
    Constants(ConstantsArgs),
    /// Q_m / P_m spectrum reports and scans
    Spectrum(SpectrumArgs),
    /// Stability quadratic-form search and certificates on a stored trajectory
    Stability(StabilityArgs),
    /// The explicit solution family at n = 2m
    Explicit(ExplicitArgs),
    /// Classification sweep over a (m, n, ic) grid with concurrent workers
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct CommonIntegratorArgs {
    /// flat key=value config file; explicit flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    rtol: Option<f64>,
    #[arg(long)]
    atol: Option<f64>,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    rmax: Option<f64>,
    #[arg(long)]
    overflow: Option<f64>,
    #[arg(long)]
    per_decade: Option<usize>,
}

impl CommonIntegratorArgs {
    fn build(&self) -> Result<IntegratorConfig> {
        let kv = match &self.config {
            Some(path) => KvConfig::load(path)?,
            None => KvConfig::default(),
        };
        let d = IntegratorConfig::default();
        Ok(IntegratorConfig {
            rtol: self.rtol.or(kv.get_f64("rtol")?).unwrap_or(d.rtol),
            atol: self.atol.or(kv.get_f64("atol")?).unwrap_or(d.atol),
            r0: self.r0.or(kv.get_f64("r0")?).unwrap_or(d.r0),
            r_max: self.rmax.or(kv.get_f64("rmax")?).unwrap_or(d.r_max),
            u_overflow: self.overflow.or(kv.get_f64("overflow")?).unwrap_or(d.u_overflow),
            samples_per_decade: self
                .per_decade
                .or(kv.get_usize("per_decade")?)
                .unwrap_or(d.samples_per_decade),
        })
    }
}

#[derive(Args)]
struct IntegrateArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// comma-separated α_0,…,α_{m-1}
    #[arg(long)]
    alpha: String,
    /// output stem; writes <out>.csv and <out>.json
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    integrator: CommonIntegratorArgs,
}

#[derive(Args)]
struct ShootArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: f64,
    /// comma-separated β_1,…,β_{m-2} (empty for m = 2)
    #[arg(long, default_value = "")]
    beta_prime: String,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    integrator: CommonIntegratorArgs,
}

#[derive(Args)]
struct ScanPhiArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: f64,
    /// 1-based coordinate of β' to scan
    #[arg(long)]
    axis: usize,
    /// comma-separated strictly increasing grid values
    #[arg(long)]
    grid: String,
    #[arg(long, default_value = "")]
    beta_prime: String,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    integrator: CommonIntegratorArgs,
}

#[derive(Args)]
struct AsymptoticsArgs {
    /// trajectory CSV written by `integrate` (sidecar JSON must sit next to it)
    #[arg(long)]
    trajectory: PathBuf,
    /// also check the power bound u < -C r^K for this K
    #[arg(long)]
    power: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// run randomized-bump quadrature checks of the applicable inequalities
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 50)]
    bumps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: Option<usize>,
    /// inclusive dimension range `a..b`
    #[arg(long)]
    scan: Option<String>,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// write (t, P_m(t)) samples as CSV for plotting
    #[arg(long)]
    plot_data: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long)]
    trajectory: PathBuf,
    /// cutoff family: "scaled" or "dyadic"
    #[arg(long, default_value = "scaled")]
    family: String,
    /// run the stability-outside-compact certificate instead of the search
    #[arg(long)]
    certify: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExplicitArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// emit the Cauchy data (α_0, β) of the family
    #[arg(long)]
    emit_ic: bool,
    /// max relative residual of (-Δ)^m u - e^u over a log grid
    #[arg(long)]
    residual: bool,
    /// CSV table `r1..r2:steps` of (r, u)
    #[arg(long)]
    table: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// comma-separated orders
    #[arg(long)]
    m: String,
    /// comma-separated dimensions
    #[arg(long)]
    n: String,
    #[arg(long, default_value_t = 0.0)]
    alpha0: f64,
    /// grid `lo..hi:steps` over the last initial datum (α_0 itself for m = 1)
    #[arg(long)]
    beta_last: String,
    /// worker count (default: env GELFAND_WORKERS, then all cores)
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    integrator: CommonIntegratorArgs,
}

/// Parse argv and run; returns the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successful exits
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_command(cmd: Command) -> Result<()> {
    match cmd {
        Command::Integrate(a) => cmd_integrate(a),
        Command::Shoot(a) => cmd_shoot(a),
        Command::ScanPhi(a) => cmd_scan_phi(a),
        Command::Asymptotics(a) => cmd_asymptotics(a),
        Command::Constants(a) => cmd_constants(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Stability(a) => cmd_stability(a),
        Command::Explicit(a) => cmd_explicit(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn emit(value: &Value, out: Option<&PathBuf>) -> Result<()> {
    let text = to_string_17(value);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("'{t}': {e}"))))
        .collect()
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("'{t}': {e}"))))
        .collect()
}

/// `lo..hi:steps` inclusive grid.
fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let (range, steps) = s
        .rsplit_once(':')
        .ok_or_else(|| Error::Parse(format!("grid '{s}' must be lo..hi:steps")))?;
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("grid '{s}' must be lo..hi:steps")))?;
    let lo: f64 = lo.trim().parse().map_err(|e| Error::Parse(format!("{e}")))?;
    let hi: f64 = hi.trim().parse().map_err(|e| Error::Parse(format!("{e}")))?;
    let steps: usize = steps.trim().parse().map_err(|e| Error::Parse(format!("{e}")))?;
    if steps < 1 || hi < lo {
        return Err(Error::Parse("grid needs hi ≥ lo and steps ≥ 1".into()));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect())
}

#[derive(Default)]
struct KvConfig(HashMap<String, String>);

impl KvConfig {
    fn load(path: &PathBuf) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut map = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", i + 1)))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(KvConfig(map))
    }

    fn get_f64(&self, key: &str) -> Result<Option<f64>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| Error::Parse(format!("config key {key}: {e}"))),
        }
    }

    fn get_usize(&self, key: &str) -> Result<Option<usize>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| Error::Parse(format!("config key {key}: {e}"))),
        }
    }
}

fn outcome_json(outcome: &Outcome) -> Value {
    match outcome {
        Outcome::GlobalToHorizon { tail } => json!({
            "tag": "global_to_horizon",
            "tail_r": tail.r,
            "tail_w0": tail.w[0],
        }),
        Outcome::BlowUp { r_event, certificate, tail } => json!({
            "tag": "blow_up",
            "r_event": r_event,
            "certificate": format!("{certificate:?}"),
            "tail_r": tail.r,
            "tail_w0": tail.w[0],
        }),
        Outcome::Inconclusive { tail } => json!({
            "tag": "inconclusive",
            "tail_r": tail.r,
            "tail_w0": tail.w[0],
        }),
    }
}

fn cmd_integrate(a: IntegrateArgs) -> Result<()> {
    let problem = ProblemSpec::new(a.m, a.n)?;
    let alpha = parse_f64_list(&a.alpha)?;
    if alpha.len() != a.m {
        return Err(Error::domain(format!("--alpha needs {} values", a.m)));
    }
    let config = a.integrator.build()?;
    let ic = InitialConditions::new(alpha)?;
    let t = integrate(&problem, &ic, &config)?;
    t.save(&a.out)?;
    let outcome = classify(&t);
    emit(
        &json!({
            "schema": 1,
            "csv": a.out.with_extension("csv").display().to_string(),
            "samples": t.samples.len(),
            "terminal_event": t.terminal_event,
            "outcome": outcome_json(&outcome),
        }),
        None,
    )
}

fn cmd_shoot(a: ShootArgs) -> Result<()> {
    let problem = ProblemSpec::new(a.m, a.n)?;
    let beta_prime = parse_f64_list(&a.beta_prime)?;
    let config = a.integrator.build()?;
    let res = shooting::phi_alpha(&problem, a.alpha, &beta_prime, a.tol, &config)?;
    emit(
        &json!({
            "schema": 1,
            "m": a.m,
            "n": a.n,
            "alpha": a.alpha,
            "beta_prime": res.beta_prime,
            "phi": res.phi_estimate,
            "bracket": [res.bracket.0, res.bracket.1],
            "evaluations": res.evaluations,
            "tolerance_achieved": res.tolerance_achieved,
            "warnings": res.warnings,
        }),
        a.out.as_ref(),
    )
}

fn cmd_scan_phi(a: ScanPhiArgs) -> Result<()> {
    let problem = ProblemSpec::new(a.m, a.n)?;
    let grid = parse_f64_list(&a.grid)?;
    let base = {
        let b = parse_f64_list(&a.beta_prime)?;
        if b.is_empty() && a.m >= 4 {
            vec![0.0; a.m - 2]
        } else {
            b
        }
    };
    let config = a.integrator.build()?;
    let scan =
        shooting::scan_phi_monotonicity(&problem, a.alpha, &base, a.axis, &grid, a.tol, &config)?;
    emit(
        &json!({
            "schema": 1,
            "m": a.m,
            "n": a.n,
            "alpha": a.alpha,
            "axis": a.axis,
            "points": scan.iter().map(|(t, phi)| json!({"t": t, "phi": phi})).collect::<Vec<_>>(),
        }),
        a.out.as_ref(),
    )
}

fn cmd_asymptotics(a: AsymptoticsArgs) -> Result<()> {
    let t = Trajectory::load(&a.trajectory)?;
    let report = asymptotics::analyze(&t)?;
    let mut v = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
    v["schema"] = json!(1);
    if let Some(k) = a.power {
        let (c, holds) = asymptotics::power_bound_check(&t, k, None);
        v["power_bound"] = json!({"k": k, "c": c, "holds": holds});
    }
    emit(&v, a.out.as_ref())
}

fn cmd_constants(a: ConstantsArgs) -> Result<()> {
    let table = constants::constants_table(a.m, a.n, a.k, a.alpha);
    let mut v = serde_json::to_value(&table).map_err(|e| Error::Parse(e.to_string()))?;
    v["schema"] = json!(1);
    v["beta"] = json!(a.beta);
    if a.verify {
        v["verification"] = verify_constants(&a)?;
    }
    emit(&v, a.out.as_ref())
}

fn verify_constants(a: &ConstantsArgs) -> Result<Value> {
    let mut rng = StdRng::seed_from_u64(a.seed);
    let e2 = std::f64::consts::E * std::f64::consts::E;
    let mut checks = Vec::new();
    let variants: Vec<(&str, HrVariant, f64)> = vec![
        ("laplacian", HrVariant::Laplacian, 0.0),
        ("gradient", HrVariant::Gradient, 0.0),
        ("log_second_order", HrVariant::LogSecondOrder, e2),
        ("log_laplacian", HrVariant::LogLaplacian, e2),
        ("log_gradient", HrVariant::LogGradient, e2),
        ("one_dimensional", HrVariant::OneDimensional, 0.0),
    ];
    let query = HrQuery { n: a.n, k: a.k, alpha: a.alpha, beta: a.beta };
    for (name, variant, r_floor) in variants {
        if variant == HrVariant::OneDimensional && a.n != 1 {
            continue;
        }
        if variant == HrVariant::LogSecondOrder && constants::mu(a.n, a.alpha).0 != 0.0 {
            continue;
        }
        let mut worst: f64 = f64::INFINITY;
        let mut count = 0usize;
        for _ in 0..a.bumps {
            let lo_min = r_floor.max(1.0) + 0.5;
            let inner: f64 = rng.gen_range(lo_min..lo_min * 4.0);
            let width: f64 = rng.gen_range(1.0..20.0);
            let bump = RadialTestFunction::annular_bump(inner, inner + width)?;
            match constants::verify_hr_inequality(&query, variant, &bump, r_floor) {
                Ok(chk) => {
                    worst = worst.min(chk.margin / chk.rhs.max(f64::MIN_POSITIVE));
                    count += 1;
                }
                Err(e) => return Err(e),
            }
        }
        checks.push(json!({
            "variant": name,
            "bumps": count,
            "worst_margin_over_rhs": worst,
            "holds": worst >= -1e-10,
        }));
    }
    Ok(Value::Array(checks))
}

fn cmd_spectrum(a: SpectrumArgs) -> Result<()> {
    let scan_range = match (&a.scan, a.n) {
        (Some(s), _) => {
            let (lo, hi) = s
                .split_once("..")
                .ok_or_else(|| Error::Parse("scan must be a..b".into()))?;
            let lo: usize = lo.trim().parse().map_err(|e| Error::Parse(format!("{e}")))?;
            let hi: usize = hi.trim().parse().map_err(|e| Error::Parse(format!("{e}")))?;
            (lo, hi)
        }
        (None, Some(n)) => (n, n),
        (None, None) => return Err(Error::domain("spectrum needs --n or --scan")),
    };
    let mut reports = Vec::new();
    for n in scan_range.0..=scan_range.1 {
        if n <= 2 * a.m {
            continue;
        }
        let rep = spectrum::pm_roots(a.m, n, a.tol)?;
        reports.push(serde_json::to_value(&rep).map_err(|e| Error::Parse(e.to_string()))?);
    }
    if reports.is_empty() {
        return Err(Error::domain("no supercritical dimensions in the requested range"));
    }

    if let Some(path) = &a.plot_data {
        let n = scan_range.0.max(2 * a.m + 1);
        let p: Vec<f64> = spectrum::pm_coefficients(a.m, n).iter().map(|&c| c as f64).collect();
        let lo = -(n as f64) - 2.0;
        let hi = 2.0 * a.m as f64 + 2.0;
        let mut csv = String::from("t,p_m\n");
        let steps = 2000usize;
        for i in 0..=steps {
            let t = lo + (hi - lo) * i as f64 / steps as f64;
            let v = spectrum::poly_eval(&p, num_complex::Complex64::new(t, 0.0)).re;
            csv.push_str(&format!("{t:.16e},{v:.16e}\n"));
        }
        std::fs::write(path, csv)?;
    }

    let body = if reports.len() == 1 {
        let mut v = reports.pop().unwrap();
        v["schema"] = json!(1);
        v
    } else {
        json!({ "schema": 1, "scan": reports })
    };
    emit(&body, a.out.as_ref())
}

fn cmd_stability(a: StabilityArgs) -> Result<()> {
    let t = Trajectory::load(&a.trajectory)?;
    let report = if a.certify {
        stability::socs_certificate(&t)?
    } else {
        let family = match a.family.as_str() {
            "scaled" => CutoffFamily::ScaledCutoff,
            "dyadic" => CutoffFamily::DyadicSum,
            other => return Err(Error::domain(format!("unknown family '{other}'"))),
        };
        stability::instability_search(&t, family)?
    };
    let mut v = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
    v["schema"] = json!(1);
    emit(&v, a.out.as_ref())
}

fn cmd_explicit(a: ExplicitArgs) -> Result<()> {
    let sol = ExplicitSolution::new(a.m, a.lambda)?;
    let mut v = json!({
        "schema": 1,
        "m": a.m,
        "n": sol.dimension(),
        "lambda": sol.lambda(),
        "u_at_origin": sol.additive_constant(),
    });
    if a.emit_ic {
        let (alpha0, beta) = sol.initial_values()?;
        v["alpha0"] = json!(alpha0);
        v["beta"] = json!(beta);
    }
    if a.residual {
        let rs: Vec<f64> = (0..=200).map(|i| 0.1 * 10f64.powf(i as f64 / 100.0)).collect();
        v["max_relative_residual"] = json!(sol.residual(&rs)?);
    }
    if let Some(spec) = &a.table {
        let grid = parse_grid(spec)?;
        let mut csv = String::from("r,u\n");
        for r in grid {
            csv.push_str(&format!("{:.16e},{:.16e}\n", r, sol.eval(r)));
        }
        match &a.out {
            Some(path) => std::fs::write(path, csv)?,
            None => print!("{csv}"),
        }
        return Ok(());
    }
    emit(&v, a.out.as_ref())
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    let ms = parse_usize_list(&a.m)?;
    let ns = parse_usize_list(&a.n)?;
    let grid = parse_grid(&a.beta_last)?;
    let config = a.integrator.build()?;
    let workers = a
        .workers
        .or_else(|| std::env::var("GELFAND_WORKERS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(num_cpus_fallback);

    let mut jobs = Vec::new();
    for &m in &ms {
        for &n in &ns {
            for &t in &grid {
                jobs.push((m, n, t));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::numerical(format!("worker pool: {e}")))?;
    let results: Vec<Result<Value>> = pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter()
            .map(|&(m, n, t)| {
                let problem = ProblemSpec::new(m, n)?;
                let mut ic = vec![a.alpha0; 1];
                if m >= 2 {
                    ic.extend(std::iter::repeat(0.0).take(m - 2));
                    ic.push(t);
                } else {
                    ic[0] = t;
                }
                let traj = integrate(&problem, &InitialConditions::new(ic.clone())?, &config)?;
                let outcome = classify(&traj);
                Ok(json!({
                    "m": m,
                    "n": n,
                    "ic": ic,
                    "outcome": outcome_json(&outcome),
                }))
            })
            .collect()
    });
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }
    // deterministic order regardless of worker interleaving
    rows.sort_by(|a, b| {
        let key = |v: &Value| {
            (
                v["m"].as_u64().unwrap_or(0),
                v["n"].as_u64().unwrap_or(0),
                v["ic"]
                    .as_array()
                    .and_then(|arr| arr.last())
                    .and_then(|x| x.as_f64())
                    .unwrap_or(0.0)
                    .to_bits(),
            )
        };
        key(a).cmp(&key(b))
    });
    emit(&json!({ "schema": 1, "workers": workers, "results": rows }), a.out.as_ref())
}

fn num_cpus_fallback() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0..1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("-2..-2:1").unwrap(), vec![-2.0]);
        assert!(parse_grid("1..0:3").is_err());
        assert!(parse_grid("nonsense").is_err());
    }

    #[test]
    fn unknown_flags_exit_64() {
        assert_eq!(dispatch(["gelfand", "spectrum", "--bogus"]), 64);
        assert_eq!(dispatch(["gelfand", "no-such-command"]), 64);
    }

    #[test]
    fn domain_error_exits_1() {
        // shoot with m odd is a domain error
        assert_eq!(
            dispatch(["gelfand", "shoot", "--m", "3", "--n", "5", "--alpha", "0", "--tol", "1e-3"]),
            1
        );
    }

    #[test]
    fn spectrum_single_report_runs() {
        assert_eq!(dispatch(["gelfand", "spectrum", "--m", "1", "--n", "12"]), 0);
    }
}
