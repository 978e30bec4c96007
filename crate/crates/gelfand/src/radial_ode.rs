//! The singular radial Cauchy problem as a first-order system.
//!
//! A radial solution of `(-Δ)^m u = e^u` is tracked through the vector
//! `(w_0, …, w_{m-1}, w'_0, …, w'_{m-1})` with `w_k = Δ^k u`, which closes
//! under `w''_k = f_k - (n-1)/r · w'_k` where `f_k = w_{k+1}` for
//! `k < m-1` and `f_{m-1} = (-1)^m e^{w_0}`.
//!
//! The origin is singular; integration starts from a second-order Taylor
//! state at a small offset `r0` (error `O(r0⁴)`, below the absolute
//! tolerance at the defaults). Stepping is an embedded Dormand–Prince 5(4)
//! pair with a fourth-order dense interpolant used for log-spaced output
//! sampling and for bisection-localizing the terminal events: the horizon
//! `r_max`, the overflow guard on `w_0`, and — for `m` even in dimension
//! `n ≥ 3` — the sign change of `w_{m-1}`, which certifies finite-radius
//! blow-up.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Operator order and space dimension; the sign `s_m = (-1)^m` is derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    m: usize,
    n: usize,
}

impl ProblemSpec {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::domain("operator order m must be ≥ 1"));
        }
        if n < 1 {
            return Err(Error::domain("dimension n must be ≥ 1"));
        }
        Ok(ProblemSpec { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(-1)^m`: the sign in `Δ^m u = s_m e^u`.
    pub fn sign(&self) -> f64 {
        if self.m % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// System dimension `2m`.
    pub fn dim(&self) -> usize {
        2 * self.m
    }

    /// Blow-up event detection is armed for `m` even in dimension `n ≥ 3`.
    pub fn event_armed(&self) -> bool {
        self.m % 2 == 0 && self.n >= 3
    }
}

/// Initial iterated Laplacians `α_k = Δ^k u(0)`, `k = 0, …, m-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialConditions(Vec<f64>);

impl InitialConditions {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() || alpha.iter().any(|a| !a.is_finite()) {
            return Err(Error::domain("initial conditions must be a nonempty finite vector"));
        }
        Ok(InitialConditions(alpha))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// The scaling-covariant image: `α'_0 = α_0 + 2m log λ`, `α'_k = λ^{2k} α_k`.
    pub fn rescaled(&self, lambda: f64) -> InitialConditions {
        let m = self.0.len();
        let mut out = Vec::with_capacity(m);
        out.push(self.0[0] + 2.0 * m as f64 * lambda.ln());
        for (k, a) in self.0.iter().enumerate().skip(1) {
            out.push(lambda.powi(2 * k as i32) * a);
        }
        InitialConditions(out)
    }
}

/// One trajectory point: radius, `w_k = Δ^k u(r)` and the radial derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    pub r: f64,
    pub w: Vec<f64>,
    pub dw: Vec<f64>,
}

impl RadialState {
    fn from_flat(r: f64, y: &[f64]) -> Self {
        let m = y.len() / 2;
        RadialState {
            r,
            w: y[..m].to_vec(),
            dw: y[m..].to_vec(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.r.is_finite()
            && self.w.iter().all(|v| v.is_finite())
            && self.dw.iter().all(|v| v.is_finite())
    }
}

/// Integrator tolerances, singular-start offset, horizon and guards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    pub r0: f64,
    pub r_max: f64,
    pub u_overflow: f64,
    pub samples_per_decade: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rtol: 1e-10,
            atol: 1e-12,
            r0: 1e-6,
            r_max: 1e4,
            u_overflow: 50.0,
            samples_per_decade: 400,
        }
    }
}

impl IntegratorConfig {
    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_max = r_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r0 > 0.0 && self.r0 < self.r_max) {
            return Err(Error::domain("need 0 < r0 < r_max"));
        }
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(Error::domain("tolerances must be positive"));
        }
        if !self.u_overflow.is_finite() {
            return Err(Error::domain("overflow cap must be finite"));
        }
        if self.samples_per_decade == 0 {
            return Err(Error::domain("samples_per_decade must be ≥ 1"));
        }
        Ok(())
    }
}

/// Why integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TerminalEvent {
    ReachedHorizon,
    OverflowGuard,
    /// `w_{m-1}` reached 0 at the recorded radius (blow-up certificate for
    /// `m` even, `n ≥ 3`).
    FluxSignEvent(f64),
}

/// An integrated trajectory; immutable once produced. Sample radii are
/// strictly increasing, starting at the singular-start offset.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub problem: ProblemSpec,
    pub ic: InitialConditions,
    pub config: IntegratorConfig,
    pub samples: Vec<RadialState>,
    pub terminal_event: TerminalEvent,
}

impl Trajectory {
    pub fn last(&self) -> &RadialState {
        self.samples.last().expect("trajectory has at least one sample")
    }

    pub fn first(&self) -> &RadialState {
        &self.samples[0]
    }

    /// Samples with radius in `[lo, hi]`.
    pub fn window(&self, lo: f64, hi: f64) -> impl Iterator<Item = &RadialState> {
        self.samples.iter().filter(move |s| s.r >= lo && s.r <= hi)
    }

    pub fn csv_header(&self) -> String {
        let m = self.problem.m();
        let mut cols = vec!["r".to_string()];
        cols.extend((0..m).map(|k| format!("w{k}")));
        cols.extend((0..m).map(|k| format!("dw{k}")));
        cols.join(",")
    }

    /// CSV with full double precision (17 significant digits).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.csv_header());
        out.push('\n');
        for s in &self.samples {
            let mut row = Vec::with_capacity(1 + 2 * self.problem.m());
            row.push(format!("{:.16e}", s.r));
            row.extend(s.w.iter().map(|v| format!("{v:.16e}")));
            row.extend(s.dw.iter().map(|v| format!("{v:.16e}")));
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn sidecar_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "problem": self.problem,
            "ic": self.ic,
            "config": self.config,
            "terminal_event": self.terminal_event,
        })
    }

    /// Write `<stem>.csv` and the `<stem>.json` sidecar.
    pub fn save(&self, stem: &Path) -> Result<()> {
        let csv_path = stem.with_extension("csv");
        let json_path = stem.with_extension("json");
        std::fs::write(&csv_path, self.to_csv())?;
        std::fs::write(&json_path, crate::jsonfmt::to_string_17(&self.sidecar_json()))?;
        Ok(())
    }

    /// Load a trajectory saved by [`Trajectory::save`].
    pub fn load(csv_path: &Path) -> Result<Trajectory> {
        let json_path = csv_path.with_extension("json");
        let side: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(&json_path)
                .map_err(|e| Error::Io(format!("{}: {e}", json_path.display())))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        let problem: ProblemSpec = serde_json::from_value(side["problem"].clone())
            .map_err(|e| Error::Parse(format!("sidecar problem: {e}")))?;
        let ic: InitialConditions = serde_json::from_value(side["ic"].clone())
            .map_err(|e| Error::Parse(format!("sidecar ic: {e}")))?;
        let config: IntegratorConfig = serde_json::from_value(side["config"].clone())
            .map_err(|e| Error::Parse(format!("sidecar config: {e}")))?;
        let terminal_event: TerminalEvent = serde_json::from_value(side["terminal_event"].clone())
            .map_err(|e| Error::Parse(format!("sidecar terminal_event: {e}")))?;

        let text = std::fs::read_to_string(csv_path)
            .map_err(|e| Error::Io(format!("{}: {e}", csv_path.display())))?;
        let m = problem.m();
        let mut samples = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 {
                continue;
            }
            let vals: Vec<f64> = line
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("line {i}: {e}"))))
                .collect::<Result<_>>()?;
            if vals.len() != 1 + 2 * m {
                return Err(Error::Parse(format!("line {i}: expected {} columns", 1 + 2 * m)));
            }
            samples.push(RadialState {
                r: vals[0],
                w: vals[1..=m].to_vec(),
                dw: vals[m + 1..].to_vec(),
            });
        }
        if samples.is_empty() {
            return Err(Error::Parse("trajectory CSV has no samples".into()));
        }
        Ok(Trajectory {
            problem,
            ic,
            config,
            samples,
            terminal_event,
        })
    }
}

/// Right-hand side of the first-order system at a state with `r > 0`.
///
/// Returns `(w'_0, …, w'_{m-1}, w''_0, …, w''_{m-1})`.
pub fn rhs(problem: &ProblemSpec, state: &RadialState) -> Result<Vec<f64>> {
    if state.r <= 0.0 {
        return Err(Error::domain("rhs needs r > 0"));
    }
    if state.w[0] > 700.0 {
        return Err(Error::numerical(
            "e^{w_0} overflows f64; the overflow guard should have terminated the trajectory",
        ));
    }
    let m = problem.m();
    let mut y = Vec::with_capacity(2 * m);
    y.extend_from_slice(&state.w);
    y.extend_from_slice(&state.dw);
    let mut dy = vec![0.0; 2 * m];
    rhs_flat(problem, state.r, &y, &mut dy);
    Ok(dy)
}

#[inline]
fn rhs_flat(problem: &ProblemSpec, r: f64, y: &[f64], dy: &mut [f64]) {
    let m = problem.m();
    let nm1_over_r = if problem.n() == 1 {
        0.0
    } else {
        (problem.n() as f64 - 1.0) / r
    };
    for k in 0..m {
        dy[k] = y[m + k];
    }
    for k in 0..m - 1 {
        dy[m + k] = y[k + 1] - nm1_over_r * y[m + k];
    }
    dy[2 * m - 1] = problem.sign() * y[0].exp() - nm1_over_r * y[2 * m - 1];
}

/// Second-order Taylor state at the singular-start offset `r0`:
/// `w_k(r0) = α_k + f_k r0²/(2n)`, `w'_k(r0) = f_k r0/n`, from
/// `w''_k(0) = f_k(0)/n` (L'Hôpital on the radial Laplacian with
/// `w'_k(0) = 0`).
pub fn taylor_start(problem: &ProblemSpec, ic: &InitialConditions, r0: f64) -> Result<RadialState> {
    if r0 <= 0.0 {
        return Err(Error::domain("taylor start needs r0 > 0"));
    }
    let m = problem.m();
    if ic.len() != m {
        return Err(Error::domain(format!("expected {m} initial values, got {}", ic.len())));
    }
    let n = problem.n() as f64;
    let alpha = ic.values();
    let mut w = Vec::with_capacity(m);
    let mut dw = Vec::with_capacity(m);
    for k in 0..m {
        let f_k = if k < m - 1 {
            alpha[k + 1]
        } else {
            problem.sign() * alpha[0].exp()
        };
        w.push(alpha[k] + f_k * r0 * r0 / (2.0 * n));
        dw.push(f_k * r0 / n);
    }
    Ok(RadialState { r: r0, w, dw })
}

// Dormand–Prince 5(4) tableau
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const DENSE_SAFETY: f64 = 0.1;
const H_OVER_R_CAP: f64 = 0.1;

// dense-output weights for the fourth-order interpolant
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

struct DenseStep {
    r: f64,
    h: f64,
    rcont: [Vec<f64>; 5],
}

impl DenseStep {
    fn eval_component(&self, theta: f64, i: usize) -> f64 {
        let th1 = 1.0 - theta;
        self.rcont[0][i]
            + theta
                * (self.rcont[1][i]
                    + th1 * (self.rcont[2][i] + theta * (self.rcont[3][i] + th1 * self.rcont[4][i])))
    }

    fn eval(&self, theta: f64) -> Vec<f64> {
        (0..self.rcont[0].len()).map(|i| self.eval_component(theta, i)).collect()
    }
}

/// Integrate the radial Cauchy problem from its Taylor start.
pub fn integrate(
    problem: &ProblemSpec,
    ic: &InitialConditions,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    config.validate()?;
    let start = taylor_start(problem, ic, config.r0)?;
    integrate_from_state(problem, ic.clone(), start, config)
}

/// Integrate from an explicit starting state.
///
/// The radial problem always starts at `r0 > 0`; a start at `r = 0` is
/// accepted only in dimension 1, where the system has no `1/r` term and
/// nonsymmetric Cauchy data (nonzero odd derivatives at the origin) is
/// meaningful.
pub fn integrate_from_state(
    problem: &ProblemSpec,
    ic: InitialConditions,
    start: RadialState,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    config.validate()?;
    let m = problem.m();
    if start.w.len() != m || start.dw.len() != m {
        return Err(Error::domain("start state has wrong arity"));
    }
    if start.r < 0.0 || !start.is_finite() {
        return Err(Error::domain("start state must be finite with r ≥ 0"));
    }
    if start.r == 0.0 && problem.n() != 1 {
        return Err(Error::domain("a start at r = 0 is only defined in dimension n = 1"));
    }
    let dim = problem.dim();
    let armed = problem.event_armed();
    let mut samples = vec![start.clone()];

    // terminal conditions that already hold at the start
    if armed && start.w[m - 1] >= 0.0 {
        return Ok(Trajectory {
            problem: *problem,
            ic,
            config: *config,
            samples,
            terminal_event: TerminalEvent::FluxSignEvent(start.r),
        });
    }
    if start.w[0] > config.u_overflow {
        return Ok(Trajectory {
            problem: *problem,
            ic,
            config: *config,
            samples,
            terminal_event: TerminalEvent::OverflowGuard,
        });
    }

    let mut r = start.r;
    let mut y: Vec<f64> = start.w.iter().chain(start.dw.iter()).copied().collect();
    let mut h = if r > 0.0 { 0.01 * r } else { 1e-4 };
    h = h.min(config.r_max - r);

    // log-spaced output grid anchored at r0
    let per_decade = config.samples_per_decade as f64;
    let grid_radius = |i: usize| config.r0 * 10f64.powf(i as f64 / per_decade);
    let mut grid_i: usize = 1;
    while grid_radius(grid_i) <= r {
        grid_i += 1;
    }

    let mut k: Vec<Vec<f64>> = (0..7).map(|_| vec![0.0; dim]).collect();
    rhs_flat(problem, if r > 0.0 { r } else { 1.0 }, &y, &mut k[0]);
    let mut y_new = vec![0.0; dim];
    let mut y_stage = vec![0.0; dim];
    let mut steps: u64 = 0;
    const MAX_STEPS: u64 = 50_000_000;

    loop {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::numerical("step budget exhausted"));
        }
        let h_floor = 16.0 * f64::EPSILON * r.max(config.r0);
        if h < h_floor {
            return Err(Error::StepUnderflow { r });
        }
        // keep steps short relative to r so the interpolant stays faithful
        // on the log-spaced sample grid
        if r > 0.0 {
            h = h.min(H_OVER_R_CAP * r);
        }
        if r + h > config.r_max {
            h = config.r_max - r;
        }

        // stages 2..7 (k[0] holds f(r, y) via FSAL)
        for s in 0..6 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    acc += A[s][j] * kj[i];
                }
                y_stage[i] = y[i] + h * acc;
            }
            let r_stage = r + C[s] * h;
            let (_, tail) = k.split_at_mut(s + 1);
            rhs_flat(problem, r_stage, &y_stage, &mut tail[0]);
        }
        // the 6th stage row of A is the 5th-order weight row (FSAL pair),
        // so y_stage now holds the order-5 solution
        y_new.copy_from_slice(&y_stage);

        let mut err_norm: f64 = 0.0;
        for i in 0..dim {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h;
            // the dense interpolant between steps must also stay within the
            // user tolerance, so steps are accepted against a tighter target
            let scale = DENSE_SAFETY * (config.atol + config.rtol * y[i].abs().max(y_new[i].abs()));
            err_norm = err_norm.max((e / scale).abs());
        }

        if !err_norm.is_finite() {
            h *= 0.2;
            continue;
        }
        if err_norm > 1.0 {
            h *= (0.9 * err_norm.powf(-0.2)).max(0.2);
            continue;
        }

        let dense = build_dense(r, h, &y, &y_new, &k);

        let mut terminal: Option<(TerminalEvent, f64)> = None;
        if armed && y_new[m - 1] >= 0.0 {
            let theta = localize_crossing(&dense, m - 1, 0.0, config.rtol);
            let r_event = r + theta * h;
            terminal = Some((TerminalEvent::FluxSignEvent(r_event), theta));
        } else if y_new[0] > config.u_overflow {
            let theta = localize_crossing(&dense, 0, config.u_overflow, config.rtol);
            terminal = Some((TerminalEvent::OverflowGuard, theta));
        }

        let r_stop = match &terminal {
            Some((_, theta)) => r + theta * h,
            None => r + h,
        };

        // log-grid samples inside (r, r_stop]
        while grid_radius(grid_i) <= r_stop {
            let rg = grid_radius(grid_i);
            grid_i += 1;
            if rg >= config.r_max {
                break;
            }
            let theta = (rg - r) / h;
            if theta > 0.0 && theta <= 1.0 {
                push_sample(&mut samples, RadialState::from_flat(rg, &dense.eval(theta)));
            }
        }

        if let Some((event, theta)) = terminal {
            push_sample(&mut samples, RadialState::from_flat(r + theta * h, &dense.eval(theta)));
            return Ok(Trajectory {
                problem: *problem,
                ic,
                config: *config,
                samples,
                terminal_event: event,
            });
        }

        r += h;
        y.copy_from_slice(&y_new);
        let (head, tail) = k.split_at_mut(6);
        head[0].copy_from_slice(&tail[0]);
        if !y.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite { r });
        }

        if r >= config.r_max * (1.0 - 1e-14) {
            push_sample(&mut samples, RadialState::from_flat(r, &y));
            return Ok(Trajectory {
                problem: *problem,
                ic,
                config: *config,
                samples,
                terminal_event: TerminalEvent::ReachedHorizon,
            });
        }

        h *= (0.9 * err_norm.powf(-0.2)).clamp(0.2, 10.0);
    }
}

fn push_sample(samples: &mut Vec<RadialState>, state: RadialState) {
    let last_r = samples.last().map(|s| s.r).unwrap_or(f64::NEG_INFINITY);
    if state.r > last_r {
        samples.push(state);
    }
}

fn build_dense(r: f64, h: f64, y: &[f64], y_new: &[f64], k: &[Vec<f64>]) -> DenseStep {
    let dim = y.len();
    let mut rcont: [Vec<f64>; 5] = [
        vec![0.0; dim],
        vec![0.0; dim],
        vec![0.0; dim],
        vec![0.0; dim],
        vec![0.0; dim],
    ];
    for i in 0..dim {
        let ydiff = y_new[i] - y[i];
        let bspl = h * k[0][i] - ydiff;
        rcont[0][i] = y[i];
        rcont[1][i] = ydiff;
        rcont[2][i] = bspl;
        rcont[3][i] = ydiff - h * k[6][i] - bspl;
        let mut acc = 0.0;
        for (j, kj) in k.iter().enumerate() {
            acc += D[j] * kj[i];
        }
        rcont[4][i] = h * acc;
    }
    DenseStep { r, h, rcont }
}

/// First `θ` in `(0, 1]` where component `i` crosses `level` from below,
/// localized to relative accuracy `rtol` in the radius.
fn localize_crossing(dense: &DenseStep, i: usize, level: f64, rtol: f64) -> f64 {
    let g = |theta: f64| dense.eval_component(theta, i) - level;
    if g(0.0) >= 0.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let r_mid = dense.r + 0.5 * (lo + hi) * dense.h;
        if (hi - lo) * dense.h <= rtol * r_mid.abs().max(dense.r) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
