//! Tail-regime estimation and the Emden transformation.
//!
//! Global trajectories with `m` even settle into `Δ^{m-1}u → ℓ ≤ 0`; an
//! interior limit `ℓ < 0` forces the power profile
//! `u ≈ ℓ/(2^{m-1}(m-1)! ∏(n+2l-2)) · r^{2m-2}`, while boundary
//! trajectories decay no faster than `-2m log r + C`. All tail statements
//! here are read off the last decade of samples.
//!
//! In the supercritical range `n > 2m` the substitution `s = log r`,
//! `w(s) = u(e^s) + 2ms - log λ_S` turns the radial equation into the
//! autonomous `Q_m(∂_s) w = λ_S (e^w - 1)`; [`emden_residual`] verifies a
//! sample set against that equation with fourth-order central differences.

use crate::error::{Error, Result};
use crate::fd::central_weights_order4;
use crate::interp::MonotoneCubic;
use crate::radial_ode::Trajectory;
use serde::Serialize;

/// Tail regime classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// consistent with `u ~ -C r^p` at the stated power `p = 2m-2`
    PowerGrowthDown(u32),
    /// consistent with (not asserted equal to) `-2m log r + C`
    LogDecay,
    /// bounded above by `-C r^K` for the stated `K`
    PowerBound(u32),
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticReport {
    /// tail limit of `Δ^{m-1}u` with its spread over the window (m even)
    pub ell: Option<f64>,
    pub ell_uncertainty: Option<f64>,
    pub fitted_leading_coeff: f64,
    pub predicted_coeff: Option<f64>,
    /// `-du/d(log r)` over the tail
    pub log_slope: f64,
    pub regime: Regime,
}

fn tail_window(trajectory: &Trajectory) -> Result<(f64, f64)> {
    let first = trajectory.first().r;
    let last = trajectory.last().r;
    if last < first * 100.0 {
        return Err(Error::domain("trajectory spans fewer than two decades"));
    }
    Ok((last / 10.0, last))
}

/// Tail estimate of `ℓ = lim Δ^{m-1}u` as (average, max-min spread) over the
/// last decade. Needs a global trajectory with `m` even spanning ≥ 2 decades.
pub fn estimate_ell(trajectory: &Trajectory) -> Result<(f64, f64)> {
    let m = trajectory.problem.m();
    if m % 2 != 0 {
        return Err(Error::domain("ℓ is an even-m tail limit"));
    }
    let (lo, hi) = tail_window(trajectory)?;
    let vals: Vec<f64> = trajectory.window(lo, hi).map(|s| s.w[m - 1]).collect();
    if vals.len() < 2 {
        return Err(Error::domain("tail window holds fewer than two samples"));
    }
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((mean, max - min))
}

/// Equal-weight least-squares fit of `w_0(r)/r^p` over the last decade.
pub fn fit_leading_coefficient(trajectory: &Trajectory, power: u32) -> Result<f64> {
    let (lo, hi) = tail_window(trajectory)?;
    let vals: Vec<f64> = trajectory
        .window(lo, hi)
        .map(|s| s.w[0] / s.r.powi(power as i32))
        .collect();
    if vals.is_empty() {
        return Err(Error::domain("empty tail window"));
    }
    Ok(vals.iter().sum::<f64>() / vals.len() as f64)
}

/// The interior-profile coefficient `ℓ / (2^{m-1} (m-1)! ∏_{l=1}^{m-1} (n+2l-2))`.
pub fn predicted_interior_coefficient(m: usize, n: usize, ell: f64) -> f64 {
    let mut denom = 2f64.powi(m as i32 - 1) * crate::jet::factorial(m - 1);
    for l in 1..m {
        denom *= n as f64 + 2.0 * l as f64 - 2.0;
    }
    ell / denom
}

/// Least-squares slope of `w_0` against `log r` over the last decade,
/// negated (so a decay like `-2m log r` reports `+2m`).
pub fn log_slope(trajectory: &Trajectory) -> Result<f64> {
    let (lo, hi) = tail_window(trajectory)?;
    let pts: Vec<(f64, f64)> = trajectory.window(lo, hi).map(|s| (s.r.ln(), s.w[0])).collect();
    if pts.len() < 2 {
        return Err(Error::domain("tail window holds fewer than two samples"));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in &pts {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    Ok(-num / den)
}

/// Largest `C ≥ 0` with `w_0(r) < -C r^K` on the window (last decade when
/// `window` is `None`), and whether the bound holds with `C > 0`.
pub fn power_bound_check(
    trajectory: &Trajectory,
    k: u32,
    window: Option<(f64, f64)>,
) -> (f64, bool) {
    let (lo, hi) = match window {
        Some(w) => w,
        None => match tail_window(trajectory) {
            Ok(w) => w,
            Err(_) => (trajectory.first().r, trajectory.last().r),
        },
    };
    let mut c_max = f64::INFINITY;
    let mut any = false;
    for s in trajectory.window(lo, hi) {
        any = true;
        c_max = c_max.min(-s.w[0] / s.r.powi(k as i32));
    }
    if !any {
        return (0.0, false);
    }
    (c_max.max(0.0), c_max > 0.0)
}

/// Assemble the full tail report for a global trajectory.
pub fn analyze(trajectory: &Trajectory) -> Result<AsymptoticReport> {
    let m = trajectory.problem.m();
    let n = trajectory.problem.n();
    let p = 2 * m as u32 - 2;
    let (ell, unc) = if m % 2 == 0 {
        let (e, u) = estimate_ell(trajectory)?;
        (Some(e), Some(u))
    } else {
        (None, None)
    };
    let fitted = fit_leading_coefficient(trajectory, p)?;
    let predicted = ell.map(|e| predicted_interior_coefficient(m, n, e));
    let slope = log_slope(trajectory)?;

    let interior_consistent = match predicted {
        Some(pred) => pred < 0.0 && (fitted - pred).abs() <= 0.1 * pred.abs(),
        None => false,
    };
    let regime = if interior_consistent {
        Regime::PowerGrowthDown(p)
    } else if (slope - 2.0 * m as f64).abs() <= 0.5 * m as f64 {
        Regime::LogDecay
    } else {
        let mut found = None;
        for kk in (1..=p).rev() {
            let (c, holds) = power_bound_check(trajectory, kk, None);
            if holds && c > 0.0 {
                found = Some(kk);
                break;
            }
        }
        match found {
            Some(kk) => Regime::PowerBound(kk),
            None => Regime::Undetermined,
        }
    };

    Ok(AsymptoticReport {
        ell,
        ell_uncertainty: unc,
        fitted_leading_coeff: fitted,
        predicted_coeff: predicted,
        log_slope: slope,
        regime,
    })
}

/// Samples of the Emden variable `w(s) = u(e^s) + 2ms - log λ_S`.
#[derive(Debug, Clone, Serialize)]
pub struct EmdenSamples {
    pub lambda_s: f64,
    pub samples: Vec<(f64, f64)>,
}

impl EmdenSamples {
    pub fn new(lambda_s: f64, samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::domain("s must be strictly increasing"));
        }
        if samples.iter().any(|(s, w)| !s.is_finite() || !w.is_finite()) {
            return Err(Error::domain("non-finite Emden sample"));
        }
        Ok(EmdenSamples { lambda_s, samples })
    }

    /// Resample onto the uniform grid `s0, s0+h, …` with `count` points by
    /// monotone cubic interpolation.
    pub fn resample_uniform(&self, s0: f64, h: f64, count: usize) -> Result<EmdenSamples> {
        let (smin, smax) = (self.samples[0].0, self.samples[self.samples.len() - 1].0);
        let s1 = s0 + h * (count - 1) as f64;
        if s0 < smin || s1 > smax {
            return Err(Error::domain(format!(
                "resample window [{s0:.3}, {s1:.3}] exceeds data range [{smin:.3}, {smax:.3}]"
            )));
        }
        let xs: Vec<f64> = self.samples.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = self.samples.iter().map(|p| p.1).collect();
        let interp = MonotoneCubic::new(&xs, &ys);
        let samples = (0..count)
            .map(|i| {
                let s = s0 + h * i as f64;
                (s, interp.eval(s))
            })
            .collect();
        EmdenSamples::new(self.lambda_s, samples)
    }
}

/// Transform a trajectory into Emden variables; requires `n > 2m` so that
/// `log λ_S` is defined.
pub fn emden_transform(trajectory: &Trajectory) -> Result<EmdenSamples> {
    let m = trajectory.problem.m();
    let n = trajectory.problem.n();
    if n <= 2 * m {
        return Err(Error::domain(format!(
            "the Emden transform needs n > 2m (λ_S > 0); got m = {m}, n = {n}"
        )));
    }
    let lambda_s = crate::constants::lambda_s(m, n);
    let log_ls = lambda_s.ln();
    let two_m = 2.0 * m as f64;
    let samples = trajectory
        .samples
        .iter()
        .map(|st| (st.r.ln(), st.w[0] + two_m * st.r.ln() - log_ls))
        .collect();
    EmdenSamples::new(lambda_s, samples)
}

/// Max interior residual of `Q_m(∂_s) w - λ_S (e^w - 1)` on a uniform grid,
/// with all derivatives by fourth-order central differences.
///
/// Returns `(max_residual, h)`. The grid must be uniform with at least
/// `4m + 1` points.
pub fn emden_residual(
    samples: &EmdenSamples,
    problem: &crate::radial_ode::ProblemSpec,
) -> Result<(f64, f64)> {
    let m = problem.m();
    let n = problem.n();
    let pts = &samples.samples;
    if pts.len() < 4 * m + 1 {
        return Err(Error::domain(format!(
            "need at least {} uniform samples for the order-{} operator",
            4 * m + 1,
            2 * m
        )));
    }
    let h = pts[1].0 - pts[0].0;
    for w in pts.windows(2) {
        if ((w[1].0 - w[0].0) - h).abs() > 1e-9 * h.abs() {
            return Err(Error::domain("samples are not on a uniform s-grid"));
        }
    }

    let q: Vec<f64> = crate::spectrum::qm_coefficients(m, n).iter().map(|&c| c as f64).collect();
    let lambda_s = samples.lambda_s;

    // stencils per derivative order; the widest sets the interior margin
    let stencils: Vec<(usize, Vec<f64>)> =
        (1..=2 * m).map(|j| central_weights_order4(j, h)).collect();
    let margin = stencils.iter().map(|(hw, _)| *hw).max().unwrap();

    let mut max_res: f64 = 0.0;
    for i in margin..pts.len() - margin {
        let mut lhs = q[0] * pts[i].1;
        for (j, (hw, weights)) in stencils.iter().enumerate() {
            let cj = q[j + 1];
            if cj == 0.0 {
                continue;
            }
            let mut d = 0.0;
            for (wi, off) in weights.iter().zip(-(*hw as i64)..=*hw as i64) {
                d += wi * pts[(i as i64 + off) as usize].1;
            }
            lhs += cj * d;
        }
        let rhs = lambda_s * (pts[i].1.exp() - 1.0);
        max_res = max_res.max((lhs - rhs).abs());
    }
    Ok((max_res, h))
}
