//! Trajectory classification and the global-existence threshold `Φ_α`.
//!
//! For `m` even and `n ≥ 3` the set of last initial data `β_{m-1}` giving
//! global solutions is a closed half-line `(-∞, Φ_α(β')]`; any trial with
//! `β_{m-1} = 0` blows up, so a valid bisection bracket always exists. The
//! blow-up side of the bracket is certified by the flux sign event; the
//! global side is horizon-limited (a boundary solution decays only
//! logarithmically and is indistinguishable from slow blow-up at any finite
//! horizon), so inconclusive trials are folded into the blow-up side and
//! flagged in the result's warnings.

use crate::error::{Error, Result};
use crate::radial_ode::{
    integrate, InitialConditions, IntegratorConfig, ProblemSpec, RadialState, TerminalEvent,
    Trajectory,
};
use serde::Serialize;

/// How a blow-up classification was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlowUpCertificate {
    /// `Δ^{m-1} u ≥ 0` observed: rigorous for `m` even, `n ≥ 3`.
    FluxSign,
    /// `w_0` crossed the overflow cap: numerical evidence only.
    Overflow,
}

/// Classification of a finished trajectory.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    GlobalToHorizon { tail: RadialState },
    BlowUp { r_event: f64, certificate: BlowUpCertificate, tail: RadialState },
    Inconclusive { tail: RadialState },
}

impl Outcome {
    pub fn is_global(&self) -> bool {
        matches!(self, Outcome::GlobalToHorizon { .. })
    }

    pub fn is_blow_up(&self) -> bool {
        matches!(self, Outcome::BlowUp { .. })
    }

    pub fn tail(&self) -> &RadialState {
        match self {
            Outcome::GlobalToHorizon { tail }
            | Outcome::BlowUp { tail, .. }
            | Outcome::Inconclusive { tail } => tail,
        }
    }
}

/// Classify a trajectory. Total: every terminal event maps to an outcome.
pub fn classify(trajectory: &Trajectory) -> Outcome {
    let tail = trajectory.last().clone();
    let m = trajectory.problem.m();
    match trajectory.terminal_event {
        TerminalEvent::FluxSignEvent(r_event) => Outcome::BlowUp {
            r_event,
            certificate: BlowUpCertificate::FluxSign,
            tail,
        },
        TerminalEvent::OverflowGuard => Outcome::BlowUp {
            r_event: tail.r,
            certificate: BlowUpCertificate::Overflow,
            tail,
        },
        TerminalEvent::ReachedHorizon => {
            if m % 2 == 0 && tail.w[m - 1] >= 0.0 {
                Outcome::Inconclusive { tail }
            } else {
                Outcome::GlobalToHorizon { tail }
            }
        }
    }
}

/// Threshold estimate with its certified bracket.
#[derive(Debug, Clone, Serialize)]
pub struct ShootingResult {
    pub alpha: f64,
    pub beta_prime: Vec<f64>,
    pub phi_estimate: f64,
    /// `(b_global, b_blowup)`: the endpoints classify as their names state.
    pub bracket: (f64, f64),
    pub evaluations: usize,
    pub tolerance_achieved: f64,
    pub warnings: Vec<String>,
}

const DESCENT_CAP: f64 = -1e12;

/// Locate `Φ_α(β')` by bisection on `β_{m-1}`.
///
/// Requires `m` even and `n ≥ 3` (elsewhere the global set is empty or the
/// problem has no threshold structure). `β_{m-1} = 0` is always a valid
/// blow-up endpoint; the global endpoint is found by geometric descent
/// `-1, -2, -4, …`.
pub fn phi_alpha(
    problem: &ProblemSpec,
    alpha: f64,
    beta_prime: &[f64],
    tol: f64,
    config: &IntegratorConfig,
) -> Result<ShootingResult> {
    let m = problem.m();
    if m % 2 != 0 {
        return Err(Error::domain("the threshold Φ_α is defined for m even only"));
    }
    if problem.n() < 3 {
        return Err(Error::domain("no global solutions exist for m even below dimension 3"));
    }
    if beta_prime.len() != m - 2 {
        return Err(Error::domain(format!(
            "beta_prime must have length m-2 = {}, got {}",
            m - 2,
            beta_prime.len()
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }

    let mut warnings = Vec::new();
    let mut evaluations = 0usize;
    let mut trial = |b: f64, warnings: &mut Vec<String>| -> Result<Outcome> {
        evaluations += 1;
        let mut ic = Vec::with_capacity(m);
        ic.push(alpha);
        ic.extend_from_slice(beta_prime);
        ic.push(b);
        match integrate(problem, &InitialConditions::new(ic)?, config) {
            Ok(t) => Ok(classify(&t)),
            Err(Error::StepUnderflow { r }) => {
                warnings.push(format!("integration stalled at r = {r:.3e} for β = {b:.9e}"));
                Ok(Outcome::Inconclusive {
                    tail: RadialState { r, w: vec![f64::NAN; m], dw: vec![f64::NAN; m] },
                })
            }
            Err(e) => Err(e),
        }
    };

    let mut hi = 0.0f64;
    if !trial(hi, &mut warnings)?.is_blow_up() {
        return Err(Error::numerical("β_{m-1} = 0 failed to classify as blow-up"));
    }

    let mut lo = -1.0f64;
    loop {
        if trial(lo, &mut warnings)?.is_global() {
            break;
        }
        lo *= 2.0;
        if lo < DESCENT_CAP {
            return Err(Error::numerical(
                "geometric descent found no global endpoint before the cap; \
                 check (m, n) and the horizon",
            ));
        }
    }

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match trial(mid, &mut warnings)? {
            Outcome::GlobalToHorizon { .. } => lo = mid,
            Outcome::BlowUp { .. } => hi = mid,
            Outcome::Inconclusive { .. } => {
                warnings.push(format!("inconclusive trial at β = {mid:.9e} counted as blow-up side"));
                hi = mid;
            }
        }
    }

    Ok(ShootingResult {
        alpha,
        beta_prime: beta_prime.to_vec(),
        phi_estimate: 0.5 * (lo + hi),
        bracket: (lo, hi),
        evaluations,
        tolerance_achieved: hi - lo,
        warnings,
    })
}

/// `Φ_α` along one coordinate axis of `β'`, for monotonicity scans.
///
/// The decreasing-in-each-variable statement needs `m ≥ 4`; for `m = 2` the
/// domain of `Φ_α` is zero-dimensional and the scan is meaningless.
pub fn scan_phi_monotonicity(
    problem: &ProblemSpec,
    alpha: f64,
    base_beta_prime: &[f64],
    axis: usize,
    grid: &[f64],
    tol: f64,
    config: &IntegratorConfig,
) -> Result<Vec<(f64, f64)>> {
    let m = problem.m();
    if m < 4 || m % 2 != 0 {
        return Err(Error::domain(
            "the monotonicity scan needs m ≥ 4 even; for m = 2 the β' space is zero-dimensional",
        ));
    }
    if axis == 0 || axis > m - 2 {
        return Err(Error::domain(format!("axis must lie in 1..={}", m - 2)));
    }
    if base_beta_prime.len() != m - 2 {
        return Err(Error::domain("base β' has wrong length"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("grid must be strictly increasing"));
    }
    let mut out = Vec::with_capacity(grid.len());
    for &t in grid {
        let mut bp = base_beta_prime.to_vec();
        bp[axis - 1] = t;
        let res = phi_alpha(problem, alpha, &bp, tol, config)?;
        out.push((t, res.phi_estimate));
    }
    Ok(out)
}

/// Componentwise ordering report for the comparison principle.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub holds: bool,
    /// `(r, component, gap)` of the first violated ordering, if any;
    /// components are named `w0..w{m-1}`, `dw0..dw{m-1}`.
    pub first_violation: Option<(f64, String, f64)>,
    pub shared_samples: usize,
}

/// Integrate ordered initial data and check that the ordering propagates to
/// `u, u', Δ^k u, (Δ^k u)'` at all shared sample radii, within `-10·rtol`
/// relative slack.
pub fn comparison_check(
    problem: &ProblemSpec,
    ic_u: &InitialConditions,
    ic_v: &InitialConditions,
    r_max: f64,
    config: &IntegratorConfig,
) -> Result<ComparisonReport> {
    if ic_u.len() != problem.m() || ic_v.len() != problem.m() {
        return Err(Error::domain("initial data arity mismatch"));
    }
    if ic_u.values().iter().zip(ic_v.values()).any(|(a, b)| a < b) {
        return Err(Error::domain("comparison check needs ic_u ≥ ic_v componentwise"));
    }
    let cfg = IntegratorConfig { r_max, ..*config };
    let tu = integrate(problem, ic_u, &cfg)?;
    let tv = integrate(problem, ic_v, &cfg)?;

    let m = problem.m();
    let slack = 10.0 * cfg.rtol;
    let mut shared = 0usize;
    let mut iu = tu.samples.iter().peekable();
    let mut iv = tv.samples.iter().peekable();
    while let (Some(su), Some(sv)) = (iu.peek(), iv.peek()) {
        if su.r < sv.r {
            iu.next();
            continue;
        }
        if sv.r < su.r {
            iv.next();
            continue;
        }
        shared += 1;
        for c in 0..2 * m {
            let (a, b) = if c < m {
                (su.w[c], sv.w[c])
            } else {
                (su.dw[c - m], sv.dw[c - m])
            };
            let gap = a - b;
            let scale = a.abs().max(b.abs()).max(1.0);
            if gap < -slack * scale {
                let name = if c < m { format!("w{c}") } else { format!("dw{}", c - m) };
                return Ok(ComparisonReport {
                    holds: false,
                    first_violation: Some((su.r, name, gap)),
                    shared_samples: shared,
                });
            }
        }
        iu.next();
        iv.next();
    }
    Ok(ComparisonReport {
        holds: true,
        first_violation: None,
        shared_samples: shared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: usize, n: usize) -> ProblemSpec {
        ProblemSpec::new(m, n).unwrap()
    }

    fn run(m: usize, n: usize, ic: Vec<f64>, r_max: f64) -> Trajectory {
        let cfg = IntegratorConfig { r_max, ..Default::default() };
        integrate(&spec(m, n), &InitialConditions::new(ic).unwrap(), &cfg).unwrap()
    }

    #[test]
    fn classify_flux_event_is_rigorous_blow_up() {
        let t = run(2, 5, vec![0.0, 0.0], 1e4);
        match classify(&t) {
            Outcome::BlowUp { r_event, certificate, .. } => {
                assert_eq!(r_event, 1e-6);
                assert_eq!(certificate, BlowUpCertificate::FluxSign);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn classify_deep_interior_global() {
        let t = run(2, 5, vec![0.0, -100.0], 1e4);
        assert!(classify(&t).is_global());
    }

    #[test]
    fn classify_low_dimension_overflow() {
        let t = run(2, 2, vec![0.0, -1.0], 1e4);
        match classify(&t) {
            Outcome::BlowUp { certificate, .. } => {
                assert_eq!(certificate, BlowUpCertificate::Overflow)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phi_alpha_m2_n5_is_strictly_negative_with_valid_bracket() {
        let p = spec(2, 5);
        let cfg = IntegratorConfig { r_max: 1e3, ..Default::default() };
        let res = phi_alpha(&p, 0.0, &[], 1e-4, &cfg).unwrap();
        assert!(res.phi_estimate < 0.0, "phi = {}", res.phi_estimate);
        assert!(res.bracket.0 < res.bracket.1);
        assert!(res.tolerance_achieved <= 1e-4);
        // bracket endpoints classify as their names state
        let lo = run(2, 5, vec![0.0, res.bracket.0], 1e3);
        let hi = run(2, 5, vec![0.0, res.bracket.1], 1e3);
        assert!(classify(&lo).is_global());
        assert!(classify(&hi).is_blow_up());
    }

    #[test]
    fn phi_alpha_halfline_structure() {
        // beyond the bracket on either side classification is stable
        let p = spec(2, 5);
        let cfg = IntegratorConfig { r_max: 1e3, ..Default::default() };
        let res = phi_alpha(&p, 0.0, &[], 1e-3, &cfg).unwrap();
        let below = run(2, 5, vec![0.0, res.phi_estimate - 0.5], 1e3);
        let above = run(2, 5, vec![0.0, res.phi_estimate + 0.5], 1e3);
        assert!(classify(&below).is_global());
        assert!(classify(&above).is_blow_up());
    }

    #[test]
    fn phi_alpha_rejects_odd_m() {
        let p = spec(3, 5);
        let cfg = IntegratorConfig::default();
        assert!(phi_alpha(&p, 0.0, &[0.0], 1e-3, &cfg).is_err());
    }

    #[test]
    fn scan_rejects_m2() {
        let p = spec(2, 5);
        let cfg = IntegratorConfig::default();
        assert!(scan_phi_monotonicity(&p, 0.0, &[], 1, &[0.0], 1e-3, &cfg).is_err());
    }

    #[test]
    fn scaling_maps_classification() {
        // classification of rescaled initial data equals that of the originals
        let p = spec(2, 5);
        let cfg = IntegratorConfig { r_max: 2e3, ..Default::default() };
        for (ic, expect_global) in [(vec![0.0, -8.0], true), (vec![0.0, -0.05], false)] {
            let base = InitialConditions::new(ic).unwrap();
            let direct = classify(&integrate(&p, &base, &cfg).unwrap()).is_global();
            assert_eq!(direct, expect_global);
            for lambda in [0.5, 2.0] {
                let scaled_cfg = IntegratorConfig { r_max: cfg.r_max / lambda, ..cfg };
                let scaled =
                    classify(&integrate(&p, &base.rescaled(lambda), &scaled_cfg).unwrap());
                assert_eq!(scaled.is_global(), expect_global, "λ = {lambda}");
            }
        }
    }

    #[test]
    fn comparison_identity_and_ordered_pairs() {
        let p = spec(2, 5);
        let cfg = IntegratorConfig::default();
        let ic = InitialConditions::new(vec![0.0, -1.0]).unwrap();
        let rep = comparison_check(&p, &ic, &ic, 50.0, &cfg).unwrap();
        assert!(rep.holds);
        assert!(rep.shared_samples > 100);

        let icu = InitialConditions::new(vec![0.0, -1.0]).unwrap();
        let icv = InitialConditions::new(vec![0.0, -2.0]).unwrap();
        let rep = comparison_check(&p, &icu, &icv, 1e3, &cfg).unwrap();
        assert!(rep.holds, "violation: {:?}", rep.first_violation);
    }

    #[test]
    fn comparison_holds_until_earlier_blow_up() {
        let p = spec(2, 3);
        let cfg = IntegratorConfig::default();
        let icu = InitialConditions::new(vec![0.5, -1.0]).unwrap();
        let icv = InitialConditions::new(vec![0.0, -1.0]).unwrap();
        let rep = comparison_check(&p, &icu, &icv, 1e3, &cfg).unwrap();
        assert!(rep.holds, "violation: {:?}", rep.first_violation);
    }

    #[test]
    fn comparison_rejects_unordered_data() {
        let p = spec(2, 5);
        let cfg = IntegratorConfig::default();
        let icu = InitialConditions::new(vec![0.0, -3.0]).unwrap();
        let icv = InitialConditions::new(vec![0.0, -2.0]).unwrap();
        assert!(comparison_check(&p, &icu, &icv, 50.0, &cfg).is_err());
    }
}
