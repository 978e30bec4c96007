//! Stability quadratic forms and certificates.
//!
//! The second variation of the energy at a radial solution `u` is
//! `φ ↦ ∫ |Δ^{m/2}φ|² - ∫ e^u φ²` for `m` even and
//! `φ ↦ ∫ |∇(Δ^{(m-1)/2}φ)|² - ∫ e^u φ²` for `m` odd. A negative value on
//! any compactly supported `φ` is an instability witness; the search
//! families are scaled cutoffs `η(x/R)` (the derivative term scales like
//! `R^{n-2m}`, so it dies below the conformal dimension) and the dyadic
//! averages used at `n = 2m` exactly.
//!
//! Stability outside a compact set is certified pointwise: once
//! `e^{u(r)} ≤ V(r)` beyond some radius, with `V` the Hardy–Rellich weight
//! for the parity/dimension case at hand, the quadratic form is nonnegative
//! on test functions supported there. The weight table lives in
//! [`socs_weight`]; the inequalities behind it are verified separately by
//! quadrature in the constants module.

use crate::bump::RadialTestFunction;
use crate::constants::{
    gamma_bar, iterated_laplacian_gradient, iterated_laplacian_value, mu, oned_constant,
};
use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::quad;
use crate::radial_ode::Trajectory;
use serde::Serialize;

/// Radial evaluator for `u` backed by trajectory samples, with an optional
/// log-linear tail extension beyond the computed range.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    interp: MonotoneCubic,
    r_first: f64,
    r_last: f64,
    u_first: f64,
    u_last: f64,
    tail_slope: f64,
}

impl RadialProfile {
    pub fn from_trajectory(t: &Trajectory) -> Result<Self> {
        if t.samples.len() < 4 {
            return Err(Error::domain("trajectory too short for a radial profile"));
        }
        let lnr: Vec<f64> = t.samples.iter().map(|s| s.r.ln()).collect();
        let u: Vec<f64> = t.samples.iter().map(|s| s.w[0]).collect();
        let interp = MonotoneCubic::new(&lnr, &u);
        let r_last = t.last().r;
        let lo = r_last / 10.0;
        let tail: Vec<(f64, f64)> = t.window(lo, r_last).map(|s| (s.r.ln(), s.w[0])).collect();
        let tail_slope = if tail.len() >= 2 {
            let n = tail.len() as f64;
            let mx = tail.iter().map(|p| p.0).sum::<f64>() / n;
            let my = tail.iter().map(|p| p.1).sum::<f64>() / n;
            let num: f64 = tail.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
            let den: f64 = tail.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
            num / den
        } else {
            0.0
        };
        Ok(RadialProfile {
            interp,
            r_first: t.first().r,
            r_last,
            u_first: t.first().w[0],
            u_last: t.last().w[0],
            tail_slope,
        })
    }

    pub fn r_last(&self) -> f64 {
        self.r_last
    }

    /// `u(r)`; returns `(value, extended)` where `extended` marks use of the
    /// fitted log-linear tail beyond the data range.
    pub fn eval(&self, r: f64) -> (f64, bool) {
        if r <= self.r_first {
            (self.u_first, false)
        } else if r <= self.r_last {
            (self.interp.eval(r.ln()), false)
        } else {
            (self.u_last + self.tail_slope * (r / self.r_last).ln(), true)
        }
    }
}

/// Decomposed value of the stability quadratic form on one test function.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RayleighForm {
    pub value: f64,
    pub derivative_term: f64,
    pub potential_term: f64,
    /// true when the potential integral sampled `u` beyond the trajectory
    /// range through the fitted tail extension
    pub extended: bool,
}

/// Evaluate the parity-correct quadratic form for the trajectory's problem.
///
/// When `allow_extension` is false the test function support must lie
/// within the computed radial range.
pub fn rayleigh_form(
    trajectory: &Trajectory,
    phi: &RadialTestFunction,
    allow_extension: bool,
) -> Result<RayleighForm> {
    let profile = RadialProfile::from_trajectory(trajectory)?;
    rayleigh_form_with_profile(trajectory, &profile, phi, allow_extension)
}

fn rayleigh_form_with_profile(
    trajectory: &Trajectory,
    profile: &RadialProfile,
    phi: &RadialTestFunction,
    allow_extension: bool,
) -> Result<RayleighForm> {
    let m = trajectory.problem.m();
    let n = trajectory.problem.n();
    let (_, supp_hi) = phi.support();
    if !allow_extension && supp_hi > profile.r_last() * (1.0 + 1e-9) {
        return Err(Error::domain(format!(
            "test function support reaches r = {supp_hi:.3e} beyond the computed range \
             {:.3e}; enable tail extension or integrate further",
            profile.r_last()
        )));
    }
    let omega = quad::sphere_surface(n);
    let nf = n as f64;

    let (da, db) = phi.derivative_support();
    let dpanels = quad::default_panels(da.max(1e-12), db).max(96);
    let derivative_term = omega
        * quad::integrate_log_panels(da.max(1e-12), db, dpanels, |r| {
            let d = if m % 2 == 0 {
                iterated_laplacian_value(phi, r, n, m / 2)
            } else {
                iterated_laplacian_gradient(phi, r, n, (m - 1) / 2)
            };
            d * d * r.powf(nf - 1.0)
        });

    let mut extended = false;
    let lo = profile.r_first.min(supp_hi * 1e-12);
    let mut pot = quad::integrate_linear_panels(0.0, lo, 4, |r| {
        let (u, _) = profile.eval(r);
        u.exp() * phi.value(r).powi(2) * r.powf(nf - 1.0)
    });
    let panels = quad::default_panels(lo, supp_hi).max(96);
    pot += quad::integrate_log_panels(lo, supp_hi, panels, |r| {
        let (u, ext) = profile.eval(r);
        extended |= ext;
        u.exp() * phi.value(r).powi(2) * r.powf(nf - 1.0)
    });
    let potential_term = omega * pot;

    Ok(RayleighForm {
        value: derivative_term - potential_term,
        derivative_term,
        potential_term,
        extended,
    })
}

/// Search families from the no-stable-solutions argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CutoffFamily {
    /// `η(x/R)`, R log-spaced in `[1, 10³]` (20 values)
    ScaledCutoff,
    /// `(1/k) Σ_{j=k}^{2k-1} η(x/2^j)`, k = 1..12
    DyadicSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilityVerdict {
    InstabilityWitnessFound,
    NoWitnessInFamily,
    CertifiedOutsideCompact,
    /// the chosen procedure could not decide either way
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub family: Option<CutoffFamily>,
    /// (family parameter, form value) pairs in evaluation order
    pub form_values: Vec<(f64, f64)>,
    /// first family parameter with a negative form value
    pub witness: Option<f64>,
    pub verdict: StabilityVerdict,
    pub certified_radius: Option<f64>,
    pub extended_tail: bool,
    pub notes: Vec<String>,
}

pub const SCALED_FAMILY_COUNT: usize = 20;
pub const SCALED_FAMILY_MAX: f64 = 1e3;
pub const DYADIC_FAMILY_MAX_K: usize = 12;

/// Sweep the chosen cutoff family and report the first negative form value.
/// Absence of a witness is a valid report, not an error.
pub fn instability_search(
    trajectory: &Trajectory,
    family: CutoffFamily,
) -> Result<StabilityReport> {
    let profile = RadialProfile::from_trajectory(trajectory)?;
    let mut form_values = Vec::new();
    let mut witness = None;
    let mut extended_tail = false;
    let mut notes = Vec::new();

    let params: Vec<f64> = match family {
        CutoffFamily::ScaledCutoff => (0..SCALED_FAMILY_COUNT)
            .map(|i| {
                SCALED_FAMILY_MAX.powf(i as f64 / (SCALED_FAMILY_COUNT as f64 - 1.0))
            })
            .collect(),
        CutoffFamily::DyadicSum => (1..=DYADIC_FAMILY_MAX_K).map(|k| k as f64).collect(),
    };

    for &p in &params {
        let phi = match family {
            CutoffFamily::ScaledCutoff => RadialTestFunction::cutoff(p)?,
            CutoffFamily::DyadicSum => RadialTestFunction::dyadic_sum(p as usize)?,
        };
        let form = rayleigh_form_with_profile(trajectory, &profile, &phi, true)?;
        extended_tail |= form.extended;
        form_values.push((p, form.value));
        if form.value < 0.0 && witness.is_none() {
            witness = Some(p);
        }
    }
    if extended_tail {
        notes.push("potential term sampled u beyond the data range via the fitted tail".into());
    }
    let verdict = if witness.is_some() {
        StabilityVerdict::InstabilityWitnessFound
    } else {
        StabilityVerdict::NoWitnessInFamily
    };
    Ok(StabilityReport {
        family: Some(family),
        form_values,
        witness,
        verdict,
        certified_radius: None,
        extended_tail,
        notes,
    })
}

/// The Hardy–Rellich comparison weight `V(r) = c · r^{-2m} (log r)^{-p}`.
#[derive(Debug, Clone, Serialize)]
pub struct SocsWeight {
    pub constant: f64,
    /// power of `1/r`; always `2m`
    pub power: u32,
    /// power of `1/log r` (0 for the unweighted cases)
    pub log_power: u32,
    /// radii below this are outside the weight's validity (log weights
    /// require `r > 1`)
    pub min_radius: f64,
    pub case: String,
}

impl SocsWeight {
    pub fn eval(&self, r: f64) -> f64 {
        if r <= self.min_radius {
            return f64::NAN;
        }
        let mut v = self.constant * r.powi(-(self.power as i32));
        if self.log_power > 0 {
            v /= r.ln().powi(self.log_power as i32);
        }
        v
    }
}

/// The five-case weight table behind stability outside a compact set.
///
/// Errors when `(m, n)` falls outside every case (`m` even with `n ≤ 2`),
/// matching the nonexistence of global solutions there.
pub fn socs_weight(problem: &crate::radial_ode::ProblemSpec) -> Result<SocsWeight> {
    let m = problem.m();
    let n = problem.n();
    let even_m = m % 2 == 0;
    let two_m = 2 * m;

    if even_m && n >= 3 && n <= two_m && n % 2 == 0 {
        let k = m / 2;
        let mut c = 2f64.powi(k as i32);
        for i in 0..k {
            c *= gamma_bar(n, -4.0 * i as f64) * ((2.0 * i as f64 + 1.0) / 2.0).powi(2);
        }
        return Ok(SocsWeight {
            constant: c,
            power: two_m as u32,
            log_power: m as u32,
            min_radius: 1.0,
            case: "m even, 3 ≤ n ≤ 2m even: log-weighted Δ^{m/2} estimate".into(),
        });
    }
    if !even_m && m >= 3 && n >= 2 && n <= two_m && n % 2 == 0 {
        let k = (m - 1) / 2;
        let mut c = 2f64.powi(k as i32 - 2);
        for i in 0..k {
            c *= gamma_bar(n, -4.0 * i as f64 - 2.0) * ((2.0 * i as f64 + 3.0) / 2.0).powi(2);
        }
        return Ok(SocsWeight {
            constant: c,
            power: two_m as u32,
            log_power: m as u32 + 1,
            min_radius: 1.0,
            case: "m odd ≥ 3, 2 ≤ n ≤ 2m even: log-weighted gradient estimate".into(),
        });
    }
    if !even_m && n == 1 {
        let k = (m - 1) / 2;
        // 2^{-2m} ∏ (4i-3)²(4i-5)², which is the 1-D constant at order k
        let c = oned_constant(k) * 2f64.powi(4 * k as i32 + 2 - 2 * m as i32);
        return Ok(SocsWeight {
            constant: c,
            power: two_m as u32,
            log_power: 0,
            min_radius: 0.0,
            case: "m odd, n = 1: one-dimensional estimate (degenerate for m = 1)".into(),
        });
    }
    if even_m && ((n >= 3 && n <= two_m && n % 2 == 1) || n > two_m) {
        let k = m / 2;
        let mut c = 1.0;
        for i in 1..=k {
            c *= mu(n, -4.0 * k as f64 + 4.0 * i as f64).0;
        }
        return Ok(SocsWeight {
            constant: c,
            power: two_m as u32,
            log_power: 0,
            min_radius: 0.0,
            case: "m even, n odd ≤ 2m or n > 2m: μ-product estimate".into(),
        });
    }
    if !even_m && ((n >= 3 && n <= two_m && n % 2 == 1) || n > two_m) {
        let k = (m - 1) / 2;
        let mut c = ((n as f64 - 2.0) / 2.0).powi(2);
        for i in 1..=k {
            c *= mu(n, -4.0 * k as f64 + 4.0 * i as f64).0;
        }
        return Ok(SocsWeight {
            constant: c,
            power: two_m as u32,
            log_power: 0,
            min_radius: 0.0,
            case: "m odd, n odd ≤ 2m or n > 2m: gradient μ-product estimate".into(),
        });
    }
    Err(Error::domain(format!(
        "no comparison weight covers (m, n) = ({m}, {n}); for m even and n ≤ 2 \
         no global solution exists"
    )))
}

/// Minimum number of trailing samples required beyond the certified radius.
const MIN_CERTIFIED_SAMPLES: usize = 10;

/// Find the smallest sampled radius beyond which `e^{u(r)} ≤ V(r)` holds at
/// every sample. The certificate is numerical: it verifies the pointwise
/// comparison that reduces the quadratic form to the (separately verified)
/// Hardy–Rellich inequality. Failure to find a radius is reported as
/// inconclusive, never as instability.
pub fn socs_certificate(trajectory: &Trajectory) -> Result<StabilityReport> {
    let weight = socs_weight(&trajectory.problem)?;
    let mut notes = vec![format!("weight case: {}", weight.case)];

    let eligible: Vec<(f64, f64)> = trajectory
        .samples
        .iter()
        .filter(|s| s.r > weight.min_radius * (1.0 + 1e-12))
        .map(|s| (s.r, s.w[0]))
        .collect();
    if eligible.len() < MIN_CERTIFIED_SAMPLES {
        notes.push("too few samples beyond the weight's validity radius".into());
        return Ok(StabilityReport {
            family: None,
            form_values: vec![],
            witness: None,
            verdict: StabilityVerdict::Inconclusive,
            certified_radius: None,
            extended_tail: false,
            notes,
        });
    }

    // last radius where the comparison fails; everything after certifies
    let mut last_fail: Option<usize> = None;
    for (i, (r, u)) in eligible.iter().enumerate() {
        if u.exp() > weight.eval(*r) {
            last_fail = Some(i);
        }
    }
    let start = match last_fail {
        None => 0,
        Some(i) => i + 1,
    };
    if eligible.len() - start >= MIN_CERTIFIED_SAMPLES {
        let radius = eligible[if start == 0 { 0 } else { start - 1 }].0;
        Ok(StabilityReport {
            family: None,
            form_values: vec![],
            witness: None,
            verdict: StabilityVerdict::CertifiedOutsideCompact,
            certified_radius: Some(radius),
            extended_tail: false,
            notes,
        })
    } else {
        notes.push("pointwise comparison e^u ≤ V failed into the tail of the computed range".into());
        Ok(StabilityReport {
            family: None,
            form_values: vec![],
            witness: None,
            verdict: StabilityVerdict::Inconclusive,
            certified_radius: None,
            extended_tail: false,
            notes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial_ode::{integrate, InitialConditions, IntegratorConfig, ProblemSpec};
    use approx::assert_relative_eq;

    fn run(m: usize, n: usize, ic: Vec<f64>, r_max: f64) -> Trajectory {
        let cfg = IntegratorConfig { r_max, ..Default::default() };
        integrate(
            &ProblemSpec::new(m, n).unwrap(),
            &InitialConditions::new(ic).unwrap(),
            &cfg,
        )
        .unwrap()
    }

    #[test]
    fn rayleigh_form_is_quadratic_in_phi() {
        // form(cφ) = c² form(φ): both terms are quadratic integrals, so the
        // check reduces to exactness of scaling in the quadrature values
        let t = run(2, 5, vec![0.0, -10.0], 1e3);
        let phi = RadialTestFunction::annular_bump(1.0, 4.0).unwrap();
        let f1 = rayleigh_form(&t, &phi, false).unwrap();
        // scale by hand: the integrands are quadratic, so c² factors exactly
        let c = 3.0f64;
        let scaled_value = c * c * f1.value;
        assert_relative_eq!(
            c * c * f1.derivative_term - c * c * f1.potential_term,
            scaled_value,
            max_relative = 1e-12
        );
    }

    #[test]
    fn derivative_term_scales_exactly_under_dilation() {
        // for m even, ∫|Δ^{m/2}η_R|² = R^{n-2m} ∫|Δ^{m/2}η|²
        let t = run(2, 5, vec![0.0, -10.0], 1e4);
        let base = rayleigh_form(&t, &RadialTestFunction::cutoff(1.0).unwrap(), true).unwrap();
        for r_scale in [4.0, 32.0, 256.0] {
            let scaled =
                rayleigh_form(&t, &RadialTestFunction::cutoff(r_scale).unwrap(), true).unwrap();
            let expect = r_scale.powi(5 - 4) * base.derivative_term;
            assert_relative_eq!(scaled.derivative_term, expect, max_relative = 1e-10);
        }
    }

    #[test]
    fn zero_test_function_gives_zero_form() {
        let t = run(2, 5, vec![0.0, -10.0], 1e3);
        // a bump far outside the potential support and with trivial values
        let phi = RadialTestFunction::annular_bump(900.0, 950.0).unwrap();
        let f = rayleigh_form(&t, &phi, false).unwrap();
        // the bump is not zero, but the potential there is ~e^{u(900)} ≈ 0
        assert!(f.potential_term.abs() < 1e-30);
        assert!(f.derivative_term > 0.0);
    }

    #[test]
    fn instability_witness_below_conformal_dimension() {
        // m=2, n=3 < 2m: scaled cutoffs must go negative
        let t = run(2, 3, vec![5.0, -20.0], 1e4);
        let rep = instability_search(&t, CutoffFamily::ScaledCutoff).unwrap();
        assert_eq!(rep.verdict, StabilityVerdict::InstabilityWitnessFound);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn no_witness_for_negligible_potential() {
        // u ≡ -10⁶ has e^u ≈ 0: the form is the positive derivative term
        let mut t = run(1, 5, vec![0.0], 1e3);
        for s in &mut t.samples {
            s.w[0] = -1e6;
        }
        let rep = instability_search(&t, CutoffFamily::ScaledCutoff).unwrap();
        assert_eq!(rep.verdict, StabilityVerdict::NoWitnessInFamily);
        assert!(rep.witness.is_none());
        assert!(rep.form_values.iter().all(|(_, v)| *v > 0.0));
    }

    #[test]
    fn socs_weight_table_cases() {
        // m=2, n=3: μ_{3,0} r^{-4} = (9/16) r^{-4}
        let w = socs_weight(&ProblemSpec::new(2, 3).unwrap()).unwrap();
        assert_relative_eq!(w.constant, 9.0 / 16.0, max_relative = 1e-14);
        assert_eq!(w.power, 4);
        assert_eq!(w.log_power, 0);

        // m=1, n=1: the k=0 convention makes the weight vanish
        let w = socs_weight(&ProblemSpec::new(1, 1).unwrap()).unwrap();
        assert_eq!(w.constant, 0.0);
        assert_eq!(w.power, 2);

        // m=2, n=4: 2·γ̄_{4,0}·(1/2)² r^{-4} (log r)^{-2} = r^{-4}(log r)^{-2}
        let w = socs_weight(&ProblemSpec::new(2, 4).unwrap()).unwrap();
        assert_relative_eq!(w.constant, 1.0, max_relative = 1e-14);
        assert_eq!(w.log_power, 2);
        assert_eq!(w.min_radius, 1.0);

        // m even, n ≤ 2: no case applies
        assert!(socs_weight(&ProblemSpec::new(2, 2).unwrap()).is_err());
        assert!(socs_weight(&ProblemSpec::new(2, 1).unwrap()).is_err());
    }

    #[test]
    fn socs_certificate_interior_even_case() {
        let t = run(2, 5, vec![0.0, -20.0], 1e3);
        let rep = socs_certificate(&t).unwrap();
        assert_eq!(rep.verdict, StabilityVerdict::CertifiedOutsideCompact);
        assert!(rep.certified_radius.unwrap() < 100.0);
    }

    #[test]
    fn socs_certificate_fails_on_flat_zero_profile() {
        let mut t = run(2, 5, vec![0.0, -20.0], 1e3);
        for s in &mut t.samples {
            s.w[0] = 0.0;
        }
        let rep = socs_certificate(&t).unwrap();
        assert_eq!(rep.verdict, StabilityVerdict::Inconclusive);
    }

    #[test]
    fn degenerate_one_dimensional_weight_gives_no_certificate() {
        let t = run(1, 1, vec![0.0], 100.0);
        let rep = socs_certificate(&t).unwrap();
        // V ≡ 0: e^u ≤ 0 never holds
        assert_eq!(rep.verdict, StabilityVerdict::Inconclusive);
    }
}
