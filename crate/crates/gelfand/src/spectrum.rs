//! Characteristic polynomials of the linearized autonomous equation.
//!
//! `Q_m(t) = (-1)^m ∏_{j=0}^{m-1} (t-2j)(t+n-2j-2)` is the symbol of the
//! radial operator after the Emden change of variables; subtracting the
//! singular amplitude gives `P_m = Q_m - λ_S`, whose root realness governs
//! oscillation around the singular solution. Coefficients are built exactly
//! in 128-bit integers before any floating point enters; roots come from an
//! Aberth–Ehrlich iteration with a residual-based real-snap for multiple
//! real roots.

use crate::constants::{a_const, lambda_s, lambda_s_exact};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Exact coefficients of `Q_m` for dimension `n`, constant term first.
/// The degree is `2m` and the leading coefficient is `(-1)^m`.
pub fn qm_coefficients(m: usize, n: usize) -> Vec<i128> {
    assert!(m >= 1 && n >= 1);
    let mut coeffs: Vec<i128> = vec![1];
    for j in 0..m as i128 {
        coeffs = convolve_linear(&coeffs, -2 * j);
        coeffs = convolve_linear(&coeffs, n as i128 - 2 * j - 2);
    }
    if m % 2 == 1 {
        for c in &mut coeffs {
            *c = -*c;
        }
    }
    coeffs
}

/// Exact coefficients of `P_m = Q_m - λ_S`, constant term first.
pub fn pm_coefficients(m: usize, n: usize) -> Vec<i128> {
    let mut coeffs = qm_coefficients(m, n);
    coeffs[0] -= lambda_s_exact(m, n);
    coeffs
}

// multiply by the factor (t + c)
fn convolve_linear(coeffs: &[i128], c: i128) -> Vec<i128> {
    let mut out = vec![0i128; coeffs.len() + 1];
    for (i, &a) in coeffs.iter().enumerate() {
        out[i] = out[i].checked_add(a.checked_mul(c).expect("coefficient overflow")).unwrap();
        out[i + 1] += a;
    }
    out
}

/// Evaluate a polynomial (constant term first) at a complex point.
pub fn poly_eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn poly_eval_with_error_bound(coeffs: &[f64], z: Complex64) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let zn = z.norm();
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
        err = err * zn + acc.norm();
    }
    (acc, err * 4.0 * f64::EPSILON)
}

fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect()
}

/// All complex roots by Aberth–Ehrlich simultaneous iteration.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(vec![]);
    }
    let lead = coeffs[deg];
    if lead == 0.0 {
        return Err(Error::numerical("leading coefficient is zero"));
    }
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if deg == 1 {
        return Ok(vec![Complex64::new(-monic[0], 0.0)]);
    }
    if deg == 2 {
        return Ok(quadratic_roots(monic[0], monic[1]));
    }
    let deriv = poly_derivative(&monic);

    // Cauchy bound for the initial circle
    let bound = 1.0 + monic[..deg].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / deg as f64 + 0.4;
            Complex64::from_polar(bound * 0.8, angle)
        })
        .collect();

    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let p = poly_eval(&monic, z[i]);
            let dp = poly_eval(&deriv, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { p };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 1e-300 {
                        sum += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }

    // real-snap: with real coefficients, a root whose real part is already a
    // root to within the Horner rounding bound is a (possibly multiple) real
    // root that the iteration split into a spurious conjugate pair
    for zi in z.iter_mut() {
        if zi.im != 0.0 {
            let re = Complex64::new(zi.re, 0.0);
            let (p_re, bound_re) = poly_eval_with_error_bound(&monic, re);
            let (p_z, bound_z) = poly_eval_with_error_bound(&monic, *zi);
            if p_re.norm() <= (4.0 * bound_re).max(2.0 * (p_z.norm() + bound_z)) {
                zi.im = 0.0;
            }
        }
    }
    z.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(z)
}

fn quadratic_roots(c0: f64, c1: f64) -> Vec<Complex64> {
    // t² + c1 t + c0
    let disc = c1 * c1 - 4.0 * c0;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let q = -0.5 * (c1 + c1.signum() * s);
        let (r1, r2) = if q != 0.0 { (q, c0 / q) } else { (-c1 / 2.0, -c1 / 2.0) };
        vec![Complex64::new(r1.min(r2), 0.0), Complex64::new(r1.max(r2), 0.0)]
    } else {
        let im = (-disc).sqrt() / 2.0;
        vec![Complex64::new(-c1 / 2.0, -im), Complex64::new(-c1 / 2.0, im)]
    }
}

/// Roots of `P_m` with realness classification and residual bounds.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub m: usize,
    pub n: usize,
    pub lambda_s: f64,
    /// coefficients of `Q_m`, constant term first (exact integers)
    pub q_coeffs: Vec<f64>,
    /// coefficients of `P_m = Q_m - λ_S`, constant term first
    pub p_coeffs: Vec<f64>,
    /// roots as (re, im) pairs, sorted by real part
    pub roots: Vec<(f64, f64)>,
    /// |P_m(root)| scaled by the Horner error bound, per root
    pub root_residuals: Vec<f64>,
    pub has_nonreal: bool,
    pub realness_tol: f64,
}

pub const DEFAULT_REALNESS_TOL: f64 = 1e-8;

/// Root classification of `P_m`; requires `n > 2m` so that `λ_S > 0`.
pub fn pm_roots(m: usize, n: usize, tol: f64) -> Result<SpectrumReport> {
    if n <= 2 * m {
        return Err(Error::domain(format!(
            "P_m roots need the supercritical range n > 2m (m = {m}, n = {n})"
        )));
    }
    let q: Vec<f64> = qm_coefficients(m, n).iter().map(|&c| c as f64).collect();
    let p: Vec<f64> = pm_coefficients(m, n).iter().map(|&c| c as f64).collect();
    let roots = polynomial_roots(&p)?;
    let mut residuals = Vec::with_capacity(roots.len());
    for z in &roots {
        let (v, bound) = poly_eval_with_error_bound(&p, *z);
        residuals.push(if bound > 0.0 { v.norm() / bound } else { v.norm() });
    }
    let has_nonreal = roots.iter().any(|z| z.im.abs() > tol * (1.0 + z.norm()));
    Ok(SpectrumReport {
        m,
        n,
        lambda_s: lambda_s(m, n),
        q_coeffs: q,
        p_coeffs: p,
        roots: roots.iter().map(|z| (z.re, z.im)).collect(),
        root_residuals: residuals,
        has_nonreal,
        realness_tol: tol,
    })
}

/// Expand a root list back into monic coefficients (constant term first);
/// used by the round-trip invariant.
pub fn expand_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i] -= c * r;
            next[i + 1] += c;
        }
        coeffs = next;
    }
    coeffs
}

/// Smallest `n > 2m` with `λ_S ≤ A_{n,m/2}`; requires `m` even.
///
/// A linear scan is enough because `A_{n,m/2}/λ_S` is increasing in `n`
/// on the supercritical range.
pub fn n_star(m: usize) -> Result<usize> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::domain(format!("critical dimension needs m even ≥ 2, got {m}")));
    }
    let mut n = 2 * m + 1;
    loop {
        if lambda_s(m, n) <= a_const(n, m / 2) {
            return Ok(n);
        }
        n += 1;
        if n > 10_000 {
            return Err(Error::numerical("critical dimension scan did not terminate"));
        }
    }
}

/// Smallest `n > 2m` satisfying the known stability threshold inequality for
/// `m ∈ {1, 2}`: `λ_S ≤ B_{n,0}` (m = 1) or `λ_S ≤ A_{n,1}` (m = 2).
pub fn stability_threshold_m12(m: usize) -> Result<usize> {
    let best: fn(usize) -> f64 = match m {
        1 => |n| crate::constants::b_const(n, 0),
        2 => |n| a_const(n, 1),
        _ => return Err(Error::domain(format!("threshold known only for m ∈ {{1, 2}}, got {m}"))),
    };
    let mut n = 2 * m + 1;
    loop {
        if lambda_s(m, n) <= best(n) {
            return Ok(n);
        }
        n += 1;
        if n > 10_000 {
            return Err(Error::numerical("threshold scan did not terminate"));
        }
    }
}
