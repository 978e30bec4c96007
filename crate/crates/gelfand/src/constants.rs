//! Closed-form constants for the Hardy–Rellich inequalities, the singular
//! solution amplitude, and the supersolution construction, together with
//! quadrature verification of the inequalities on radial test functions.
//!
//! Empty products are 1 throughout, with one deliberate exception: the 1-D
//! constant [`oned_constant`] returns 0 at `k = 0`. That convention is kept
//! literally even though the classical 1-D Hardy constant would be 1/4; the
//! degenerate value propagates into the `m = 1, n = 1` stability weight,
//! whose certificate is then vacuous.

use crate::bump::RadialTestFunction;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::quad;
use serde::Serialize;

/// `A_{n,k} = 16^{-k} ∏_{i=0}^{k-1} (n-4k+4i)² (n+4k-4i-4)²`.
///
/// Valid as an inequality constant for `n > 4k`; computed for all arguments.
pub fn a_const(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    let mut acc = 1.0;
    for i in 0..k {
        let p = nf - 4.0 * k as f64 + 4.0 * i as f64;
        let q = nf + 4.0 * k as f64 - 4.0 * i as f64 - 4.0;
        acc *= p * p * q * q;
    }
    acc / 16f64.powi(k as i32)
}

/// Whether `(n, k)` lies in the validity range of `A_{n,k}`.
pub fn a_const_valid(n: usize, k: usize) -> bool {
    n > 4 * k
}

/// `B_{n,k} = 16^{-k} ((n-2)/2)² ∏_{i=1}^{k} (n-4i-2)² (n+4i-2)²`.
///
/// Valid for `n > 4k + 2`; optimal at `k = 0`.
pub fn b_const(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    let mut acc = ((nf - 2.0) / 2.0).powi(2);
    for i in 1..=k {
        let p = nf - 4.0 * i as f64 - 2.0;
        let q = nf + 4.0 * i as f64 - 2.0;
        acc *= p * p * q * q;
    }
    acc / 16f64.powi(k as i32)
}

pub fn b_const_valid(n: usize, k: usize) -> bool {
    n > 4 * k + 2
}

/// `γ_{n,α} = ((n-2)/2)² - ((α-2)/2)²`.
pub fn gamma(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    ((nf - 2.0) / 2.0).powi(2) - ((alpha - 2.0) / 2.0).powi(2)
}

/// `γ̄_{n,α} = ((n-2)/2)² + ((α-2)/2)²`; zero only at `n = 2, α = 2`.
pub fn gamma_bar(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    ((nf - 2.0) / 2.0).powi(2) + ((alpha - 2.0) / 2.0).powi(2)
}

/// `μ_{n,α} = min_{j ≥ 0} |γ_{n,α} + j(n-2+j)|²` with its minimizer.
///
/// The inner map is increasing in `j` for `n ≥ 2`, so `|·|²` is unimodal and
/// the scan stops at the first non-decrease.
pub fn mu(n: usize, alpha: f64) -> (f64, usize) {
    let g = gamma(n, alpha);
    let nf = n as f64;
    let mut best = g * g;
    let mut best_j = 0usize;
    let mut j = 1usize;
    loop {
        let v = g + j as f64 * (nf - 2.0 + j as f64);
        let m = v * v;
        if m < best {
            best = m;
            best_j = j;
        } else {
            break;
        }
        j += 1;
    }
    (best, best_j)
}

/// Which side of the Hardy–Rellich pair a constant belongs to: the `Δ^k`
/// energy or the `∇(Δ^k)` energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HrSide {
    Laplacian,
    Gradient,
}

/// Inequality constant for the order-`k` Hardy–Rellich estimate.
///
/// Returns the product `∏ μ_{n,α_i}` (times `((n-2)/2)²` on the gradient
/// side) with `α_i = -4k+4i`; when that product degenerates to zero the
/// log-weighted constant of the annular inequality is returned instead.
pub fn hr_product(n: usize, k: usize, side: HrSide) -> f64 {
    let mut prod = 1.0;
    for i in 1..=k {
        let alpha_i = -4.0 * k as f64 + 4.0 * i as f64;
        prod *= mu(n, alpha_i).0;
    }
    match side {
        HrSide::Laplacian => {
            if prod > 0.0 {
                prod
            } else {
                log_weighted_constant(n, k, HrSide::Laplacian)
            }
        }
        HrSide::Gradient => {
            let c = ((n as f64 - 2.0) / 2.0).powi(2) * prod;
            if c > 0.0 {
                c
            } else {
                log_weighted_constant(n, k, HrSide::Gradient)
            }
        }
    }
}

/// Constant of the log-weighted annular inequalities in degenerate even
/// dimensions: `2^k ∏ γ̄_{n,-4i} ∏ ((2i+1)/2)²` on the Laplacian side,
/// `2^{k-2} ∏ γ̄_{n,-4i-2} ∏ ((2i+3)/2)²` on the gradient side.
pub fn log_weighted_constant(n: usize, k: usize, side: HrSide) -> f64 {
    match side {
        HrSide::Laplacian => {
            let mut acc = 2f64.powi(k as i32);
            for i in 0..k {
                acc *= gamma_bar(n, -4.0 * i as f64);
                acc *= ((2.0 * i as f64 + 1.0) / 2.0).powi(2);
            }
            acc
        }
        HrSide::Gradient => {
            let mut acc = 2f64.powi(k as i32 - 2);
            for i in 0..k {
                acc *= gamma_bar(n, -4.0 * i as f64 - 2.0);
                acc *= ((2.0 * i as f64 + 3.0) / 2.0).powi(2);
            }
            acc
        }
    }
}

/// 1-D constant `2^{-4k-2} ∏_{i=0}^{k-1} (4i-3)²(4i-5)²`, with the stated
/// convention that the product is 0 (not 1) at `k = 0`.
pub fn oned_constant(k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let mut acc = 2f64.powi(-4 * k as i32 - 2);
    for i in 0..k {
        let p = 4.0 * i as f64 - 3.0;
        let q = 4.0 * i as f64 - 5.0;
        acc *= p * p * q * q;
    }
    acc
}

/// `λ_S = 2^m m! ∏_{k=1}^{m} (n-2k)` as an exact integer.
pub fn lambda_s_exact(m: usize, n: usize) -> i128 {
    let mut acc: i128 = 1;
    for _ in 0..m {
        acc = acc.checked_mul(2).expect("lambda_S overflow");
    }
    for j in 2..=m as i128 {
        acc = acc.checked_mul(j).expect("lambda_S overflow");
    }
    for k in 1..=m as i128 {
        acc = acc.checked_mul(n as i128 - 2 * k).expect("lambda_S overflow");
    }
    acc
}

/// Singular-solution amplitude; positive iff `n > 2m`.
pub fn lambda_s(m: usize, n: usize) -> f64 {
    lambda_s_exact(m, n) as f64
}

/// Supersolution constants `(C_{n,m}, λ_{n,m})` for `m` even and `n ≥ 4`.
///
/// `C_{n,m} = [∏_{j=1}^m (2j-3) · ∏_{j=0}^{m-1} (n+2j-3)]^{-1}` is always
/// negative; `λ_{n,m} = min_{r>0} exp(|C| r^{2m-3})/r³` at the stationary
/// point `(2m-3)|C| r^{2m-3} = 3`, solved in closed form.
pub fn supersolution_constants(m: usize, n: usize) -> Result<(f64, f64)> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::domain(format!("supersolution constants need m even ≥ 2, got m = {m}")));
    }
    if n == 3 {
        return Err(Error::domain(
            "the n = 3 supersolution variant carries an unspecified constant and is unsupported",
        ));
    }
    if n < 4 {
        return Err(Error::domain(format!("supersolution constants need n ≥ 4, got n = {n}")));
    }
    let mut denom = 1.0;
    for j in 1..=m {
        denom *= 2.0 * j as f64 - 3.0;
    }
    for j in 0..m {
        denom *= n as f64 + 2.0 * j as f64 - 3.0;
    }
    let c = 1.0 / denom;
    debug_assert!(c < 0.0);
    let p = 2.0 * m as f64 - 3.0;
    let r_min = (3.0 / (p * c.abs())).powf(1.0 / p);
    let lambda = (c.abs() * r_min.powf(p)).exp() / r_min.powi(3);
    Ok((c, lambda))
}

/// One Hardy–Rellich verification query: dimension, iteration order and the
/// weight exponents of the log-weighted second-order estimate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HrQuery {
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
}

/// Which inequality a quadrature check exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HrVariant {
    /// `∏μ · ∫ φ²/|x|^{4k} ≤ ∫ |Δ^k φ|²`
    Laplacian,
    /// `((n-2)/2)² ∏μ · ∫ φ²/|x|^{4k+2} ≤ ∫ |∇(Δ^k φ)|²`
    Gradient,
    /// second-order log-weighted estimate on an exterior domain, with the
    /// exponents `α ≤ 0`, `β ≥ 0` taken from the query
    LogSecondOrder,
    /// `2^k ∏γ̄ ∏((2i+1)/2)² · ∫ φ²/(|x|^{4k} log^{2k}|x|) ≤ ∫ |Δ^k φ|²`
    LogLaplacian,
    /// gradient counterpart with weight `|x|^{-4k-2} log^{-2k-2}|x|`
    LogGradient,
    /// 1-D: `2^{-4k-2} ∏(4i-3)²(4i-5)² · ∫ φ²/|x|^{4k+2} ≤ ∫ |φ^{(2k+1)}|²`
    OneDimensional,
}

/// Result of one quadrature check: both integrals, the constant, and the
/// margin `rhs - constant·lhs` (nonnegative when the inequality holds).
#[derive(Debug, Clone, Serialize)]
pub struct HrCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub margin: f64,
    pub r_floor: f64,
}

/// Verify one Hardy–Rellich inequality on an annular bump by composite
/// Gauss–Legendre quadrature against exact recurrence-based derivatives.
///
/// `r_floor` is the exterior-domain radius `R` for the log-weighted variants
/// (the bump support must satisfy `a > max(r_floor, 1)`); it is ignored by
/// the whole-space variants.
pub fn verify_hr_inequality(
    query: &HrQuery,
    variant: HrVariant,
    bump: &RadialTestFunction,
    r_floor: f64,
) -> Result<HrCheck> {
    let (a, b) = bump.support();
    if !(a > 0.0 && b > a) {
        return Err(Error::domain("bump support must be an annulus 0 < a < b"));
    }
    let n = query.n;
    let k = query.k;
    let log_weighted = matches!(
        variant,
        HrVariant::LogSecondOrder | HrVariant::LogLaplacian | HrVariant::LogGradient
    );
    if log_weighted && a <= r_floor.max(1.0) {
        return Err(Error::domain(format!(
            "log-weighted variant needs support beyond r = {:.3}, bump starts at {a:.3}",
            r_floor.max(1.0)
        )));
    }
    if variant == HrVariant::OneDimensional && n != 1 {
        return Err(Error::domain("the 1-D variant requires n = 1"));
    }
    if variant == HrVariant::LogSecondOrder {
        if query.alpha > 0.0 || query.beta < 0.0 {
            return Err(Error::domain("log second-order variant needs α ≤ 0 and β ≥ 0"));
        }
        if mu(n, query.alpha).0 != 0.0 {
            return Err(Error::domain("log second-order variant applies only when μ_{n,α} = 0"));
        }
    }

    let constant = match variant {
        HrVariant::Laplacian => hr_mu_product(n, k),
        HrVariant::Gradient => ((n as f64 - 2.0) / 2.0).powi(2) * hr_mu_product(n, k),
        HrVariant::LogSecondOrder => {
            2.0 * gamma_bar(n, query.alpha) * ((query.beta + 1.0) / 2.0).powi(2)
        }
        HrVariant::LogLaplacian => log_weighted_constant(n, k, HrSide::Laplacian),
        HrVariant::LogGradient => log_weighted_constant(n, k, HrSide::Gradient),
        HrVariant::OneDimensional => oned_constant(k),
    };

    let panels = quad::default_panels(a, b);
    let omega = quad::sphere_surface(n);
    let nf = n as f64;

    // weighted φ² side
    let lhs = quad::integrate_log_panels(a, b, panels, |r| {
        let phi = bump.value(r);
        let w = match variant {
            HrVariant::Laplacian => r.powi(-(4 * k as i32)),
            HrVariant::Gradient | HrVariant::OneDimensional => r.powi(-(4 * k as i32 + 2)),
            HrVariant::LogSecondOrder => r.powf(query.alpha - 4.0) / r.ln().powf(query.beta + 2.0),
            HrVariant::LogLaplacian => r.powi(-(4 * k as i32)) / r.ln().powi(2 * k as i32),
            HrVariant::LogGradient => r.powi(-(4 * k as i32 + 2)) / r.ln().powi(2 * k as i32 + 2),
        };
        omega * phi * phi * w * r.powf(nf - 1.0)
    });

    // derivative-energy side
    let rhs = quad::integrate_log_panels(a, b, panels, |r| {
        let d = match variant {
            HrVariant::Laplacian | HrVariant::LogLaplacian => {
                iterated_laplacian_value(bump, r, n, k)
            }
            HrVariant::Gradient | HrVariant::LogGradient => {
                iterated_laplacian_gradient(bump, r, n, k)
            }
            HrVariant::LogSecondOrder => iterated_laplacian_value(bump, r, n, 1),
            HrVariant::OneDimensional => bump.jet(r, 2 * k + 1).derivative(2 * k + 1),
        };
        let w = match variant {
            HrVariant::LogSecondOrder => r.powf(query.alpha) / r.ln().powf(query.beta),
            _ => 1.0,
        };
        omega * d * d * w * r.powf(nf - 1.0)
    });

    Ok(HrCheck {
        lhs,
        rhs,
        constant,
        margin: rhs - constant * lhs,
        r_floor,
    })
}

fn hr_mu_product(n: usize, k: usize) -> f64 {
    let mut prod = 1.0;
    for i in 1..=k {
        prod *= mu(n, -4.0 * k as f64 + 4.0 * i as f64).0;
    }
    prod
}

/// `Δ^k φ (r)` by repeated application of the radial Laplacian to the jet.
pub fn iterated_laplacian_value(phi: &RadialTestFunction, r: f64, n: usize, k: usize) -> f64 {
    let mut jet = phi.jet(r, 2 * k);
    for _ in 0..k {
        jet = jet.radial_laplacian(n, r);
    }
    jet.value()
}

/// `(Δ^k φ)'(r)`, the radial gradient magnitude of the iterated Laplacian.
pub fn iterated_laplacian_gradient(phi: &RadialTestFunction, r: f64, n: usize, k: usize) -> f64 {
    let mut jet = phi.jet(r, 2 * k + 1);
    for _ in 0..k {
        jet = jet.radial_laplacian(n, r);
    }
    jet.derivative(1)
}

/// Iterated radial Laplacian of an arbitrary jet (used by the stability
/// forms, where the test functions are the same bumps and cutoffs).
pub fn iterated_laplacian_jet(jet: &Jet, r: f64, n: usize, k: usize) -> Jet {
    let mut out = jet.clone();
    for _ in 0..k {
        out = out.radial_laplacian(n, r);
    }
    out
}

/// Everything in one table for a `(m, n, k, α, β)` query, as emitted by the
/// `constants` CLI subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantsTable {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub alpha: f64,
    pub a: f64,
    pub a_valid: bool,
    pub b: f64,
    pub b_valid: bool,
    pub gamma: f64,
    pub gamma_bar: f64,
    pub mu: f64,
    pub mu_argmin: usize,
    pub hr_laplacian: f64,
    pub hr_gradient: f64,
    pub log_laplacian: f64,
    pub log_gradient: f64,
    pub oned: f64,
    pub lambda_s: f64,
    pub supersolution_c: Option<f64>,
    pub supersolution_lambda: Option<f64>,
}

pub fn constants_table(m: usize, n: usize, k: usize, alpha: f64) -> ConstantsTable {
    let (mu_v, mu_j) = mu(n, alpha);
    let super_c = supersolution_constants(m, n).ok();
    ConstantsTable {
        n,
        k,
        m,
        alpha,
        a: a_const(n, k),
        a_valid: a_const_valid(n, k),
        b: b_const(n, k),
        b_valid: b_const_valid(n, k),
        gamma: gamma(n, alpha),
        gamma_bar: gamma_bar(n, alpha),
        mu: mu_v,
        mu_argmin: mu_j,
        hr_laplacian: hr_product(n, k, HrSide::Laplacian),
        hr_gradient: hr_product(n, k, HrSide::Gradient),
        log_laplacian: log_weighted_constant(n, k, HrSide::Laplacian),
        log_gradient: log_weighted_constant(n, k, HrSide::Gradient),
        oned: oned_constant(k),
        lambda_s: lambda_s(m, n),
        supersolution_c: super_c.map(|(c, _)| c),
        supersolution_lambda: super_c.map(|(_, l)| l),
    }
}
