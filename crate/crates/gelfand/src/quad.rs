//! Composite Gauss–Legendre quadrature on log-spaced panels.
//!
//! All the weighted integrals in this crate are radial, `∫ f(r) r^{n-1} dr`,
//! over intervals spanning several decades; log-spaced panels with a fixed
//! 32-node Gauss rule per panel resolve them uniformly per decade. Nodes and
//! weights are generated once by Newton iteration on the Legendre polynomial
//! and cached.

use once_cell::sync::Lazy;

/// Nodes and weights of the `N`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub const NODES_PER_PANEL: usize = 32;

static GL32: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gauss_legendre(NODES_PER_PANEL));

/// Integrate `f` over `[a, b]` with `panels` log-spaced Gauss panels.
/// Requires `0 < a < b`.
pub fn integrate_log_panels<F: FnMut(f64) -> f64>(a: f64, b: f64, panels: usize, mut f: F) -> f64 {
    assert!(a > 0.0 && b > a, "log panels need 0 < a < b");
    let (nodes, weights) = (&GL32.0, &GL32.1);
    let la = a.ln();
    let lb = b.ln();
    let mut total = 0.0;
    for p in 0..panels {
        let x0 = (la + (lb - la) * p as f64 / panels as f64).exp();
        let x1 = (la + (lb - la) * (p + 1) as f64 / panels as f64).exp();
        let mid = 0.5 * (x0 + x1);
        let half = 0.5 * (x1 - x0);
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// Integrate `f` over `[a, b]` with linearly spaced panels (used for
/// intervals touching r = 0 where log spacing is unavailable).
pub fn integrate_linear_panels<F: FnMut(f64) -> f64>(
    a: f64,
    b: f64,
    panels: usize,
    mut f: F,
) -> f64 {
    assert!(b > a);
    let (nodes, weights) = (&GL32.0, &GL32.1);
    let mut total = 0.0;
    for p in 0..panels {
        let x0 = a + (b - a) * p as f64 / panels as f64;
        let x1 = a + (b - a) * (p + 1) as f64 / panels as f64;
        let mid = 0.5 * (x0 + x1);
        let half = 0.5 * (x1 - x0);
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// Default panel count for an interval: at least 64 panels (≥ 2048 nodes),
/// growing with the number of decades spanned.
pub fn default_panels(a: f64, b: f64) -> usize {
    let decades = if a > 0.0 { (b / a).log10().abs() } else { 6.0 };
    (16.0 * decades).ceil().max(64.0) as usize
}

/// Γ(n/2) for integer `n ≥ 1`, by the half-integer recurrence.
pub fn gamma_half_integer(n: usize) -> f64 {
    assert!(n >= 1);
    if n % 2 == 0 {
        // Γ(k) = (k-1)!
        crate::jet::factorial(n / 2 - 1)
    } else {
        // Γ(k + 1/2) = (2k)! √π / (4^k k!)
        let k = n / 2;
        let mut acc = std::f64::consts::PI.sqrt();
        for j in 0..k {
            acc *= j as f64 + 0.5;
        }
        acc
    }
}

/// Surface measure `ω_{n-1} = 2 π^{n/2} / Γ(n/2)` of the unit sphere in `ℝ^n`.
pub fn sphere_surface(n: usize) -> f64 {
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half_integer(n)
}
