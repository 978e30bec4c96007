//! Compactly supported radial test functions with recurrence-based
//! derivatives to any order.
//!
//! Three families cover every use in the crate:
//!
//! * an annular bump `exp(-1/(1-t²))` rescaled to `[a, b]`, for the
//!   Hardy–Rellich quadrature checks and the stability forms;
//! * a smooth cutoff equal to 1 on `B_R` and 0 outside `B_{2R}`, for the
//!   scaled instability family;
//! * the dyadic average `(1/k) Σ_{j=k}^{2k-1} η(x/2^j)` of such cutoffs,
//!   for the conformal dimension `n = 2m`.
//!
//! Derivatives come from [`Jet`] arithmetic on the defining expressions, so
//! they are exact up to roundoff at every interior point; at the seams the
//! functions are flat to all orders and the jets are returned as zero.

use crate::error::{Error, Result};
use crate::jet::Jet;

const SEAM_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum TestFunctionKind {
    /// `exp(-1/(1-t²))` with `t` affine from `[a, b]` onto `[-1, 1]`.
    AnnularBump { a: f64, b: f64 },
    /// 1 on `[0, radius]`, exp-smoothstep transition, 0 beyond `2·radius`.
    Cutoff { radius: f64 },
    /// `(1/k) Σ_{j=k}^{2k-1}` of cutoffs with radii `2^j`.
    DyadicSum { k: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialTestFunction {
    pub kind: TestFunctionKind,
    pub amplitude: f64,
    pub description: String,
}

impl RadialTestFunction {
    pub fn annular_bump(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > a) {
            return Err(Error::domain(format!("annular bump needs 0 < a < b, got [{a}, {b}]")));
        }
        Ok(RadialTestFunction {
            kind: TestFunctionKind::AnnularBump { a, b },
            amplitude: 1.0,
            description: format!("bump on [{a:.6e}, {b:.6e}]"),
        })
    }

    pub fn cutoff(radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::domain("cutoff radius must be positive"));
        }
        Ok(RadialTestFunction {
            kind: TestFunctionKind::Cutoff { radius },
            amplitude: 1.0,
            description: format!("cutoff 1 on B_{radius:.6e}"),
        })
    }

    pub fn dyadic_sum(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("dyadic sum needs k ≥ 1"));
        }
        Ok(RadialTestFunction {
            kind: TestFunctionKind::DyadicSum { k },
            amplitude: 1.0,
            description: format!("dyadic cutoff average, k = {k}"),
        })
    }

    /// The same shape scaled by a constant factor.
    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// Closed support `[lo, hi]` (lo = 0 for the cutoff families).
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            TestFunctionKind::AnnularBump { a, b } => (a, b),
            TestFunctionKind::Cutoff { radius } => (0.0, 2.0 * radius),
            TestFunctionKind::DyadicSum { k } => (0.0, 2f64.powi(2 * k as i32)),
        }
    }

    /// Interval outside which every derivative vanishes identically
    /// (the function is locally constant there).
    pub fn derivative_support(&self) -> (f64, f64) {
        match self.kind {
            TestFunctionKind::AnnularBump { a, b } => (a, b),
            TestFunctionKind::Cutoff { radius } => (radius, 2.0 * radius),
            TestFunctionKind::DyadicSum { k } => (2f64.powi(k as i32), 2f64.powi(2 * k as i32)),
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        self.jet(r, 0).value()
    }

    /// Taylor jet at `r` to the requested order.
    pub fn jet(&self, r: f64, order: usize) -> Jet {
        let shape = match self.kind {
            TestFunctionKind::AnnularBump { a, b } => bump_jet(r, a, b, order),
            TestFunctionKind::Cutoff { radius } => cutoff_jet(r, radius, order),
            TestFunctionKind::DyadicSum { k } => {
                let mut acc = Jet::constant(0.0, order);
                for j in k..2 * k {
                    acc = acc.add(&cutoff_jet(r, 2f64.powi(j as i32), order));
                }
                acc.scale(1.0 / k as f64)
            }
        };
        if self.amplitude == 1.0 {
            shape
        } else {
            shape.scale(self.amplitude)
        }
    }
}

fn bump_jet(r: f64, a: f64, b: f64, order: usize) -> Jet {
    // t = (2r - (a+b))/(b-a); φ = exp(-1/(1-t²)) on |t| < 1
    let t0 = (2.0 * r - (a + b)) / (b - a);
    if 1.0 - t0 * t0 <= SEAM_GUARD {
        return Jet::constant(0.0, order);
    }
    let t = Jet::variable(r, order)
        .scale(2.0 / (b - a))
        .add(&Jet::constant(-(a + b) / (b - a), order));
    let one = Jet::constant(1.0, order);
    one.sub(&t.mul(&t)).recip().scale(-1.0).exp()
}

fn cutoff_jet(r: f64, radius: f64, order: usize) -> Jet {
    // η(r) = S((2R - r)/R) with the exp smoothstep S on [0, 1]
    let t0 = (2.0 * radius - r) / radius;
    if t0 <= SEAM_GUARD {
        return Jet::constant(0.0, order);
    }
    if t0 >= 1.0 - SEAM_GUARD {
        return Jet::constant(1.0, order);
    }
    let t = Jet::variable(r, order)
        .scale(-1.0 / radius)
        .add(&Jet::constant(2.0, order));
    let f = t.recip().scale(-1.0).exp();
    let g = Jet::constant(1.0, order).sub(&t).recip().scale(-1.0).exp();
    f.div(&f.add(&g))
}
