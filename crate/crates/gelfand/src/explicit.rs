//! The closed-form solution family in the conformal dimension `n = 2m`:
//!
//! `u(r) = 2m log( 2 ((2m)!)^{1/2m} λ / (1 + λ² r²) )`
//!
//! evaluated with analytic radial derivatives to any order. The family is
//! the independent oracle for the shooting threshold (its initial data sits
//! exactly on the global-existence boundary) and for the stability
//! certificates at `n = 2m`.

use crate::error::{Error, Result};
use crate::jet::{factorial, Jet};
use crate::quad;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExplicitSolution {
    m: usize,
    lambda: f64,
    /// `u(0) = 2m log(2 ((2m)!)^{1/2m} λ)`
    c: f64,
}

impl ExplicitSolution {
    pub fn new(m: usize, lambda: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::domain("order m must be ≥ 1"));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain("scale λ must be positive and finite"));
        }
        let two_m = 2.0 * m as f64;
        let c = two_m * (2.0 * factorial(2 * m).powf(1.0 / two_m) * lambda).ln();
        Ok(ExplicitSolution { m, lambda, c })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The dimension in which the family solves the equation.
    pub fn dimension(&self) -> usize {
        2 * self.m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Additive constant `u(0)`.
    pub fn additive_constant(&self) -> f64 {
        self.c
    }

    /// `u(r) = c - 2m log(1 + λ² r²)`.
    pub fn eval(&self, r: f64) -> f64 {
        self.c - 2.0 * self.m as f64 * (1.0 + self.lambda * self.lambda * r * r).ln()
    }

    /// Jet of `u` at `r ≥ 0` carrying radial derivatives to `order`.
    pub fn jet(&self, r: f64, order: usize) -> Jet {
        let rj = Jet::variable(r, order);
        let one = Jet::constant(1.0, order);
        let lam2 = self.lambda * self.lambda;
        one.add(&rj.mul(&rj).scale(lam2))
            .ln()
            .scale(-2.0 * self.m as f64)
            .add(&Jet::constant(self.c, order))
    }

    /// Initial iterated Laplacians `(α_0, β_1..β_{m-1})` of the family:
    /// `β_k = a_k ∏_{j=1}^k 2j(n+2j-2)` with `a_k = 2m(-1)^k λ^{2k}/k`,
    /// from the even Taylor series of `u` at the origin.
    pub fn initial_values(&self) -> Result<(f64, Vec<f64>)> {
        if self.m < 2 {
            return Err(Error::domain("initial β values need m ≥ 2"));
        }
        let n = self.dimension() as f64;
        let two_m = 2.0 * self.m as f64;
        let mut beta = Vec::with_capacity(self.m - 1);
        for k in 1..self.m {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let a_k = two_m * sign * self.lambda.powi(2 * k as i32) / k as f64;
            let mut factor = 1.0;
            for j in 1..=k {
                factor *= 2.0 * j as f64 * (n + 2.0 * j as f64 - 2.0);
            }
            beta.push(a_k * factor);
        }
        Ok((self.c, beta))
    }

    /// Cauchy data for [`crate::radial_ode::integrate`] in dimension `2m`.
    pub fn initial_conditions(&self) -> Result<crate::radial_ode::InitialConditions> {
        let (alpha0, beta) = self.initial_values()?;
        let mut vals = vec![alpha0];
        vals.extend(beta);
        crate::radial_ode::InitialConditions::new(vals)
    }

    /// Max relative residual of `(-Δ)^m u - e^u` over the sample radii.
    pub fn residual(&self, r_samples: &[f64]) -> Result<f64> {
        if r_samples.iter().any(|&r| r <= 0.0) {
            return Err(Error::domain("residual samples must be positive radii"));
        }
        let n = self.dimension();
        let m = self.m;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let mut worst: f64 = 0.0;
        for &r in r_samples {
            let mut jet = self.jet(r, 2 * m);
            for _ in 0..m {
                jet = jet.radial_laplacian(n, r);
            }
            let eu = self.eval(r).exp();
            let res = (sign * jet.value() - eu).abs() / eu;
            worst = worst.max(res);
        }
        Ok(worst)
    }

    /// `∫_{ℝ^{2m}} e^u dx` by radial quadrature; finite for the family.
    pub fn exp_integral(&self) -> f64 {
        let n = self.dimension();
        let omega = quad::sphere_surface(n);
        let nf = n as f64;
        // e^u ~ r^{-4m}: the tail beyond the quadrature horizon is negligible
        let inner = quad::integrate_linear_panels(0.0, 1.0, 8, |r| {
            self.eval(r).exp() * r.powf(nf - 1.0)
        });
        let outer = quad::integrate_log_panels(1.0, 1e8, 240, |r| {
            self.eval(r).exp() * r.powf(nf - 1.0)
        });
        omega * (inner + outer)
    }
}
