//! Truncated Taylor series ("jets") over `f64`.
//!
//! A [`Jet`] holds the Taylor coefficients `c_k = f^(k)(x0)/k!` of a function
//! at a base point, up to a fixed truncation order. Arithmetic on jets
//! propagates derivatives exactly (to roundoff), which is how the crate
//! differentiates composite radial test functions to order `2m` without a
//! symbolic algebra system: the standard power-series recurrences for
//! product, quotient, exp and log do all the work.

/// Taylor coefficients of a function at a base point, `coeff[k] = f^(k)/k!`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeff: Vec<f64>,
}

impl Jet {
    /// The constant function `c`.
    pub fn constant(c: f64, order: usize) -> Self {
        let mut coeff = vec![0.0; order + 1];
        coeff[0] = c;
        Jet { coeff }
    }

    /// The identity `x ↦ x` expanded at `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut coeff = vec![0.0; order + 1];
        coeff[0] = x0;
        if order >= 1 {
            coeff[1] = 1.0;
        }
        Jet { coeff }
    }

    pub fn from_coefficients(coeff: Vec<f64>) -> Self {
        assert!(!coeff.is_empty());
        Jet { coeff }
    }

    /// Truncation order (highest represented derivative).
    pub fn order(&self) -> usize {
        self.coeff.len() - 1
    }

    /// Function value at the base point.
    pub fn value(&self) -> f64 {
        self.coeff[0]
    }

    /// `k`-th derivative at the base point (`k! * coeff[k]`).
    pub fn derivative(&self, k: usize) -> f64 {
        if k > self.order() {
            return 0.0;
        }
        self.coeff[k] * factorial(k)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeff
    }

    /// Jet of `f'`, one order shorter.
    pub fn differentiate(&self) -> Jet {
        let n = self.order();
        assert!(n >= 1, "cannot differentiate an order-0 jet");
        let mut coeff = Vec::with_capacity(n);
        for k in 1..=n {
            coeff.push(self.coeff[k] * k as f64);
        }
        Jet { coeff }
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        let n = self.order().min(rhs.order());
        let coeff = (0..=n).map(|k| self.coeff[k] + rhs.coeff[k]).collect();
        Jet { coeff }
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        let n = self.order().min(rhs.order());
        let coeff = (0..=n).map(|k| self.coeff[k] - rhs.coeff[k]).collect();
        Jet { coeff }
    }

    pub fn scale(&self, c: f64) -> Jet {
        let coeff = self.coeff.iter().map(|x| c * x).collect();
        Jet { coeff }
    }

    /// Cauchy product, truncated to the shorter order.
    pub fn mul(&self, rhs: &Jet) -> Jet {
        let n = self.order().min(rhs.order());
        let mut coeff = vec![0.0; n + 1];
        for k in 0..=n {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.coeff[j] * rhs.coeff[k - j];
            }
            coeff[k] = acc;
        }
        Jet { coeff }
    }

    /// Quotient `self / rhs`; requires `rhs.value() != 0`.
    pub fn div(&self, rhs: &Jet) -> Jet {
        let n = self.order().min(rhs.order());
        let b0 = rhs.coeff[0];
        assert!(b0 != 0.0, "jet division by zero value");
        let mut coeff = vec![0.0; n + 1];
        for k in 0..=n {
            let mut acc = self.coeff[k];
            for j in 1..=k {
                acc -= rhs.coeff[j] * coeff[k - j];
            }
            coeff[k] = acc / b0;
        }
        Jet { coeff }
    }

    pub fn recip(&self) -> Jet {
        Jet::constant(1.0, self.order()).div(self)
    }

    /// `exp(self)` via the standard recurrence `e_k = (1/k) Σ j a_j e_{k-j}`.
    pub fn exp(&self) -> Jet {
        let n = self.order();
        let mut coeff = vec![0.0; n + 1];
        coeff[0] = self.coeff[0].exp();
        for k in 1..=n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.coeff[j] * coeff[k - j];
            }
            coeff[k] = acc / k as f64;
        }
        Jet { coeff }
    }

    /// `ln(self)`; requires `self.value() > 0`.
    pub fn ln(&self) -> Jet {
        let n = self.order();
        let a0 = self.coeff[0];
        assert!(a0 > 0.0, "jet log of non-positive value");
        let mut coeff = vec![0.0; n + 1];
        coeff[0] = a0.ln();
        for k in 1..=n {
            let mut acc = self.coeff[k] * k as f64;
            for j in 1..k {
                acc -= j as f64 * coeff[j] * self.coeff[k - j];
            }
            coeff[k] = acc / (k as f64 * a0);
        }
        Jet { coeff }
    }

    pub fn powi(&self, p: u32) -> Jet {
        let mut out = Jet::constant(1.0, self.order());
        for _ in 0..p {
            out = out.mul(self);
        }
        out
    }

    /// Radial Laplacian `Δv = v'' + (n-1)/r · v'` at a base point `r > 0`.
    /// The result is two orders shorter than the input.
    pub fn radial_laplacian(&self, dim: usize, r: f64) -> Jet {
        assert!(r > 0.0, "radial laplacian needs r > 0");
        assert!(self.order() >= 2);
        let d1 = self.differentiate();
        let d2 = d1.differentiate();
        if dim == 1 {
            return d2;
        }
        let inv_r = Jet::variable(r, self.order() - 1).recip();
        d2.add(&d1.mul(&inv_r).scale((dim - 1) as f64).truncate(self.order() - 2))
    }

    fn truncate(&self, order: usize) -> Jet {
        Jet {
            coeff: self.coeff[..=order.min(self.order())].to_vec(),
        }
    }
}

/// Exact for k ≤ 170 (overflow to `inf` beyond, far past any use here).
pub fn factorial(k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 2..=k {
        acc *= i as f64;
    }
    acc
}
