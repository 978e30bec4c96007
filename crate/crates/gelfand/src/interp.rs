//! Monotone cubic (Fritsch–Carlson) interpolation on a strictly increasing
//! abscissa. Used to resample trajectories and Emden samples onto uniform
//! grids without introducing spurious oscillations.

#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    slope: Vec<f64>,
}

impl MonotoneCubic {
    /// Build the interpolant; `x` must be strictly increasing with ≥ 2 points.
    pub fn new(x: &[f64], y: &[f64]) -> Self {
        assert!(x.len() == y.len() && x.len() >= 2);
        assert!(x.windows(2).all(|w| w[1] > w[0]), "abscissa must increase");
        let n = x.len();
        let mut d = vec![0.0; n - 1];
        for i in 0..n - 1 {
            d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        }
        let mut slope = vec![0.0; n];
        slope[0] = d[0];
        slope[n - 1] = d[n - 2];
        for i in 1..n - 1 {
            slope[i] = if d[i - 1] * d[i] <= 0.0 {
                0.0
            } else {
                // harmonic mean weighted by interval lengths (Fritsch–Butland)
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                let w1 = 2.0 * h1 + h0;
                let w2 = h1 + 2.0 * h0;
                (w1 + w2) / (w1 / d[i - 1] + w2 / d[i])
            };
        }
        MonotoneCubic {
            x: x.to_vec(),
            y: y.to_vec(),
            slope,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }

    /// Evaluate at `xq`; clamps outside the domain.
    pub fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        if xq <= self.x[0] {
            return self.y[0];
        }
        if xq >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let i = match self.x.partition_point(|&v| v <= xq) {
            0 => 0,
            p => p - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let t = (xq - self.x[i]) / h;
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let (m0, m1) = (self.slope[i] * h, self.slope[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + m0 * (t3 - 2.0 * t2 + t)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + m1 * (t3 - t2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reproduces_linear_data_exactly() {
        let x: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v - 1.0).collect();
        let c = MonotoneCubic::new(&x, &y);
        assert_relative_eq!(c.eval(2.45), 2.0 * 2.45 - 1.0, max_relative = 1e-14);
    }

    #[test]
    fn stays_monotone_on_monotone_data() {
        let x: Vec<f64> = (0..40).map(|i| i as f64 * 0.1).collect();
        let y: Vec<f64> = x.iter().map(|v| (-v * v).exp()).collect();
        let c = MonotoneCubic::new(&x, &y);
        let mut prev = c.eval(0.0);
        for i in 1..400 {
            let v = c.eval(i as f64 * 0.01);
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn accurate_on_smooth_data() {
        let x: Vec<f64> = (0..200).map(|i| i as f64 * 0.05).collect();
        let y: Vec<f64> = x.iter().map(|v| v.sin()).collect();
        let c = MonotoneCubic::new(&x, &y);
        for q in [0.31, 2.7, 7.13] {
            assert_relative_eq!(c.eval(q), q.sin(), epsilon = 5e-5);
        }
    }
}
