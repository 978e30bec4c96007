//! Finite-difference weights on arbitrary stencils (Fornberg's algorithm).

/// Weights for the `m`-th derivative at `x0` from samples at `nodes`.
///
/// Classic Fornberg recursion; exact for polynomials of degree
/// `nodes.len() - 1`, so a symmetric stencil of `2⌈m/2⌉ + 3` points gives at
/// least fourth-order accuracy for the `m`-th derivative.
pub fn fd_weights(x0: f64, nodes: &[f64], m: usize) -> Vec<f64> {
    let n = nodes.len();
    assert!(n > m, "stencil too small for derivative order");
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Centered uniform-grid weights for derivative order `m` with at least
/// fourth-order accuracy. Returns `(half_width, weights)`; the stencil is
/// `x0 + j h` for `j in -half_width..=half_width`.
pub fn central_weights_order4(m: usize, h: f64) -> (usize, Vec<f64>) {
    let half = m.div_ceil(2) + 1;
    let nodes: Vec<f64> = (-(half as i64)..=half as i64).map(|j| j as f64 * h).collect();
    (half, fd_weights(0.0, &nodes, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn recovers_classic_five_point_second_derivative() {
        let h = 0.1;
        let nodes: Vec<f64> = (-2..=2).map(|j| j as f64 * h).collect();
        let w = fd_weights(0.0, &nodes, 2);
        let expect = [-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0];
        for (wi, ei) in w.iter().zip(expect) {
            assert_relative_eq!(*wi, ei / (h * h), max_relative = 1e-12);
        }
    }

    #[test]
    fn high_order_derivative_of_exponential() {
        // d^4/ds^4 e^{2s} at 0 = 16; truncation O(h⁴), roundoff O(ε/h⁴)
        let h = 0.05;
        let (half, w) = central_weights_order4(4, h);
        let mut acc = 0.0;
        for (idx, j) in (-(half as i64)..=half as i64).enumerate() {
            acc += w[idx] * (2.0 * j as f64 * h).exp();
        }
        assert_relative_eq!(acc, 16.0, max_relative = 1e-4);

        // sixth derivative: roundoff amplification ε/h⁶ dominates at small h
        let (half, w) = central_weights_order4(6, h);
        let mut acc = 0.0;
        for (idx, j) in (-(half as i64)..=half as i64).enumerate() {
            acc += w[idx] * (2.0 * j as f64 * h).exp();
        }
        assert_relative_eq!(acc, 64.0, max_relative = 1e-3);
    }
}
