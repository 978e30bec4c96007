//! Transform a supercritical trajectory into Emden variables
//! w(s) = u(e^s) + 2ms - log λ_S and verify the autonomous equation
//! Q_m(∂_s) w = λ_S (e^w - 1) by finite differences.
//!
//! Run with `cargo run --release --example emden_autonomous`.

use gelfand::asymptotics::{emden_residual, emden_transform, EmdenSamples};
use gelfand::constants::lambda_s;
use gelfand::radial_ode::{integrate, InitialConditions, IntegratorConfig, ProblemSpec};

fn main() {
    // an interior trajectory in the supercritical range n > 2m
    let problem = ProblemSpec::new(1, 12).unwrap();
    let ic = InitialConditions::new(vec![0.0]).unwrap();
    let config = IntegratorConfig::default().with_r_max(1e3);
    let t = integrate(&problem, &ic, &config).unwrap();

    let em = emden_transform(&t).unwrap();
    println!("λ_S(1, 12) = {}", em.lambda_s);
    let uniform = em.resample_uniform(0.0, 0.01, 401).unwrap();
    let (residual, h) = emden_residual(&uniform, &problem).unwrap();
    println!("autonomous-equation residual on s ∈ [0, 4], h = {h}: {residual:.3e}");

    // a linearized mode along a real root of P_1: the residual collapses to
    // the ε² nonlinearity plus finite-difference truncation
    let root = -5.0 + 5f64.sqrt();
    let eps = 1e-6;
    let pts: Vec<(f64, f64)> =
        (0..401).map(|i| (i as f64 * 0.01, eps * (root * i as f64 * 0.01).exp())).collect();
    let em = EmdenSamples::new(lambda_s(1, 12), pts).unwrap();
    let (residual, _) = emden_residual(&em, &problem).unwrap();
    println!("ε-mode residual along the root t₀ = {root:.6}: {residual:.3e} (ε = {eps:.0e})");
}
