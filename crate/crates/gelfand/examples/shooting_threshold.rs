//! Locate the global-existence threshold Φ_α by bisection on the last
//! initial datum, and check it against the explicit-solution oracle in the
//! conformal dimension n = 2m, where the family's initial data sits exactly
//! on the boundary of the global set.
//!
//! Run with `cargo run --release --example shooting_threshold`.

use gelfand::explicit::ExplicitSolution;
use gelfand::radial_ode::{IntegratorConfig, ProblemSpec};
use gelfand::shooting::phi_alpha;

fn main() {
    let config = IntegratorConfig::default();

    // m = 2, n = 5, α = 0: the biharmonic threshold
    let problem = ProblemSpec::new(2, 5).unwrap();
    let res = phi_alpha(&problem, 0.0, &[], 1e-6, &config).unwrap();
    println!("m=2 n=5 α=0:");
    println!("  Φ_α ≈ {:.9}", res.phi_estimate);
    println!(
        "  bracket [{:.9}, {:.9}] after {} integrations",
        res.bracket.0, res.bracket.1, res.evaluations
    );

    // oracle: the explicit solution at n = 2m has β_1 = -32 exactly (λ = 1)
    let sol = ExplicitSolution::new(2, 1.0).unwrap();
    let (alpha0, beta) = sol.initial_values().unwrap();
    let problem = ProblemSpec::new(2, 4).unwrap();
    let res = phi_alpha(&problem, alpha0, &[], 1e-6, &config).unwrap();
    println!("\nm=2 n=4, α = u(0) of the explicit solution = {alpha0:.9}:");
    println!("  exact boundary value β_1 = {:.1}", beta[0]);
    println!("  shot Φ_α            = {:.9}", res.phi_estimate);
    println!("  deviation             {:.2e}", (res.phi_estimate - beta[0]).abs());
}
