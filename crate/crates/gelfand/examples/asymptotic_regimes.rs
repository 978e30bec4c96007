//! Read the tail regime of global trajectories: interior data settles into
//! the power profile u ~ c·r^{2m-2} with c = ℓ/(2^{m-1}(m-1)! ∏(n+2l-2)),
//! while boundary data decays only logarithmically.
//!
//! Run with `cargo run --release --example asymptotic_regimes`.

use gelfand::asymptotics::{analyze, estimate_ell, fit_leading_coefficient, log_slope};
use gelfand::radial_ode::{integrate, InitialConditions, IntegratorConfig, ProblemSpec};
use gelfand::shooting::phi_alpha;

fn main() {
    let problem = ProblemSpec::new(2, 5).unwrap();
    let config = IntegratorConfig::default();

    let phi = phi_alpha(&problem, 0.0, &[], 1e-6, &config).unwrap();
    println!("Φ_0(m=2, n=5) ≈ {:.9}\n", phi.phi_estimate);

    // interior: β well below the threshold
    let ic = InitialConditions::new(vec![0.0, phi.phi_estimate - 5.0]).unwrap();
    let t = integrate(&problem, &ic, &config).unwrap();
    let (ell, unc) = estimate_ell(&t).unwrap();
    let fitted = fit_leading_coefficient(&t, 2).unwrap();
    println!("interior (β = Φ - 5):");
    println!("  ℓ = {ell:.9} ± {unc:.1e}");
    println!("  fitted u/r² coefficient  {fitted:.9e}");
    println!("  predicted ℓ/(2n)         {:.9e}", ell / 10.0);
    println!("  regime: {:?}\n", analyze(&t).unwrap().regime);

    // boundary: the certified-global bracket endpoint
    let ic = InitialConditions::new(vec![0.0, phi.bracket.0]).unwrap();
    let t = integrate(&problem, &ic, &config).unwrap();
    let q_max = t
        .samples
        .iter()
        .map(|s| s.w[0] + 4.0 * s.r.ln())
        .fold(f64::NEG_INFINITY, f64::max);
    println!("boundary side (β = Φ - {:.1e}):", phi.phi_estimate - phi.bracket.0);
    println!("  sup of u + 2m log r over the range: {q_max:.4} (bounded above)");
    println!("  tail log-slope -du/d log r ≈ {:.3}", log_slope(&t).unwrap());
}
