//! Integrate the radial Cauchy problem for a few initial data and classify
//! each trajectory: global to the horizon, certified blow-up, or overflow.
//!
//! Run with `cargo run --release --example integrate_and_classify`.

use gelfand::radial_ode::{integrate, InitialConditions, IntegratorConfig, ProblemSpec};
use gelfand::shooting::classify;

fn main() {
    let config = IntegratorConfig::default();

    let cases = [
        (2usize, 5usize, vec![0.0, 0.0], "flux starts at zero: immediate blow-up certificate"),
        (2, 5, vec![0.0, -100.0], "deep interior of the global set"),
        (2, 2, vec![0.0, -1.0], "dimension 2: nothing is global"),
        (3, 5, vec![0.0, 1.0, 0.0], "odd order: always global"),
    ];

    for (m, n, alpha, label) in cases {
        let problem = ProblemSpec::new(m, n).unwrap();
        let ic = InitialConditions::new(alpha.clone()).unwrap();
        let trajectory = integrate(&problem, &ic, &config).unwrap();
        let outcome = classify(&trajectory);
        println!("m={m} n={n} α={alpha:?}  ({label})");
        println!(
            "  {} samples, terminal {:?}",
            trajectory.samples.len(),
            trajectory.terminal_event
        );
        println!("  outcome: {outcome:?}\n");
    }
}
