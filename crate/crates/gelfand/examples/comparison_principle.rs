//! Componentwise ordering of solutions from ordered initial data: u, u',
//! and every iterated Laplacian stay ordered on the common interval of
//! existence.
//!
//! Run with `cargo run --release --example comparison_principle`.

use gelfand::radial_ode::{InitialConditions, IntegratorConfig, ProblemSpec};
use gelfand::shooting::comparison_check;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() {
    let config = IntegratorConfig::default();
    let mut rng = StdRng::seed_from_u64(11);

    for (m, n) in [(2usize, 3usize), (2, 5), (4, 9)] {
        let problem = ProblemSpec::new(m, n).unwrap();
        let mut checked = 0;
        for _ in 0..25 {
            let lower: Vec<f64> = (0..m).map(|_| rng.gen_range(-3.0..1.0)).collect();
            let upper: Vec<f64> = lower.iter().map(|v| v + rng.gen_range(0.0..1.0)).collect();
            let ic_v = InitialConditions::new(lower).unwrap();
            let ic_u = InitialConditions::new(upper).unwrap();
            let rep = comparison_check(&problem, &ic_u, &ic_v, 100.0, &config).unwrap();
            assert!(rep.holds, "violation: {:?}", rep.first_violation);
            checked += rep.shared_samples;
        }
        println!("(m={m}, n={n}): 25 ordered pairs, {checked} shared samples, ordering holds");
    }
}
