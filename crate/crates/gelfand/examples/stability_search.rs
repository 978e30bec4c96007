//! Evaluate the stability quadratic form along the cutoff families and find
//! instability witnesses below the conformal dimension; then certify
//! stability outside a compact set with the comparison weight V(r).
//!
//! Run with `cargo run --release --example stability_search`.

use gelfand::explicit::ExplicitSolution;
use gelfand::radial_ode::{integrate, InitialConditions, IntegratorConfig, ProblemSpec};
use gelfand::stability::{instability_search, socs_certificate, CutoffFamily};

fn main() {
    let config = IntegratorConfig::default();

    // n < 2m: the scaled family η(x/R) kills the derivative term like R^{n-2m}
    let problem = ProblemSpec::new(2, 3).unwrap();
    let ic = InitialConditions::new(vec![0.0, -5.0]).unwrap();
    let t = integrate(&problem, &ic, &config).unwrap();
    let rep = instability_search(&t, CutoffFamily::ScaledCutoff).unwrap();
    println!("m=2 n=3, scaled family:");
    for (r, v) in rep.form_values.iter().step_by(4) {
        println!("  R = {r:8.2}  form = {v:12.4e}");
    }
    println!("  witness: {:?}\n", rep.witness);

    // n = 2m: the dyadic averages do the same job at the conformal dimension
    let sol = ExplicitSolution::new(2, 1.0).unwrap();
    let problem = ProblemSpec::new(2, 4).unwrap();
    let t = integrate(&problem, &sol.initial_conditions().unwrap(), &config).unwrap();
    let rep = instability_search(&t, CutoffFamily::DyadicSum).unwrap();
    println!("m=2 n=4 (explicit solution), dyadic family:");
    for (k, v) in &rep.form_values {
        println!("  k = {k:2.0}  form = {v:12.4e}");
    }
    println!("  witness: {:?}\n", rep.witness);

    // and yet the same solutions are stable outside a compact set
    let cert = socs_certificate(&t).unwrap();
    println!("outside-compact certificate for the explicit solution:");
    println!("  verdict {:?}, radius {:?}", cert.verdict, cert.certified_radius);
    for note in &cert.notes {
        println!("  note: {note}");
    }
}
