//! Cross-module property tests and CLI-level determinism checks.

use gelfand::constants;
use gelfand::jet::Jet;
use proptest::prelude::*;
use std::process::Command;

proptest! {
    // exp and ln are inverse as jet operations
    #[test]
    fn jet_exp_ln_round_trip(coeffs in prop::collection::vec(-2.0..2.0f64, 5..9)) {
        let mut c = coeffs;
        c[0] = c[0].abs() + 0.5; // ln needs a positive value
        let jet = Jet::from_coefficients(c.clone());
        let back = jet.ln().exp();
        for (a, b) in back.coefficients().iter().zip(&c) {
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()), "{a} vs {b}");
        }
    }

    // the product recurrence matches the derivative product rule
    #[test]
    fn jet_product_derivative_rule(x0 in 0.5..3.0f64) {
        let x = Jet::variable(x0, 6);
        let f = x.exp();
        let g = x.mul(&x);
        let prod = f.mul(&g);
        // (f g)' = f' g + f g'
        let expect = f.derivative(1) * g.value() + f.value() * g.derivative(1);
        prop_assert!((prod.derivative(1) - expect).abs() <= 1e-10 * expect.abs());
    }

    // μ is the minimum of |γ + j(n-2+j)|² over j ≥ 0
    #[test]
    fn mu_is_a_minimum(n in 2usize..40, alpha in -20.0..6.0f64) {
        let (mu, argmin) = constants::mu(n, alpha);
        let g = constants::gamma(n, alpha);
        for j in 0..80usize {
            let v = g + j as f64 * (n as f64 - 2.0 + j as f64);
            prop_assert!(mu <= v * v + 1e-12 * v.abs().max(1.0));
        }
        let v = g + argmin as f64 * (n as f64 - 2.0 + argmin as f64);
        prop_assert!((mu - v * v).abs() <= 1e-12 * mu.max(1.0));
    }

    // λ_S sign tracks the supercritical range
    #[test]
    fn lambda_s_sign(m in 1usize..7, n in 1usize..40) {
        let l = constants::lambda_s_exact(m, n);
        if n > 2 * m {
            prop_assert!(l > 0);
        } else if n == 2 * m {
            prop_assert!(l == 0);
        }
    }

    // scaling the bump support rescales the Hardy–Rellich integrals without
    // changing whether the inequality holds
    #[test]
    fn hr_margin_sign_is_scale_free(a in 1.6..4.0f64, width in 1.0..10.0f64, scale in 1.0..8.0f64) {
        let q = constants::HrQuery { n: 5, k: 1, alpha: 0.0, beta: 0.0 };
        let base = gelfand::bump::RadialTestFunction::annular_bump(a, a + width).unwrap();
        let scaled = gelfand::bump::RadialTestFunction::annular_bump(scale * a, scale * (a + width)).unwrap();
        let c0 = constants::verify_hr_inequality(&q, constants::HrVariant::Laplacian, &base, 0.0).unwrap();
        let c1 = constants::verify_hr_inequality(&q, constants::HrVariant::Laplacian, &scaled, 0.0).unwrap();
        prop_assert!(c0.margin >= 0.0 && c1.margin >= 0.0);
        // both sides scale by the same power of `scale` up to quadrature noise
        let lhs_ratio = c1.lhs / c0.lhs;
        let rhs_ratio = c1.rhs / c0.rhs;
        prop_assert!((lhs_ratio / rhs_ratio - 1.0).abs() < 1e-8);
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gelfand"))
}

#[test]
fn cli_json_is_byte_identical_across_runs() {
    let args = ["constants", "--n", "5", "--k", "1", "--verify", "--bumps", "5", "--seed", "42"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn cli_sweep_workers_do_not_change_results() {
    let base = [
        "sweep", "--m", "2", "--n", "4,5", "--alpha0", "0", "--beta-last=-3..0:7", "--rmax",
        "200",
    ];
    let one = bin().args(base).args(["--workers", "1"]).output().unwrap();
    let four = bin().args(base).args(["--workers", "4"]).output().unwrap();
    assert!(one.status.success() && four.status.success());
    let strip = |raw: &[u8]| {
        let v: serde_json::Value = serde_json::from_slice(raw).unwrap();
        v["results"].clone()
    };
    assert_eq!(strip(&one.stdout), strip(&four.stdout));
}

#[test]
fn cli_exit_codes() {
    // domain error: shoot with odd m
    let out = bin().args(["shoot", "--m", "3", "--n", "5", "--alpha", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // usage error: unknown flag
    let out = bin().args(["spectrum", "--junk"]).output().unwrap();
    assert_eq!(out.status.code(), Some(64));
    // success
    let out = bin().args(["spectrum", "--m", "2", "--n", "13"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cli_spectrum_scan_matches_known_transition() {
    let out = bin().args(["spectrum", "--m", "2", "--scan", "5..30"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for rep in v["scan"].as_array().unwrap() {
        let n = rep["n"].as_u64().unwrap();
        let nonreal = rep["has_nonreal"].as_bool().unwrap();
        assert_eq!(nonreal, n <= 12, "n = {n}");
    }
}

#[test]
fn cli_trajectory_files_round_trip_through_asymptotics() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("traj");
    let out = bin()
        .args(["integrate", "--m", "2", "--n", "5", "--alpha", "0,-20", "--out"])
        .arg(&stem)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = stem.with_extension("csv");
    let out = bin().args(["asymptotics", "--trajectory"]).arg(&csv).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["ell"].as_f64().unwrap() < 0.0);
    assert_eq!(v["regime"]["PowerGrowthDown"].as_u64(), Some(2));
}
