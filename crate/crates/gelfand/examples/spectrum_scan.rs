//! Scan the linearization polynomial P_m = Q_m - λ_S across dimensions:
//! where its roots leave the real axis, oscillation around the singular
//! solution switches on. Also computes the critical dimension n* at which
//! λ_S drops below the Hardy–Rellich constant A_{n,m/2}.
//!
//! Run with `cargo run --release --example spectrum_scan`.

use gelfand::spectrum::{n_star, pm_roots, stability_threshold_m12, DEFAULT_REALNESS_TOL};

fn main() {
    for m in [1usize, 2] {
        println!("m = {m}: nonreal roots of P_{m} per dimension");
        let mut transition = None;
        for n in (2 * m + 1)..=30 {
            let rep = pm_roots(m, n, DEFAULT_REALNESS_TOL).unwrap();
            if !rep.has_nonreal && transition.is_none() {
                transition = Some(n);
            }
            if n <= 2 * m + 12 {
                let marks: Vec<String> = rep
                    .roots
                    .iter()
                    .map(|(re, im)| {
                        if im.abs() > 1e-8 {
                            format!("{re:.2}{im:+.2}i")
                        } else {
                            format!("{re:.2}")
                        }
                    })
                    .collect();
                println!("  n={n:2}  nonreal={:5}  roots: {}", rep.has_nonreal, marks.join(", "));
            }
        }
        println!("  → all roots real from n = {}\n", transition.unwrap());
    }

    println!("known thresholds: m=1 → n ≥ {}, m=2 → n ≥ {}",
        stability_threshold_m12(1).unwrap(),
        stability_threshold_m12(2).unwrap());

    for m in [2usize, 4, 6] {
        let ns = n_star(m).unwrap();
        let rep = pm_roots(m, ns, DEFAULT_REALNESS_TOL).unwrap();
        println!(
            "m={m}: n* = {ns}; at n = n* the roots are {}",
            if rep.has_nonreal { "still partly nonreal" } else { "all real" }
        );
    }
}
