//! Numerical laboratory for radial entire solutions of the polyharmonic
//! Gelfand equation `(-Δ)^m u = e^u` in `ℝ^n`.
//!
//! The crate integrates the singular radial Cauchy problem as a first-order
//! system in the iterated Laplacians `w_k = Δ^k u`, certifies finite-radius
//! blow-up, locates the global-existence threshold `Φ_α` by shooting on the
//! last initial datum, estimates asymptotic regimes, evaluates the
//! Hardy–Rellich constants and stability quadratic forms, and classifies the
//! spectrum of the linearized Emden equation.
//!
//! Modules map one-to-one onto the moving parts:
//!
//! * [`radial_ode`] — the Cauchy problem, singular start and adaptive
//!   integration with blow-up event detection;
//! * [`shooting`] — trajectory classification, the threshold `Φ_α` by
//!   bisection, and the comparison principle check;
//! * [`asymptotics`] — tail regime estimation and the Emden transformation;
//! * [`constants`] — closed-form Hardy–Rellich constants plus quadrature
//!   verification of the inequalities on radial bumps;
//! * [`spectrum`] — the characteristic polynomials `Q_m`, `P_m` and the
//!   critical dimension `n*`;
//! * [`stability`] — stability quadratic forms, instability witnesses and
//!   stability-outside-a-compact certificates;
//! * [`explicit`] — the closed-form solution family in the conformal
//!   dimension `n = 2m`, used as an independent oracle;
//! * [`cli`] — the `gelfand` command-line entry point.
//!
//! Everything is pure and `f64`-based; trajectories are immutable once
//! produced and all queries are safe to evaluate concurrently.

pub mod asymptotics;
pub mod bump;
pub mod cli;
pub mod constants;
pub mod error;
pub mod explicit;
pub mod fd;
pub mod interp;
pub mod jet;
pub mod jsonfmt;
pub mod quad;
pub mod radial_ode;
pub mod shooting;
pub mod spectrum;
pub mod stability;

pub use error::Error;
pub use radial_ode::{InitialConditions, IntegratorConfig, ProblemSpec, RadialState, Trajectory};
pub use shooting::Outcome;
