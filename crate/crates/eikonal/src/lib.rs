//! Eikonal phase solvers for quadratic external potentials.
//!
//! The phase φ_eik(t,x) = ᵗxM(t)x + α(t)·x + β(t) stays a polynomial of
//! degree at most two for all time, so the PDE reduces to matrix ODEs: a
//! Riccati equation for M (optionally with the trace-dependent ghost
//! forcing), transport for α, and quadrature for β. This crate integrates
//! those systems, derives the characteristic flow x(t,y) = Φ(t)y + shift(t),
//! and evaluates the phase and its gradient at arbitrary points.
//!
//! Caustic continuation past focusing is out of scope: blow-up of M and
//! vanishing of det Φ are detected and reported, not continued through.

mod error;
mod linalg;
mod phase;
mod potential;
mod solve;

pub use error::{EikonalError, Result};
pub use linalg::{Matrix, Vector};
pub use phase::{eval_phase, eval_phase_gradient, write_phase_csv, QuadraticPhase};
pub use potential::QuadraticPotentialSpec;
pub use solve::{
    fundamental_matrix, solve_linear_eikonal, solve_quadratic_eikonal, BLOW_UP_THRESHOLD,
    FOCUS_DET_THRESHOLD, STEP_TOLERANCE,
};
