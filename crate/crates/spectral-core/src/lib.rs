//! Pseudo-spectral foundation layer: periodic grids, FFT-backed fields,
//! Fourier multiplier operators, spectral calculus, Poisson inversion, and
//! the discrete norms the solver stack is measured in.
//!
//! Everything here is a pure function of its inputs; fields are plain values
//! that can be sent across threads, and the transform machinery only shares
//! immutable plans. Conventions worth knowing up front:
//!
//! * coefficients carry the 1/N normalization, so c₀ is the mean and
//!   f(x) = Σ cₘ e^{ikₘ·x} holds pointwise;
//! * the quadrature weight is the cell volume (L/n)^dim, making the discrete
//!   L² norm agree with its Parseval form to round-off;
//! * first-derivative symbols vanish at the Nyquist index, and the Laplacian
//!   is divergence∘gradient, so Poisson inversion and differentiation are
//!   mutually consistent;
//! * pointwise products in solver right-hand sides use the 2/3 dealiasing
//!   rule ([`ProductRule::Dealiased`]); raw products stay available for
//!   diagnostics and splitting flows.

mod calculus;
mod dump;
mod error;
mod fft;
mod field;
mod grid;
mod multiplier;
mod norms;
mod poisson;
mod suite;

pub use calculus::{
    band_project, curl_norm, dealias, dealias_cap, dealias_vector, divergence, gradient, laplacian,
    partial_derivative, product, ProductRule,
};
pub use dump::{read_field_dump, write_field_dump};
pub use error::{Result, SpectralError};
pub use fft::{forward, inverse};
pub use field::{SpectralField, VectorField};
pub use grid::Grid;
pub use multiplier::{apply_multiplier, apply_to_coeffs, cutoff_profile, MultiplierSymbol};
pub use norms::{
    inner_l2, mass, norm_hs, norm_hs_vec, norm_l2, norm_l2_vec, norm_linf, norm_linf_vec,
    norm_zhidkov, norm_zhidkov_vec,
};
pub use poisson::{solve_poisson, PoissonSolution};
pub use suite::{check_inequality_suite, InequalityReport};

/// Complex sample type used throughout the workspace.
pub type C64 = num_complex::Complex64;
