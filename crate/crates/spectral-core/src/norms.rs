//! Discrete norms: L², Hˢ, L∞, and the Zhidkov-type norm
//! ‖f‖ = ‖f‖_{L∞} + ‖∇f‖_{H^{s−1}}.
//!
//! All quadrature is the exact trapezoidal rule of the periodic grid, i.e.
//! cell-volume weighting in physical space and Parseval weighting in
//! coefficient space; the two agree to round-off. The grid max is used for
//! L∞, a lower bound of the continuum sup.

use crate::calculus::partial_derivative;
use crate::error::{Result, SpectralError};
use crate::field::{SpectralField, VectorField};
use num_complex::Complex64;

/// ‖f‖_{L²} = ((L/n)^dim Σ|f(xⱼ)|²)^{1/2}, equal to the Parseval value
/// (L^dim Σ|cₘ|²)^{1/2}.
pub fn norm_l2(f: &SpectralField) -> f64 {
    let sum: f64 = f.values().iter().map(|v| v.norm_sqr()).sum();
    (f.grid().cell_volume() * sum).sqrt()
}

/// Hˢ weight sum without the admissibility check; `s` may be negative here
/// because norm_zhidkov needs interior order s − 1.
fn hs_unchecked(f: &SpectralField, s: f64) -> f64 {
    let grid = f.grid();
    let k = grid.wavenumbers();
    let coeffs = f.to_coeffs();
    let mut sum = 0.0;
    grid.for_each_flat(|flat, idx| {
        let k2: f64 = (0..grid.dim()).map(|a| k[idx[a]] * k[idx[a]]).sum();
        sum += (1.0 + k2).powf(s) * coeffs[flat].norm_sqr();
    });
    (grid.volume() * sum).sqrt()
}

/// ‖f‖_{Hˢ} = ‖(1+|ξ|²)^{s/2} f̂‖_{L²}.
pub fn norm_hs(f: &SpectralField, s: f64) -> Result<f64> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(SpectralError::Parameter(format!("norm_hs order must be finite and >= 0, got {s}")));
    }
    Ok(hs_unchecked(f, s))
}

/// Grid maximum of |f|.
pub fn norm_linf(f: &SpectralField) -> f64 {
    f.values().iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// ‖f‖_{L∞} + ‖∇f‖_{H^{s−1}}, defined for s > dim/2.
pub fn norm_zhidkov(f: &SpectralField, s: f64) -> Result<f64> {
    let dim = f.grid().dim() as f64;
    if !(s.is_finite() && s > dim / 2.0) {
        return Err(SpectralError::Parameter(format!(
            "norm_zhidkov order must exceed dim/2 = {}, got {s}",
            dim / 2.0
        )));
    }
    let mut grad_sq = 0.0;
    for axis in 0..f.grid().dim() {
        let d = hs_unchecked(&partial_derivative(f, axis), s - 1.0);
        grad_sq += d * d;
    }
    Ok(norm_linf(f) + grad_sq.sqrt())
}

/// Componentwise L² norm of a vector field, components combined in
/// Euclidean norm.
pub fn norm_l2_vec(v: &VectorField) -> f64 {
    let sum: f64 = v.components().iter().map(|c| norm_l2(c).powi(2)).sum();
    sum.sqrt()
}

/// Grid maximum of the pointwise Euclidean magnitude.
pub fn norm_linf_vec(v: &VectorField) -> f64 {
    let mut worst: f64 = 0.0;
    for flat in 0..v.grid().len() {
        let mag: f64 = v.components().iter().map(|c| c.values()[flat].norm_sqr()).sum();
        worst = worst.max(mag);
    }
    worst.sqrt()
}

/// Componentwise Hˢ norm of a vector field, Euclidean combination.
pub fn norm_hs_vec(v: &VectorField, s: f64) -> Result<f64> {
    let mut sum = 0.0;
    for c in v.components() {
        let n = norm_hs(c, s)?;
        sum += n * n;
    }
    Ok(sum.sqrt())
}

/// Zhidkov norm of a vector field: sup of the Euclidean magnitude plus the
/// H^{s−1} norm of the full gradient tensor.
pub fn norm_zhidkov_vec(v: &VectorField, s: f64) -> Result<f64> {
    let dim = v.grid().dim() as f64;
    if !(s.is_finite() && s > dim / 2.0) {
        return Err(SpectralError::Parameter(format!(
            "norm_zhidkov order must exceed dim/2 = {}, got {s}",
            dim / 2.0
        )));
    }
    let mut grad_sq = 0.0;
    for c in v.components() {
        for axis in 0..v.grid().dim() {
            let d = hs_unchecked(&partial_derivative(c, axis), s - 1.0);
            grad_sq += d * d;
        }
    }
    Ok(norm_linf_vec(v) + grad_sq.sqrt())
}

/// Mass ∫|f|² dx, the squared L² norm kept in one place so conservation
/// checks agree bit-for-bit about the quadrature.
pub fn mass(f: &SpectralField) -> f64 {
    let sum: f64 = f.values().iter().map(|v| v.norm_sqr()).sum();
    f.grid().cell_volume() * sum
}

/// L² inner product ⟨f, g⟩ = (L/n)^dim Σ conj(f)·g.
pub fn inner_l2(f: &SpectralField, g: &SpectralField) -> Complex64 {
    debug_assert_eq!(f.grid(), g.grid());
    let sum: Complex64 = f.values().iter().zip(g.values()).map(|(a, b)| a.conj() * b).sum();
    sum * f.grid().cell_volume()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use approx::assert_abs_diff_eq;

    fn grid3() -> Grid {
        Grid::new(3, 16, 2.0 * std::f64::consts::PI).unwrap()
    }

    #[test]
    fn parseval_agreement() {
        let f = SpectralField::from_fn(grid3(), |x| {
            Complex64::new((x[0] + x[1]).sin(), (2.0 * x[2]).cos())
        });
        let phys = norm_l2(&f);
        let coeffs = f.to_coeffs();
        let fourier = (f.grid().volume() * coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt();
        assert!((phys - fourier).abs() <= 1e-12 * phys);
    }

    #[test]
    fn single_mode_hs_closed_form() {
        // f = e^{ix₁} on [0,2π)³: ‖f‖_{Hˢ} = (1+1)^{s/2}·(2π)^{3/2}.
        let f = SpectralField::from_fn(grid3(), |x| Complex64::new(x[0].cos(), x[0].sin()));
        let vol_half = (2.0 * std::f64::consts::PI).powi(3).sqrt();
        assert_abs_diff_eq!(norm_hs(&f, 2.0).unwrap(), 2.0 * vol_half, epsilon = 1e-10);
        assert_abs_diff_eq!(norm_l2(&f), vol_half, epsilon = 1e-10);
        assert_abs_diff_eq!(norm_linf(&f), 1.0, epsilon = 1e-12);
        // Zhidkov at s = 2: 1 + ‖∇f‖_{H¹} = 1 + √2·(2π)^{3/2}.
        assert_abs_diff_eq!(
            norm_zhidkov(&f, 2.0).unwrap(),
            1.0 + 2.0f64.sqrt() * vol_half,
            epsilon = 1e-10
        );
    }

    #[test]
    fn constant_field_zhidkov_is_its_magnitude() {
        let f = SpectralField::from_fn(grid3(), |_| Complex64::new(-2.5, 0.0));
        for s in [1.6, 2.0, 3.0] {
            assert_abs_diff_eq!(norm_zhidkov(&f, s).unwrap(), 2.5, epsilon = 1e-11);
        }
    }

    #[test]
    fn zhidkov_rejects_low_order() {
        let f = SpectralField::zeros(grid3());
        assert!(norm_zhidkov(&f, 1.5).is_err());
        assert!(norm_zhidkov(&f, 1.500001).is_ok());
        assert!(norm_hs(&f, -0.1).is_err());
    }

    #[test]
    fn sin_linf_is_exact_on_aligned_grids() {
        let grid = Grid::new(1, 16, 2.0 * std::f64::consts::PI).unwrap();
        let f = SpectralField::from_fn(grid, |x| Complex64::new(x[0].sin(), 0.0));
        assert_abs_diff_eq!(norm_linf(&f), 1.0, epsilon = 1e-15);
    }
}
