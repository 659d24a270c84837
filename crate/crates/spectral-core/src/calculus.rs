//! Spectral differentiation, dealiasing, and product rules.
//!
//! First derivatives use the symmetric-range wavenumbers with the Nyquist
//! mode zeroed (see [`Grid::deriv_wavenumber`]); the Laplacian is defined as
//! the exact composition divergence∘gradient, so that identity holds for
//! every discrete field and the Poisson inverse below it is consistent.

use crate::error::Result;
use crate::fft;
use crate::field::{SpectralField, VectorField};
use crate::grid::Grid;
use crate::norms::norm_l2;
use num_complex::Complex64;

/// How pointwise products treat aliasing.
///
/// `Dealiased` truncates the product to the 2/3 band; together with
/// band-limited inputs this reproduces the padded evaluation exactly and is
/// the rule every solver right-hand side uses. `Raw` is the plain sample
/// product, kept for diagnostics that must not touch the spectrum (and for
/// the splitting flow, where truncation would leak mass).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductRule {
    Dealiased,
    Raw,
}

/// ∂f/∂x_axis by diagonal multiplication with i·k_axis.
pub fn partial_derivative(f: &SpectralField, axis: usize) -> SpectralField {
    let grid = *f.grid();
    assert!(axis < grid.dim(), "axis {axis} out of range for dim {}", grid.dim());
    let kd = grid.deriv_wavenumbers();
    let mut coeffs = f.to_coeffs();
    grid.for_each_flat(|flat, idx| {
        coeffs[flat] *= Complex64::new(0.0, kd[idx[axis]]);
    });
    fft::inverse(&grid, &mut coeffs);
    SpectralField::from_values(grid, coeffs).expect("length preserved")
}

/// ∇f as a vector field, one transform per component.
pub fn gradient(f: &SpectralField) -> VectorField {
    let grid = *f.grid();
    let kd = grid.deriv_wavenumbers();
    let base = f.to_coeffs();
    let components = (0..grid.dim())
        .map(|axis| {
            let mut c = base.clone();
            grid.for_each_flat(|flat, idx| {
                c[flat] *= Complex64::new(0.0, kd[idx[axis]]);
            });
            fft::inverse(&grid, &mut c);
            SpectralField::from_values(grid, c).expect("length preserved")
        })
        .collect();
    VectorField::from_components(components).expect("component count matches dim")
}

/// ∇·v, accumulated in coefficient space with a single inverse transform.
pub fn divergence(v: &VectorField) -> SpectralField {
    let grid = *v.grid();
    let kd = grid.deriv_wavenumbers();
    let mut acc = vec![Complex64::new(0.0, 0.0); grid.len()];
    for axis in 0..grid.dim() {
        let c = v.component(axis).to_coeffs();
        grid.for_each_flat(|flat, idx| {
            acc[flat] += Complex64::new(0.0, kd[idx[axis]]) * c[flat];
        });
    }
    fft::inverse(&grid, &mut acc);
    SpectralField::from_values(grid, acc).expect("length preserved")
}

/// Δf = ∇·∇f, realized as one multiplier −Σ k²_axis in the derivative
/// wavenumber convention.
pub fn laplacian(f: &SpectralField) -> SpectralField {
    let grid = *f.grid();
    let kd = grid.deriv_wavenumbers();
    let mut coeffs = f.to_coeffs();
    grid.for_each_flat(|flat, idx| {
        let k2: f64 = (0..grid.dim()).map(|a| kd[idx[a]] * kd[idx[a]]).sum();
        coeffs[flat] *= -k2;
    });
    fft::inverse(&grid, &mut coeffs);
    SpectralField::from_values(grid, coeffs).expect("length preserved")
}

/// L² norm of the discrete curl: all antisymmetric pairs ∂_i v_j − ∂_j v_i.
/// Zero in one dimension, the scalar ∂₁v₂ − ∂₂v₁ in two, the usual vector in
/// three.
pub fn curl_norm(v: &VectorField) -> f64 {
    let dim = v.grid().dim();
    let mut sum_sq = 0.0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let a = partial_derivative(v.component(j), i);
            let b = partial_derivative(v.component(i), j);
            let n = norm_l2(&(&a - &b));
            sum_sq += n * n;
        }
    }
    sum_sq.sqrt()
}

/// Number of modes kept per sign by the 2/3 rule: |m| ≤ ⌊n/3⌋.
pub fn dealias_cap(grid: &Grid) -> i64 {
    (grid.points_per_axis() / 3) as i64
}

/// Projects onto the 2/3 band by zeroing |m| > ⌊n/3⌋ along every axis.
pub fn dealias(f: &SpectralField) -> SpectralField {
    band_project(f, dealias_cap(f.grid()))
}

/// Zeroes every coefficient whose axis mode exceeds `cap` in magnitude.
pub fn band_project(f: &SpectralField, cap: i64) -> SpectralField {
    let grid = *f.grid();
    let n = grid.points_per_axis();
    let keep: Vec<bool> = (0..n).map(|i| grid.signed_mode(i).abs() <= cap).collect();
    let mut coeffs = f.to_coeffs();
    grid.for_each_flat(|flat, idx| {
        let inside = (0..grid.dim()).all(|a| keep[idx[a]]);
        if !inside {
            coeffs[flat] = Complex64::new(0.0, 0.0);
        }
    });
    fft::inverse(&grid, &mut coeffs);
    SpectralField::from_values(grid, coeffs).expect("length preserved")
}

pub fn dealias_vector(v: &VectorField) -> VectorField {
    v.map_components(dealias)
}

/// Pointwise product under the given rule.
pub fn product(f: &SpectralField, g: &SpectralField, rule: ProductRule) -> Result<SpectralField> {
    let raw = f.mul_pointwise(g)?;
    Ok(match rule {
        ProductRule::Raw => raw,
        ProductRule::Dealiased => dealias(&raw),
    })
}
