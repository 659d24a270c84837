//! Spectral operators in the straightened frame: spatial derivatives taken
//! through a constant matrix B = Φ(t)^{-T} acting on the wavenumber vector.
//!
//! With ∂ = B∇, the derivative symbol for component j is i(Bk)_j, the
//! second-order operator ∂*∂ has symbol |Bk|², and the skew-symmetry of
//! i∂*∂ in the discrete inner product is exact because everything is a
//! Fourier multiplier. Derivative symbols use the Nyquist-zeroed wavenumber
//! convention of the flat operators, so the straightened operators reduce
//! to them exactly when B = I.

use eikonal::Matrix;
use num_complex::Complex64;
use spectral_core::{Grid, SpectralField, VectorField};

use crate::error::Result;

/// Wavenumber vector B·k for a mode, in the derivative convention.
fn bk(grid: &Grid, b: &Matrix, tables: &[Vec<f64>], idx: [usize; 3]) -> [f64; 3] {
    let mut k = [0.0; 3];
    for (axis, k_axis) in k.iter_mut().enumerate().take(grid.dim) {
        *k_axis = tables[axis][idx[axis]];
    }
    let mut out = [0.0; 3];
    for i in 0..grid.dim {
        for (j, &k_j) in k.iter().enumerate().take(grid.dim) {
            out[i] += b.get(i, j) * k_j;
        }
    }
    out
}

fn deriv_tables(grid: &Grid) -> Vec<Vec<f64>> {
    (0..grid.dim).map(|_| grid.deriv_wavenumbers()).collect()
}

/// Gradient in the straightened frame: component j is the multiplier i(Bk)_j.
pub fn straightened_gradient(f: &SpectralField, b: &Matrix) -> Result<VectorField> {
    let grid = *f.grid();
    let tables = deriv_tables(&grid);
    let coeffs = f.to_coeffs();
    let mut comps = Vec::with_capacity(grid.dim);
    for axis in 0..grid.dim {
        let mut c = coeffs.clone();
        grid.for_each_flat(|flat, idx| {
            let k = bk(&grid, b, &tables, idx);
            c[flat] *= Complex64::new(0.0, k[axis]);
        });
        comps.push(SpectralField::from_coeffs(grid, c)?);
    }
    Ok(VectorField::from_components(comps)?)
}

/// Divergence in the straightened frame, accumulated in coefficient space.
pub fn straightened_divergence(w: &VectorField, b: &Matrix) -> Result<SpectralField> {
    let grid = *w.grid();
    let tables = deriv_tables(&grid);
    let mut acc = vec![Complex64::default(); grid.len()];
    for axis in 0..grid.dim {
        let coeffs = w.component(axis).to_coeffs();
        grid.for_each_flat(|flat, idx| {
            let k = bk(&grid, b, &tables, idx);
            acc[flat] += Complex64::new(0.0, k[axis]) * coeffs[flat];
        });
    }
    Ok(SpectralField::from_coeffs(grid, acc)?)
}

/// Multiplies coefficients by −i·(eps/2)·|Bk|², the dispersive multiplier
/// of the straightened amplitude equation. Equals i(ε/2)Δ when B = I.
pub fn straightened_dispersion(f: &SpectralField, b: &Matrix, eps: f64) -> Result<SpectralField> {
    let grid = *f.grid();
    let tables = deriv_tables(&grid);
    let mut coeffs = f.to_coeffs();
    grid.for_each_flat(|flat, idx| {
        let k = bk(&grid, b, &tables, idx);
        let k_sq = k.iter().map(|x| x * x).sum::<f64>();
        coeffs[flat] *= Complex64::new(0.0, -0.5 * eps * k_sq);
    });
    Ok(SpectralField::from_coeffs(grid, coeffs)?)
}

/// Solves ∂*∂ V = −q_eff (source − mean) in the zero-mean gauge:
/// V̂ = −q_eff ŝ / |Bk|², with modes of vanishing |Bk|² annihilated.
pub fn straightened_poisson(source: &SpectralField, q_eff: f64, b: &Matrix) -> Result<SpectralField> {
    let grid = *source.grid();
    let tables = deriv_tables(&grid);
    let mut coeffs = source.to_coeffs();
    grid.for_each_flat(|flat, idx| {
        let k = bk(&grid, b, &tables, idx);
        let k_sq = k.iter().map(|x| x * x).sum::<f64>();
        if k_sq == 0.0 {
            coeffs[flat] = Complex64::default();
        } else {
            coeffs[flat] *= Complex64::new(-q_eff / k_sq, 0.0);
        }
    });
    Ok(SpectralField::from_coeffs(grid, coeffs)?)
}

/// ∂*∂ f, the straightened analogue of −Δ. Used for residual diagnostics.
pub fn straightened_second_order(f: &SpectralField, b: &Matrix) -> Result<SpectralField> {
    let grid = *f.grid();
    let tables = deriv_tables(&grid);
    let mut coeffs = f.to_coeffs();
    grid.for_each_flat(|flat, idx| {
        let k = bk(&grid, b, &tables, idx);
        let k_sq = k.iter().map(|x| x * x).sum::<f64>();
        coeffs[flat] *= Complex64::new(k_sq, 0.0);
    });
    Ok(SpectralField::from_coeffs(grid, coeffs)?)
}

/// Curl norm with straightened derivatives: the L² norms of
/// ∂_i v_l − ∂_l v_i over the antisymmetric index pairs, combined
/// exactly like the flat `curl_norm`.
pub fn straightened_curl_norm(w: &VectorField, b: &Matrix) -> Result<f64> {
    let grid = *w.grid();
    if grid.dim == 1 {
        return Ok(0.0);
    }
    let grads: Vec<VectorField> = (0..grid.dim)
        .map(|i| straightened_gradient(w.component(i), b))
        .collect::<Result<_>>()?;
    let mut sum_sq = 0.0;
    for i in 0..grid.dim {
        for l in (i + 1)..grid.dim {
            let diff = grads[l].component(i) - grads[i].component(l);
            sum_sq += spectral_core::norm_l2(&diff).powi(2);
        }
    }
    Ok(sum_sq.sqrt())
}
