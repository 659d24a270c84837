//! Fourier multiplier operators m(D) and the spectral cutoff family built
//! on one fixed radial profile.
//!
//! A [`MultiplierSymbol`] is an evaluation rule ξ ↦ m(ξ) together with a
//! descriptive name. Application is diagonal in coefficient space:
//! (m(D)f)^ = m(ξ)·f̂(ξ). Symbols must be finite at every grid wavenumber,
//! including ξ = 0; a pole gives a hard error naming the offending
//! wavenumber rather than a silent NaN field.
//!
//! Odd symbols see the Nyquist wavenumber with positive sign. All solver
//! paths keep their fields dealiased well below Nyquist, so this only
//! matters for direct experiments at full band.

use crate::error::{Result, SpectralError};
use crate::fft;
use crate::field::SpectralField;
use crate::grid::Grid;
use num_complex::Complex64;
use std::sync::Arc;

/// The radial cutoff profile ȷ: even, C^∞, 1 on r ≤ 1, 0 on r ≥ 2, and
/// exp(1 − 1/(1 − (r−1)²)) on the ramp 1 < r < 2. The ramp is a named
/// constant of the library; tests pin its values.
pub fn cutoff_profile(r: f64) -> f64 {
    let r = r.abs();
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        let u = (r - 1.0) * (r - 1.0);
        (1.0 - 1.0 / (1.0 - u)).exp()
    }
}

type SymbolFn = dyn Fn(&[f64]) -> Complex64 + Send + Sync;

/// A named multiplier symbol ξ ↦ m(ξ).
#[derive(Clone)]
pub struct MultiplierSymbol {
    name: String,
    eval: Arc<SymbolFn>,
}

impl std::fmt::Debug for MultiplierSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultiplierSymbol").field("name", &self.name).finish()
    }
}

impl MultiplierSymbol {
    pub fn new(name: impl Into<String>, eval: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), eval: Arc::new(eval) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        (self.eval)(xi)
    }

    /// Mollifier J_h with symbol ȷ(h|ξ|).
    pub fn mollifier(h: f64) -> Result<Self> {
        check_positive(h, "mollifier width h")?;
        Ok(Self::new(format!("mollifier(h={h})"), move |xi| {
            Complex64::new(cutoff_profile(h * norm(xi)), 0.0)
        }))
    }

    /// J_h² with symbol ȷ²(h|ξ|), the dispersive regularization in the
    /// mollified amplitude equation.
    pub fn mollifier_squared(h: f64) -> Result<Self> {
        check_positive(h, "mollifier width h")?;
        Ok(Self::new(format!("mollifier_squared(h={h})"), move |xi| {
            let j = cutoff_profile(h * norm(xi));
            Complex64::new(j * j, 0.0)
        }))
    }

    /// High-pass G_h = I − J_{1/h} with symbol 1 − ȷ(|ξ|/h). Annihilates the
    /// zero mode, and in fact everything with |ξ| ≤ h.
    pub fn high_pass(h: f64) -> Result<Self> {
        check_positive(h, "high-pass width h")?;
        Ok(Self::new(format!("high_pass(h={h})"), move |xi| {
            Complex64::new(1.0 - cutoff_profile(norm(xi) / h), 0.0)
        }))
    }

    /// One component of R_h∇ = q ∇Δ^{−1} G_h, with symbol
    /// q · iξ_axis · (−1/|ξ|²) · (1 − ȷ(|ξ|/h)). The high-pass factor is
    /// identically zero on |ξ| ≤ h, so the symbol extends by 0 through the
    /// Δ^{−1} pole.
    pub fn poisson_grad_component(q: f64, h: f64, axis: usize) -> Result<Self> {
        check_positive(h, "high-pass width h")?;
        Ok(Self::new(format!("poisson_grad(q={q},h={h},axis={axis})"), move |xi| {
            let r = norm(xi);
            if r <= h {
                return Complex64::new(0.0, 0.0);
            }
            let gh = 1.0 - cutoff_profile(r / h);
            Complex64::new(0.0, q * xi[axis] * (-1.0 / (r * r)) * gh)
        }))
    }

    /// Λ^s = (I − Δ)^{s/2} with symbol (1 + |ξ|²)^{s/2}.
    pub fn lambda_power(s: f64) -> Self {
        Self::new(format!("lambda_power(s={s})"), move |xi| {
            let r2 = xi.iter().map(|k| k * k).sum::<f64>();
            Complex64::new((1.0 + r2).powf(s / 2.0), 0.0)
        })
    }
}

fn norm(xi: &[f64]) -> f64 {
    xi.iter().map(|k| k * k).sum::<f64>().sqrt()
}

fn check_positive(h: f64, what: &str) -> Result<()> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(SpectralError::Parameter(format!("{what} must be finite and positive, got {h}")))
    }
}

/// Multiplies coefficient storage in place by m(ξ) over the whole grid.
pub fn apply_to_coeffs(grid: &Grid, coeffs: &mut [Complex64], m: &MultiplierSymbol) -> Result<()> {
    let k: Vec<f64> = grid.wavenumbers();
    let dim = grid.dim();
    let mut bad: Option<Vec<f64>> = None;
    grid.for_each_flat(|flat, idx| {
        if bad.is_some() {
            return;
        }
        let xi = [k[idx[0]], if dim > 1 { k[idx[1]] } else { 0.0 }, if dim > 2 { k[idx[2]] } else { 0.0 }];
        let value = m.eval(&xi[..dim]);
        if value.re.is_finite() && value.im.is_finite() {
            coeffs[flat] *= value;
        } else {
            bad = Some(xi[..dim].to_vec());
        }
    });
    match bad {
        Some(xi) => Err(SpectralError::SymbolUndefined { name: m.name().to_string(), xi }),
        None => Ok(()),
    }
}

/// Applies a multiplier operator: inverse-transform of m(ξ)·f̂(ξ).
pub fn apply_multiplier(f: &SpectralField, m: &MultiplierSymbol) -> Result<SpectralField> {
    let grid = *f.grid();
    let mut coeffs = f.to_coeffs();
    apply_to_coeffs(&grid, &mut coeffs, m)?;
    let mut values = coeffs;
    fft::inverse(&grid, &mut values);
    SpectralField::from_values(grid, values)
}
