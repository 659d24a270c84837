//! Uniform periodic grids on [0, L)ᵈⁱᵐ.
//!
//! Samples sit at xⱼ = j·L/n along each axis and Fourier modes carry
//! wavenumbers k = 2πm/L with the integer m taken from the symmetric range
//! (−n/2, n/2]. The Nyquist index m = n/2 is kept in the range but treated
//! specially: odd (derivative) symbols vanish there, because a real field's
//! Nyquist cosine has no sign-definite first derivative on the grid. Even
//! symbols such as |k|² use the full Nyquist magnitude.

use crate::error::{Result, SpectralError};

/// A cubic periodic grid: `points_per_axis` samples per axis on a box of
/// side `period`, replicated over `dim` axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    points_per_axis: usize,
    period: f64,
}

impl Grid {
    /// Builds a grid, enforcing the discretization contract: `dim` ∈ {1, 2, 3},
    /// `points_per_axis` a power of two ≥ 8, `period` finite and positive.
    pub fn new(dim: usize, points_per_axis: usize, period: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(SpectralError::Grid(format!("dim must be 1, 2, or 3, got {dim}")));
        }
        if points_per_axis < 8 || !points_per_axis.is_power_of_two() {
            return Err(SpectralError::Grid(format!(
                "points_per_axis must be a power of two >= 8, got {points_per_axis}"
            )));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(SpectralError::Grid(format!("period must be finite and positive, got {period}")));
        }
        Ok(Self { dim, points_per_axis, period })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Total number of sample points, nᵈⁱᵐ.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing L/n.
    pub fn spacing(&self) -> f64 {
        self.period / self.points_per_axis as f64
    }

    /// Cell volume (L/n)ᵈⁱᵐ, the quadrature weight of one sample.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as u32 as i32)
    }

    /// Box volume Lᵈⁱᵐ.
    pub fn volume(&self) -> f64 {
        self.period.powi(self.dim as i32)
    }

    /// Signed integer mode for a storage index: m = i for i ≤ n/2, else i − n.
    pub fn signed_mode(&self, index: usize) -> i64 {
        let n = self.points_per_axis as i64;
        let i = index as i64;
        if 2 * i <= n {
            i
        } else {
            i - n
        }
    }

    /// Whether a storage index is the Nyquist mode m = n/2.
    pub fn is_nyquist(&self, index: usize) -> bool {
        2 * index == self.points_per_axis
    }

    /// Wavenumber 2πm/L for one axis index, Nyquist included with positive sign.
    pub fn wavenumber(&self, index: usize) -> f64 {
        2.0 * std::f64::consts::PI * self.signed_mode(index) as f64 / self.period
    }

    /// Wavenumber used by odd (first-derivative) symbols: as `wavenumber`,
    /// except zero at Nyquist so differentiation maps real fields to real fields.
    pub fn deriv_wavenumber(&self, index: usize) -> f64 {
        if self.is_nyquist(index) {
            0.0
        } else {
            self.wavenumber(index)
        }
    }

    /// Per-axis wavenumber table, length n.
    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.points_per_axis).map(|i| self.wavenumber(i)).collect()
    }

    /// Per-axis derivative-wavenumber table, length n.
    pub fn deriv_wavenumbers(&self) -> Vec<f64> {
        (0..self.points_per_axis).map(|i| self.deriv_wavenumber(i)).collect()
    }

    /// Physical coordinate of one axis index.
    pub fn coordinate(&self, index: usize) -> f64 {
        index as f64 * self.spacing()
    }

    /// Decomposes a flat row-major index into per-axis indices.
    pub fn unravel(&self, flat: usize) -> [usize; 3] {
        let n = self.points_per_axis;
        match self.dim {
            1 => [flat, 0, 0],
            2 => [flat / n, flat % n, 0],
            _ => [flat / (n * n), (flat / n) % n, flat % n],
        }
    }

    /// Physical coordinates of a flat index; unused axes read zero.
    pub fn point(&self, flat: usize) -> [f64; 3] {
        let idx = self.unravel(flat);
        let mut x = [0.0; 3];
        for (axis, item) in x.iter_mut().enumerate().take(self.dim) {
            *item = self.coordinate(idx[axis]);
        }
        x
    }

    /// Checks that two fields can be combined, naming both grids on failure.
    pub fn check_same(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(SpectralError::GridMismatch(format!("{self:?}"), format!("{other:?}")))
        }
    }

    /// Visits every flat index together with its per-axis indices, in
    /// row-major order. The explicit per-dim loops keep this cheap enough for
    /// multiplier hot paths.
    pub fn for_each_flat(&self, mut f: impl FnMut(usize, [usize; 3])) {
        let n = self.points_per_axis;
        match self.dim {
            1 => {
                for i0 in 0..n {
                    f(i0, [i0, 0, 0]);
                }
            }
            2 => {
                let mut flat = 0;
                for i0 in 0..n {
                    for i1 in 0..n {
                        f(flat, [i0, i1, 0]);
                        flat += 1;
                    }
                }
            }
            _ => {
                let mut flat = 0;
                for i0 in 0..n {
                    for i1 in 0..n {
                        for i2 in 0..n {
                            f(flat, [i0, i1, i2]);
                            flat += 1;
                        }
                    }
                }
            }
        }
    }
}
