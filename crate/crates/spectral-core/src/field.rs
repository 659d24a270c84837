//! Scalar and vector fields sampled on a [`Grid`].
//!
//! A [`SpectralField`] owns physical-space samples in row-major order.
//! Transforms to coefficient space are explicit (`to_coeffs`,
//! `from_coeffs`), which keeps every operator honest about when it pays for
//! an FFT.

use crate::error::{Result, SpectralError};
use crate::fft;
use crate::grid::Grid;
use num_complex::Complex64;

/// Complex scalar field with physical-space storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    values: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    /// Wraps existing samples; the length must match the grid.
    pub fn from_values(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(SpectralError::Parameter(format!(
                "value buffer has {} entries, grid has {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Samples a closure of the physical coordinates (slice of length `dim`).
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let dim = grid.dim();
        let values = (0..grid.len())
            .map(|flat| {
                let x = grid.point(flat);
                f(&x[..dim])
            })
            .collect();
        Self { grid, values }
    }

    /// Builds a field directly from Fourier coefficients.
    pub fn from_coeffs(grid: Grid, mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(SpectralError::Parameter(format!(
                "coefficient buffer has {} entries, grid has {}",
                coeffs.len(),
                grid.len()
            )));
        }
        fft::inverse(&grid, &mut coeffs);
        Ok(Self { grid, values: coeffs })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Fourier coefficients cₘ with f = Σ cₘ e^{ikₘ·x}.
    pub fn to_coeffs(&self) -> Vec<Complex64> {
        let mut c = self.values.clone();
        fft::forward(&self.grid, &mut c);
        c
    }

    /// Sample mean, equal to the zero coefficient.
    pub fn mean(&self) -> Complex64 {
        let sum: Complex64 = self.values.iter().sum();
        sum / self.grid.len() as f64
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_map(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { grid: self.grid, values })
    }

    /// Raw pointwise product, no dealiasing.
    pub fn mul_pointwise(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, |a, b| a * b)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    /// |f|² as a real-valued field.
    pub fn abs_squared(&self) -> Self {
        self.map(|v| Complex64::new(v.norm_sqr(), 0.0))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    /// self += c · other, the axpy step every integrator leans on.
    pub fn add_scaled(&mut self, other: &Self, c: Complex64) {
        debug_assert_eq!(self.grid, other.grid);
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }
}

impl std::ops::Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        debug_assert_eq!(self.grid, rhs.grid);
        SpectralField {
            grid: self.grid,
            values: self.values.iter().zip(&rhs.values).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        debug_assert_eq!(self.grid, rhs.grid);
        SpectralField {
            grid: self.grid,
            values: self.values.iter().zip(&rhs.values).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl std::ops::Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.map(|v| -v)
    }
}

/// A dim-component vector field; all components share one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    components: Vec<SpectralField>,
}

impl VectorField {
    pub fn zeros(grid: Grid) -> Self {
        Self { components: (0..grid.dim()).map(|_| SpectralField::zeros(grid)).collect() }
    }

    pub fn from_components(components: Vec<SpectralField>) -> Result<Self> {
        let grid = *components
            .first()
            .ok_or_else(|| SpectralError::Parameter("vector field needs at least one component".into()))?
            .grid();
        if components.len() != grid.dim() {
            return Err(SpectralError::Parameter(format!(
                "vector field has {} components on a dim-{} grid",
                components.len(),
                grid.dim()
            )));
        }
        for c in &components {
            grid.check_same(c.grid())?;
        }
        Ok(Self { components })
    }

    /// Samples a closure returning one value per component.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64], usize) -> Complex64) -> Self {
        let components = (0..grid.dim())
            .map(|j| SpectralField::from_fn(grid, |x| f(x, j)))
            .collect();
        Self { components }
    }

    pub fn grid(&self) -> &Grid {
        self.components[0].grid()
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, j: usize) -> &SpectralField {
        &self.components[j]
    }

    pub fn component_mut(&mut self, j: usize) -> &mut SpectralField {
        &mut self.components[j]
    }

    pub fn components(&self) -> &[SpectralField] {
        &self.components
    }

    pub fn into_components(self) -> Vec<SpectralField> {
        self.components
    }

    pub fn map_components(&self, f: impl Fn(&SpectralField) -> SpectralField) -> Self {
        Self { components: self.components.iter().map(f).collect() }
    }

    /// Pointwise Euclidean magnitude √(Σⱼ |vⱼ|²) as a real field.
    pub fn magnitude(&self) -> SpectralField {
        let grid = *self.grid();
        let mut out = SpectralField::zeros(grid);
        for c in &self.components {
            for (o, v) in out.values_mut().iter_mut().zip(c.values()) {
                o.re += v.norm_sqr();
            }
        }
        for o in out.values_mut() {
            *o = Complex64::new(o.re.sqrt(), 0.0);
        }
        out
    }

    /// Pointwise dot product Σⱼ vⱼ wⱼ (no conjugation).
    pub fn dot(&self, other: &VectorField) -> Result<SpectralField> {
        self.grid().check_same(other.grid())?;
        let mut out = SpectralField::zeros(*self.grid());
        for (a, b) in self.components.iter().zip(&other.components) {
            let prod = a.mul_pointwise(b)?;
            out.add_scaled(&prod, Complex64::new(1.0, 0.0));
        }
        Ok(out)
    }

    pub fn add_scaled(&mut self, other: &VectorField, c: Complex64) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_scaled(b, c);
        }
    }
}

impl std::ops::Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            components: self.components.iter().zip(&rhs.components).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            components: self.components.iter().zip(&rhs.components).map(|(a, b)| a - b).collect(),
        }
    }
}
