//! Time-dependent quadratic external potentials
//! V(t,x) = ᵗx Q(t) x + E(t)·x + γ(t).

use crate::error::{EikonalError, Result};
use crate::linalg::{Matrix, Vector};
use std::sync::Arc;

type MatFn = dyn Fn(f64) -> Matrix + Send + Sync;
type VecFn = dyn Fn(f64) -> Vector + Send + Sync;
type ScalarFn = dyn Fn(f64) -> f64 + Send + Sync;

/// Smooth callables (Q, E, γ) sampled by the integrators. Q(t) must stay
/// symmetric; every sampling checks the defect against 1e−12.
#[derive(Clone)]
pub struct QuadraticPotentialSpec {
    dim: usize,
    q_mat: Arc<MatFn>,
    e_vec: Arc<VecFn>,
    gamma: Arc<ScalarFn>,
}

impl std::fmt::Debug for QuadraticPotentialSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuadraticPotentialSpec").field("dim", &self.dim).finish()
    }
}

impl QuadraticPotentialSpec {
    pub fn new(
        dim: usize,
        q_mat: impl Fn(f64) -> Matrix + Send + Sync + 'static,
        e_vec: impl Fn(f64) -> Vector + Send + Sync + 'static,
        gamma: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(EikonalError::Parameter(format!("potential dim must be 1..=3, got {dim}")));
        }
        Ok(Self { dim, q_mat: Arc::new(q_mat), e_vec: Arc::new(e_vec), gamma: Arc::new(gamma) })
    }

    /// Time-constant potential.
    pub fn constant(q_mat: Matrix, e_vec: Vector, gamma: f64) -> Result<Self> {
        let dim = q_mat.dim();
        if e_vec.dim() != dim {
            return Err(EikonalError::Parameter(format!(
                "Q is {dim}x{dim} but E has dimension {}",
                e_vec.dim()
            )));
        }
        Self::new(dim, move |_| q_mat, move |_| e_vec, move |_| gamma)
    }

    /// V ≡ 0.
    pub fn zero(dim: usize) -> Result<Self> {
        Self::constant(Matrix::zeros(dim), Vector::zeros(dim), 0.0)
    }

    /// Isotropic harmonic potential strength·|x|², i.e. Q = strength·I.
    pub fn harmonic(dim: usize, strength: f64) -> Result<Self> {
        Self::constant(Matrix::scalar(dim, strength), Vector::zeros(dim), 0.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Samples Q(t), enforcing symmetry.
    pub fn q_at(&self, t: f64) -> Result<Matrix> {
        let q = (self.q_mat)(t);
        if q.dim() != self.dim {
            return Err(EikonalError::Parameter(format!(
                "Q(t={t}) has dimension {} instead of {}",
                q.dim(),
                self.dim
            )));
        }
        if q.sym_defect() > 1e-12 {
            return Err(EikonalError::Parameter(format!(
                "Q(t={t}) is not symmetric: defect {:e}",
                q.sym_defect()
            )));
        }
        Ok(q)
    }

    pub fn e_at(&self, t: f64) -> Vector {
        (self.e_vec)(t)
    }

    pub fn gamma_at(&self, t: f64) -> f64 {
        (self.gamma)(t)
    }

    /// V(t,x).
    pub fn eval(&self, t: f64, x: &Vector) -> Result<f64> {
        Ok(self.q_at(t)?.quad_form(x) + self.e_at(t).dot(x) + self.gamma_at(t))
    }
}
