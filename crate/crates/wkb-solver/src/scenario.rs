//! Problem data shared by every solver form: grid, external potential,
//! doping profile, initial amplitude and phase, and the data-error model.

use std::sync::Arc;

use eikonal::{Matrix, QuadraticPotentialSpec, Vector};
use spectral_core::{Grid, SpectralField, C64};

use crate::error::{Result, WkbError};

/// Periodic perturbative potential, possibly driven in time.
#[derive(Clone)]
pub enum Pert {
    Zero,
    Static(SpectralField),
    Varying(Arc<dyn Fn(f64) -> SpectralField + Send + Sync>),
}

impl Pert {
    pub fn is_zero(&self) -> bool {
        matches!(self, Pert::Zero)
    }

    /// Potential field at time t; None when identically zero.
    pub fn at(&self, t: f64) -> Option<SpectralField> {
        match self {
            Pert::Zero => None,
            Pert::Static(f) => Some(f.clone()),
            Pert::Varying(f) => Some(f(t)),
        }
    }
}

/// Complete scenario description. Fields are public and mutated freely when
/// setting up a run; `validate` checks the coupling invariants and every
/// solver calls it on entry.
///
/// The doping profile is c = c_const + doping_tilde, with the mean carried
/// entirely by `c_const`. The initial amplitude at a given ε is
/// a₀ + ε a₁ + r_eps_scale ε^r_power r_shape.
#[derive(Clone)]
pub struct Scenario {
    pub grid: Grid,
    /// Quadratic part of the external potential, x·Q(t)x + E(t)·x + γ(t).
    pub pot_quad: QuadraticPotentialSpec,
    /// Quadratic initial-phase data (M₀, α₀, β₀) handled by the eikonal phase.
    pub m0: Matrix,
    pub alpha0: Vector,
    pub beta0: f64,
    pub v_pert: Pert,
    pub doping_tilde: SpectralField,
    pub c_const: f64,
    pub charge_q: f64,
    pub a0: SpectralField,
    /// Corrector datum, entering the initial amplitude at order ε.
    pub a1: SpectralField,
    /// Periodic part of the initial phase (the quadratic part lives in
    /// m0/alpha0/beta0).
    pub phi0: SpectralField,
    pub r_eps_scale: f64,
    pub r_power: f64,
    pub r_shape: SpectralField,
}

impl Scenario {
    /// The uniform background: a₀ ≡ 1 against doping c ≡ 1, everything else
    /// zero. This is an exact fixed point of every solver form and the usual
    /// starting point for building test scenarios.
    pub fn uniform(grid: Grid) -> Self {
        let zero = SpectralField::zeros(grid);
        Scenario {
            grid,
            pot_quad: QuadraticPotentialSpec::zero(grid.dim).expect("grid dim is valid"),
            m0: Matrix::zeros(grid.dim),
            alpha0: Vector::zeros(grid.dim),
            beta0: 0.0,
            v_pert: Pert::Zero,
            doping_tilde: zero.clone(),
            c_const: 1.0,
            charge_q: 1.0,
            a0: SpectralField::from_fn(grid, |_| C64::new(1.0, 0.0)),
            a1: zero.clone(),
            phi0: zero.clone(),
            r_eps_scale: 0.0,
            r_power: 1.0,
            r_shape: zero,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.grid;
        for (name, f) in [
            ("doping_tilde", &self.doping_tilde),
            ("a0", &self.a0),
            ("a1", &self.a1),
            ("phi0", &self.phi0),
            ("r_shape", &self.r_shape),
        ] {
            if *f.grid() != g {
                return Err(WkbError::Parameter(format!("{name} is on a different grid")));
            }
        }
        if self.pot_quad.dim() != g.dim || self.m0.dim() != g.dim || self.alpha0.dim() != g.dim {
            return Err(WkbError::Parameter(
                "quadratic data dimension does not match the grid".into(),
            ));
        }
        if !(self.c_const.is_finite() && self.charge_q.is_finite() && self.beta0.is_finite()) {
            return Err(WkbError::Parameter("non-finite scalar parameter".into()));
        }
        if self.c_const != 0.0 {
            let mean = self.doping_tilde.mean().norm();
            if mean > 1e-12 * (1.0 + spectral_core::norm_l2(&self.doping_tilde)) {
                return Err(WkbError::Parameter(format!(
                    "doping_tilde must have zero mean (the mean of c lives in c_const); got {mean:e}"
                )));
            }
        }
        if self.r_eps_scale < 0.0 || !self.r_eps_scale.is_finite() {
            return Err(WkbError::Parameter("r_eps_scale must be finite and >= 0".into()));
        }
        if self.r_eps_scale > 0.0 && !(self.r_power > 0.0) {
            return Err(WkbError::Parameter("r_power must be positive when r_eps_scale > 0".into()));
        }
        Ok(())
    }

    /// Initial amplitude a₀ + ε a₁ + r_eps_scale ε^r_power r_shape.
    pub fn initial_amplitude(&self, eps: f64) -> SpectralField {
        let mut a = self.a0.clone();
        if eps > 0.0 {
            a.add_scaled(&self.a1, C64::new(eps, 0.0));
            if self.r_eps_scale > 0.0 {
                let w = self.r_eps_scale * eps.powf(self.r_power);
                a.add_scaled(&self.r_shape, C64::new(w, 0.0));
            }
        }
        a
    }

    /// The full doping profile c = c_const + c̃ as a grid field.
    pub fn doping_total(&self) -> SpectralField {
        let c = C64::new(self.c_const, 0.0);
        self.doping_tilde.map(|z| z + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::new(1, 32, std::f64::consts::TAU).unwrap()
    }

    #[test]
    fn uniform_scenario_validates() {
        Scenario::uniform(grid()).validate().unwrap();
    }

    #[test]
    fn nonzero_doping_mean_is_rejected() {
        let mut sc = Scenario::uniform(grid());
        sc.doping_tilde = SpectralField::from_fn(sc.grid, |_| C64::new(0.3, 0.0));
        assert!(sc.validate().is_err());
    }

    #[test]
    fn initial_amplitude_combines_orders() {
        let mut sc = Scenario::uniform(grid());
        sc.a1 = SpectralField::from_fn(sc.grid, |x| C64::new(x[0].cos(), 0.0));
        sc.r_eps_scale = 0.5;
        sc.r_power = 2.0;
        sc.r_shape = SpectralField::from_fn(sc.grid, |x| C64::new(x[0].sin(), 0.0));
        let eps = 0.1;
        let a = sc.initial_amplitude(eps);
        let probe_index = 3;
        let x = sc.grid.coordinate(3);
        let expect = 1.0 + eps * x.cos() + 0.5 * eps * eps * x.sin();
        assert!((a.values()[probe_index].re - expect).abs() <= 1e-14);
        // eps = 0 reduces to a0 exactly.
        let a0 = sc.initial_amplitude(0.0);
        assert_eq!(a0.values(), sc.a0.values());
    }
}
