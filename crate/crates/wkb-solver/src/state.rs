//! Solver state: the modulation amplitude together with either a scalar
//! phase remainder or a velocity field, depending on the chosen form.

use spectral_core::{gradient, SpectralField, VectorField};

/// Which formulation of the modulation system is being integrated.
///
/// The scalar-phase form evolves (φ, a) and fixes the time gauge of φ; the
/// velocity form evolves (v, a) with v = ∇φ and exists for cross-validation;
/// the straightened form evolves (v, ã) in the frame of the quadratic-phase
/// characteristics, with ã = a·e^{g} and all spatial derivatives taken
/// through the flow matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WkbForm {
    ScalarPhase,
    Velocity,
    Straightened,
}

#[derive(Clone)]
pub enum WkbData {
    ScalarPhase { phi: SpectralField },
    Velocity { v: VectorField },
    /// The amplitude stored alongside is ã = a·e^{g}.
    Straightened { v: VectorField },
}

#[derive(Clone)]
pub struct WkbState {
    pub t: f64,
    pub eps: f64,
    pub a: SpectralField,
    pub data: WkbData,
}

impl WkbState {
    pub fn form(&self) -> WkbForm {
        match self.data {
            WkbData::ScalarPhase { .. } => WkbForm::ScalarPhase,
            WkbData::Velocity { .. } => WkbForm::Velocity,
            WkbData::Straightened { .. } => WkbForm::Straightened,
        }
    }

    pub fn phi(&self) -> Option<&SpectralField> {
        match &self.data {
            WkbData::ScalarPhase { phi } => Some(phi),
            _ => None,
        }
    }

    /// The velocity field: stored directly, or ∇φ in the scalar form.
    pub fn velocity(&self) -> Result<VectorField> {
        match &self.data {
            WkbData::ScalarPhase { phi } => gradient(phi).map_err(WkbError::from),
            WkbData::Velocity { v } | WkbData::Straightened { v } => Ok(v.clone()),
        }
    }
}
