//! Run outputs: state snapshots, per-step diagnostics, and blow-up flags.

use std::io::Write;

use eikonal::QuadraticPhase;

use crate::error::{Result, WkbError};
use crate::scenario::Scenario;
use crate::state::{WkbForm, WkbState};

/// One diagnostics row. `density_err_l2` is ‖|a|² − c‖_{L²}, or
/// ‖|ã|² − 1‖_{L²} in the straightened form; `v_xs` and `a_xs` are Zhidkov
/// norms at the configured order; `curl` is the curl norm of the velocity
/// (with straightened derivatives where applicable); `poisson_residual` is
/// the relative defect of the recomputed Poisson potential.
#[derive(Clone, Copy, Debug)]
pub struct DiagRow {
    pub t: f64,
    pub a_xs: f64,
    pub density_err_l2: f64,
    pub v_xs: f64,
    pub curl: f64,
    pub poisson_residual: f64,
}

#[derive(Clone, Debug)]
pub struct BlowUp {
    pub t: f64,
    pub norm: String,
}

pub struct WkbTrajectory {
    pub scenario: Scenario,
    pub form: WkbForm,
    pub eps: f64,
    /// Effective step used (the requested span divided into whole steps).
    pub dt: f64,
    /// The eikonal phase driving this run, sampled at half the solver step;
    /// carries the flow matrices in the straightened form.
    pub eikonal: QuadraticPhase,
    pub snapshots: Vec<WkbState>,
    pub diagnostics: Vec<DiagRow>,
    pub blow_up: Option<BlowUp>,
}

impl WkbTrajectory {
    pub fn final_state(&self) -> &WkbState {
        self.snapshots.last().expect("a trajectory always holds the initial snapshot")
    }

    /// Snapshot at time t, within a relative tolerance on the span.
    pub fn state_at(&self, t: f64) -> Option<&WkbState> {
        let span = self.final_state().t.abs().max(1.0);
        self.snapshots.iter().find(|s| (s.t - t).abs() <= 1e-9 * span)
    }

    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|s| s.t).collect()
    }
}

/// Writes the diagnostics table as CSV. Floats print in shortest
/// round-trip form, so the bytes are reproducible for identical runs.
pub fn write_diagnostics_csv(w: &mut dyn Write, traj: &WkbTrajectory) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["t", "a_xs", "density_err_l2", "v_xs", "curl", "poisson_residual"])
        .map_err(|e| WkbError::Csv(e.to_string()))?;
    for row in &traj.diagnostics {
        out.write_record([
            row.t.to_string(),
            row.a_xs.to_string(),
            row.density_err_l2.to_string(),
            row.v_xs.to_string(),
            row.curl.to_string(),
            row.poisson_residual.to_string(),
        ])
        .map_err(|e| WkbError::Csv(e.to_string()))?;
    }
    out.flush().map_err(|e| WkbError::Csv(e.to_string()))?;
    Ok(())
}
