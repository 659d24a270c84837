//! The quadratic phase container: sampled trajectories of
//! φ_eik(t,x) = ᵗx M(t) x + α(t)·x + β(t), the ghost trace g, and (once
//! computed) the characteristic flow x(t,y) = Φ(t)y + shift(t).
//!
//! Evaluation between stored samples interpolates linearly in t; tests pin
//! values only at stored sample times, where no interpolation error enters.

use crate::error::{EikonalError, Result};
use crate::linalg::{Matrix, Vector};
use std::io::Write;

/// Sampled eikonal phase data on a uniform time grid.
///
/// `phi` and `shift` stay empty until [`fundamental_matrix`] fills them;
/// `shift` is kept in memory only and does not appear in the CSV layout.
/// `blow_up_time` marks a Riccati blow-up before the requested final time
/// (the arrays then end at the last valid sample), and `focusing_time` the
/// first sample where det Φ dropped below threshold.
///
/// [`fundamental_matrix`]: crate::fundamental_matrix
#[derive(Debug, Clone)]
pub struct QuadraticPhase {
    pub times: Vec<f64>,
    pub m: Vec<Matrix>,
    pub alpha: Vec<Vector>,
    pub beta: Vec<f64>,
    pub phi: Vec<Matrix>,
    pub shift: Vec<Vector>,
    pub g: Vec<f64>,
    pub ghost_enabled: bool,
    pub q: f64,
    /// Max |∂_tφ + ½|∇φ|² + V| over the probe set, via five-point time
    /// differencing of the stored samples; `None` when too few samples.
    pub hj_residual: Option<f64>,
    /// Worst embedded half-step error estimate seen during integration.
    pub max_step_estimate: f64,
    pub blow_up_time: Option<f64>,
    pub focusing_time: Option<f64>,
}

impl QuadraticPhase {
    pub fn dim(&self) -> usize {
        self.m[0].dim()
    }

    pub fn t_final(&self) -> f64 {
        *self.times.last().expect("phase holds at least one sample")
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn has_flow(&self) -> bool {
        self.phi.len() == self.times.len()
    }

    /// Locates `t`, returning the left sample index and the interpolation
    /// weight θ ∈ [0,1]. Out-of-range times are a parameter error, with a
    /// round-off allowance at both ends.
    pub fn locate(&self, t: f64) -> Result<(usize, f64)> {
        if self.times.len() < 2 {
            return Err(EikonalError::Parameter("phase holds fewer than two samples".into()));
        }
        let t0 = self.times[0];
        let t1 = self.t_final();
        let tol = 1e-9 * (t1 - t0).abs().max(1.0);
        if t < t0 - tol || t > t1 + tol {
            return Err(EikonalError::Parameter(format!(
                "time {t} outside stored range [{t0}, {t1}]"
            )));
        }
        let t = t.clamp(t0, t1);
        // partition_point gives the first index with times[i] > t.
        let hi = self.times.partition_point(|&s| s <= t);
        if hi == self.times.len() {
            return Ok((self.times.len() - 2, 1.0));
        }
        let i = hi - 1;
        let theta = (t - self.times[i]) / (self.times[i + 1] - self.times[i]);
        Ok((i, theta))
    }

    pub fn m_at(&self, t: f64) -> Result<Matrix> {
        let (i, th) = self.locate(t)?;
        Ok(self.m[i] * (1.0 - th) + self.m[i + 1] * th)
    }

    pub fn alpha_at(&self, t: f64) -> Result<Vector> {
        let (i, th) = self.locate(t)?;
        Ok(self.alpha[i] * (1.0 - th) + self.alpha[i + 1] * th)
    }

    pub fn beta_at(&self, t: f64) -> Result<f64> {
        let (i, th) = self.locate(t)?;
        Ok(self.beta[i] * (1.0 - th) + self.beta[i + 1] * th)
    }

    pub fn g_at(&self, t: f64) -> Result<f64> {
        let (i, th) = self.locate(t)?;
        Ok(self.g[i] * (1.0 - th) + self.g[i + 1] * th)
    }

    pub fn phi_at(&self, t: f64) -> Result<Matrix> {
        self.require_flow()?;
        let (i, th) = self.locate(t)?;
        Ok(self.phi[i] * (1.0 - th) + self.phi[i + 1] * th)
    }

    pub fn shift_at(&self, t: f64) -> Result<Vector> {
        self.require_flow()?;
        let (i, th) = self.locate(t)?;
        Ok(self.shift[i] * (1.0 - th) + self.shift[i + 1] * th)
    }

    fn require_flow(&self) -> Result<()> {
        if self.has_flow() {
            Ok(())
        } else {
            Err(EikonalError::Parameter(
                "characteristic flow not computed; call fundamental_matrix first".into(),
            ))
        }
    }

    /// Laplacian of the phase, Δφ_eik(t) = 2 Tr M(t).
    pub fn laplacian_at(&self, t: f64) -> Result<f64> {
        Ok(2.0 * self.m_at(t)?.trace())
    }
}

/// φ_eik(t, x) at each point.
pub fn eval_phase(phase: &QuadraticPhase, t: f64, points: &[Vector]) -> Result<Vec<f64>> {
    let m = phase.m_at(t)?;
    let alpha = phase.alpha_at(t)?;
    let beta = phase.beta_at(t)?;
    Ok(points.iter().map(|x| m.quad_form(x) + alpha.dot(x) + beta).collect())
}

/// ∇φ_eik(t, x) = 2 M x + α at each point.
pub fn eval_phase_gradient(phase: &QuadraticPhase, t: f64, points: &[Vector]) -> Result<Vec<Vector>> {
    let m = phase.m_at(t)?;
    let alpha = phase.alpha_at(t)?;
    Ok(points.iter().map(|x| m.mul_vec(x) * 2.0 + alpha).collect())
}

/// CSV layout, one row per sample: t, M row-major, alpha, beta, Phi
/// row-major, g. Headers name entries m{i}{j}, alpha{i}, phi{i}{j}. Floats
/// are printed in shortest round-trip form, so output is byte-stable.
pub fn write_phase_csv(w: impl Write, phase: &QuadraticPhase) -> Result<()> {
    phase.require_flow()?;
    let dim = phase.dim();
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["t".to_string()];
    for i in 0..dim {
        for j in 0..dim {
            header.push(format!("m{i}{j}"));
        }
    }
    for i in 0..dim {
        header.push(format!("alpha{i}"));
    }
    header.push("beta".to_string());
    for i in 0..dim {
        for j in 0..dim {
            header.push(format!("phi{i}{j}"));
        }
    }
    header.push("g".to_string());
    out.write_record(&header).map_err(|e| EikonalError::Csv(e.to_string()))?;

    for k in 0..phase.len() {
        let mut row = vec![format!("{}", phase.times[k])];
        for i in 0..dim {
            for j in 0..dim {
                row.push(format!("{}", phase.m[k].get(i, j)));
            }
        }
        for i in 0..dim {
            row.push(format!("{}", phase.alpha[k].get(i)));
        }
        row.push(format!("{}", phase.beta[k]));
        for i in 0..dim {
            for j in 0..dim {
                row.push(format!("{}", phase.phi[k].get(i, j)));
            }
        }
        row.push(format!("{}", phase.g[k]));
        out.write_record(&row).map_err(|e| EikonalError::Csv(e.to_string()))?;
    }
    out.flush().map_err(|e| EikonalError::Csv(e.to_string()))?;
    Ok(())
}
