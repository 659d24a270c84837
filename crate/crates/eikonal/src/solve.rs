//! Integrators for the eikonal phase.
//!
//! The quadratic case couples a matrix Riccati equation to its running
//! integral and the affine phase coefficients:
//!
//!   Ṁ + 2M² + Q(t) = ghost · ( −(q/2n)(e^{−2 Tr R} − 1) I ),
//!   Ṙ = M,
//!   α̇ + 2Mα + E(t) = 0,
//!   β̇ + ½|α|² + γ(t) = 0,
//!
//! with g(t) = Tr R(t) (half the integrated phase Laplacian, since
//! Δφ_eik = 2 Tr M). Everything is advanced by the classical 4th-order
//! one-step method with a fixed dt; each step also runs two half steps to
//! form an embedded error estimate. The step count is T/dt rounded to an
//! integer, so the requested dt is honored up to that rounding and results
//! are reproducible.
//!
//! The linear case is the same system with Q ≡ 0 and M₀ = 0; the one-step
//! method then reduces to composite Simpson quadrature of the closed-form
//! integrals α = α₀ − ∫E and β = β₀ − ½∫|α|², exact on polynomial data.

use crate::error::{EikonalError, Result};
use crate::linalg::{Matrix, Vector};
use crate::phase::QuadraticPhase;
use crate::potential::QuadraticPotentialSpec;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// ‖M‖ beyond this is called a blow-up (characteristic focusing).
pub const BLOW_UP_THRESHOLD: f64 = 1e6;
/// Per-step relative error estimate above this, away from focusing, means
/// dt is too coarse.
pub const STEP_TOLERANCE: f64 = 1e-7;
/// det Φ at or below this flags characteristic focusing of the flow.
pub const FOCUS_DET_THRESHOLD: f64 = 1e-8;

const HJ_PROBE_COUNT: usize = 100;
const HJ_PROBE_SEED: u64 = 0x9a1c_5eed;

#[derive(Clone)]
struct EikState {
    m: Matrix,
    r: Matrix,
    alpha: Vector,
    beta: f64,
}

impl EikState {
    fn add_scaled(&self, c: f64, k: &EikState) -> EikState {
        EikState {
            m: self.m + k.m * c,
            r: self.r + k.r * c,
            alpha: self.alpha + k.alpha * c,
            beta: self.beta + c * k.beta,
        }
    }

    fn dist(&self, o: &EikState) -> f64 {
        (self.m - o.m)
            .max_abs()
            .max((self.r - o.r).max_abs())
            .max((self.alpha - o.alpha).max_abs())
            .max((self.beta - o.beta).abs())
    }

    fn magnitude(&self) -> f64 {
        self.m.max_abs().max(self.r.max_abs()).max(self.alpha.max_abs()).max(self.beta.abs())
    }

    fn is_finite(&self) -> bool {
        self.m.is_finite() && self.r.is_finite() && self.alpha.is_finite() && self.beta.is_finite()
    }
}

struct EikSystem<'a> {
    pot: &'a QuadraticPotentialSpec,
    q: f64,
    ghost: bool,
}

impl EikSystem<'_> {
    fn rhs(&self, t: f64, y: &EikState) -> Result<EikState> {
        let dim = self.pot.dim();
        let q_t = self.pot.q_at(t)?;
        let mut mdot = (y.m * y.m) * -2.0 - q_t;
        if self.ghost {
            let g = y.r.trace();
            let force = -(self.q / (2.0 * dim as f64)) * ((-2.0 * g).exp() - 1.0);
            mdot = mdot + Matrix::scalar(dim, force);
        }
        Ok(EikState {
            m: mdot,
            r: y.m,
            alpha: -(y.m.mul_vec(&y.alpha) * 2.0 + self.pot.e_at(t)),
            beta: -0.5 * y.alpha.norm_sq() - self.pot.gamma_at(t),
        })
    }

    fn rk4_step(&self, t: f64, y: &EikState, dt: f64) -> Result<EikState> {
        let k1 = self.rhs(t, y)?;
        let k2 = self.rhs(t + 0.5 * dt, &y.add_scaled(0.5 * dt, &k1))?;
        let k3 = self.rhs(t + 0.5 * dt, &y.add_scaled(0.5 * dt, &k2))?;
        let k4 = self.rhs(t + dt, &y.add_scaled(dt, &k3))?;
        Ok(y
            .add_scaled(dt / 6.0, &k1)
            .add_scaled(dt / 3.0, &k2)
            .add_scaled(dt / 3.0, &k3)
            .add_scaled(dt / 6.0, &k4))
    }
}

fn check_time_params(t_final: f64, dt: f64) -> Result<usize> {
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(EikonalError::Parameter(format!("final time must be positive, got {t_final}")));
    }
    if !(dt.is_finite() && dt > 0.0 && dt <= t_final) {
        return Err(EikonalError::Parameter(format!("dt must lie in (0, T], got {dt}")));
    }
    Ok(((t_final / dt).round() as usize).max(1))
}

/// Integrates the quadratic eikonal system on [0, T].
///
/// With `ghost` off this is the plain Hamilton–Jacobi phase for the
/// quadratic potential; with `ghost` on, the trace-dependent isotropic
/// forcing is added to the Riccati equation and the charge `q` enters.
/// A Riccati blow-up yields a partial phase flagged in `blow_up_time`
/// rather than an error; a failing step estimate on moderate data is a
/// [`EikonalError::StepSize`] error.
pub fn solve_quadratic_eikonal(
    pot: &QuadraticPotentialSpec,
    m0: Matrix,
    alpha0: Vector,
    beta0: f64,
    q: f64,
    ghost: bool,
    t_final: f64,
    dt: f64,
) -> Result<QuadraticPhase> {
    let dim = pot.dim();
    if m0.dim() != dim || alpha0.dim() != dim {
        return Err(EikonalError::Parameter(format!(
            "initial data dimension mismatch: M0 is {}x{}, alpha0 is {}, potential is {dim}",
            m0.dim(),
            m0.dim(),
            alpha0.dim()
        )));
    }
    if m0.sym_defect() > 1e-12 {
        return Err(EikonalError::Parameter(format!(
            "M0 must be symmetric, defect {:e}",
            m0.sym_defect()
        )));
    }
    let n_steps = check_time_params(t_final, dt)?;
    let dt = t_final / n_steps as f64;

    let system = EikSystem { pot, q, ghost };
    let mut y = EikState { m: m0, r: Matrix::zeros(dim), alpha: alpha0, beta: beta0 };

    let mut phase = QuadraticPhase {
        times: vec![0.0],
        m: vec![m0],
        alpha: vec![alpha0],
        beta: vec![beta0],
        phi: Vec::new(),
        shift: Vec::new(),
        g: vec![0.0],
        ghost_enabled: ghost,
        q,
        hj_residual: None,
        max_step_estimate: 0.0,
        blow_up_time: None,
        focusing_time: None,
    };

    for step in 0..n_steps {
        let t = step as f64 * dt;
        let full = system.rk4_step(t, &y, dt)?;
        let half = system.rk4_step(t, &y, 0.5 * dt)?;
        let half2 = system.rk4_step(t + 0.5 * dt, &half, 0.5 * dt)?;
        let estimate = full.dist(&half2) / 15.0;
        phase.max_step_estimate = phase.max_step_estimate.max(estimate);

        if !full.is_finite() || full.m.max_abs() > BLOW_UP_THRESHOLD {
            phase.blow_up_time = Some(t);
            break;
        }
        let rel = estimate / full.magnitude().max(1.0);
        if rel > STEP_TOLERANCE {
            if y.m.frobenius() > 100.0 {
                // The estimator degrades because the Riccati solution is
                // steepening into its singularity; report it as the blow-up
                // it is about to become.
                phase.blow_up_time = Some(t);
                break;
            }
            return Err(EikonalError::StepSize { t, estimate: rel });
        }

        y = full;
        phase.times.push((step + 1) as f64 * dt);
        phase.m.push(y.m);
        phase.alpha.push(y.alpha);
        phase.beta.push(y.beta);
        phase.g.push(y.r.trace());
    }

    phase.hj_residual = hamilton_jacobi_residual(&phase, pot)?;
    Ok(phase)
}

/// Linear eikonal phase: M ≡ 0, α(t) = α₀ − ∫₀ᵗ E, β(t) = β₀ − ½∫₀ᵗ|α|².
/// The flow is filled immediately (Φ ≡ I and the translation shift).
pub fn solve_linear_eikonal(
    e_vec: impl Fn(f64) -> Vector + Send + Sync + 'static,
    alpha0: Vector,
    beta0: f64,
    t_final: f64,
    dt: f64,
) -> Result<QuadraticPhase> {
    let dim = alpha0.dim();
    let pot = QuadraticPotentialSpec::new(dim, move |_| Matrix::zeros(dim), e_vec, |_| 0.0)?;
    let phase =
        solve_quadratic_eikonal(&pot, Matrix::zeros(dim), alpha0, beta0, 0.0, false, t_final, dt)?;
    fundamental_matrix(&phase)
}

/// Max |∂_tφ + ½|∇φ|² + V_quad (+ ghost term)| over a fixed random probe
/// set, with ∂_t from five-point differencing of stored samples. Returns
/// `None` when fewer than five samples exist.
fn hamilton_jacobi_residual(
    phase: &QuadraticPhase,
    pot: &QuadraticPotentialSpec,
) -> Result<Option<f64>> {
    let n = phase.len();
    if n < 5 {
        return Ok(None);
    }
    let dim = phase.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(HJ_PROBE_SEED);
    let probes: Vec<Vector> = (0..HJ_PROBE_COUNT)
        .map(|_| {
            let mut x = Vector::zeros(dim);
            for i in 0..dim {
                x.set(i, rng.gen_range(-1.0..1.0));
            }
            x
        })
        .collect();
    let dt = phase.times[1] - phase.times[0];

    let value = |k: usize, x: &Vector| phase.m[k].quad_form(x) + phase.alpha[k].dot(x) + phase.beta[k];

    let mut worst: f64 = 0.0;
    for k in 2..n - 2 {
        let t = phase.times[k];
        for x in &probes {
            let dphi_dt =
                (-value(k + 2, x) + 8.0 * value(k + 1, x) - 8.0 * value(k - 1, x) + value(k - 2, x))
                    / (12.0 * dt);
            let grad = phase.m[k].mul_vec(x) * 2.0 + phase.alpha[k];
            let mut res = dphi_dt + 0.5 * grad.norm_sq() + pot.eval(t, x)?;
            if phase.ghost_enabled {
                res += phase.q / (2.0 * dim as f64) * (((-2.0 * phase.g[k]).exp()) - 1.0) * x.norm_sq();
            }
            worst = worst.max(res.abs());
        }
    }
    Ok(Some(worst))
}

/// Four-point interpolation weights for the midpoint of interval `i` in an
/// array of `n` uniform samples, as (start index, weights).
fn midpoint_stencil(i: usize, n: usize) -> (usize, [f64; 4]) {
    debug_assert!(i + 1 < n);
    if n < 4 {
        // Degenerate short trajectory; linear midpoint.
        return (i, [0.5, 0.5, 0.0, 0.0]);
    }
    if i == 0 {
        (0, [0.3125, 0.9375, -0.3125, 0.0625])
    } else if i + 2 >= n {
        (n - 4, [0.0625, -0.3125, 0.9375, 0.3125])
    } else {
        (i - 1, [-0.0625, 0.5625, 0.5625, -0.0625])
    }
}

fn interp_matrix(samples: &[Matrix], start: usize, w: &[f64; 4]) -> Matrix {
    let mut out = Matrix::zeros(samples[0].dim());
    for (k, wk) in w.iter().enumerate() {
        if *wk != 0.0 && start + k < samples.len() {
            out = out + samples[start + k] * *wk;
        }
    }
    out
}

fn interp_vector(samples: &[Vector], start: usize, w: &[f64; 4]) -> Vector {
    let mut out = Vector::zeros(samples[0].dim());
    for (k, wk) in w.iter().enumerate() {
        if *wk != 0.0 && start + k < samples.len() {
            out = out + samples[start + k] * *wk;
        }
    }
    out
}

/// Fills the characteristic flow x(t,y) = Φ(t)y + shift(t) by integrating
///
///   Φ̇ = 2M(t)Φ, Φ(0) = I,     ṡ = 2M(t)s + α(t), s(0) = 0,
///
/// over the stored samples. Midpoint values of M and α come from cubic
/// interpolation, keeping the one-step method at full order. Φ is stored
/// directly (not a matrix logarithm); det Φ is checked at every sample and
/// the first drop below threshold sets `focusing_time`.
pub fn fundamental_matrix(phase: &QuadraticPhase) -> Result<QuadraticPhase> {
    let n = phase.len();
    if n < 2 {
        return Err(EikonalError::Parameter("phase holds fewer than two samples".into()));
    }
    let dim = phase.dim();
    let mut out = phase.clone();
    out.phi = Vec::with_capacity(n);
    out.shift = Vec::with_capacity(n);
    out.focusing_time = None;

    let mut phi = Matrix::identity(dim);
    let mut shift = Vector::zeros(dim);
    out.phi.push(phi);
    out.shift.push(shift);

    for i in 0..n - 1 {
        let dt = phase.times[i + 1] - phase.times[i];
        let (start, w) = midpoint_stencil(i, n);
        let m_mid = interp_matrix(&phase.m, start, &w);
        let a_mid = interp_vector(&phase.alpha, start, &w);
        let stages = [
            (phase.m[i], phase.alpha[i]),
            (m_mid, a_mid),
            (phase.m[i + 1], phase.alpha[i + 1]),
        ];

        let rhs = |stage: usize, p: &Matrix, s: &Vector| -> (Matrix, Vector) {
            let (m, a) = &stages[stage];
            ((*m * *p) * 2.0, m.mul_vec(s) * 2.0 + *a)
        };

        let (k1p, k1s) = rhs(0, &phi, &shift);
        let (k2p, k2s) = rhs(1, &(phi + k1p * (0.5 * dt)), &(shift + k1s * (0.5 * dt)));
        let (k3p, k3s) = rhs(1, &(phi + k2p * (0.5 * dt)), &(shift + k2s * (0.5 * dt)));
        let (k4p, k4s) = rhs(2, &(phi + k3p * dt), &(shift + k3s * dt));

        phi = phi + (k1p + (k2p + k3p) * 2.0 + k4p) * (dt / 6.0);
        shift = shift + (k1s + (k2s + k3s) * 2.0 + k4s) * (dt / 6.0);
        out.phi.push(phi);
        out.shift.push(shift);

        if out.focusing_time.is_none() && phi.det() <= FOCUS_DET_THRESHOLD {
            out.focusing_time = Some(phase.times[i + 1]);
        }
    }
    Ok(out)
}
