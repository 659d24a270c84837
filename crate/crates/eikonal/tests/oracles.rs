//! Oracle tests for the eikonal solvers against closed-form solutions.
//!
//! Each closed form is first re-verified inside the test by substitution
//! into its defining equation (finite differences in t), so the reference
//! values are independent of the integrator being checked.

use eikonal::*;

fn vec3(x: f64, y: f64, z: f64) -> Vector {
    Vector::from_slice(3, &[x, y, z])
}

/// Central finite-difference derivative for substitution checks.
fn fd_derivative(f: impl Fn(f64) -> f64, t: f64) -> f64 {
    let h = 1e-6;
    (f(t + h) - f(t - h)) / (2.0 * h)
}

#[test]
fn linear_phase_under_constant_field() {
    // E ≡ e₁, α₀ = 0, β₀ = 0 gives α(t) = (−t,0,0), β(t) = −t³/6.
    let phase = solve_linear_eikonal(|_| vec3(1.0, 0.0, 0.0), Vector::zeros(3), 0.0, 1.0, 1e-3).unwrap();
    let mut worst_alpha: f64 = 0.0;
    let mut worst_beta: f64 = 0.0;
    let mut worst_shift: f64 = 0.0;
    for (k, &t) in phase.times.iter().enumerate() {
        worst_alpha = worst_alpha.max((phase.alpha[k] - vec3(-t, 0.0, 0.0)).max_abs());
        worst_beta = worst_beta.max((phase.beta[k] - (-t * t * t / 6.0)).abs());
        // Φ ≡ I and shift(t) = ∫α = (−t²/2, 0, 0): the translation flow.
        assert!((phase.phi[k] - Matrix::identity(3)).max_abs() <= 1e-12);
        worst_shift = worst_shift.max((phase.shift[k] - vec3(-t * t / 2.0, 0.0, 0.0)).max_abs());
    }
    assert!(worst_alpha <= 1e-10, "alpha deviation {worst_alpha:e}");
    assert!(worst_beta <= 1e-10, "beta deviation {worst_beta:e}");
    assert!(worst_shift <= 1e-10, "shift deviation {worst_shift:e}");
    assert!(phase.g.iter().all(|&g| g == 0.0));
}

#[test]
fn linear_phase_under_pure_drift() {
    // E ≡ 0, α₀ = e₁: α stays put and β(t) = −t/2.
    let phase =
        solve_linear_eikonal(|_| Vector::zeros(3), vec3(1.0, 0.0, 0.0), 0.0, 1.0, 1e-3).unwrap();
    for (k, &t) in phase.times.iter().enumerate() {
        assert!((phase.alpha[k] - vec3(1.0, 0.0, 0.0)).max_abs() <= 1e-12);
        assert!((phase.beta[k] - (-t / 2.0)).abs() <= 1e-10);
        assert!((phase.shift[k] - vec3(t, 0.0, 0.0)).max_abs() <= 1e-10);
    }
}

#[test]
fn linear_phase_with_only_offset_is_constant() {
    let phase = solve_linear_eikonal(|_| Vector::zeros(3), Vector::zeros(3), 3.0, 0.5, 1e-3).unwrap();
    let points = vec![Vector::zeros(3), vec3(1.0, -2.0, 0.5)];
    for &t in &[0.0, 0.25, 0.5] {
        for v in eval_phase(&phase, t, &points).unwrap() {
            assert!((v - 3.0).abs() <= 1e-12);
        }
    }
}

/// m(t) = −½ tan t solves ṁ + 2m² + ½ = 0; checked by substitution here
/// before it is used as the reference anywhere.
fn harmonic_m(t: f64) -> f64 {
    -0.5 * t.tan()
}

#[test]
fn harmonic_closed_form_satisfies_riccati() {
    for &t in &[0.1, 0.5, 0.9, 1.15] {
        let residual = fd_derivative(harmonic_m, t) + 2.0 * harmonic_m(t).powi(2) + 0.5;
        assert!(residual.abs() <= 1e-9, "residual {residual:e} at t={t}");
        // Fundamental matrix closed form: d/dt cos = 2m·cos.
        let flow_residual = fd_derivative(f64::cos, t) - 2.0 * harmonic_m(t) * t.cos();
        assert!(flow_residual.abs() <= 1e-9);
        // Ghost trace closed form: d/dt (3/2)ln cos = 3m = Tr M.
        let trace_residual = fd_derivative(|s| 1.5 * s.cos().ln(), t) - 3.0 * harmonic_m(t);
        assert!(trace_residual.abs() <= 1e-8);
    }
}

fn solve_harmonic(ghost: bool, q: f64, t_final: f64, dt: f64) -> QuadraticPhase {
    let pot = QuadraticPotentialSpec::harmonic(3, 0.5).unwrap();
    solve_quadratic_eikonal(&pot, Matrix::zeros(3), Vector::zeros(3), 0.0, q, ghost, t_final, dt)
        .unwrap()
}

#[test]
fn harmonic_riccati_matches_closed_form() {
    let phase = solve_harmonic(false, 0.0, 1.2, 1e-3);
    assert!(phase.blow_up_time.is_none());
    let mut worst_m: f64 = 0.0;
    let mut worst_g: f64 = 0.0;
    for (k, &t) in phase.times.iter().enumerate() {
        worst_m = worst_m.max((phase.m[k] - Matrix::scalar(3, harmonic_m(t))).max_abs());
        worst_g = worst_g.max((phase.g[k] - 1.5 * t.cos().ln()).abs());
        assert!((phase.beta[k]).abs() <= 1e-12);
    }
    assert!(worst_m <= 1e-8, "M deviation {worst_m:e}");
    assert!(worst_g <= 1e-8, "g deviation {worst_g:e}");
}

#[test]
fn harmonic_fundamental_matrix_is_cosine() {
    let phase = fundamental_matrix(&solve_harmonic(false, 0.0, 1.2, 1e-3)).unwrap();
    assert!(phase.focusing_time.is_none());
    let mut worst: f64 = 0.0;
    for (k, &t) in phase.times.iter().enumerate() {
        worst = worst.max((phase.phi[k] - Matrix::scalar(3, t.cos())).max_abs());
    }
    assert!(worst <= 1e-8, "Phi deviation {worst:e}");
}

#[test]
fn ghost_forcing_vanishes_on_trace_free_data() {
    let pot = QuadraticPotentialSpec::zero(3).unwrap();
    let phase = solve_quadratic_eikonal(
        &pot,
        Matrix::zeros(3),
        vec3(1.0, 0.0, 0.0),
        0.5,
        2.0,
        true,
        1.0,
        1e-3,
    )
    .unwrap();
    for (k, &t) in phase.times.iter().enumerate() {
        assert!(phase.m[k].max_abs() <= 1e-12);
        assert!((phase.alpha[k] - vec3(1.0, 0.0, 0.0)).max_abs() <= 1e-12);
        assert!((phase.beta[k] - (0.5 - 0.5 * t)).abs() <= 1e-10);
        assert!(phase.g[k].abs() <= 1e-12);
    }
}

#[test]
fn ghost_correction_changes_the_trajectory() {
    let on = solve_harmonic(true, 1.0, 1.0, 1e-3);
    let off = solve_harmonic(false, 1.0, 1.0, 1e-3);
    let k = on.times.len() - 1;
    assert!((on.times[k] - 1.0).abs() <= 1e-12);
    let diff = (on.m[k] - off.m[k]).frobenius();
    assert!(diff > 1e-3, "ghost correction too small: {diff:e}");
}

#[test]
fn ghost_hamilton_jacobi_residual_is_small() {
    // The horizon stays at 1.0, where the probe stencil resolves the
    // trajectory; past that the quartic truncation of the time stencil
    // inflates the measurement (it shrinks 16x per dt halving there).
    let phase = solve_harmonic(true, 1.0, 1.0, 1e-3);
    let residual = phase.hj_residual.expect("enough samples for the residual");
    assert!(residual <= 1e-6, "residual {residual:e}");
    // Same check for the plain equation.
    let plain = solve_harmonic(false, 0.0, 1.2, 1e-3);
    assert!(plain.hj_residual.unwrap() <= 1e-6);
}

#[test]
fn halving_dt_gains_a_fourth_order_factor() {
    let errs: Vec<f64> = [2e-3, 1e-3]
        .iter()
        .map(|&dt| {
            let phase = solve_harmonic(false, 0.0, 1.2, dt);
            phase
                .times
                .iter()
                .enumerate()
                .map(|(k, &t)| (phase.m[k] - Matrix::scalar(3, harmonic_m(t))).max_abs())
                .fold(0.0, f64::max)
        })
        .collect();
    assert!(errs[0] / errs[1] >= 8.0, "convergence ratio {} too small", errs[0] / errs[1]);
}

#[test]
fn quadratic_solver_on_linear_data_matches_linear_solver() {
    let e_field = |t: f64| vec3(t.cos(), 0.1, -t);
    let alpha0 = vec3(0.2, -0.3, 0.0);
    let lin = solve_linear_eikonal(e_field, alpha0, 0.25, 1.0, 1e-3).unwrap();
    let pot = QuadraticPotentialSpec::new(3, |_| Matrix::zeros(3), e_field, |_| 0.0).unwrap();
    let quad =
        solve_quadratic_eikonal(&pot, Matrix::zeros(3), alpha0, 0.25, 0.0, false, 1.0, 1e-3).unwrap();
    for k in 0..lin.times.len() {
        assert!((lin.alpha[k] - quad.alpha[k]).max_abs() <= 1e-9);
        assert!((lin.beta[k] - quad.beta[k]).abs() <= 1e-9);
        assert!(quad.m[k].max_abs() <= 1e-12);
    }
}

#[test]
fn symmetry_is_preserved_under_time_dependent_q() {
    let pot = QuadraticPotentialSpec::new(
        2,
        |t: f64| Matrix::from_fn(2, |i, j| if i == j { 1.0 - 0.5 * i as f64 } else { 0.3 * t.sin() }),
        |_| Vector::zeros(2),
        |_| 0.0,
    )
    .unwrap();
    let m0 = Matrix::from_fn(2, |i, j| if i == j { 0.1 } else { 0.05 });
    let phase =
        solve_quadratic_eikonal(&pot, m0, Vector::zeros(2), 0.0, 0.0, false, 1.0, 1e-3).unwrap();
    for m in &phase.m {
        assert!(m.sym_defect() <= 1e-10);
    }
}

#[test]
fn ghost_trace_matches_independent_quadrature() {
    // g is accumulated as Tr ∫M by the integrator; composite Simpson over
    // the stored samples of ½Δφ_eik = Tr M must reproduce it.
    let phase = solve_harmonic(false, 0.0, 0.8, 1e-3);
    let dt = phase.times[1] - phase.times[0];
    let f: Vec<f64> = phase.m.iter().map(|m| m.trace()).collect();
    let mut acc = 0.0;
    let mut worst: f64 = 0.0;
    for k in (2..f.len()).step_by(2) {
        acc += dt / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
        worst = worst.max((acc - phase.g[k]).abs());
    }
    assert!(worst <= 1e-10, "quadrature disagreement {worst:e}");
}

#[test]
fn riccati_blow_up_is_flagged_with_last_valid_time() {
    let phase = solve_harmonic(false, 0.0, 2.0, 1e-3);
    let t_stop = phase.blow_up_time.expect("tan blows up before t = 2");
    assert!(t_stop > 1.4 && t_stop < 1.6, "blow-up at {t_stop}");
    assert!(phase.t_final() <= t_stop + 1e-12);
}

#[test]
fn characteristic_focusing_is_flagged() {
    // Repulsive Q = −8I with M₀ = −2I is a Riccati fixed point, so M stays
    // bounded while det Φ = e^{−12t} crosses the focusing threshold 1e−8
    // at t = ln(1e8)/12 ≈ 1.535.
    let pot = QuadraticPotentialSpec::constant(Matrix::scalar(3, -8.0), Vector::zeros(3), 0.0).unwrap();
    let phase = solve_quadratic_eikonal(
        &pot,
        Matrix::scalar(3, -2.0),
        Vector::zeros(3),
        0.0,
        0.0,
        false,
        1.6,
        1e-3,
    )
    .unwrap();
    assert!(phase.blow_up_time.is_none());
    for m in &phase.m {
        assert!((*m - Matrix::scalar(3, -2.0)).max_abs() <= 1e-9);
    }
    let flow = fundamental_matrix(&phase).unwrap();
    let t_focus = flow.focusing_time.expect("det Phi crosses the threshold");
    assert!((t_focus - 1.535).abs() < 5e-3, "focusing at {t_focus}");
    // Phi itself follows the exponential closed form up to the flag.
    let k = flow.times.iter().position(|&t| (t - 1.0).abs() < 1e-9).unwrap();
    assert!((flow.phi[k] - Matrix::scalar(3, (-4.0f64).exp())).max_abs() <= 1e-8);
}

#[test]
fn coarse_steps_are_rejected() {
    let pot = QuadraticPotentialSpec::harmonic(3, 0.5).unwrap();
    let err = solve_quadratic_eikonal(
        &pot,
        Matrix::zeros(3),
        Vector::zeros(3),
        0.0,
        0.0,
        false,
        1.0,
        0.5,
    )
    .unwrap_err();
    assert!(matches!(err, EikonalError::StepSize { .. }), "got {err:?}");
}

#[test]
fn phase_evaluation_closed_forms() {
    // Affine phase: M = 0, α = e₁, β = 2 at t = 0.
    let phase = solve_linear_eikonal(|_| Vector::zeros(3), vec3(1.0, 0.0, 0.0), 2.0, 0.1, 1e-3).unwrap();
    let x = vec3(3.0, 1.0, 1.0);
    assert!((eval_phase(&phase, 0.0, &[x]).unwrap()[0] - 5.0).abs() <= 1e-12);
    let grad = eval_phase_gradient(&phase, 0.0, &[x]).unwrap()[0];
    assert!((grad - vec3(1.0, 0.0, 0.0)).max_abs() <= 1e-12);

    // At the origin the value is β(t) and the gradient is α(t).
    let origin = Vector::zeros(3);
    let t = 0.05;
    let v0 = eval_phase(&phase, t, &[origin]).unwrap()[0];
    assert!((v0 - phase.beta_at(t).unwrap()).abs() <= 1e-14);
    let g0 = eval_phase_gradient(&phase, t, &[origin]).unwrap()[0];
    assert!((g0 - phase.alpha_at(t).unwrap()).max_abs() <= 1e-14);

    // Harmonic phase at a stored sample, x = e₁: value m(t) + β(t).
    let h = solve_harmonic(false, 0.0, 1.0, 1e-3);
    let t = h.times[700];
    let v = eval_phase(&h, t, &[vec3(1.0, 0.0, 0.0)]).unwrap()[0];
    assert!((v - (harmonic_m(t) + h.beta[700])).abs() <= 1e-8);

    // Out-of-range times are rejected.
    assert!(eval_phase(&h, 1.2, &[origin]).is_err());
    assert!(eval_phase(&h, -0.2, &[origin]).is_err());
}

#[test]
fn interpolation_between_samples_is_linear() {
    let phase = solve_harmonic(false, 0.0, 1.0, 1e-2);
    let k = 37;
    let mid = 0.5 * (phase.times[k] + phase.times[k + 1]);
    let expect = (phase.m[k] + phase.m[k + 1]) * 0.5;
    assert!((phase.m_at(mid).unwrap() - expect).max_abs() <= 1e-14);
}

#[test]
fn csv_layout_is_pinned() {
    let phase = solve_linear_eikonal(
        |_| Vector::zeros(1),
        Vector::from_slice(1, &[1.0]),
        2.0,
        0.01,
        0.005,
    )
    .unwrap();
    let mut buf = Vec::new();
    write_phase_csv(&mut buf, &phase).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,m00,alpha0,beta,phi00,g");
    assert_eq!(lines[1], "0,0,1,2,1,0");
    assert_eq!(lines.len(), 1 + phase.times.len());

    // Identical input produces identical bytes.
    let mut buf2 = Vec::new();
    write_phase_csv(&mut buf2, &phase).unwrap();
    assert_eq!(text.as_bytes(), buf2);
}

#[test]
fn same_inputs_reproduce_bitwise() {
    let a = solve_harmonic(true, 1.0, 1.0, 1e-3);
    let b = solve_harmonic(true, 1.0, 1.0, 1e-3);
    for k in 0..a.times.len() {
        assert_eq!(a.m[k], b.m[k]);
        assert_eq!(a.beta[k], b.beta[k]);
        assert_eq!(a.g[k], b.g[k]);
    }
    assert_eq!(a.hj_residual, b.hj_residual);
}
