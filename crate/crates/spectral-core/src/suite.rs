//! Randomized verification suite for the operator layer.
//!
//! Each sample draws a band-limited mean-free real field and checks, through
//! the public operator entry points rather than shortcut formulas:
//!
//!  (i)  the cutoff bound ‖(I−J_h)φ‖_{L²} + ‖(I−J_h²)φ‖_{L²} ≤ 2h‖∇φ‖_{L²},
//!       asserted with no tolerance: the symbols vanish on |ξ| ≤ 1/h and are
//!       dominated by h|ξ| on their support, and the worst per-mode ratio of
//!       the two sides is near 1/2, far above round-off;
//!  (ii) the plateau identity J_hφ = φ for φ band-limited strictly below 1/h;
//!  (iii) the ratio ‖φ‖_{L∞}/‖∇φ‖_{H^{s−1}} across two resolutions, which
//!       should stay bounded as the grid refines;
//!
//! plus the relative residual of the Poisson inversion measured by applying
//! the discrete Laplacian to the returned potential.

use crate::calculus::{band_project, gradient, laplacian};
use crate::error::Result;
use crate::field::SpectralField;
use crate::grid::Grid;
use crate::multiplier::{apply_multiplier, MultiplierSymbol};
use crate::norms::{norm_hs_vec, norm_l2, norm_l2_vec, norm_linf};
use crate::poisson::solve_poisson;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CUTOFF_WIDTHS: [f64; 3] = [0.25, 0.5, 1.0];
const GENERATION_BAND: i64 = 5;
const RATIO_ORDER: f64 = 2.0;
const RATIO_GROWTH_FACTOR: f64 = 1.5;

/// Outcome of [`check_inequality_suite`].
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    /// One line per violated assertion, naming the sample and parameters.
    pub failures: Vec<String>,
    /// Worst observed LHS/RHS quotient of the cutoff bound (must stay < 1).
    pub worst_cutoff_quotient: f64,
    /// Worst relative deviation of J_hφ from φ on plateau-band fields.
    pub worst_plateau_error: f64,
    /// Worst relative Poisson residual ‖ΔV − q(φ−mean)‖/‖q(φ−mean)‖.
    pub worst_poisson_residual: f64,
    /// (points_per_axis, worst L∞ / ‖∇φ‖_{H^{s−1}} ratio) per resolution.
    pub linf_ratio_by_resolution: Vec<(usize, f64)>,
    /// Set when the ratio grows by more than 50% from the coarse grid to the fine.
    pub ratio_growth_flagged: bool,
}

/// Draws a real, mean-free field supported on axis modes |m| ≤ `band`.
fn random_band_limited(grid: Grid, band: i64, rng: &mut ChaCha8Rng) -> SpectralField {
    let noise: Vec<Complex64> =
        (0..grid.len()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
    let f = SpectralField::from_values(grid, noise).expect("length matches");
    let f = band_project(&f, band);
    let mean = f.mean();
    f.map(|v| v - mean)
}

/// Truncates to the Euclidean wavenumber ball |ξ| < radius.
fn radial_project(f: &SpectralField, radius: f64) -> SpectralField {
    let grid = *f.grid();
    let k = grid.wavenumbers();
    let mut coeffs = f.to_coeffs();
    grid.for_each_flat(|flat, idx| {
        let k2: f64 = (0..grid.dim()).map(|a| k[idx[a]] * k[idx[a]]).sum();
        if k2.sqrt() >= radius {
            coeffs[flat] = Complex64::new(0.0, 0.0);
        }
    });
    SpectralField::from_coeffs(grid, coeffs).expect("length preserved")
}

/// Runs the full randomized suite. Failures never panic; they are collected
/// into the report together with the seed that produced them.
pub fn check_inequality_suite(samples: usize, seed: u64) -> Result<InequalityReport> {
    let grids = [Grid::new(3, 16, 4.0 * std::f64::consts::PI)?, Grid::new(3, 32, 4.0 * std::f64::consts::PI)?];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut failures = Vec::new();
    let mut worst_cutoff_quotient: f64 = 0.0;
    let mut worst_plateau_error: f64 = 0.0;
    let mut worst_poisson_residual: f64 = 0.0;
    let mut ratio_per_grid = vec![0.0f64; grids.len()];

    for sample in 0..samples {
        for (gi, grid) in grids.iter().enumerate() {
            let phi = random_band_limited(*grid, GENERATION_BAND, &mut rng);
            let grad = gradient(&phi);
            let grad_l2 = norm_l2_vec(&grad);

            // (i) cutoff bound through the operator entry points.
            for h in CUTOFF_WIDTHS {
                let jh = apply_multiplier(&phi, &MultiplierSymbol::mollifier(h)?)?;
                let jh2 = apply_multiplier(&phi, &MultiplierSymbol::mollifier_squared(h)?)?;
                let lhs = norm_l2(&(&phi - &jh)) + norm_l2(&(&phi - &jh2));
                let rhs = 2.0 * h * grad_l2;
                if lhs > rhs {
                    failures.push(format!(
                        "sample {sample} n={} h={h}: cutoff bound violated, lhs={lhs:e} rhs={rhs:e}",
                        grid.points_per_axis()
                    ));
                }
                if rhs > 0.0 {
                    worst_cutoff_quotient = worst_cutoff_quotient.max(lhs / rhs);
                }

                // (ii) plateau identity on a field strictly below 1/h.
                let plateau = radial_project(&phi, 1.0 / h);
                let plateau_norm = norm_l2(&plateau);
                if plateau_norm > 0.0 {
                    let moved = apply_multiplier(&plateau, &MultiplierSymbol::mollifier(h)?)?;
                    let err = norm_l2(&(&moved - &plateau)) / plateau_norm;
                    worst_plateau_error = worst_plateau_error.max(err);
                    if err > 1e-12 {
                        failures.push(format!(
                            "sample {sample} n={} h={h}: plateau identity broke, rel err {err:e}",
                            grid.points_per_axis()
                        ));
                    }
                }
            }

            // (iii) Lemma-type L∞ control by the gradient.
            let denom = norm_hs_vec(&grad, RATIO_ORDER - 1.0)?;
            if denom > 0.0 {
                let ratio = norm_linf(&phi) / denom;
                ratio_per_grid[gi] = ratio_per_grid[gi].max(ratio);
            }

            // Poisson residual through solve → Laplacian round trip.
            let q = 1.0 + rng.gen_range(0.0..2.0);
            let sol = solve_poisson(&phi, q);
            let mean = sol.subtracted_mean;
            let target = phi.map(|v| q * (v - mean));
            let target_norm = norm_l2(&target);
            if target_norm > 0.0 {
                let resid = norm_l2(&(&laplacian(&sol.potential) - &target)) / target_norm;
                worst_poisson_residual = worst_poisson_residual.max(resid);
                if resid > 1e-10 {
                    failures.push(format!(
                        "sample {sample} n={}: poisson residual {resid:e} above 1e-10",
                        grid.points_per_axis()
                    ));
                }
            }
        }
    }

    let linf_ratio_by_resolution: Vec<(usize, f64)> =
        grids.iter().map(|g| g.points_per_axis()).zip(ratio_per_grid).collect();
    let ratio_growth_flagged = linf_ratio_by_resolution
        .windows(2)
        .any(|w| w[1].1 > RATIO_GROWTH_FACTOR * w[0].1 && w[0].1 > 0.0);
    if ratio_growth_flagged {
        failures.push(format!(
            "L∞/H^{{s-1}} ratio grew beyond {RATIO_GROWTH_FACTOR}x across resolutions: {linf_ratio_by_resolution:?}"
        ));
    }

    Ok(InequalityReport {
        samples,
        seed,
        passed: failures.is_empty(),
        failures,
        worst_cutoff_quotient,
        worst_plateau_error,
        worst_poisson_residual,
        linf_ratio_by_resolution,
        ratio_growth_flagged,
    })
}
