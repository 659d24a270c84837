//! In-place n-dimensional FFT on cubic grids, composed from cached 1-D plans.
//!
//! `forward` maps physical samples to Fourier coefficients with the 1/N
//! normalization, so f(xⱼ) = Σₘ cₘ e^{i kₘ·xⱼ} holds exactly and c₀ is the
//! sample mean. `inverse` is the exact inverse (no scaling of its own).
//! Plans are cached per line length behind a lock; the transforms themselves
//! only share immutable plan handles, so independent fields may be
//! transformed concurrently.

use crate::grid::Grid;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type PlanPair = (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>);

fn plans(n: usize) -> PlanPair {
    static CACHE: OnceLock<Mutex<HashMap<usize, PlanPair>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("fft plan cache poisoned");
    map.entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
        })
        .clone()
}

/// Runs `fft` along every axis of the row-major cube `values`.
fn transform_all_axes(grid: &Grid, values: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
    let n = grid.points_per_axis();
    debug_assert_eq!(values.len(), grid.len());
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];

    // Last axis: lines are contiguous, rustfft batches all of them in one call.
    fft.process_with_scratch(values, &mut scratch);

    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let mut run_line = |values: &mut [Complex64], start: usize, stride: usize| {
        for (i, slot) in line.iter_mut().enumerate() {
            *slot = values[start + i * stride];
        }
        fft.process_with_scratch(&mut line, &mut scratch);
        for (i, slot) in line.iter().enumerate() {
            values[start + i * stride] = *slot;
        }
    };

    match grid.dim() {
        1 => {}
        2 => {
            // Axis 0, stride n.
            for j in 0..n {
                run_line(values, j, n);
            }
        }
        _ => {
            // Axis 1, stride n.
            for j0 in 0..n {
                for j2 in 0..n {
                    run_line(values, j0 * n * n + j2, n);
                }
            }
            // Axis 0, stride n².
            for j1 in 0..n {
                for j2 in 0..n {
                    run_line(values, j1 * n + j2, n * n);
                }
            }
        }
    }
}

/// Physical samples → Fourier coefficients (1/N normalization).
pub fn forward(grid: &Grid, values: &mut [Complex64]) {
    let (fwd, _) = plans(grid.points_per_axis());
    transform_all_axes(grid, values, &fwd);
    let scale = 1.0 / grid.len() as f64;
    for v in values.iter_mut() {
        *v *= scale;
    }
}

/// Fourier coefficients → physical samples.
pub fn inverse(grid: &Grid, values: &mut [Complex64]) {
    let (_, inv) = plans(grid.points_per_axis());
    transform_all_axes(grid, values, &inv);
}
