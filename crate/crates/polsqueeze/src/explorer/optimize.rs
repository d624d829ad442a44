//! Grid-plus-golden-section minimization of the `S1` squeezing factor.
//!
//! The objective `1/sqrt(R(theta, u))` at fixed `T` is smooth, cheap, and
//! two-dimensional, so a coarse scan over `theta in [0, pi/2]` and the phase
//! sum `u in [0, 2*pi)` followed by coordinate-wise golden-section refinement
//! is both simple and reliable; no gradients needed.

use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::analytic;
use crate::error::{Error, Result};
use crate::input::{CoherentInput, InteractionTime};

/// Default scan resolution: a 721-line theta grid over `[0, pi/2]` with the
/// phase-sum grid at twice the step (1441 lines over the full circle).
pub const DEFAULT_GRID_RESOLUTION: f64 = FRAC_PI_2 / 720.0;

/// Location and value of the minimal squeezing factor at fixed `T`.
#[derive(Debug, Clone, Serialize)]
pub struct OptimumReport {
    pub time: f64,
    /// Optimal mixing angle, radians.
    pub theta_star: f64,
    /// Optimal phase sum `u = phi_x + phi_y`, radians.
    pub phase_sum_star: f64,
    pub factor_min: f64,
    pub degree_max: f64,
    pub grid_resolution: f64,
    /// All grid cells within `1e-9` of the best grid value, as `(theta, u)`
    /// pairs in lexicographic order; the refined answer starts from the first.
    pub all_optima: Vec<(f64, f64)>,
}

/// Squeezing factor along `S1` as a function of `(theta, u)` at fixed time.
/// The amplitude drops out of the ratio, so any positive value works here.
fn factor_at(theta: f64, phase_sum: f64, time: InteractionTime) -> f64 {
    let input = CoherentInput::new(1.0, theta, 0.0, phase_sum)
        .expect("scan angles are finite by construction");
    analytic::s1_factor(&input, time)
}

/// Minimize the `S1` squeezing factor over `theta in [0, pi/2]`,
/// `u in [0, 2*pi)` by grid scan plus golden-section refinement on each axis.
///
/// `grid_resolution` bounds the theta step (the periodic `u` axis uses twice
/// the step) and must lie in `(0, 0.1]`.
pub fn optimize_factor(time: InteractionTime, grid_resolution: f64) -> Result<OptimumReport> {
    if time.is_zero() {
        return Err(Error::DegenerateOptimum);
    }
    if !(grid_resolution > 0.0 && grid_resolution <= 0.1) {
        return Err(Error::invalid(
            "grid_resolution",
            format!("must lie in (0, 0.1], got {grid_resolution}"),
        ));
    }

    let theta_cells = (FRAC_PI_2 / grid_resolution).ceil() as usize;
    let theta_step = FRAC_PI_2 / theta_cells as f64;
    let u_cells = (TAU / (2.0 * grid_resolution)).ceil() as usize;
    let u_step = TAU / u_cells as f64;

    let mut best = f64::INFINITY;
    let mut best_cell = (0usize, 0usize);
    let mut values = Vec::with_capacity((theta_cells + 1) * u_cells);
    for i in 0..=theta_cells {
        let theta = i as f64 * theta_step;
        for j in 0..u_cells {
            let u = j as f64 * u_step;
            let f = factor_at(theta, u, time);
            values.push(f);
            if f < best {
                best = f;
                best_cell = (i, j);
            }
        }
    }

    let all_optima: Vec<(f64, f64)> = (0..=theta_cells)
        .flat_map(|i| (0..u_cells).map(move |j| (i, j)))
        .filter(|&(i, j)| values[i * u_cells + j] <= best + 1e-9)
        .map(|(i, j)| (i as f64 * theta_step, j as f64 * u_step))
        .collect();

    // Coordinate-wise golden-section refinement from the best grid cell.
    let mut theta = best_cell.0 as f64 * theta_step;
    let mut u = best_cell.1 as f64 * u_step;
    for _ in 0..3 {
        let (a, b) = (
            (theta - theta_step).max(0.0),
            (theta + theta_step).min(FRAC_PI_2),
        );
        theta = golden_min(|x| factor_at(x, u, time), a, b);
        // u is periodic; the bracket may cross the seam unreduced.
        u = golden_min(|x| factor_at(theta, x, time), u - u_step, u + u_step);
    }
    let u = u.rem_euclid(TAU);
    let factor_min = factor_at(theta, u, time);

    Ok(OptimumReport {
        time: time.value(),
        theta_star: theta,
        phase_sum_star: u,
        factor_min,
        degree_max: 1.0 - factor_min,
        grid_resolution,
        all_optima,
    })
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > 1e-12 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        x1
    } else {
        x2
    }
}
