//! The no-squeezing band in the phase-sum/time plane at equal mode amplitudes.
//!
//! At `theta = pi/4` the `S1` squeezing factor is `1/(cosh 2T - sinh 2T sin u)`
//! with `u = phi_x + phi_y`; it drops below one exactly when
//! `sin u < tanh T`. The band of phase sums without squeezing is therefore
//! bounded by `phi_1 = arcsin(tanh T)` and `phi_2 = pi - phi_1`, collapsing as
//! `T` grows.

use serde::Serialize;

use crate::error::{Error, Result};

/// One row of the boundary curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySample {
    pub t: f64,
    /// Lower edge of the no-squeezing band, `arcsin(tanh T)`, radians.
    pub phi_1: f64,
    /// Upper edge, `pi - phi_1`, radians.
    pub phi_2: f64,
}

/// The squeezing-region boundary sampled on a uniform time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryCurve {
    pub samples: Vec<BoundarySample>,
}

/// Sample the boundary at `T = i * t_max / steps` for `i = 1..=steps`
/// (never at `T = 0`, where the band degenerates to the full half circle).
pub fn boundary_curve(t_max: f64, steps: usize) -> Result<BoundaryCurve> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::invalid("t_max", format!("must be finite and > 0, got {t_max}")));
    }
    if steps < 2 {
        return Err(Error::invalid("steps", format!("must be >= 2, got {steps}")));
    }
    let samples = (1..=steps)
        .map(|i| {
            let t = t_max * i as f64 / steps as f64;
            let phi_1 = t.tanh().asin();
            BoundarySample { t, phi_1, phi_2: std::f64::consts::PI - phi_1 }
        })
        .collect();
    Ok(BoundaryCurve { samples })
}
