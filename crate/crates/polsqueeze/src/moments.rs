//! Stokes moments: expectation values and (co)variances of the quantum Stokes
//! operators, with an explicit distinction between moments that carry the full
//! 3x3 covariance matrix and moments that carry principal variances only.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};

/// Where a set of moments came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentSource {
    /// Closed-form evaluation.
    Analytic,
    /// Truncated Fock-space measurement.
    FockOracle,
}

/// Covariance information for `(S1, S2, S3)`.
///
/// The closed forms supply the principal variances `V1, V2, V3` only; the
/// off-diagonal entries are genuinely not provided by that route (they are
/// not zero in general) and asking for a non-principal direction is an error.
/// The Fock verifier measures the full symmetrized matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Covariance {
    /// Principal variances `[V1, V2, V3]`; off-diagonals not provided.
    Principal([f64; 3]),
    /// Full symmetrized covariance, `C_jk = <{S_j,S_k}>/2 - <S_j><S_k>`.
    Full(Matrix3<f64>),
}

impl Covariance {
    /// Principal variances (the diagonal, for the full form).
    pub fn principal(&self) -> [f64; 3] {
        match self {
            Covariance::Principal(v) => *v,
            Covariance::Full(m) => [m[(0, 0)], m[(1, 1)], m[(2, 2)]],
        }
    }

    /// Full matrix if available.
    pub fn full(&self) -> Option<&Matrix3<f64>> {
        match self {
            Covariance::Principal(_) => None,
            Covariance::Full(m) => Some(m),
        }
    }

    /// Variance along the unit vector `n`: the quadratic form `n^T C n`.
    ///
    /// For principal-only covariance, `n` must coincide with a signed
    /// coordinate axis to within `1e-12`.
    pub fn along(&self, n: &Vector3<f64>) -> Result<f64> {
        match self {
            Covariance::Full(m) => Ok((n.transpose() * m * n)[(0, 0)]),
            Covariance::Principal(v) => match principal_axis(n) {
                Some(axis) => Ok(v[axis]),
                None => Err(Error::UnsupportedDirection(n.x, n.y, n.z)),
            },
        }
    }
}

/// Index of the signed coordinate axis `n` coincides with, if any.
pub(crate) fn principal_axis(n: &Vector3<f64>) -> Option<usize> {
    const TOL: f64 = 1e-12;
    for axis in 0..3 {
        let others = (n[(axis + 1) % 3]).abs().max((n[(axis + 2) % 3]).abs());
        if (n[axis].abs() - 1.0).abs() <= TOL && others <= TOL {
            return Some(axis);
        }
    }
    None
}

/// First and second moments of the Stokes operators for one state.
#[derive(Debug, Clone, PartialEq)]
pub struct StokesMoments {
    /// `<S0>`: mean total photon number.
    pub s0: f64,
    /// `(<S1>, <S2>, <S3>)`.
    pub s_vec: Vector3<f64>,
    pub covariance: Covariance,
    pub source: MomentSource,
}

impl StokesMoments {
    /// Principal variances `[V1, V2, V3]`.
    pub fn variances(&self) -> [f64; 3] {
        self.covariance.principal()
    }

    /// `|<S>|`, the length of the mean Stokes vector.
    pub fn polarization_magnitude(&self) -> f64 {
        self.s_vec.norm()
    }
}

/// Deviation between two values of the same physical quantity, scaled so that
/// quantities of order one and above compare relatively while values near zero
/// compare absolutely: `|a - b| / max(abs_floor, |a|, |b|)`.
///
/// With the default floor `1e-2`, a deviation of `1e-6` corresponds to a
/// relative error of `1e-6` for O(1) values and an absolute error of `1e-8`
/// near zero.
pub fn scaled_deviation(a: f64, b: f64, abs_floor: f64) -> f64 {
    (a - b).abs() / abs_floor.max(a.abs()).max(b.abs())
}

/// Default floor for [`scaled_deviation`].
pub const DEFAULT_ABS_FLOOR: f64 = 1e-2;

/// Per-quantity scaled deviations between two moment sets, plus their maximum.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentDeltas {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub max: f64,
}

impl MomentDeltas {
    pub fn between(a: &StokesMoments, b: &StokesMoments, abs_floor: f64) -> Self {
        let va = a.variances();
        let vb = b.variances();
        let d = |x: f64, y: f64| scaled_deviation(x, y, abs_floor);
        let deltas = [
            d(a.s0, b.s0),
            d(a.s_vec.x, b.s_vec.x),
            d(a.s_vec.y, b.s_vec.y),
            d(a.s_vec.z, b.s_vec.z),
            d(va[0], vb[0]),
            d(va[1], vb[1]),
            d(va[2], vb[2]),
        ];
        let max = deltas.iter().cloned().fold(0.0, f64::max);
        Self {
            s0: deltas[0],
            s1: deltas[1],
            s2: deltas[2],
            s3: deltas[3],
            v1: deltas[4],
            v2: deltas[5],
            v3: deltas[6],
            max,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_axis_detection() {
        assert_eq!(principal_axis(&Vector3::new(1.0, 0.0, 0.0)), Some(0));
        assert_eq!(principal_axis(&Vector3::new(0.0, -1.0, 0.0)), Some(1));
        assert_eq!(principal_axis(&Vector3::new(0.0, 1e-13, 1.0)), Some(2));
        assert_eq!(principal_axis(&Vector3::new(0.6, 0.8, 0.0)), None);
    }

    #[test]
    fn principal_covariance_rejects_oblique_directions() {
        let cov = Covariance::Principal([1.0, 2.0, 3.0]);
        assert_eq!(cov.along(&Vector3::new(0.0, 0.0, -1.0)).unwrap(), 3.0);
        let n = Vector3::new(0.0, 1.0, 1.0).normalize();
        assert!(matches!(cov.along(&n), Err(Error::UnsupportedDirection(..))));
    }

    #[test]
    fn full_covariance_quadratic_form() {
        let m = Matrix3::new(2.0, 0.5, 0.0, 0.5, 3.0, 1.0, 0.0, 1.0, 4.0);
        let cov = Covariance::Full(m);
        let n = Vector3::new(0.0, 1.0, 1.0).normalize();
        // (V2 + V3 + 2*C23) / 2
        let expected = (3.0 + 4.0 + 2.0) / 2.0;
        assert!((cov.along(&n).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn scaled_deviation_regimes() {
        // relative for O(1) values
        assert!((scaled_deviation(100.0, 100.0001, DEFAULT_ABS_FLOOR) - 1e-6).abs() < 1e-12);
        // absolute (scaled by the floor) near zero
        assert!((scaled_deviation(0.0, 1e-8, DEFAULT_ABS_FLOOR) - 1e-6).abs() < 1e-12);
    }
}
