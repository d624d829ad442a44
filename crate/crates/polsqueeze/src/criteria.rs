//! Polarization-squeezing criteria, the squeezing factor and degree, and the
//! decibel conversion.
//!
//! Four inequivalent criteria are evaluated for the Stokes component along a
//! unit direction `n` on the Poincaré sphere:
//!
//! - `chirkin`: `V_n < <S0>` — variance below the equally intense coherent
//!   state's.
//! - `heersink`: `V_n < |<S_perp>| < V_k` — variance bounds through the
//!   uncertainty relation of the orthogonal pair `(n_perp, k = n x n_perp)`.
//! - `luis_pair`: `V_n < |<S_perp>|` for the chosen perpendicular direction.
//! - `luis_max`: `V_n < sqrt(|<S>|^2 - <S_n>^2)` — the most stringent form,
//!   using the maximum of `|<S_perp>|` over all perpendicular directions.
//!
//! The perpendicular direction used for `heersink` and `luis_pair` is the
//! normalized projection of `<S>` orthogonal to `n` — exactly the maximizer —
//! which makes `luis_pair` coincide with `luis_max`. Assessments record that
//! choice in [`SqueezingAssessment::perp_direction`].

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::StokesMoments;

/// Mean transverse Stokes magnitudes below this are treated as unpolarized
/// along the assessed component, flagging the factor as not applicable.
pub const FACTOR_DENOMINATOR_FLOOR: f64 = 1e-12;

/// A unit direction on the Poincaré sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(Vector3<f64>);

impl Direction {
    /// Normalize an arbitrary nonzero finite vector to a unit direction.
    pub fn new(v: Vector3<f64>) -> Result<Self> {
        if !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()) {
            return Err(Error::invalid("direction", "components must be finite".to_string()));
        }
        let norm = v.norm();
        if norm < 1e-12 {
            return Err(Error::invalid(
                "direction",
                format!("vector norm {norm:.3e} too small to normalize"),
            ));
        }
        Ok(Self(v / norm))
    }

    /// The `S1` axis.
    pub fn x() -> Self {
        Self(Vector3::x())
    }

    /// The `S2` axis.
    pub fn y() -> Self {
        Self(Vector3::y())
    }

    /// The `S3` axis.
    pub fn z() -> Self {
        Self(Vector3::z())
    }

    pub fn vector(&self) -> &Vector3<f64> {
        &self.0
    }
}

/// Boolean outcomes of the four criteria. `heersink` needs the variance along
/// `n x n_perp`; with principal-only (analytic) covariance that variance is
/// unavailable unless the pair happens to line up with coordinate axes, in
/// which case the verdict is `None` rather than guessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub chirkin: bool,
    pub heersink: Option<bool>,
    pub luis_pair: bool,
    pub luis_max: bool,
}

/// Squeezing assessment of one Stokes component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqueezingAssessment {
    /// The assessed direction `n`.
    pub direction: [f64; 3],
    /// `V_n`, the variance along `n` (photon-number squared units).
    pub variance_along: f64,
    /// `sqrt(|<S>|^2 - <S_n>^2)`: the maximal perpendicular mean component.
    pub rhs_luis: f64,
    /// `V_n / rhs_luis`; `None` when the denominator is below
    /// [`FACTOR_DENOMINATOR_FLOOR`] (no criterion applies).
    pub factor: Option<f64>,
    /// `1 - factor` when the factor is applicable.
    pub degree: Option<f64>,
    /// `10 log10(factor)` when the factor is applicable and positive.
    pub db: Option<f64>,
    /// The maximizing perpendicular direction used for `heersink`/`luis_pair`,
    /// when `<S>` has a component orthogonal to `n`.
    pub perp_direction: Option<[f64; 3]>,
    pub verdicts: Verdicts,
}

/// Variance of the Stokes component along `n`: the quadratic form
/// `n^T C n`. Errors for principal-only covariance off the coordinate axes.
pub fn variance_along(moments: &StokesMoments, n: &Direction) -> Result<f64> {
    moments.covariance.along(n.vector())
}

/// Maximum of `|<S_perp>|` over unit directions perpendicular to `n`:
/// `sqrt(|<S>|^2 - (<S> . n)^2)`. Rounding can push the radicand a few ulp
/// negative; it is clamped to zero.
pub fn max_perp_expectation(moments: &StokesMoments, n: &Direction) -> f64 {
    let s = &moments.s_vec;
    let along = s.dot(n.vector());
    (s.norm_squared() - along * along).max(0.0).sqrt()
}

/// Evaluate all four criteria, the squeezing factor, the degree of squeezing,
/// and its decibel value for the component along `n`.
pub fn assess(moments: &StokesMoments, n: &Direction) -> Result<SqueezingAssessment> {
    let v_n = variance_along(moments, n)?;
    let rhs = max_perp_expectation(moments, n);

    let (factor, degree, db) = if rhs < FACTOR_DENOMINATOR_FLOOR {
        (None, None, None)
    } else {
        let f = v_n / rhs;
        let db = if f > 0.0 { Some(10.0 * f.log10()) } else { None };
        (Some(f), Some(1.0 - f), db)
    };

    // Maximizing perpendicular direction: <S> projected orthogonal to n.
    let perp = if rhs >= FACTOR_DENOMINATOR_FLOOR {
        let s = &moments.s_vec;
        let projection = s - n.vector() * s.dot(n.vector());
        Some(projection / rhs)
    } else {
        None
    };

    let luis_max = factor.map(|f| f < 1.0).unwrap_or(false);
    // With the maximizing perpendicular choice, luis_pair uses the same pair.
    let luis_pair = luis_max;
    let heersink = perp.and_then(|p| {
        let k = n.vector().cross(&p);
        match moments.covariance.along(&k) {
            Ok(v_k) => Some(v_n < rhs && rhs < v_k),
            Err(_) => None,
        }
    });

    Ok(SqueezingAssessment {
        direction: [n.vector().x, n.vector().y, n.vector().z],
        variance_along: v_n,
        rhs_luis: rhs,
        factor,
        degree,
        db,
        perp_direction: perp.map(|p| [p.x, p.y, p.z]),
        verdicts: Verdicts { chirkin: v_n < moments.s0, heersink, luis_pair, luis_max },
    })
}

/// `10 log10(factor)`: decibel value of a variance ratio.
pub fn db_of_factor(factor: f64) -> Result<f64> {
    if !(factor > 0.0) {
        return Err(Error::NonPositiveFactor(factor));
    }
    Ok(10.0 * factor.log10())
}

/// Inverse of [`db_of_factor`]: `10^(db/10)`.
pub fn factor_of_db(db: f64) -> f64 {
    10.0_f64.powf(db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic;
    use crate::input::{CoherentInput, InteractionTime};
    use crate::moments::{Covariance, MomentSource};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::Matrix3;
    use std::f64::consts::FRAC_PI_4;

    fn coherent_moments() -> StokesMoments {
        // Unevolved coherent state A=1, theta=pi/4, phases 0: <S> = (0,1,0), V=1
        StokesMoments {
            s0: 1.0,
            s_vec: Vector3::new(0.0, 1.0, 0.0),
            covariance: Covariance::Full(Matrix3::identity()),
            source: MomentSource::FockOracle,
        }
    }

    #[test]
    fn perp_magnitude_pythagorean() {
        let m = StokesMoments {
            s0: 5.0,
            s_vec: Vector3::new(0.0, 3.0, 4.0),
            covariance: Covariance::Principal([1.0, 1.0, 1.0]),
            source: MomentSource::Analytic,
        };
        assert_eq!(max_perp_expectation(&m, &Direction::x()), 5.0);
        // parallel direction: zero perpendicular component
        let n = Direction::new(Vector3::new(0.0, 3.0, 4.0)).unwrap();
        assert_abs_diff_eq!(max_perp_expectation(&m, &n), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn coherent_state_sits_on_the_boundary() {
        let m = coherent_moments();
        let report = assess(&m, &Direction::z()).unwrap();
        assert_eq!(report.factor, Some(1.0));
        assert_eq!(report.degree, Some(0.0));
        assert!(!report.verdicts.chirkin);
        assert_eq!(report.verdicts.heersink, Some(false));
        assert!(!report.verdicts.luis_pair);
        assert!(!report.verdicts.luis_max);
    }

    #[test]
    fn flagship_point_squeezes_to_exp_minus_two() {
        let input =
            CoherentInput::new(1.0, FRAC_PI_4, 2.356194490192345, 2.356194490192345).unwrap();
        let time = InteractionTime::new(1.0).unwrap();
        let moments = analytic::moments(&input, time);
        let report = assess(&moments, &Direction::x()).unwrap();
        let factor = report.factor.unwrap();
        assert_relative_eq!(factor, (-2.0_f64).exp(), max_relative = 1e-12);
        assert_relative_eq!(report.degree.unwrap(), 0.8646647167633873, max_relative = 1e-12);
        assert_relative_eq!(report.db.unwrap(), -8.685889638065037, max_relative = 1e-9);
        assert!(report.verdicts.chirkin);
        assert!(report.verdicts.luis_pair);
        assert!(report.verdicts.luis_max);
        // <S> lies on the S2 axis here, so the heersink pair is principal and
        // decidable even on analytic (principal-only) moments.
        assert_eq!(report.verdicts.heersink, Some(true));
    }

    #[test]
    fn boundary_phase_sum_gives_factor_one() {
        // theta=pi/4, sin(phase sum) = tanh T: the no-squeezing contour
        for &t in &[0.3_f64, 1.0, 2.2] {
            let u = t.tanh().asin();
            let input = CoherentInput::new(1.0, FRAC_PI_4, u / 2.0, u / 2.0).unwrap();
            let time = InteractionTime::new(t).unwrap();
            let moments = analytic::moments(&input, time);
            let report = assess(&moments, &Direction::x()).unwrap();
            assert_relative_eq!(report.factor.unwrap(), 1.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn vacuum_factor_not_applicable() {
        let m = StokesMoments {
            s0: 0.0,
            s_vec: Vector3::zeros(),
            covariance: Covariance::Full(Matrix3::zeros()),
            source: MomentSource::FockOracle,
        };
        let report = assess(&m, &Direction::x()).unwrap();
        assert_eq!(report.factor, None);
        assert_eq!(report.degree, None);
        assert_eq!(report.db, None);
        assert_eq!(report.perp_direction, None);
        assert!(!report.verdicts.luis_max);
        assert_eq!(report.verdicts.heersink, None);
    }

    #[test]
    fn heersink_undecidable_on_analytic_moments_off_axis() {
        // <S> with both S2 and S3 components: n_perp is oblique, so the
        // heersink partner variance is not available from principal variances.
        let m = StokesMoments {
            s0: 2.0,
            s_vec: Vector3::new(0.3, 1.0, 1.0),
            covariance: Covariance::Principal([1.0, 2.0, 2.0]),
            source: MomentSource::Analytic,
        };
        let report = assess(&m, &Direction::x()).unwrap();
        assert_eq!(report.verdicts.heersink, None);
        assert!(report.factor.is_some());
    }

    #[test]
    fn decibel_round_trip() {
        assert_eq!(db_of_factor(1.0).unwrap(), 0.0);
        let factor = factor_of_db(-3.4);
        assert_relative_eq!(factor, 0.45708818961487496, max_relative = 1e-12);
        assert_relative_eq!(db_of_factor(factor).unwrap(), -3.4, max_relative = 1e-12);
        assert_relative_eq!(
            db_of_factor((-2.0_f64).exp()).unwrap(),
            -20.0 / std::f64::consts::LN_10,
            max_relative = 1e-12
        );
        assert!(db_of_factor(0.0).is_err());
        assert!(db_of_factor(-1.0).is_err());
    }

    #[test]
    fn rejects_unnormalizable_directions() {
        assert!(Direction::new(Vector3::zeros()).is_err());
        assert!(Direction::new(Vector3::new(f64::NAN, 0.0, 0.0)).is_err());
        let d = Direction::new(Vector3::new(3.0, 0.0, 4.0)).unwrap();
        assert_relative_eq!(d.vector().norm(), 1.0, max_relative = 1e-15);
    }
}
