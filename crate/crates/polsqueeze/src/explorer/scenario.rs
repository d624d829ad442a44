//! Balanced-detection preset: equal mode amplitudes, equal input phases.
//!
//! With plane-polarized light along the bisector of the x and y axes
//! (`theta = pi/4`, `phi_x = phi_y = phase`), the transverse Stokes components
//! become direct intensity readouts:
//!
//! - `S2 = I_+ - I_-`, the imbalance of the plane-polarized components midway
//!   between x and y;
//! - `S3 = I_R - I_L`, the circular imbalance.
//!
//! At `phase = 3*pi/4` the phase sum `2*phase` reaches `3*pi/2`, which zeroes
//! `S3` (equal circular intensities) and maximizes the `S1` squeezing.
//! All numbers here come from the Fock verifier, so the preset doubles as an
//! end-to-end exercise of the brute-force route.

use serde::Serialize;
use std::f64::consts::FRAC_PI_4;

use crate::criteria::{assess, Direction, SqueezingAssessment};
use crate::error::Result;
use crate::fock::{oracle_moments, TruncationPolicy};
use crate::input::{CoherentInput, InteractionTime};

/// The input phase at which `S3` vanishes and the `S1` squeezing is maximal.
pub const RECOMMENDED_PHASE: f64 = 3.0 * FRAC_PI_4;

/// Detector intensities of the four readout components (photon units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntensityReadouts {
    /// Plane-polarized component midway between x and y.
    pub i_plus: f64,
    /// The orthogonal midway component.
    pub i_minus: f64,
    /// Right circular.
    pub i_right: f64,
    /// Left circular.
    pub i_left: f64,
}

/// Outcome of the balanced-detection preset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub input: CoherentInput,
    pub time: f64,
    pub s0: f64,
    pub intensities: IntensityReadouts,
    /// `I_+ - I_-`; equals the measured `<S2>` identically.
    pub s2_from_intensities: f64,
    /// `I_R - I_L`; equals the measured `<S3>` identically.
    pub s3_from_intensities: f64,
    /// Assessment along `S1` on the Fock moments.
    pub assessment: SqueezingAssessment,
    /// Phase at which `S3 = 0` and the squeezing is maximal.
    pub recommended_phase: f64,
}

/// Run the preset: `theta = pi/4`, `phi_x = phi_y = phase`, evolve to `time`,
/// and report the four intensity readouts with the `S1` squeezing assessment.
pub fn detection_scenario(
    amplitude: f64,
    time: InteractionTime,
    phase: f64,
    policy: &TruncationPolicy,
) -> Result<ScenarioReport> {
    let input = CoherentInput::new(amplitude, FRAC_PI_4, phase, phase)?;
    let moments = oracle_moments(&input, time, policy)?;

    let (s0, s2, s3) = (moments.s0, moments.s_vec.y, moments.s_vec.z);
    let intensities = IntensityReadouts {
        i_plus: (s0 + s2) / 2.0,
        i_minus: (s0 - s2) / 2.0,
        i_right: (s0 + s3) / 2.0,
        i_left: (s0 - s3) / 2.0,
    };
    let assessment = assess(&moments, &Direction::x())?;

    Ok(ScenarioReport {
        input,
        time: time.value(),
        s0,
        s2_from_intensities: intensities.i_plus - intensities.i_minus,
        s3_from_intensities: intensities.i_right - intensities.i_left,
        intensities,
        assessment,
        recommended_phase: RECOMMENDED_PHASE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn time(t: f64) -> InteractionTime {
        InteractionTime::new(t).unwrap()
    }

    #[test]
    fn recommended_phase_zeroes_circular_imbalance() {
        let policy = TruncationPolicy::default();
        let report = detection_scenario(1.0, time(1.0), RECOMMENDED_PHASE, &policy).unwrap();
        assert!(report.s3_from_intensities.abs() < 1e-6);
        assert_relative_eq!(
            report.assessment.factor.unwrap(),
            (-2.0_f64).exp(),
            max_relative = 1e-6
        );
        // intensity bookkeeping
        let i = &report.intensities;
        assert_abs_diff_eq!(i.i_plus + i.i_minus, report.s0, epsilon = 1e-9);
        assert_abs_diff_eq!(i.i_right + i.i_left, report.s0, epsilon = 1e-9);
        assert!(i.i_plus >= -1e-9 && i.i_minus >= -1e-9);
        assert!(i.i_right >= -1e-9 && i.i_left >= -1e-9);
        // I+ = (S0 + e^2)/2 at this point
        let s0 = 2.0 * 2.0_f64.cosh() - 1.0 + 2.0_f64.sinh();
        assert_relative_eq!(i.i_plus, (s0 + std::f64::consts::E.powi(2)) / 2.0, max_relative = 1e-6);
    }

    #[test]
    fn zero_time_has_no_circular_component() {
        let policy = TruncationPolicy::default();
        let report = detection_scenario(1.3, time(0.0), 0.9, &policy).unwrap();
        assert_abs_diff_eq!(report.intensities.i_right, report.intensities.i_left, epsilon = 1e-9);
        assert!(report.s3_from_intensities.abs() < 1e-9);
    }

    #[test]
    fn boundary_phase_gives_factor_one() {
        // sin(2 phase) = tanh T: the no-squeezing contour
        let t = 0.8_f64;
        let phase = t.tanh().asin() / 2.0;
        let policy = TruncationPolicy::default();
        let report = detection_scenario(1.0, time(t), phase, &policy).unwrap();
        assert_relative_eq!(report.assessment.factor.unwrap(), 1.0, max_relative = 1e-6);
    }
}
