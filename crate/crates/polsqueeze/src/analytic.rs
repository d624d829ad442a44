//! Closed-form Stokes moments of a coherent input evolved under the
//! pair-creation Hamiltonian `H = k (a_x^† a_y^† + a_x a_y)`.
//!
//! All formulas are functions of the dimensionless time `T = k t` through
//! `cosh 2T`, `sinh 2T`, and `sinh 4T`. The variances carried here are the
//! principal ones only; see [`crate::moments::Covariance`] for why.

use nalgebra::Vector3;

use crate::input::{CoherentInput, InteractionTime};
use crate::moments::{Covariance, MomentSource, StokesMoments};

/// Expectation values `(<S0>, (<S1>, <S2>, <S3>))` at interaction time `T`.
///
/// `<S1>` is conserved by the evolution (the Hamiltonian commutes with `S1`),
/// so it is evaluated by the same `A^2 cos 2theta` expression for every `T`.
pub fn expectations(input: &CoherentInput, time: InteractionTime) -> (f64, Vector3<f64>) {
    let a2 = input.mean_photons();
    let t = time.value();
    let (c2, s2) = ((2.0 * t).cosh(), (2.0 * t).sinh());
    let theta = input.theta();
    let (sin2t, cos2t) = ((2.0 * theta).sin(), (2.0 * theta).cos());
    let (cos_sq, sin_sq) = (theta.cos().powi(2), theta.sin().powi(2));
    let (px, py) = (input.phi_x(), input.phi_y());
    let (diff, sum) = (input.phase_diff(), input.phase_sum());

    let s_1 = a2 * cos2t;
    let s_2 = a2
        * (c2 * sin2t * diff.cos() - s2 * (cos_sq * (2.0 * px).sin() + sin_sq * (2.0 * py).sin()));
    let s_3 = a2
        * (-c2 * sin2t * diff.sin() - s2 * (cos_sq * (2.0 * px).cos() - sin_sq * (2.0 * py).cos()));
    let s_0 = a2 * c2 + c2 - 1.0 - a2 * s2 * sin2t * sum.sin();

    (s_0, Vector3::new(s_1, s_2, s_3))
}

/// Principal variances `[V1, V2, V3]` at interaction time `T`.
///
/// `V1 = A^2` for all `T`, and `V2 = V3`:
///
/// ```text
/// V2 = V3 = A^2 cosh^2 2T + (A^2 + 1) sinh^2 2T - A^2 sinh 4T sin 2theta sin(phi_x + phi_y)
/// ```
///
/// The equality of `V2` and `V3` is not assumed by consumers of the covariance;
/// the Fock verifier measures them independently.
pub fn principal_variances(input: &CoherentInput, time: InteractionTime) -> [f64; 3] {
    let a2 = input.mean_photons();
    let t = time.value();
    let (c2, s2, s4) = ((2.0 * t).cosh(), (2.0 * t).sinh(), (4.0 * t).sinh());
    let sin2t = (2.0 * input.theta()).sin();
    let sum = input.phase_sum();

    let v1 = a2;
    let v23 = a2 * c2 * c2 + (a2 + 1.0) * s2 * s2 - a2 * s4 * sin2t * sum.sin();
    [v1, v23, v23]
}

/// All closed-form moments bundled as [`StokesMoments`] with
/// principal-variance covariance.
pub fn moments(input: &CoherentInput, time: InteractionTime) -> StokesMoments {
    let (s0, s_vec) = expectations(input, time);
    StokesMoments {
        s0,
        s_vec,
        covariance: Covariance::Principal(principal_variances(input, time)),
        source: MomentSource::Analytic,
    }
}

/// The squared transverse Stokes magnitude over `A^4`,
///
/// ```text
/// R = (<S2>^2 + <S3>^2) / A^4
///   = [cosh 2T - sinh 2T sin 2theta sin(phi_x + phi_y)]^2 - cos^2 2theta
/// ```
///
/// evaluated by the right-hand closed form (well defined even for `A = 0`).
/// `1/sqrt(R)` is the squeezing factor along `S1`. Rounding can push the
/// mathematically nonnegative value a few ulp below zero, so it is clamped.
pub fn transverse_ratio(input: &CoherentInput, time: InteractionTime) -> f64 {
    let t = time.value();
    let core = (2.0 * t).cosh()
        - (2.0 * t).sinh() * (2.0 * input.theta()).sin() * input.phase_sum().sin();
    let r = core * core - (2.0 * input.theta()).cos().powi(2);
    r.max(0.0)
}

/// Squeezing factor along the `S1` axis, `1/sqrt(R)`; infinite when the mean
/// transverse Stokes vector vanishes.
pub fn s1_factor(input: &CoherentInput, time: InteractionTime) -> f64 {
    let r = transverse_ratio(input, time);
    if r > 0.0 {
        1.0 / r.sqrt()
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::{CoherentInput, InteractionTime};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::{FRAC_PI_4, PI};

    fn flagship() -> (CoherentInput, InteractionTime) {
        // A=1, theta=pi/4, phi_x=phi_y=3pi/4 (phase sum 3pi/2), T=1
        (
            CoherentInput::new(1.0, FRAC_PI_4, 2.356194490192345, 2.356194490192345).unwrap(),
            InteractionTime::new(1.0).unwrap(),
        )
    }

    #[test]
    fn s1_is_time_independent_bitwise() {
        let input = CoherentInput::new(1.4, 0.9, 2.0, 5.0).unwrap();
        let t0 = InteractionTime::new(0.0).unwrap();
        for &t in &[0.3, 1.0, 7.5] {
            let time = InteractionTime::new(t).unwrap();
            assert_eq!(expectations(&input, time).1.x, expectations(&input, t0).1.x);
            assert_eq!(principal_variances(&input, time)[0], input.mean_photons());
        }
    }

    #[test]
    fn zero_time_reduces_to_coherent_state() {
        let input = CoherentInput::new(1.3, 0.7, 0.4, 2.9).unwrap();
        let t0 = InteractionTime::new(0.0).unwrap();
        let (s0, s) = expectations(&input, t0);
        let a2 = input.mean_photons();
        let (sin2t, cos2t) = ((2.0 * input.theta()).sin(), (2.0 * input.theta()).cos());
        assert_relative_eq!(s0, a2, max_relative = 1e-14);
        assert_relative_eq!(s.x, a2 * cos2t, max_relative = 1e-14);
        assert_relative_eq!(s.y, a2 * sin2t * input.phase_diff().cos(), max_relative = 1e-14);
        assert_relative_eq!(s.z, -a2 * sin2t * input.phase_diff().sin(), max_relative = 1e-14);
        // <S2 + i S3> = 2 alpha^* beta
        let cross = 2.0 * input.alpha().conj() * input.beta();
        assert_abs_diff_eq!(s.y, cross.re, epsilon = 1e-13);
        assert_abs_diff_eq!(s.z, cross.im, epsilon = 1e-13);
        assert_eq!(principal_variances(&input, t0), [a2, a2, a2]);
    }

    #[test]
    fn flagship_expectations() {
        let (input, time) = flagship();
        let (s0, s) = expectations(&input, time);
        assert_abs_diff_eq!(s.x, 0.0, epsilon = 1e-15);
        assert_relative_eq!(s.y, std::f64::consts::E.powi(2), max_relative = 1e-13);
        assert_abs_diff_eq!(s.z, 0.0, epsilon = 1e-12);
        let expected_s0 = 2.0 * 2.0_f64.cosh() - 1.0 + 2.0_f64.sinh();
        assert_relative_eq!(s0, expected_s0, max_relative = 1e-14);
        assert_relative_eq!(s0, 10.151251790014282, max_relative = 1e-13);
    }

    #[test]
    fn flagship_variances() {
        let (input, time) = flagship();
        let v = principal_variances(&input, time);
        assert_eq!(v[0], 1.0);
        // cosh^2(2) + 2 sinh^2(2) + sinh(4); Fock-verified value 67.752266451152
        let expected = 2.0_f64.cosh().powi(2) + 2.0 * 2.0_f64.sinh().powi(2) + 4.0_f64.sinh();
        assert_relative_eq!(v[1], expected, max_relative = 1e-14);
        assert_relative_eq!(v[1], 67.752266451152, max_relative = 1e-12);
        assert_eq!(v[1], v[2]);
    }

    #[test]
    fn ratio_closed_form_limits() {
        // theta = pi/4, sin(phase sum) = -1: R = e^{4T}
        for &t in &[0.25, 1.0, 2.0] {
            let input = CoherentInput::new(1.0, FRAC_PI_4, 0.75 * PI, 0.75 * PI).unwrap();
            let time = InteractionTime::new(t).unwrap();
            assert_relative_eq!(transverse_ratio(&input, time), (4.0 * t).exp(), max_relative = 1e-12);
            assert_relative_eq!(s1_factor(&input, time), (-2.0 * t).exp(), max_relative = 1e-12);
        }
        // T = 0: R = sin^2 2theta
        let input = CoherentInput::new(0.8, 0.6, 1.0, 4.0).unwrap();
        let t0 = InteractionTime::new(0.0).unwrap();
        assert_relative_eq!(transverse_ratio(&input, t0), (2.0_f64 * 0.6).sin().powi(2), max_relative = 1e-14);
    }

    #[test]
    fn ratio_matches_transverse_moments() {
        let input = CoherentInput::new(1.0, PI / 3.0, 0.3, 0.9).unwrap();
        let time = InteractionTime::new(0.5).unwrap();
        let (_, s) = expectations(&input, time);
        let from_moments = (s.y * s.y + s.z * s.z) / input.mean_photons().powi(2);
        assert_relative_eq!(transverse_ratio(&input, time), from_moments, max_relative = 1e-12);
    }

    #[test]
    fn joint_phase_shift_by_pi_is_a_global_sign() {
        let base = CoherentInput::new(1.2, 0.8, 0.5, 1.1).unwrap();
        let shifted = CoherentInput::new(1.2, 0.8, 0.5 + PI, 1.1 + PI).unwrap();
        let time = InteractionTime::new(0.7).unwrap();
        let (s0_a, s_a) = expectations(&base, time);
        let (s0_b, s_b) = expectations(&shifted, time);
        assert_relative_eq!(s0_a, s0_b, max_relative = 1e-12);
        for i in 0..3 {
            assert_abs_diff_eq!(s_a[i], s_b[i], epsilon = 1e-12 * (1.0 + s_a[i].abs()));
        }
        let (v_a, v_b) = (principal_variances(&base, time), principal_variances(&shifted, time));
        for i in 0..3 {
            assert_relative_eq!(v_a[i], v_b[i], max_relative = 1e-12);
        }
    }
}
