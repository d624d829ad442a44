//! Input parameterization: the incident coherent state and the dimensionless
//! interaction time, plus the hyperbolic coefficients of the mode-mixing
//! transformation they induce.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};

/// Largest supported interaction time. All closed forms involve factors up to
/// `exp(4T)`, which stays finite in `f64` for `4T < 709.78`; the bound below
/// leaves headroom for squares and products.
pub const MAX_INTERACTION_TIME: f64 = 175.0;

/// Two-mode coherent input `|alpha, beta>` parameterized by a total amplitude
/// `A` (so the mean photon number is `A^2`), a mixing angle `theta`, and the
/// mode phases `phi_x`, `phi_y`:
///
/// ```text
/// alpha = A cos(theta) e^{i phi_x},   beta = A sin(theta) e^{i phi_y}
/// ```
///
/// Construction normalizes the angles to canonical ranges (`theta` in
/// `[0, pi/2]`, phases in `[0, 2*pi)`) without changing `alpha` or `beta`:
/// sign flips of `cos(theta)`/`sin(theta)` are absorbed into the phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentInput {
    amplitude: f64,
    theta: f64,
    phi_x: f64,
    phi_y: f64,
}

impl CoherentInput {
    /// Validates and canonicalizes the four input parameters.
    pub fn new(amplitude: f64, theta: f64, phi_x: f64, phi_y: f64) -> Result<Self> {
        if !amplitude.is_finite() {
            return Err(Error::invalid("amplitude", format!("must be finite, got {amplitude}")));
        }
        if amplitude < 0.0 {
            return Err(Error::invalid("amplitude", format!("must be >= 0, got {amplitude}")));
        }
        if !theta.is_finite() {
            return Err(Error::invalid("theta", format!("must be finite, got {theta}")));
        }
        if !phi_x.is_finite() {
            return Err(Error::invalid("phi_x", format!("must be finite, got {phi_x}")));
        }
        if !phi_y.is_finite() {
            return Err(Error::invalid("phi_y", format!("must be finite, got {phi_y}")));
        }

        let (theta, phi_x, phi_y) = canonicalize_angles(theta, phi_x, phi_y);
        Ok(Self { amplitude, theta, phi_x, phi_y })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// Mean total photon number `A^2 = |alpha|^2 + |beta|^2`.
    pub fn mean_photons(&self) -> f64 {
        self.amplitude * self.amplitude
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi_x(&self) -> f64 {
        self.phi_x
    }

    pub fn phi_y(&self) -> f64 {
        self.phi_y
    }

    /// `phi_x + phi_y`, the phase combination the squeezing condition depends on.
    pub fn phase_sum(&self) -> f64 {
        self.phi_x + self.phi_y
    }

    /// `phi_x - phi_y`.
    pub fn phase_diff(&self) -> f64 {
        self.phi_x - self.phi_y
    }

    /// Amplitude of the x-polarized mode.
    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(self.amplitude * self.theta.cos(), self.phi_x)
    }

    /// Amplitude of the y-polarized mode.
    pub fn beta(&self) -> Complex64 {
        Complex64::from_polar(self.amplitude * self.theta.sin(), self.phi_y)
    }
}

/// Fold `theta` into `[0, pi/2]` and the phases into `[0, 2*pi)` while keeping
/// the derived mode amplitudes fixed.
fn canonicalize_angles(theta: f64, phi_x: f64, phi_y: f64) -> (f64, f64, f64) {
    let th = wrap_tau(theta);
    let (th, dx, dy) = if th <= FRAC_PI_2 {
        (th, 0.0, 0.0)
    } else if th <= PI {
        // cos < 0: flip its sign into phi_x
        (PI - th, PI, 0.0)
    } else if th <= 1.5 * PI {
        // both negative
        (th - PI, PI, PI)
    } else {
        // sin < 0
        (TAU - th, 0.0, PI)
    };
    (th, wrap_tau(phi_x + dx), wrap_tau(phi_y + dy))
}

/// Reduce an angle to `[0, 2*pi)`.
fn wrap_tau(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Dimensionless interaction time `T = k t` (coupling constant times physical
/// time); every evolution formula depends on the product only.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct InteractionTime(f64);

impl InteractionTime {
    pub fn new(time: f64) -> Result<Self> {
        if !time.is_finite() || time < 0.0 {
            return Err(Error::invalid("time", format!("must be finite and >= 0, got {time}")));
        }
        if time > MAX_INTERACTION_TIME {
            return Err(Error::TimeOverflow { time, max: MAX_INTERACTION_TIME });
        }
        Ok(Self(time))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
}

/// Hyperbolic coefficients `(cosh T, sinh T)` of the Heisenberg-picture mode
/// mixing
///
/// ```text
/// a_x(T) = c a_x - i s a_y^†,    a_y(T) = c a_y - i s a_x^†
/// ```
///
/// generated by the pair-creation Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovCoefficients {
    /// `cosh T`, >= 1.
    pub c: f64,
    /// `sinh T`, >= 0.
    pub s: f64,
}

impl BogoliubovCoefficients {
    pub fn new(time: InteractionTime) -> Self {
        let t = time.value();
        Self { c: t.cosh(), s: t.sinh() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn equal_split_amplitudes() {
        let input = CoherentInput::new(1.0, FRAC_PI_2 / 2.0, 0.0, 0.0).unwrap();
        let expected = 1.0 / 2.0_f64.sqrt();
        assert_relative_eq!(input.alpha().re, expected, max_relative = 1e-15);
        assert_relative_eq!(input.beta().re, expected, max_relative = 1e-15);
        assert_eq!(input.alpha().im, 0.0);
    }

    #[test]
    fn vacuum_input() {
        let input = CoherentInput::new(0.0, 0.3, 1.0, 2.0).unwrap();
        assert_eq!(input.alpha(), Complex64::new(0.0, 0.0));
        assert_eq!(input.beta(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn mode_intensities_split_by_theta() {
        // A=2, theta=pi/3: |alpha|^2 = 1, |beta|^2 = 3
        let input = CoherentInput::new(2.0, PI / 3.0, 0.5, 1.5).unwrap();
        assert_relative_eq!(input.alpha().norm_sqr(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(input.beta().norm_sqr(), 3.0, max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_amplitude() {
        let err = CoherentInput::new(-1.0, 0.0, 0.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidInput { field: "amplitude", .. }));
        let err = CoherentInput::new(f64::NAN, 0.0, 0.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidInput { field: "amplitude", .. }));
    }

    #[test]
    fn rejects_non_finite_angles() {
        let err = CoherentInput::new(1.0, f64::INFINITY, 0.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidInput { field: "theta", .. }));
        let err = CoherentInput::new(1.0, 0.0, f64::NAN, 0.0).unwrap_err();
        assert!(matches!(err, Error::InvalidInput { field: "phi_x", .. }));
    }

    #[test]
    fn theta_folding_preserves_amplitudes() {
        // theta in each quadrant maps back to [0, pi/2] with identical alpha/beta
        for &theta in &[0.3_f64, 2.0, 3.5, 5.2, -0.7, 9.0] {
            let raw_alpha = Complex64::from_polar(1.7 * theta.cos(), 0.4);
            let raw_beta = Complex64::from_polar(1.7 * theta.sin(), 1.9);
            let input = CoherentInput::new(1.7, theta, 0.4, 1.9).unwrap();
            assert!(input.theta() >= 0.0 && input.theta() <= FRAC_PI_2);
            assert!(input.phi_x() >= 0.0 && input.phi_x() < TAU);
            assert!(input.phi_y() >= 0.0 && input.phi_y() < TAU);
            assert_relative_eq!(input.alpha().re, raw_alpha.re, epsilon = 1e-12);
            assert_relative_eq!(input.alpha().im, raw_alpha.im, epsilon = 1e-12);
            assert_relative_eq!(input.beta().re, raw_beta.re, epsilon = 1e-12);
            assert_relative_eq!(input.beta().im, raw_beta.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn interaction_time_bounds() {
        assert!(InteractionTime::new(0.0).is_ok());
        assert!(InteractionTime::new(-0.1).is_err());
        assert!(InteractionTime::new(f64::NAN).is_err());
        let err = InteractionTime::new(200.0).unwrap_err();
        assert!(matches!(err, Error::TimeOverflow { max, .. } if max == MAX_INTERACTION_TIME));
    }

    #[test]
    fn bogoliubov_identity_and_values() {
        let b0 = BogoliubovCoefficients::new(InteractionTime::new(0.0).unwrap());
        assert_eq!((b0.c, b0.s), (1.0, 0.0));

        let b1 = BogoliubovCoefficients::new(InteractionTime::new(1.0).unwrap());
        assert_relative_eq!(b1.c, 1.5430806348152437, max_relative = 1e-15);
        assert_relative_eq!(b1.s, 1.1752011936438014, max_relative = 1e-15);

        let b2 = BogoliubovCoefficients::new(InteractionTime::new(2.0).unwrap());
        let residual = (b2.c * b2.c - b2.s * b2.s - 1.0).abs();
        assert!(residual <= 4.0 * f64::EPSILON * b2.c * b2.c);
    }
}
