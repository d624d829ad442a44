//! Stokes moments measured from number-basis matrix elements.

use std::collections::BTreeMap;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use super::state::{occupation, FockState};
use crate::error::{Error, Result};
use crate::moments::{Covariance, MomentSource, StokesMoments};

/// PSD tolerance on the measured covariance matrix.
const TOL_PSD: f64 = 1e-9;

type SectorMap = BTreeMap<i32, Vec<Complex64>>;

/// Measure `<S0>`, `<S>`, and the full symmetrized covariance
/// `C_jk = <{S_j, S_k}>/2 - <S_j><S_k>` on a truncated state.
///
/// Works by building the four image states `S_j |psi>` (`S1` is diagonal in
/// the sector decomposition; `S2` and `S3` couple sectors `d <-> d ± 2`) and
/// reducing every moment to inner products, which keeps all matrix-element
/// bookkeeping in one place. Estimates are normalized by the state's actual
/// squared norm.
pub fn measure_moments(state: &FockState) -> Result<StokesMoments> {
    let norm_sqr = state.norm_sqr();
    if !(norm_sqr >= 1.0 - state.epsilon_trunc() && norm_sqr <= 1.0 + 1e-12) {
        return Err(Error::invalid(
            "state",
            format!(
                "squared norm {norm_sqr} outside [1 - {}, 1 + 1e-12]; \
                 not a valid truncated state",
                state.epsilon_trunc()
            ),
        ));
    }

    let psi: SectorMap = state
        .sectors()
        .iter()
        .map(|s| (s.difference(), s.amplitudes().to_vec()))
        .collect();
    let images: Vec<SectorMap> = (0..4).map(|op| apply_stokes(&psi, op)).collect();

    let mean: Vec<f64> = images.iter().map(|phi| inner(&psi, phi).re / norm_sqr).collect();
    let mut cov = Matrix3::<f64>::zeros();
    for j in 0..3 {
        for k in j..3 {
            // Re<phi_j|phi_k> is already the symmetrized second moment.
            let second = inner(&images[j + 1], &images[k + 1]).re / norm_sqr;
            let c = second - mean[j + 1] * mean[k + 1];
            cov[(j, k)] = c;
            cov[(k, j)] = c;
        }
    }

    let eigen_min = cov.symmetric_eigenvalues().min();
    if eigen_min < -TOL_PSD {
        return Err(Error::Convergence {
            details: format!(
                "measured covariance has eigenvalue {eigen_min:.3e} below -{TOL_PSD:.0e}; \
                 truncation too aggressive"
            ),
        });
    }

    Ok(StokesMoments {
        s0: mean[0],
        s_vec: Vector3::new(mean[1], mean[2], mean[3]),
        covariance: Covariance::Full(cov),
        source: MomentSource::FockOracle,
    })
}

/// Sector decomposition of `S_op |psi>` for `op` in `0..4`.
fn apply_stokes(psi: &SectorMap, op: usize) -> SectorMap {
    let mut out: SectorMap = BTreeMap::new();
    let mut add = |d: i32, n: usize, value: Complex64| {
        let ladder = out.entry(d).or_default();
        if ladder.len() <= n {
            ladder.resize(n + 1, Complex64::new(0.0, 0.0));
        }
        ladder[n] += value;
    };

    for (&d, amplitudes) in psi {
        for (n, &amp) in amplitudes.iter().enumerate() {
            let (nx, ny) = occupation(d, n);
            match op {
                0 => add(d, n, ((nx + ny) as f64) * amp),
                1 => add(d, n, (nx as f64 - ny as f64) * amp),
                _ => {
                    // a_x^† a_y : |nx, ny> -> sqrt((nx+1) ny) |nx+1, ny-1>
                    if ny >= 1 {
                        let c = (((nx + 1) * ny) as f64).sqrt();
                        let coeff = if op == 2 {
                            Complex64::new(c, 0.0)
                        } else {
                            Complex64::new(0.0, -c)
                        };
                        add(d + 2, (nx + 1).min(ny - 1), coeff * amp);
                    }
                    // a_y^† a_x : |nx, ny> -> sqrt(nx (ny+1)) |nx-1, ny+1>
                    if nx >= 1 {
                        let c = ((nx * (ny + 1)) as f64).sqrt();
                        let coeff = if op == 2 {
                            Complex64::new(c, 0.0)
                        } else {
                            Complex64::new(0.0, c)
                        };
                        add(d - 2, (nx - 1).min(ny + 1), coeff * amp);
                    }
                }
            }
        }
    }
    out
}

/// `<a|b>` over the common sectors and ladder overlap.
fn inner(a: &SectorMap, b: &SectorMap) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for (d, va) in a {
        if let Some(vb) = b.get(d) {
            let len = va.len().min(vb.len());
            for n in 0..len {
                total += va[n].conj() * vb[n];
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{decompose_input, evolve, TruncationPolicy};
    use crate::input::{CoherentInput, InteractionTime};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn vacuum_moments_are_zero() {
        let input = CoherentInput::new(0.0, 0.0, 0.0, 0.0).unwrap();
        let state = decompose_input(&input, &TruncationPolicy::default()).unwrap();
        let m = measure_moments(&state).unwrap();
        assert_eq!(m.s0, 0.0);
        assert_eq!(m.s_vec.norm(), 0.0);
        assert_eq!(m.covariance.full().unwrap().norm(), 0.0);
    }

    #[test]
    fn unevolved_coherent_state_moments() {
        let input = CoherentInput::new(1.0, FRAC_PI_4, 0.0, 0.0).unwrap();
        let state = decompose_input(&input, &TruncationPolicy::default()).unwrap();
        let m = measure_moments(&state).unwrap();
        // epsilon_trunc = 1e-10 propagates to ~1e-8 on photon-weighted moments
        assert_abs_diff_eq!(m.s0, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(m.s_vec.x, 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(m.s_vec.y, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(m.s_vec.z, 0.0, epsilon = 1e-8);
        for v in m.variances() {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn evolved_photon_number_matches_growth() {
        // A=1, theta=pi/4, phases 3pi/4, T=1: <S0> = 2 cosh 2 - 1 + sinh 2
        let input =
            CoherentInput::new(1.0, FRAC_PI_4, 2.356194490192345, 2.356194490192345).unwrap();
        let policy = TruncationPolicy::default();
        let state = decompose_input(&input, &policy).unwrap();
        let evolved = evolve(&state, InteractionTime::new(1.0).unwrap(), &policy).unwrap();
        let m = measure_moments(&evolved).unwrap();
        let expected = 2.0 * 2.0_f64.cosh() - 1.0 + 2.0_f64.sinh();
        assert_relative_eq!(m.s0, expected, max_relative = 1e-6);
        assert_relative_eq!(m.s_vec.y, std::f64::consts::E.powi(2), max_relative = 1e-6);
    }

    #[test]
    fn rejects_denormalized_state() {
        let input = CoherentInput::new(1.0, 0.5, 0.0, 0.0).unwrap();
        // Policy accepted a 1e-10 budget, then we inflate a sector amplitude.
        let state = decompose_input(&input, &TruncationPolicy::default()).unwrap();
        let mut sectors: Vec<_> = state.sectors().to_vec();
        let mut amps = sectors[0].amplitudes().to_vec();
        amps[0] *= 2.0;
        sectors[0] = crate::fock::SectorVector::new(sectors[0].difference(), amps);
        let bad = FockState::new(sectors, state.epsilon_trunc(), *state.input(), state.time());
        assert!(measure_moments(&bad).is_err());
    }
}
