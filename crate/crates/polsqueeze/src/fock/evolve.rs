//! Sector-wise unitary evolution via dense eigendecomposition.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::state::{FockState, SectorVector};
use super::TruncationPolicy;
use crate::error::{Error, Result};
use crate::input::InteractionTime;

/// Evolve `state` by the interaction time `time`.
///
/// Each sector is propagated by `exp(-i H_d T)` where `H_d` is the real
/// symmetric tridiagonal sector Hamiltonian (in units of the coupling
/// constant). Cutoffs start from a photon-growth estimate and are doubled
/// until the evolved occupation of the top two ladder levels falls below the
/// sector's share of the truncation budget, so the result is certified
/// converged independent of the sizing heuristic.
pub fn evolve(state: &FockState, time: InteractionTime, policy: &TruncationPolicy) -> Result<FockState> {
    evolve_with_cutoff_floor(state, time, policy, 0)
}

/// [`evolve`] with a lower bound on every sector cutoff, for convergence
/// studies that compare runs at forced ladder lengths.
pub fn evolve_with_cutoff_floor(
    state: &FockState,
    time: InteractionTime,
    policy: &TruncationPolicy,
    cutoff_floor: usize,
) -> Result<FockState> {
    policy.validate()?;
    let t_before = state.time();
    let t_after = InteractionTime::new(t_before.value() + time.value())?;
    if time.is_zero() && cutoff_floor == 0 {
        return Ok(state.clone());
    }

    let amplitude = state.input().amplitude();
    let growth = policy.growth_guard
        * ((1.0 + photon_bound(amplitude, t_after.value()))
            / (1.0 + photon_bound(amplitude, t_before.value())))
        .max(1.0);

    let sector_count = state.sectors().len().max(1);
    let leak_budget = policy.epsilon_trunc / sector_count as f64;
    let floor = cutoff_floor.min(policy.max_cutoff);

    let mut eigen_cache: HashMap<(u32, usize), Eigen> = HashMap::new();
    let mut evolved = Vec::with_capacity(state.sectors().len());

    for sector in state.sectors() {
        let len = sector.cutoff();
        let mut cutoff = ((len as f64 * growth).ceil() as usize)
            .max(len)
            .max(floor)
            .min(policy.max_cutoff);
        let mut enlargements = 0usize;
        loop {
            let amplitudes = propagate(sector, cutoff, time.value(), &mut eigen_cache);
            let leak: f64 = amplitudes[cutoff.saturating_sub(2)..]
                .iter()
                .map(|a| a.norm_sqr())
                .sum();
            if leak <= leak_budget || time.is_zero() {
                evolved.push(SectorVector::new(sector.difference(), amplitudes));
                break;
            }
            if cutoff >= policy.max_cutoff {
                return Err(Error::Capacity { needed: 2 * cutoff, max: policy.max_cutoff });
            }
            enlargements += 1;
            if enlargements > 24 {
                return Err(Error::Convergence {
                    details: format!(
                        "sector d = {} still leaks {leak:.3e} (budget {leak_budget:.3e}) \
                         after {enlargements} enlargements at cutoff {cutoff}",
                        sector.difference()
                    ),
                });
            }
            cutoff = (2 * cutoff).min(policy.max_cutoff);
        }
    }

    let epsilon = state.epsilon_trunc().max(policy.epsilon_trunc);
    Ok(FockState::new(evolved, epsilon, *state.input(), t_after))
}

/// Phase-independent upper bound on `<S0>(T)` for input amplitude `A`, used
/// only to size cutoffs ahead of evolution.
fn photon_bound(amplitude: f64, t: f64) -> f64 {
    let a2 = amplitude * amplitude;
    let (c2, s2) = ((2.0 * t).cosh(), (2.0 * t).sinh());
    a2 * c2 + c2 - 1.0 + a2 * s2
}

struct Eigen {
    values: DVector<f64>,
    vectors: DMatrix<f64>,
}

/// Apply `exp(-i H_d t)` to the sector amplitudes, zero-padded to `cutoff`.
fn propagate(
    sector: &SectorVector,
    cutoff: usize,
    t: f64,
    cache: &mut HashMap<(u32, usize), Eigen>,
) -> Vec<Complex64> {
    let eig = cache
        .entry((sector.difference().unsigned_abs(), cutoff))
        .or_insert_with(|| {
            let d = sector.difference().unsigned_abs() as usize;
            let mut h = DMatrix::<f64>::zeros(cutoff, cutoff);
            for n in 0..cutoff - 1 {
                let coupling = (((n + 1) * (n + d + 1)) as f64).sqrt();
                h[(n, n + 1)] = coupling;
                h[(n + 1, n)] = coupling;
            }
            let se = h.symmetric_eigen();
            Eigen { values: se.eigenvalues, vectors: se.eigenvectors }
        });

    let mut re = DVector::<f64>::zeros(cutoff);
    let mut im = DVector::<f64>::zeros(cutoff);
    for (n, a) in sector.amplitudes().iter().enumerate().take(cutoff) {
        re[n] = a.re;
        im[n] = a.im;
    }
    // psi -> Q exp(-i L t) Q^T psi using real matrix-vector products.
    let yr = eig.vectors.transpose() * re;
    let yi = eig.vectors.transpose() * im;
    let mut zr = DVector::<f64>::zeros(cutoff);
    let mut zi = DVector::<f64>::zeros(cutoff);
    for n in 0..cutoff {
        let (sin_p, cos_p) = (-eig.values[n] * t).sin_cos();
        zr[n] = yr[n] * cos_p - yi[n] * sin_p;
        zi[n] = yr[n] * sin_p + yi[n] * cos_p;
    }
    let outr = &eig.vectors * zr;
    let outi = &eig.vectors * zi;
    (0..cutoff).map(|n| Complex64::new(outr[n], outi[n])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::decompose_input;
    use crate::input::CoherentInput;
    use std::f64::consts::FRAC_PI_4;

    fn time(t: f64) -> InteractionTime {
        InteractionTime::new(t).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let input = CoherentInput::new(1.0, 0.6, 0.2, 1.0).unwrap();
        let policy = TruncationPolicy::default();
        let state = decompose_input(&input, &policy).unwrap();
        let evolved = evolve(&state, time(0.0), &policy).unwrap();
        assert_eq!(state, evolved);
    }

    #[test]
    fn norm_is_preserved() {
        let input = CoherentInput::new(1.0, FRAC_PI_4, 1.1, 0.3).unwrap();
        let policy = TruncationPolicy::default();
        let state = decompose_input(&input, &policy).unwrap();
        let evolved = evolve(&state, time(1.0), &policy).unwrap();
        let (n0, n1) = (state.norm_sqr(), evolved.norm_sqr());
        assert!((n0 - n1).abs() < 1e-12, "norm drift {}", (n0 - n1).abs());
        assert!(n1 >= 1.0 - policy.epsilon_trunc && n1 <= 1.0 + 1e-12);
    }

    #[test]
    fn propagator_is_unitary_to_rounding() {
        // Check U^† U = I on a representative sector by evolving basis vectors.
        let cutoff = 128;
        let mut cache = HashMap::new();
        let mut columns = Vec::with_capacity(cutoff);
        for k in 0..cutoff {
            let mut amps = vec![Complex64::new(0.0, 0.0); cutoff];
            amps[k] = Complex64::new(1.0, 0.0);
            let sector = SectorVector::new(3, amps);
            columns.push(propagate(&sector, cutoff, 0.9, &mut cache));
        }
        let mut max_residual = 0.0f64;
        for j in 0..cutoff {
            for k in j..cutoff {
                let dot: Complex64 =
                    (0..cutoff).map(|n| columns[j][n].conj() * columns[k][n]).sum();
                let expected = if j == k { 1.0 } else { 0.0 };
                max_residual = max_residual.max((dot - expected).norm());
            }
        }
        assert!(max_residual < 1e-12, "unitarity residual {max_residual:.3e}");
    }

    #[test]
    fn capacity_error_when_ceiling_too_low() {
        let input = CoherentInput::new(1.0, FRAC_PI_4, 2.356194490192345, 2.356194490192345).unwrap();
        let policy = TruncationPolicy { max_cutoff: 16, ..TruncationPolicy::default() };
        let state = decompose_input(&input, &policy).unwrap();
        match evolve(&state, time(2.0), &policy) {
            Err(Error::Capacity { max: 16, .. }) => {}
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn cutoff_floor_is_honored() {
        let input = CoherentInput::new(0.5, 0.4, 0.0, 0.0).unwrap();
        let policy = TruncationPolicy::default();
        let state = decompose_input(&input, &policy).unwrap();
        let evolved = evolve_with_cutoff_floor(&state, time(0.2), &policy, 40).unwrap();
        assert!(evolved.sectors().iter().all(|s| s.cutoff() >= 40));
    }
}
