//! Brute-force verifier: truncated two-mode Fock-space evolution.
//!
//! The pair-creation Hamiltonian `H = k (a_x^† a_y^† + a_x a_y)` commutes with
//! `S1 = n_x - n_y`, so the two-mode number basis splits into independent
//! sectors of fixed difference `d = n_x - n_y`. Within one sector the basis
//! ladder is `|n + d, n>` (`d >= 0`) or `|n, n - d>` (`d < 0`), and the
//! Hamiltonian is real symmetric tridiagonal with off-diagonal elements
//! `sqrt((n+1)(n+|d|+1))` in units of `k`. Evolution is exact per sector via
//! dense eigendecomposition, which keeps unitarity at rounding level without
//! any step-size tuning.
//!
//! Everything here is deliberately independent of the closed forms in
//! [`crate::analytic`]; agreement between the two routes is what the test
//! suite and the `validate` command certify. The one exception is cutoff
//! *sizing*, where a phase-free upper bound on the photon growth is used as a
//! heuristic initial guess — correctness never depends on it because cutoffs
//! are enlarged until the measured top-of-ladder leakage is within budget.

mod evolve;
mod measure;
mod selfcheck;
mod state;

pub use evolve::{evolve, evolve_with_cutoff_floor};
pub use measure::measure_moments;
pub use selfcheck::{operator_selfcheck, SelfcheckReport, SELFCHECK_RESIDUAL_LIMIT};
pub use state::{decompose_input, FockState, SectorVector};

use crate::error::{Error, Result};
use crate::input::{CoherentInput, InteractionTime};
use crate::moments::StokesMoments;

/// Decompose, evolve, measure: the full brute-force route in one call.
pub fn oracle_moments(
    input: &CoherentInput,
    time: InteractionTime,
    policy: &TruncationPolicy,
) -> Result<StokesMoments> {
    let state = decompose_input(input, policy)?;
    let evolved = evolve(&state, time, policy)?;
    measure_moments(&evolved)
}

/// Rules bounding the probability mass a truncated representation may discard
/// and certifying observable convergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Maximum probability mass discarded by truncation (sector selection,
    /// ladder tails, and end-state leakage each stay within this budget).
    pub epsilon_trunc: f64,
    /// Tolerated change of any reported moment under cutoff doubling.
    pub observable_tol: f64,
    /// Hard ceiling on the per-sector ladder length.
    pub max_cutoff: usize,
    /// Safety multiplier applied to the photon-growth estimate when sizing
    /// cutoffs ahead of evolution.
    pub growth_guard: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            epsilon_trunc: 1e-10,
            observable_tol: 1e-8,
            max_cutoff: 512,
            growth_guard: 1.2,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon_trunc > 0.0 && self.epsilon_trunc < 1.0) {
            return Err(Error::invalid(
                "epsilon_trunc",
                format!("must lie in (0, 1), got {}", self.epsilon_trunc),
            ));
        }
        if !(self.observable_tol > 0.0) {
            return Err(Error::invalid(
                "observable_tol",
                format!("must be > 0, got {}", self.observable_tol),
            ));
        }
        if self.max_cutoff < 2 {
            return Err(Error::invalid(
                "max_cutoff",
                format!("must be >= 2, got {}", self.max_cutoff),
            ));
        }
        if !(self.growth_guard >= 1.0 && self.growth_guard.is_finite()) {
            return Err(Error::invalid(
                "growth_guard",
                format!("must be finite and >= 1, got {}", self.growth_guard),
            ));
        }
        Ok(())
    }
}
