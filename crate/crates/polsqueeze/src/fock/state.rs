//! Truncated state representation and the coherent-state decomposition.

use num_complex::Complex64;

use super::TruncationPolicy;
use crate::error::{Error, Result};
use crate::input::{CoherentInput, InteractionTime};

/// Amplitudes of one photon-number-difference sector.
///
/// Ladder index `n` labels the basis state `|n + max(d,0), n + max(-d,0)>`,
/// so `n = min(n_x, n_y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorVector {
    difference: i32,
    amplitudes: Vec<Complex64>,
}

impl SectorVector {
    pub(crate) fn new(difference: i32, amplitudes: Vec<Complex64>) -> Self {
        Self { difference, amplitudes }
    }

    /// The conserved photon-number difference `d = n_x - n_y`.
    pub fn difference(&self) -> i32 {
        self.difference
    }

    /// Ladder length.
    pub fn cutoff(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Mode occupations `(n_x, n_y)` at ladder index `n`.
    pub fn occupation(&self, n: usize) -> (usize, usize) {
        occupation(self.difference, n)
    }
}

pub(crate) fn occupation(difference: i32, n: usize) -> (usize, usize) {
    let nx = n + difference.max(0) as usize;
    let ny = n + (-difference).max(0) as usize;
    (nx, ny)
}

/// A two-mode state truncated to a finite set of difference sectors with
/// finite ladders, together with the input and interaction time it represents.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    sectors: Vec<SectorVector>,
    epsilon_trunc: f64,
    input: CoherentInput,
    time: InteractionTime,
}

impl FockState {
    pub(crate) fn new(
        mut sectors: Vec<SectorVector>,
        epsilon_trunc: f64,
        input: CoherentInput,
        time: InteractionTime,
    ) -> Self {
        sectors.sort_by_key(SectorVector::difference);
        debug_assert!(sectors.windows(2).all(|w| w[0].difference() < w[1].difference()));
        Self { sectors, epsilon_trunc, input, time }
    }

    /// Sectors in increasing order of `d`; the indices are unique.
    pub fn sectors(&self) -> &[SectorVector] {
        &self.sectors
    }

    /// Total squared norm; within `[1 - epsilon_trunc, 1]` up to rounding.
    pub fn norm_sqr(&self) -> f64 {
        self.sectors.iter().map(SectorVector::norm_sqr).sum()
    }

    /// Probability mass allowed to be discarded by the representation.
    pub fn epsilon_trunc(&self) -> f64 {
        self.epsilon_trunc
    }

    /// The originating coherent input.
    pub fn input(&self) -> &CoherentInput {
        &self.input
    }

    /// Interaction time the state has been evolved to.
    pub fn time(&self) -> InteractionTime {
        self.time
    }

    /// Largest per-sector ladder length in use.
    pub fn max_cutoff_used(&self) -> usize {
        self.sectors.iter().map(SectorVector::cutoff).max().unwrap_or(0)
    }
}

/// Poisson probabilities `e^{-lambda} lambda^n / n!` until the remaining tail
/// drops below `tail_bound`.
fn poisson_pmf(lambda: f64, tail_bound: f64) -> Vec<f64> {
    if lambda == 0.0 {
        return vec![1.0];
    }
    let mut pmf = vec![(-lambda).exp()];
    let mut cumulative = pmf[0];
    let mut n = 0usize;
    // Past the mean each factor lambda/(n+1) < 1, so the loop terminates.
    while 1.0 - cumulative > tail_bound {
        n += 1;
        let p = pmf[n - 1] * lambda / n as f64;
        pmf.push(p);
        cumulative += p;
    }
    pmf
}

/// Complex expansion coefficients `e^{-|z|^2/2} z^n / sqrt(n!)` of a coherent
/// state, for `n` up to `len - 1`.
fn coherent_coefficients(z: Complex64, len: usize) -> Vec<Complex64> {
    let mut coef = Vec::with_capacity(len);
    coef.push(Complex64::new((-z.norm_sqr() / 2.0).exp(), 0.0));
    for n in 1..len {
        let prev = coef[n - 1];
        coef.push(prev * z / (n as f64).sqrt());
    }
    coef
}

/// Expand the two-mode coherent state `|alpha, beta>` in the number basis and
/// regroup it by the conserved difference `d = n_x - n_y`.
///
/// Sector selection and ladder truncation each receive half the policy's
/// `epsilon_trunc` budget: sectors are kept, scanning `d` outward from the
/// mean mode imbalance, until the discarded sector mass is within budget, and
/// every kept sector's Poisson ladder tail is bounded by its share of the
/// remaining budget.
pub fn decompose_input(input: &CoherentInput, policy: &TruncationPolicy) -> Result<FockState> {
    policy.validate()?;
    let eps = policy.epsilon_trunc;
    let (alpha, beta) = (input.alpha(), input.beta());
    let (lambda_x, lambda_y) = (alpha.norm_sqr(), beta.norm_sqr());

    // Single-mode expansions, computed far enough out that unrepresented mass
    // is negligible against either budget half.
    let margin = eps / 16.0;
    let px = poisson_pmf(lambda_x, margin);
    let py = poisson_pmf(lambda_y, margin);

    // Joint weight of sector d over the represented range.
    let sector_weight = |d: i32| -> f64 {
        let (x0, y0) = occupation(d, 0);
        let len = px.len().saturating_sub(x0).min(py.len().saturating_sub(y0));
        (0..len).map(|n| px[x0 + n] * py[y0 + n]).sum()
    };

    // Scan d outward from the mean imbalance, keeping sectors until the
    // discarded mass is within the sector half-budget.
    let center = (lambda_x - lambda_y).round() as i32;
    let d_min = -(py.len() as i32) + 1;
    let d_max = px.len() as i32 - 1;
    let mut candidates: Vec<(i32, f64)> = (d_min..=d_max)
        .map(|d| (d, sector_weight(d)))
        .filter(|&(_, w)| w > 0.0)
        .collect();
    candidates.sort_by_key(|&(d, _)| ((d - center).unsigned_abs(), d));

    let mut kept: Vec<(i32, f64)> = Vec::new();
    let mut kept_mass = 0.0;
    for &(d, w) in &candidates {
        if 1.0 - kept_mass <= eps / 2.0 {
            break;
        }
        kept.push((d, w));
        kept_mass += w;
    }
    kept.sort_by_key(|&(d, _)| d);

    // Ladder lengths: bound each kept sector's Poisson tail by its share of
    // the remaining half-budget.
    let ladder_budget = eps / 2.0 / kept.len().max(1) as f64;
    let cx = coherent_coefficients(alpha, px.len());
    let cy = coherent_coefficients(beta, py.len());

    let mut sectors = Vec::with_capacity(kept.len());
    for &(d, weight) in &kept {
        let (x0, y0) = occupation(d, 0);
        let len = px.len().saturating_sub(x0).min(py.len().saturating_sub(y0));
        let mut cumulative = 0.0;
        let mut cutoff = len;
        for n in 0..len {
            cumulative += px[x0 + n] * py[y0 + n];
            if weight - cumulative <= ladder_budget {
                cutoff = n + 1;
                break;
            }
        }
        if cutoff > policy.max_cutoff {
            return Err(Error::Capacity { needed: cutoff, max: policy.max_cutoff });
        }
        let amplitudes: Vec<Complex64> = (0..cutoff).map(|n| cx[x0 + n] * cy[y0 + n]).collect();
        sectors.push(SectorVector::new(d, amplitudes));
    }

    let state = FockState::new(sectors, eps, *input, InteractionTime::new(0.0)?);
    debug_assert!(state.norm_sqr() >= 1.0 - eps && state.norm_sqr() <= 1.0 + 1e-12);
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn vacuum_is_a_single_sector() {
        let input = CoherentInput::new(0.0, 0.3, 1.0, 2.0).unwrap();
        let state = decompose_input(&input, &policy()).unwrap();
        assert_eq!(state.sectors().len(), 1);
        let sector = &state.sectors()[0];
        assert_eq!(sector.difference(), 0);
        assert_eq!(sector.cutoff(), 1);
        assert_eq!(sector.amplitudes()[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn equal_split_norm_and_occupations() {
        let input = CoherentInput::new(1.0, FRAC_PI_4, 0.0, 0.0).unwrap();
        let state = decompose_input(&input, &policy()).unwrap();
        assert!(state.norm_sqr() >= 1.0 - 1e-10);
        assert!(state.norm_sqr() <= 1.0 + 1e-12);
        // <n_x> and <n_y> from the raw decomposition
        let (mut nx_mean, mut ny_mean) = (0.0, 0.0);
        for sector in state.sectors() {
            for (n, amp) in sector.amplitudes().iter().enumerate() {
                let (nx, ny) = sector.occupation(n);
                let p = amp.norm_sqr();
                nx_mean += nx as f64 * p;
                ny_mean += ny as f64 * p;
            }
        }
        assert!((nx_mean - 0.5).abs() < 1e-9);
        assert!((ny_mean - 0.5).abs() < 1e-9);
    }

    #[test]
    fn single_mode_input_populates_nonnegative_sectors_only() {
        let input = CoherentInput::new(2.0, 0.0, 0.5, 1.5).unwrap();
        let state = decompose_input(&input, &policy()).unwrap();
        assert!(state.sectors().iter().all(|s| s.difference() >= 0));
        assert!(state.sectors().iter().all(|s| s.cutoff() == 1));
        assert!(state.norm_sqr() >= 1.0 - 1e-10);
    }

    #[test]
    fn capacity_error_reports_needed_cutoff() {
        let input = CoherentInput::new(6.0, FRAC_PI_4, 0.0, 0.0).unwrap();
        let tight = TruncationPolicy { max_cutoff: 8, ..TruncationPolicy::default() };
        match decompose_input(&input, &tight) {
            Err(Error::Capacity { needed, max }) => {
                assert!(needed > 8);
                assert_eq!(max, 8);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_invalid_policy() {
        let input = CoherentInput::new(1.0, 0.2, 0.0, 0.0).unwrap();
        let bad = TruncationPolicy { epsilon_trunc: 0.0, ..TruncationPolicy::default() };
        assert!(decompose_input(&input, &bad).is_err());
    }
}
