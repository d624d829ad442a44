//! Explicit-matrix check of the Stokes operator algebra on a truncated space.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Residual above which [`operator_selfcheck`] reports an operator
/// construction bug.
pub const SELFCHECK_RESIDUAL_LIMIT: f64 = 1e-10;

/// Largest supported cutoff; the check builds dense `cutoff^2 x cutoff^2`
/// matrices, so this is a memory bound, not a physics one.
const MAX_SELFCHECK_CUTOFF: usize = 32;

/// Outcome of the operator algebra check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfcheckReport {
    pub cutoff: usize,
    /// Max interior residual of `[S_j, S_k] - 2 i eps_jkl S_l` over the three
    /// cyclic identities.
    pub max_commutator_residual: f64,
    /// Max interior residual of `[S0, S_j]`, `j = 1..3`.
    pub max_s0_residual: f64,
}

impl SelfcheckReport {
    pub fn max_residual(&self) -> f64 {
        self.max_commutator_residual.max(self.max_s0_residual)
    }
}

/// Build explicit matrices for `S0..S3` on the two-mode space truncated at
/// `cutoff` photons per mode and verify the commutation relations
/// `[S_j, S_k] = 2 i eps_jkl S_l` and `[S0, S_j] = 0` on the interior
/// subspace (both mode indices at most `cutoff - 2` for row and column, where
/// truncation cannot clip any intermediate state).
pub fn operator_selfcheck(cutoff: usize) -> Result<SelfcheckReport> {
    if cutoff < 4 {
        return Err(Error::invalid("cutoff", format!("must be >= 4, got {cutoff}")));
    }
    if cutoff > MAX_SELFCHECK_CUTOFF {
        return Err(Error::invalid(
            "cutoff",
            format!("must be <= {MAX_SELFCHECK_CUTOFF} (dense-matrix memory bound), got {cutoff}"),
        ));
    }

    let s = stokes_matrices(cutoff);
    let two_i = Complex64::new(0.0, 2.0);

    let mut commutator_residual = 0.0f64;
    for &(j, k, l) in &[(1usize, 2usize, 3usize), (2, 3, 1), (3, 1, 2)] {
        let lhs = &s[j] * &s[k] - &s[k] * &s[j];
        let residual = lhs - s[l].map(|x| x * two_i);
        commutator_residual = commutator_residual.max(interior_max(&residual, cutoff));
    }

    let mut s0_residual = 0.0f64;
    for j in 1..4 {
        let residual = &s[0] * &s[j] - &s[j] * &s[0];
        s0_residual = s0_residual.max(interior_max(&residual, cutoff));
    }

    let report = SelfcheckReport {
        cutoff,
        max_commutator_residual: commutator_residual,
        max_s0_residual: s0_residual,
    };
    if report.max_residual() > SELFCHECK_RESIDUAL_LIMIT {
        return Err(Error::SelfcheckFailed {
            residual: report.max_residual(),
            limit: SELFCHECK_RESIDUAL_LIMIT,
        });
    }
    Ok(report)
}

/// Dense `S0..S3` on the truncated product space, basis index `nx*cutoff + ny`.
fn stokes_matrices(cutoff: usize) -> [DMatrix<Complex64>; 4] {
    let dim = cutoff * cutoff;
    let idx = |nx: usize, ny: usize| nx * cutoff + ny;
    let mut s0 = DMatrix::<Complex64>::zeros(dim, dim);
    let mut s1 = s0.clone();
    let mut s2 = s0.clone();
    let mut s3 = s0.clone();

    for nx in 0..cutoff {
        for ny in 0..cutoff {
            let i = idx(nx, ny);
            s0[(i, i)] = Complex64::new((nx + ny) as f64, 0.0);
            s1[(i, i)] = Complex64::new(nx as f64 - ny as f64, 0.0);
            // a_x^† a_y and its conjugate, kept inside the truncated space
            if ny >= 1 && nx + 1 < cutoff {
                let c = (((nx + 1) * ny) as f64).sqrt();
                let target = idx(nx + 1, ny - 1);
                s2[(target, i)] += Complex64::new(c, 0.0);
                s2[(i, target)] += Complex64::new(c, 0.0);
                s3[(target, i)] += Complex64::new(0.0, -c);
                s3[(i, target)] += Complex64::new(0.0, c);
            }
        }
    }
    [s0, s1, s2, s3]
}

/// Max absolute element over rows and columns whose mode indices both stay at
/// least two levels below the truncation edge.
fn interior_max(m: &DMatrix<Complex64>, cutoff: usize) -> f64 {
    let interior: Vec<usize> = (0..cutoff * cutoff)
        .filter(|i| {
            let (nx, ny) = (i / cutoff, i % cutoff);
            nx + 2 <= cutoff && ny + 2 <= cutoff
        })
        .collect();
    let mut max = 0.0f64;
    for &r in &interior {
        for &c in &interior {
            max = max.max(m[(r, c)].norm());
        }
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cutoff_algebra_is_exact() {
        let report = operator_selfcheck(4).unwrap();
        assert!(report.max_residual() < 1e-12, "residual {:.3e}", report.max_residual());
    }

    #[test]
    fn s0_commutes_exactly_at_cutoff_16() {
        let report = operator_selfcheck(16).unwrap();
        // [S0, S1] vanishes identically (both diagonal); S2/S3 interior too.
        assert_eq!(report.max_s0_residual, 0.0);
        assert!(report.max_commutator_residual < 1e-12);
    }

    #[test]
    fn rejects_tiny_cutoff() {
        assert!(operator_selfcheck(3).is_err());
    }
}
