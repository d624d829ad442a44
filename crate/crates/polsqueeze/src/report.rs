//! Serialization: stable CSV schemas, the JSON evaluation report, and the
//! fixed-significant-digit number format used for CSV cells.
//!
//! Schema stability is part of the contract: CSV headers and JSON field names
//! are pinned by golden tests, and the `schema_version` field tracks them.

use serde::Serialize;

use crate::criteria::SqueezingAssessment;
use crate::explorer::{BoundaryCurve, SweepTable};
use crate::input::{CoherentInput, InteractionTime};
use crate::moments::{MomentDeltas, StokesMoments};

/// Version tag carried by JSON reports.
pub const SCHEMA_VERSION: &str = "1";

/// Significant digits used for CSV cells.
pub const CSV_SIG_DIGITS: usize = 12;

/// Format `x` with `sig` significant digits, plain decimal in the
/// human-friendly magnitude range and scientific notation outside it.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&magnitude) {
        return format!("{:.*e}", sig.saturating_sub(1), x);
    }
    let decimals = (sig as i32 - 1 - magnitude).max(0) as usize;
    format!("{:.*}", decimals, x)
}

fn csv_cell(x: f64) -> String {
    fmt_sig(x, CSV_SIG_DIGITS)
}

impl BoundaryCurve {
    /// CSV with the pinned header `T,phi1,phi2`, radians, 12 significant
    /// digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("T,phi1,phi2\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{}\n",
                csv_cell(s.t),
                csv_cell(s.phi_1),
                csv_cell(s.phi_2)
            ));
        }
        out
    }
}

impl SweepTable {
    /// CSV with the pinned header
    /// `A,theta,phi_x,phi_y,T,S0,S1,S2,S3,V1,V2,V3,factor,degree,luis_max`.
    ///
    /// Rows carry the analytic body when the sweep computed one, otherwise the
    /// Fock body; a not-applicable factor/degree leaves the cell empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("A,theta,phi_x,phi_y,T,S0,S1,S2,S3,V1,V2,V3,factor,degree,luis_max\n");
        for r in &self.records {
            let b = r.primary_body();
            let opt = |v: Option<f64>| v.map(csv_cell).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                csv_cell(r.a),
                csv_cell(r.theta),
                csv_cell(r.phi_x),
                csv_cell(r.phi_y),
                csv_cell(r.t),
                csv_cell(b.s0),
                csv_cell(b.s_vec[0]),
                csv_cell(b.s_vec[1]),
                csv_cell(b.s_vec[2]),
                csv_cell(b.variances[0]),
                csv_cell(b.variances[1]),
                csv_cell(b.variances[2]),
                opt(b.factor),
                opt(b.degree),
                b.luis_max
            ));
        }
        out
    }
}

/// Input echo with the derived mode amplitudes.
#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub amplitude: f64,
    pub theta: f64,
    pub phi_x: f64,
    pub phi_y: f64,
    pub time: f64,
    /// `[re, im]` of the x-mode amplitude.
    pub alpha: [f64; 2],
    /// `[re, im]` of the y-mode amplitude.
    pub beta: [f64; 2],
}

impl InputEcho {
    pub fn new(input: &CoherentInput, time: InteractionTime) -> Self {
        let (alpha, beta) = (input.alpha(), input.beta());
        Self {
            amplitude: input.amplitude(),
            theta: input.theta(),
            phi_x: input.phi_x(),
            phi_y: input.phi_y(),
            time: time.value(),
            alpha: [alpha.re, alpha.im],
            beta: [beta.re, beta.im],
        }
    }
}

/// Convergence bookkeeping of a Fock run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FockDiagnostics {
    pub sectors: usize,
    pub max_cutoff_used: usize,
    pub norm_sqr: f64,
}

/// Moments and assessment from one evaluation route.
#[derive(Debug, Clone, Serialize)]
pub struct MethodReport {
    pub source: crate::moments::MomentSource,
    pub s0: f64,
    pub s_vec: [f64; 3],
    pub variances: [f64; 3],
    /// Row-major full covariance when the route provides one.
    pub covariance: Option<[[f64; 3]; 3]>,
    pub assessment: SqueezingAssessment,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fock: Option<FockDiagnostics>,
}

impl MethodReport {
    pub fn new(
        moments: &StokesMoments,
        assessment: SqueezingAssessment,
        fock: Option<FockDiagnostics>,
    ) -> Self {
        let covariance = moments.covariance.full().map(|m| {
            [
                [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
                [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
                [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
            ]
        });
        Self {
            source: moments.source,
            s0: moments.s0,
            s_vec: [moments.s_vec.x, moments.s_vec.y, moments.s_vec.z],
            variances: moments.variances(),
            covariance,
            assessment,
            fock,
        }
    }
}

/// The JSON report of the `evaluate` operation.
#[derive(Debug, Clone, Serialize)]
pub struct EvaluateReport {
    pub schema_version: &'static str,
    pub input: InputEcho,
    pub direction: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<MethodReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fock: Option<MethodReport>,
    /// Scaled per-quantity deviations between the two routes, when both ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<MomentDeltas>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(3.0, 12), "3.00000000000");
        assert_eq!(fmt_sig(1.4713, 12), "1.47130000000");
        assert_eq!(fmt_sig(-0.25, 12), "-0.250000000000");
        assert_eq!(fmt_sig(123456.789, 6), "123457");
        assert_eq!(fmt_sig(1e-7, 3), "1.00e-7");
        assert_eq!(fmt_sig(2.5e17, 3), "2.50e17");
    }

    #[test]
    fn boundary_csv_schema() {
        let curve = crate::explorer::boundary_curve(3.0, 2).unwrap();
        let csv = curve.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "T,phi1,phi2");
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "1.50000000000");
        assert_eq!(csv.lines().count(), 3);
    }
}
