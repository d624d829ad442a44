//! Rectangular parameter sweeps over `{A, theta, phi_x, phi_y, T}`.

use serde::Serialize;
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use crate::analytic;
use crate::criteria::{assess, Direction};
use crate::error::{Error, Result};
use crate::fock::{oracle_moments, TruncationPolicy};
use crate::input::{CoherentInput, InteractionTime};
use crate::moments::{scaled_deviation, StokesMoments};

/// Default grid-point budget for purely closed-form sweeps.
pub const DEFAULT_ANALYTIC_BUDGET: usize = 1_000_000;
/// Default grid-point budget when the Fock verifier is involved.
pub const DEFAULT_ORACLE_BUDGET: usize = 1_000;

/// Which route(s) evaluate each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMethod {
    Analytic,
    Fock,
    Both,
}

impl SweepMethod {
    fn runs_analytic(&self) -> bool {
        matches!(self, SweepMethod::Analytic | SweepMethod::Both)
    }

    fn runs_fock(&self) -> bool {
        matches!(self, SweepMethod::Fock | SweepMethod::Both)
    }
}

impl fmt::Display for SweepMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SweepMethod::Analytic => "analytic",
            SweepMethod::Fock => "fock",
            SweepMethod::Both => "both",
        };
        f.write_str(name)
    }
}

impl FromStr for SweepMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(SweepMethod::Analytic),
            "fock" => Ok(SweepMethod::Fock),
            "both" => Ok(SweepMethod::Both),
            other => Err(Error::invalid(
                "method",
                format!("expected analytic|fock|both, got `{other}`"),
            )),
        }
    }
}

/// Values for each sweep axis. Axes not mentioned in a parsed spec stay at
/// the single-point defaults `A=1, theta=pi/4, phi_x=phi_y=3*pi/4, T=1`
/// (the maximal-squeezing configuration at unit time).
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub a: Vec<f64>,
    pub theta: Vec<f64>,
    pub phi_x: Vec<f64>,
    pub phi_y: Vec<f64>,
    pub t: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            a: vec![1.0],
            theta: vec![FRAC_PI_4],
            phi_x: vec![3.0 * FRAC_PI_4],
            phi_y: vec![3.0 * FRAC_PI_4],
            t: vec![1.0],
        }
    }
}

impl GridSpec {
    /// Parse a comma-separated list of axis specs, each `name=value` or
    /// `name=start:stop:count` (inclusive linear spacing). Axis names:
    /// `A`, `theta`, `phi_x`, `phi_y`, `T`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut grid = GridSpec::default();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, rhs) = part.split_once('=').ok_or_else(|| {
                Error::GridSpec(part.to_string(), "missing `=`".to_string())
            })?;
            let values = parse_axis_values(part, rhs)?;
            match name.trim() {
                "A" | "a" | "amplitude" => grid.a = values,
                "theta" => grid.theta = values,
                "phi_x" | "phi-x" => grid.phi_x = values,
                "phi_y" | "phi-y" => grid.phi_y = values,
                "T" | "t" | "time" => grid.t = values,
                other => {
                    return Err(Error::GridSpec(
                        part.to_string(),
                        format!("unknown axis `{other}` (expected A, theta, phi_x, phi_y, T)"),
                    ))
                }
            }
        }
        Ok(grid)
    }

    /// Total number of grid points.
    pub fn len(&self) -> usize {
        self.a.len() * self.theta.len() * self.phi_x.len() * self.phi_y.len() * self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn parse_axis_values(part: &str, rhs: &str) -> Result<Vec<f64>> {
    let bad = |reason: String| Error::GridSpec(part.to_string(), reason);
    let fields: Vec<&str> = rhs.split(':').collect();
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| bad(format!("`{s}` is not a number: {e}")))
    };
    match fields.as_slice() {
        [single] => Ok(vec![parse(single)?]),
        [start, stop, count] => {
            let (start, stop) = (parse(start)?, parse(stop)?);
            let count: usize = count
                .trim()
                .parse()
                .map_err(|e| bad(format!("`{count}` is not a count: {e}")))?;
            if count == 0 {
                return Err(bad("count must be >= 1".to_string()));
            }
            if count == 1 {
                return Ok(vec![start]);
            }
            let step = (stop - start) / (count - 1) as f64;
            Ok((0..count).map(|i| start + step * i as f64).collect())
        }
        _ => Err(bad("expected `value` or `start:stop:count`".to_string())),
    }
}

/// Moments and `S1`-axis assessment at one grid point for one method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepBody {
    pub s0: f64,
    pub s_vec: [f64; 3],
    pub variances: [f64; 3],
    pub factor: Option<f64>,
    pub degree: Option<f64>,
    pub luis_max: bool,
}

impl SweepBody {
    fn from_moments(moments: &StokesMoments) -> Result<Self> {
        let report = assess(moments, &Direction::x())?;
        Ok(Self {
            s0: moments.s0,
            s_vec: [moments.s_vec.x, moments.s_vec.y, moments.s_vec.z],
            variances: moments.variances(),
            factor: report.factor,
            degree: report.degree,
            luis_max: report.verdicts.luis_max,
        })
    }
}

/// One grid point with its per-method results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub a: f64,
    pub theta: f64,
    pub phi_x: f64,
    pub phi_y: f64,
    pub t: f64,
    pub analytic: Option<SweepBody>,
    pub fock: Option<SweepBody>,
}

impl SweepRecord {
    /// The body CSV rows are written from: analytic when present, else Fock.
    pub fn primary_body(&self) -> &SweepBody {
        self.analytic.as_ref().or(self.fock.as_ref()).expect("sweep record has a body")
    }

    /// Largest scaled deviation between the two routes, when both ran.
    pub fn max_scaled_deviation(&self, abs_floor: f64) -> Option<f64> {
        let (a, f) = (self.analytic.as_ref()?, self.fock.as_ref()?);
        let mut max = scaled_deviation(a.s0, f.s0, abs_floor);
        for i in 0..3 {
            max = max.max(scaled_deviation(a.s_vec[i], f.s_vec[i], abs_floor));
            max = max.max(scaled_deviation(a.variances[i], f.variances[i], abs_floor));
        }
        Some(max)
    }
}

/// A completed sweep in deterministic (lexicographic) grid order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub method: SweepMethod,
    pub records: Vec<SweepRecord>,
}

impl SweepTable {
    /// Largest analytic/Fock deviation over all records (for `Both` sweeps).
    pub fn max_scaled_deviation(&self, abs_floor: f64) -> Option<f64> {
        self.records
            .iter()
            .filter_map(|r| r.max_scaled_deviation(abs_floor))
            .fold(None, |acc, d| Some(acc.map_or(d, |a: f64| a.max(d))))
    }
}

/// Evaluate every grid point in lexicographic order over
/// `(A, theta, phi_x, phi_y, T)`.
pub fn sweep(
    grid: &GridSpec,
    method: SweepMethod,
    policy: &TruncationPolicy,
    analytic_budget: usize,
    oracle_budget: usize,
) -> Result<SweepTable> {
    let budget = if method.runs_fock() { oracle_budget } else { analytic_budget };
    if grid.len() > budget {
        return Err(Error::BudgetExceeded {
            requested: grid.len(),
            budget,
            method: method.to_string(),
        });
    }

    let mut records = Vec::with_capacity(grid.len());
    for &a in &grid.a {
        for &theta in &grid.theta {
            for &phi_x in &grid.phi_x {
                for &phi_y in &grid.phi_y {
                    for &t in &grid.t {
                        let input = CoherentInput::new(a, theta, phi_x, phi_y)?;
                        let time = InteractionTime::new(t)?;
                        let analytic_body = if method.runs_analytic() {
                            Some(SweepBody::from_moments(&analytic::moments(&input, time))?)
                        } else {
                            None
                        };
                        let fock_body = if method.runs_fock() {
                            Some(SweepBody::from_moments(&oracle_moments(&input, time, policy)?)?)
                        } else {
                            None
                        };
                        records.push(SweepRecord {
                            a,
                            theta,
                            phi_x,
                            phi_y,
                            t,
                            analytic: analytic_body,
                            fock: fock_body,
                        });
                    }
                }
            }
        }
    }
    Ok(SweepTable { method, records })
}
