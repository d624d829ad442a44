//! The validation suite: every release gate as an executable check.
//!
//! The same checks back the `validate` subcommand and the acceptance
//! integration tests. Each check returns a [`CheckResult`] with a one-line
//! detail string; the suite passes only if every check does.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::time::Instant;

use crate::analytic;
use crate::criteria::{assess, factor_of_db, db_of_factor, Direction};
use crate::error::Result;
use crate::explorer::{detection_scenario, optimize_factor, DEFAULT_GRID_RESOLUTION};
use crate::fock::{operator_selfcheck, oracle_moments, TruncationPolicy};
use crate::input::{CoherentInput, InteractionTime};
use crate::moments::{scaled_deviation, MomentDeltas, StokesMoments};

/// Tunable knobs of the validation suite. Defaults pin the release gates;
/// overrides only tighten or widen sampling for development runs.
#[derive(Debug, Clone)]
pub struct ValidationConfig {
    pub policy: TruncationPolicy,
    /// Scaled-deviation tolerance for analytic/Fock agreement.
    pub rel_tol: f64,
    /// Scale floor of the deviation metric.
    pub abs_floor: f64,
    /// Random points for the formula-arbitration and uncertainty checks.
    pub sample_points: usize,
    /// Random points for the conservation check.
    pub drift_points: usize,
    /// Boundary times checked analytically.
    pub boundary_points: usize,
    /// How many of the smallest sampled boundary times the Fock route recomputes.
    pub boundary_oracle_points: usize,
    pub seed: u64,
    pub grid_resolution: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            policy: TruncationPolicy::default(),
            rel_tol: 1e-6,
            abs_floor: 1e-2,
            sample_points: 100,
            drift_points: 8,
            boundary_points: 20,
            boundary_oracle_points: 5,
            seed: 0x5457_454e,
            grid_resolution: DEFAULT_GRID_RESOLUTION,
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CheckResult {
    fn new(id: usize, name: &'static str, passed: bool, details: String) -> Self {
        Self { id, name, passed, details }
    }
}

/// One random sample point evaluated by both routes.
pub struct SamplePoint {
    pub input: CoherentInput,
    pub time: InteractionTime,
    pub analytic: StokesMoments,
    pub fock: StokesMoments,
}

/// Prepared context: the random two-route sample is computed once and shared
/// by the checks that need it.
pub struct ValidationSuite {
    pub config: ValidationConfig,
    sample: Vec<SamplePoint>,
}

impl ValidationSuite {
    /// Draw the random sample (`A <= 2`, `T <= 1.5`) and evaluate both routes.
    pub fn prepare(config: ValidationConfig) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut sample = Vec::with_capacity(config.sample_points);
        for _ in 0..config.sample_points {
            let input = CoherentInput::new(
                rng.random_range(0.05..=2.0),
                rng.random_range(0.0..FRAC_PI_2),
                rng.random_range(0.0..TAU),
                rng.random_range(0.0..TAU),
            )?;
            let time = InteractionTime::new(rng.random_range(0.01..=1.5))?;
            let analytic = analytic::moments(&input, time);
            let fock = oracle_moments(&input, time, &config.policy)?;
            sample.push(SamplePoint { input, time, analytic, fock });
        }
        Ok(Self { config, sample })
    }

    /// The shared random sample.
    pub fn sample(&self) -> &[SamplePoint] {
        &self.sample
    }

    /// Run every check in order.
    pub fn run_all(&self) -> Vec<CheckResult> {
        vec![
            self.check_headline(),
            self.check_optimum(),
            self.check_arbitration(),
            self.check_conservation(),
            self.check_boundary(),
            self.check_operator_algebra(),
            self.check_uncertainty(),
            self.check_scenario(),
            self.check_decibel(),
            self.check_direction_scan(),
        ]
    }

    /// 1. Headline squeezing numbers: degree `1 - e^{-2T}` along `S1` at the
    /// optimum, analytic to 1e-12 and Fock to 1e-6, within runtime budgets.
    pub fn check_headline(&self) -> CheckResult {
        let mut passed = true;
        let mut details = Vec::new();

        let phase = 0.75 * PI;
        let input = CoherentInput::new(1.0, FRAC_PI_4, phase, phase).unwrap();

        // analytic path, timed after a warm-up call
        let mut analytic_degrees = [0.0f64; 2];
        let mut analytic_elapsed = 0.0f64;
        for (i, &t) in [1.0, 2.0].iter().enumerate() {
            let time = InteractionTime::new(t).unwrap();
            let _ = analytic::moments(&input, time);
            let start = Instant::now();
            let moments = analytic::moments(&input, time);
            let report = assess(&moments, &Direction::x()).unwrap();
            analytic_elapsed = analytic_elapsed.max(start.elapsed().as_secs_f64());
            let degree = report.degree.unwrap_or(f64::NAN);
            analytic_degrees[i] = degree;
            let expected = 1.0 - (-2.0 * t).exp();
            if (degree - expected).abs() > 1e-12 * expected {
                passed = false;
            }
        }
        details.push(format!(
            "analytic degree(T=1)={:.7}, degree(T=2)={:.7} ({:.1}us/point)",
            analytic_degrees[0],
            analytic_degrees[1],
            analytic_elapsed * 1e6
        ));
        if analytic_elapsed > 1e-3 {
            passed = false;
            details.push("analytic path exceeded 1 ms".to_string());
        }

        // Fock path at T=1 and T=2; the latter is the timed worst case.
        for &t in &[1.0, 2.0] {
            let time = InteractionTime::new(t).unwrap();
            let start = Instant::now();
            let result = oracle_moments(&input, time, &self.config.policy)
                .and_then(|m| assess(&m, &Direction::x()));
            let elapsed = start.elapsed().as_secs_f64();
            match result {
                Ok(report) => {
                    let degree = report.degree.unwrap_or(f64::NAN);
                    let expected = 1.0 - (-2.0 * t).exp();
                    if (degree - expected).abs() > 1e-6 * expected {
                        passed = false;
                        details.push(format!("fock degree(T={t}) off: {degree:.9}"));
                    }
                    if t == 2.0 {
                        details.push(format!("fock T=2: degree={degree:.7}, {elapsed:.2}s"));
                        if elapsed > 60.0 {
                            passed = false;
                            details.push("fock T=2 exceeded 60 s".to_string());
                        }
                    }
                }
                Err(e) => {
                    passed = false;
                    details.push(format!("fock route failed at T={t}: {e}"));
                }
            }
        }

        CheckResult::new(1, "headline degree 1 - e^(-2T)", passed, details.join("; "))
    }

    /// 2. Optimizer lands on `(pi/4, 3*pi/2)` with `factor_min = e^{-2T}`.
    pub fn check_optimum(&self) -> CheckResult {
        let mut passed = true;
        let mut worst = 0.0f64;
        let mut details = Vec::new();
        for &t in &[0.25, 0.5, 1.0, 2.0] {
            let time = InteractionTime::new(t).unwrap();
            match optimize_factor(time, self.config.grid_resolution) {
                Ok(report) => {
                    let err = (report.factor_min - (-2.0 * t).exp()).abs();
                    worst = worst.max(err);
                    let res = self.config.grid_resolution;
                    if err > 1e-6
                        || (report.theta_star - FRAC_PI_4).abs() > res
                        || (report.phase_sum_star - 1.5 * PI).abs() > res
                    {
                        passed = false;
                        details.push(format!(
                            "T={t}: factor_min={:.9}, theta*={:.6}, u*={:.6}",
                            report.factor_min, report.theta_star, report.phase_sum_star
                        ));
                    }
                }
                Err(e) => {
                    passed = false;
                    details.push(format!("T={t}: {e}"));
                }
            }
        }
        details.insert(0, format!("max |factor_min - e^(-2T)| = {worst:.2e} over T in {{0.25,0.5,1,2}}"));
        CheckResult::new(2, "optimizer locates (pi/4, 3pi/2)", passed, details.join("; "))
    }

    /// 3. Formula arbitration: closed forms agree with the Fock verifier on
    /// the random sample; the rejected variant forms disagree at the
    /// documented point (see NOTES.md).
    pub fn check_arbitration(&self) -> CheckResult {
        let mut passed = true;
        let mut details = Vec::new();

        let mut worst = 0.0f64;
        let mut failures = 0usize;
        for point in &self.sample {
            let deltas = MomentDeltas::between(&point.analytic, &point.fock, self.config.abs_floor);
            worst = worst.max(deltas.max);
            if deltas.max > self.config.rel_tol {
                failures += 1;
            }
        }
        if failures > 0 {
            passed = false;
            details.push(format!("{failures} sample points off tolerance"));
        }
        details.push(format!(
            "max scaled deviation {:.2e} over {} points (tol {:.0e})",
            worst,
            self.sample.len(),
            self.config.rel_tol
        ));

        // Documented arbitration point, NOTES.md: the variant forms disagree.
        let input = CoherentInput::new(1.0, PI / 3.0, 0.3, 0.9).unwrap();
        let time = InteractionTime::new(0.5).unwrap();
        match oracle_moments(&input, time, &self.config.policy) {
            Ok(fock) => {
                let (s2_var, v23_var) = variant_forms(&input, time);
                let dev_s2 = scaled_deviation(s2_var, fock.s_vec.y, self.config.abs_floor);
                let dev_v2 = scaled_deviation(v23_var, fock.variances()[1], self.config.abs_floor);
                let corrected =
                    MomentDeltas::between(&analytic::moments(&input, time), &fock, self.config.abs_floor);
                if dev_s2 < 1e-3 || dev_v2 < 1e-3 || corrected.max > self.config.rel_tol {
                    passed = false;
                }
                details.push(format!(
                    "variant forms deviate by {dev_s2:.2e} (S2), {dev_v2:.2e} (V2); \
                     corrected forms by {:.2e}",
                    corrected.max
                ));
            }
            Err(e) => {
                passed = false;
                details.push(format!("arbitration point failed: {e}"));
            }
        }

        CheckResult::new(3, "formula arbitration vs Fock verifier", passed, details.join("; "))
    }

    /// 4. Conservation: `<S1>`, `V1`, and the norm survive evolution.
    ///
    /// Unitarity bookkeeping does not depend on the truncation budget, so the
    /// check runs at `epsilon_trunc = 1e-8`, which keeps the `A = 2, T = 2`
    /// box corner within the desk-scale ladder ceiling (at `1e-10` that
    /// corner needs cutoffs beyond 512); the drift thresholds are unchanged.
    pub fn check_conservation(&self) -> CheckResult {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ 0xD51F);
        let mut passed = true;
        let mut worst_drift = 0.0f64;
        let mut details = Vec::new();
        let policy = TruncationPolicy {
            epsilon_trunc: self.config.policy.epsilon_trunc.max(1e-8),
            ..self.config.policy
        };

        // Fixed stress points: the box corner A = 2, T = 2 (neutral phase
        // sum) and the strongest-squeezing configuration A = 1, T = 2.
        let mut points: Vec<(CoherentInput, f64)> = vec![
            (CoherentInput::new(2.0, FRAC_PI_4, FRAC_PI_2, FRAC_PI_2).unwrap(), 2.0),
            (CoherentInput::new(1.0, FRAC_PI_4, 0.75 * PI, 0.75 * PI).unwrap(), 2.0),
        ];
        for _ in 0..self.config.drift_points {
            points.push((
                CoherentInput::new(
                    rng.random_range(0.05..=2.0),
                    rng.random_range(0.0..FRAC_PI_2),
                    rng.random_range(0.0..TAU),
                    rng.random_range(0.0..TAU),
                )
                .unwrap(),
                rng.random_range(0.01..=2.0),
            ));
        }

        for (input, t) in &points {
            let time = InteractionTime::new(*t).unwrap();
            let run = || -> Result<(f64, f64, f64, f64)> {
                let state = crate::fock::decompose_input(input, &policy)?;
                let before = crate::fock::measure_moments(&state)?;
                let evolved = crate::fock::evolve(&state, time, &policy)?;
                let after = crate::fock::measure_moments(&evolved)?;
                let s1_drift = (after.s_vec.x - before.s_vec.x).abs();
                let v1_drift = (after.variances()[0] - before.variances()[0]).abs();
                Ok((s1_drift, v1_drift, evolved.norm_sqr(), state.norm_sqr()))
            };
            match run() {
                Ok((s1_drift, v1_drift, norm_after, norm_before)) => {
                    worst_drift = worst_drift.max(s1_drift).max(v1_drift);
                    if s1_drift > 1e-9 || v1_drift > 1e-9 {
                        passed = false;
                        details.push(format!(
                            "drift at A={:.3}, T={:.3}: S1 {s1_drift:.2e}, V1 {v1_drift:.2e}",
                            input.amplitude(),
                            t
                        ));
                    }
                    let eps = policy.epsilon_trunc;
                    if !(norm_after >= 1.0 - eps && norm_after <= 1.0 + 1e-12)
                        || (norm_after - norm_before).abs() > 1e-12
                    {
                        passed = false;
                        details.push(format!("norm violation: {norm_before} -> {norm_after}"));
                    }
                }
                Err(e) => {
                    passed = false;
                    details.push(format!("point failed: {e}"));
                }
            }
        }
        details.insert(
            0,
            format!("max |<S1>|/V1 drift {worst_drift:.2e} over {} points", points.len()),
        );
        CheckResult::new(4, "S1 and norm conservation under evolution", passed, details.join("; "))
    }

    /// 5. The no-squeezing boundary `u = arcsin(tanh T)` carries factor one
    /// and the squeezing verdict flips across it.
    pub fn check_boundary(&self) -> CheckResult {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ 0xB0);
        let mut passed = true;
        let mut details = Vec::new();
        let mut times: Vec<f64> =
            (0..self.config.boundary_points).map(|_| rng.random_range(f64::EPSILON..=3.0)).collect();

        let mut worst = 0.0f64;
        for &t in &times {
            let time = InteractionTime::new(t).unwrap();
            let u = t.tanh().asin();
            let at = |phase_sum: f64| {
                let input = CoherentInput::new(1.0, FRAC_PI_4, 0.0, phase_sum).unwrap();
                analytic::s1_factor(&input, time)
            };
            let deviation = (at(u) - 1.0).abs();
            worst = worst.max(deviation);
            if deviation > 1e-9 || at(u - 0.01) >= 1.0 || at(u + 0.01) <= 1.0 {
                passed = false;
                details.push(format!("analytic boundary violated at T={t:.4}"));
            }
        }
        details.push(format!(
            "analytic max |factor - 1| = {worst:.2e} over {} times",
            times.len()
        ));

        // Fock recomputation at the smallest sampled times, where the cutoff
        // stays desk-scale.
        times.sort_by(f64::total_cmp);
        let mut fock_worst = 0.0f64;
        for &t in times.iter().take(self.config.boundary_oracle_points) {
            let time = InteractionTime::new(t).unwrap();
            let u = t.tanh().asin();
            let input = CoherentInput::new(1.0, FRAC_PI_4, 0.0, u).unwrap();
            match oracle_moments(&input, time, &self.config.policy)
                .and_then(|m| assess(&m, &Direction::x()))
            {
                Ok(report) => {
                    let deviation = (report.factor.unwrap_or(f64::NAN) - 1.0).abs();
                    fock_worst = fock_worst.max(deviation);
                    if !(deviation <= 1e-6) {
                        passed = false;
                        details.push(format!("fock boundary off at T={t:.4}: {deviation:.2e}"));
                    }
                }
                Err(e) => {
                    passed = false;
                    details.push(format!("fock boundary failed at T={t:.4}: {e}"));
                }
            }
        }
        details.push(format!(
            "fock max |factor - 1| = {fock_worst:.2e} at the {} smallest times",
            self.config.boundary_oracle_points
        ));

        CheckResult::new(5, "squeezing-region boundary arcsin(tanh T)", passed, details.join("; "))
    }

    /// 6. Stokes operator algebra on the truncated interior.
    pub fn check_operator_algebra(&self) -> CheckResult {
        match operator_selfcheck(16) {
            Ok(report) => {
                let residual = report.max_residual();
                CheckResult::new(
                    6,
                    "operator algebra self-check (cutoff 16)",
                    residual < 1e-12,
                    format!(
                        "max interior residual {residual:.2e} (commutators {:.2e}, S0 {:.2e})",
                        report.max_commutator_residual, report.max_s0_residual
                    ),
                )
            }
            Err(e) => CheckResult::new(6, "operator algebra self-check (cutoff 16)", false, e.to_string()),
        }
    }

    /// 7. Uncertainty products `V_j V_k >= <S_l>^2` on the Fock sample.
    pub fn check_uncertainty(&self) -> CheckResult {
        let mut passed = true;
        let mut worst_margin = f64::INFINITY;
        let mut failures = 0usize;
        for point in &self.sample {
            let v = point.fock.variances();
            let s = &point.fock.s_vec;
            for (j, k, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let lhs = v[j] * v[k];
                let rhs = s[l] * s[l];
                let slack = self.config.rel_tol * rhs + 1e-9;
                worst_margin = worst_margin.min(lhs - rhs);
                if lhs < rhs - slack {
                    failures += 1;
                    passed = false;
                }
            }
        }
        CheckResult::new(
            7,
            "uncertainty relations V_j V_k >= <S_l>^2",
            passed,
            format!(
                "{failures} violations over {} points; min(V_j V_k - <S_l>^2) = {worst_margin:.3e}",
                self.sample.len()
            ),
        )
    }

    /// 8. Balanced-detection preset: `S3` vanishes, intensities add up, and
    /// the `S1` degree matches the headline value.
    pub fn check_scenario(&self) -> CheckResult {
        let time = InteractionTime::new(1.0).unwrap();
        match detection_scenario(1.0, time, 0.75 * PI, &self.config.policy) {
            Ok(report) => {
                let mut passed = true;
                let mut details = Vec::new();
                let s3 = report.s3_from_intensities.abs();
                if s3 >= 1e-6 {
                    passed = false;
                }
                let sum_linear =
                    (report.intensities.i_plus + report.intensities.i_minus - report.s0).abs();
                let sum_circular =
                    (report.intensities.i_right + report.intensities.i_left - report.s0).abs();
                if sum_linear > 1e-9 || sum_circular > 1e-9 {
                    passed = false;
                }
                let degree = report.assessment.degree.unwrap_or(f64::NAN);
                let expected = 1.0 - (-2.0_f64).exp();
                if (degree - expected).abs() > 1e-6 * expected {
                    passed = false;
                }
                details.push(format!(
                    "|S3| = {s3:.2e}, intensity closure {:.2e}, degree = {degree:.7}",
                    sum_linear.max(sum_circular)
                ));
                CheckResult::new(8, "balanced-detection preset", passed, details.join("; "))
            }
            Err(e) => CheckResult::new(8, "balanced-detection preset", false, e.to_string()),
        }
    }

    /// 9. Decibel conversion round-trips through -3.4 dB.
    pub fn check_decibel(&self) -> CheckResult {
        let factor = factor_of_db(-3.4);
        let round_trip_err = db_of_factor(factor).ok().map(|db| (db + 3.4).abs());
        let factor_err = (factor - 0.457088189614875).abs();
        let passed = round_trip_err.is_some_and(|e| e <= 1e-9) && factor_err <= 1e-9;
        CheckResult::new(
            9,
            "decibel round-trip at -3.4 dB",
            passed,
            format!(
                "factor(-3.4 dB) = {factor:.9} (ref deviation {factor_err:.1e}), \
                 round-trip error {round_trip_err:?}"
            ),
        )
    }

    /// 10. Diagnostic (informational): seeded random-direction scan of the
    /// Fock covariance at the flagship point; reports whether any direction
    /// beats the `S1` axis. Always passes; the numbers are for the record.
    pub fn check_direction_scan(&self) -> CheckResult {
        let input = CoherentInput::new(1.0, FRAC_PI_4, 0.75 * PI, 0.75 * PI).unwrap();
        let time = InteractionTime::new(1.0).unwrap();
        match oracle_moments(&input, time, &self.config.policy) {
            Ok(moments) => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ 0xD12EC7);
                let mut best_factor = f64::INFINITY;
                let mut best_dir = [1.0, 0.0, 0.0];
                for _ in 0..2000 {
                    let v = nalgebra::Vector3::new(
                        rng.random_range(-1.0..=1.0),
                        rng.random_range(-1.0..=1.0),
                        rng.random_range(-1.0..=1.0),
                    );
                    if v.norm() < 1e-3 {
                        continue;
                    }
                    let direction = Direction::new(v).unwrap();
                    if let Ok(report) = assess(&moments, &direction) {
                        if let Some(f) = report.factor {
                            if f < best_factor {
                                best_factor = f;
                                best_dir = report.direction;
                            }
                        }
                    }
                }
                let axis = assess(&moments, &Direction::x())
                    .ok()
                    .and_then(|r| r.factor)
                    .unwrap_or(f64::NAN);
                CheckResult::new(
                    10,
                    "direction-scan diagnostic (informational)",
                    true,
                    format!(
                        "S1-axis factor {axis:.6}; best sampled factor {best_factor:.6} \
                         at ({:.3}, {:.3}, {:.3})",
                        best_dir[0], best_dir[1], best_dir[2]
                    ),
                )
            }
            Err(e) => CheckResult::new(
                10,
                "direction-scan diagnostic (informational)",
                true,
                format!("scan skipped: {e}"),
            ),
        }
    }
}

/// The rejected variant closed forms (kept only to document their
/// disagreement with the verifier): `sin^2 theta` in place of `sin 2theta` in
/// the `cosh 2T` term of `<S2>`, and an extra `cosh 2T` on the variance's
/// `sinh 4T` term.
fn variant_forms(input: &CoherentInput, time: InteractionTime) -> (f64, f64) {
    let a2 = input.mean_photons();
    let t = time.value();
    let (c2, s2, s4) = ((2.0 * t).cosh(), (2.0 * t).sinh(), (4.0 * t).sinh());
    let theta = input.theta();
    let (px, py) = (input.phi_x(), input.phi_y());
    let s2_variant = a2
        * (c2 * theta.sin().powi(2) * input.phase_diff().cos()
            - s2 * (theta.cos().powi(2) * (2.0 * px).sin() + theta.sin().powi(2) * (2.0 * py).sin()));
    let v23_variant = a2 * c2 * c2 + (a2 + 1.0) * s2 * s2
        - a2 * s4 * c2 * (2.0 * theta).sin() * input.phase_sum().sin();
    (s2_variant, v23_variant)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        // Small sample keeps the unit test fast; the acceptance suite runs
        // the full configuration.
        let config = ValidationConfig {
            sample_points: 6,
            drift_points: 2,
            boundary_points: 6,
            boundary_oracle_points: 2,
            ..ValidationConfig::default()
        };
        let suite = ValidationSuite::prepare(config).unwrap();
        for check in suite.run_all() {
            assert!(check.passed, "check {} `{}` failed: {}", check.id, check.name, check.details);
        }
    }
}
