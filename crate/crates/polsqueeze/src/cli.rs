//! Command-line surface: argument parsing, dispatch, and exit codes.
//!
//! Exit codes: `0` success, `1` validation failure, `2` usage error,
//! `3` numerical capacity/convergence failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;
use std::path::{Path, PathBuf};

use crate::analytic;
use crate::config::RunConfig;
use crate::criteria::{assess, Direction};
use crate::error::{Error, Result};
use crate::explorer::{
    boundary_curve, optimize_factor, sweep, GridSpec, SweepMethod, DEFAULT_GRID_RESOLUTION,
};
use crate::fock::{decompose_input, evolve, measure_moments};
use crate::input::{CoherentInput, InteractionTime};
use crate::moments::MomentDeltas;
use crate::report::{EvaluateReport, FockDiagnostics, InputEcho, MethodReport};
use crate::validate::{ValidationConfig, ValidationSuite};

#[derive(Parser)]
#[command(
    name = "polsqueeze",
    version,
    about = "Polarization squeezing under non-degenerate parametric amplification",
    after_help = "Exit codes: 0 success, 1 validation failure, 2 usage error, \
                  3 numerical capacity/convergence failure."
)]
struct Cli {
    /// TOML config file (default: $POLSQUEEZE_CONFIG, else built-in defaults).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moments and squeezing assessment at one parameter point (JSON).
    Evaluate(EvaluateArgs),
    /// The no-squeezing region boundary phi_1/phi_2 against T (CSV).
    Region(RegionArgs),
    /// Minimize the S1 squeezing factor at fixed time (JSON).
    Optimize(OptimizeArgs),
    /// Evaluate a parameter grid (CSV; JSON with `format = "json"`).
    Sweep(SweepArgs),
    /// Run the full validation suite and report a per-check table.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Analytic,
    Fock,
    Both,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Total amplitude A (mean photon number A^2).
    #[arg(long, short = 'A')]
    amplitude: f64,
    /// Mixing angle theta, radians (degrees with --degrees).
    #[arg(long)]
    theta: f64,
    /// Phase of the x mode, radians (degrees with --degrees).
    #[arg(long)]
    phi_x: f64,
    /// Phase of the y mode, radians (degrees with --degrees).
    #[arg(long)]
    phi_y: f64,
    /// Dimensionless interaction time T.
    #[arg(long)]
    time: f64,
    #[arg(long, value_enum, default_value_t = Method::Analytic)]
    method: Method,
    /// Assessed direction: x | y | z | "n1,n2,n3".
    #[arg(long, default_value = "x")]
    direction: String,
    /// Interpret the input angles as degrees.
    #[arg(long)]
    degrees: bool,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RegionArgs {
    /// Largest interaction time on the curve.
    #[arg(long)]
    time_max: f64,
    /// Number of samples; times are i * time_max / steps for i = 1..=steps.
    #[arg(long)]
    steps: usize,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Interaction time T (> 0).
    #[arg(long)]
    time: f64,
    /// Scan resolution in radians, (0, 0.1].
    #[arg(long, default_value_t = DEFAULT_GRID_RESOLUTION)]
    grid_resolution: f64,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Axis list, e.g. "A=1,theta=0:1.5707:8,T=0.25:2:8"; axes: A, theta,
    /// phi_x, phi_y, T; omitted axes stay at the maximal-squeezing point.
    #[arg(long)]
    grid: String,
    #[arg(long, value_enum, default_value_t = Method::Analytic)]
    method: Method,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Random two-route sample size (release gate: 100).
    #[arg(long)]
    sample_points: Option<usize>,
    /// Boundary times recomputed by the Fock route.
    #[arg(long)]
    boundary_oracle_points: Option<usize>,
    /// Scaled-deviation tolerance for analytic/Fock agreement.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Truncation budget override.
    #[arg(long)]
    epsilon_trunc: Option<f64>,
    /// Seed for the sampled diagnostics.
    #[arg(long)]
    seed: Option<u64>,
}

/// Parse arguments, dispatch, and map errors to exit codes.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let config = match RunConfig::load(cli.config.as_deref()) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let outcome = match cli.command {
        Command::Evaluate(args) => cmd_evaluate(&config, args),
        Command::Region(args) => cmd_region(&config, args),
        Command::Optimize(args) => cmd_optimize(&config, args),
        Command::Sweep(args) => cmd_sweep(&config, args),
        Command::Validate(args) => cmd_validate(&config, args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Capacity { .. } | Error::Convergence { .. } => 3,
        _ => 2,
    }
}

fn parse_direction(spec: &str) -> Result<Direction> {
    match spec.trim() {
        "x" => return Ok(Direction::x()),
        "y" => return Ok(Direction::y()),
        "z" => return Ok(Direction::z()),
        _ => {}
    }
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::invalid(
            "direction",
            format!("expected x|y|z or three comma-separated components, got `{spec}`"),
        ));
    }
    let mut v = [0.0f64; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|e| {
            Error::invalid("direction", format!("`{part}` is not a number: {e}"))
        })?;
    }
    Direction::new(Vector3::new(v[0], v[1], v[2]))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn to_radians(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

fn cmd_evaluate(config: &RunConfig, args: EvaluateArgs) -> Result<i32> {
    let input = CoherentInput::new(
        args.amplitude,
        to_radians(args.theta, args.degrees),
        to_radians(args.phi_x, args.degrees),
        to_radians(args.phi_y, args.degrees),
    )?;
    let time = InteractionTime::new(args.time)?;
    let direction = parse_direction(&args.direction)?;

    let analytic_report = if matches!(args.method, Method::Analytic | Method::Both) {
        let moments = analytic::moments(&input, time);
        let assessment = assess(&moments, &direction)?;
        Some((MethodReport::new(&moments, assessment, None), moments))
    } else {
        None
    };

    let fock_report = if matches!(args.method, Method::Fock | Method::Both) {
        let policy = config.policy();
        let state = decompose_input(&input, &policy)?;
        let evolved = evolve(&state, time, &policy)?;
        let moments = measure_moments(&evolved)?;
        let assessment = assess(&moments, &direction)?;
        let diagnostics = FockDiagnostics {
            sectors: evolved.sectors().len(),
            max_cutoff_used: evolved.max_cutoff_used(),
            norm_sqr: evolved.norm_sqr(),
        };
        Some((MethodReport::new(&moments, assessment, Some(diagnostics)), moments))
    } else {
        None
    };

    let deltas = match (&analytic_report, &fock_report) {
        (Some((_, a)), Some((_, f))) => Some(MomentDeltas::between(a, f, config.abs_floor)),
        _ => None,
    };

    let n = direction.vector();
    let report = EvaluateReport {
        schema_version: crate::report::SCHEMA_VERSION,
        input: InputEcho::new(&input, time),
        direction: [n.x, n.y, n.z],
        analytic: analytic_report.map(|(r, _)| r),
        fock: fock_report.map(|(r, _)| r),
        deltas,
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    write_output(args.output.as_deref().or(config.output.as_deref()), &format!("{json}\n"))?;
    Ok(0)
}

fn cmd_region(config: &RunConfig, args: RegionArgs) -> Result<i32> {
    let curve = boundary_curve(args.time_max, args.steps)?;
    write_output(args.output.as_deref().or(config.output.as_deref()), &curve.to_csv())?;
    Ok(0)
}

fn cmd_optimize(config: &RunConfig, args: OptimizeArgs) -> Result<i32> {
    let time = InteractionTime::new(args.time)?;
    let report = optimize_factor(time, args.grid_resolution)?;
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    write_output(args.output.as_deref().or(config.output.as_deref()), &format!("{json}\n"))?;
    Ok(0)
}

fn cmd_sweep(config: &RunConfig, args: SweepArgs) -> Result<i32> {
    let grid = GridSpec::parse(&args.grid)?;
    let method = match args.method {
        Method::Analytic => SweepMethod::Analytic,
        Method::Fock => SweepMethod::Fock,
        Method::Both => SweepMethod::Both,
    };
    let table = sweep(
        &grid,
        method,
        &config.policy(),
        config.analytic_budget,
        config.oracle_budget,
    )?;
    let content = match config.format {
        crate::config::OutputFormat::Csv => table.to_csv(),
        crate::config::OutputFormat::Json => {
            let json = serde_json::to_string_pretty(&table)
                .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
            format!("{json}\n")
        }
    };
    write_output(args.output.as_deref().or(config.output.as_deref()), &content)?;
    Ok(0)
}

fn cmd_validate(config: &RunConfig, args: ValidateArgs) -> Result<i32> {
    let defaults = ValidationConfig::default();
    let mut policy = config.policy();
    if let Some(eps) = args.epsilon_trunc {
        policy.epsilon_trunc = eps;
    }
    let validation = ValidationConfig {
        policy,
        rel_tol: args.rel_tol.unwrap_or(config.rel_tol),
        abs_floor: config.abs_floor,
        sample_points: args.sample_points.unwrap_or(defaults.sample_points),
        boundary_oracle_points: args
            .boundary_oracle_points
            .unwrap_or(defaults.boundary_oracle_points),
        seed: args.seed.unwrap_or(config.seed),
        ..defaults
    };

    let suite = ValidationSuite::prepare(validation)?;
    let results = suite.run_all();
    let mut all_passed = true;
    println!("{:>3}  {:<44} {:<6} details", "id", "check", "status");
    for check in &results {
        all_passed &= check.passed;
        println!(
            "{:>3}  {:<44} {:<6} {}",
            check.id,
            check.name,
            if check.passed { "PASS" } else { "FAIL" },
            check.details
        );
    }
    println!(
        "{}: {} of {} checks passed",
        if all_passed { "OK" } else { "FAILED" },
        results.iter().filter(|c| c.passed).count(),
        results.len()
    );
    Ok(if all_passed { 0 } else { 1 })
}
