//! Parameter-space exploration: the squeezing optimum, the no-squeezing
//! region boundary, grid sweeps, and the balanced-detection scenario preset.

mod boundary;
mod optimize;
mod scenario;
mod sweep;

pub use boundary::{boundary_curve, BoundaryCurve, BoundarySample};
pub use optimize::{optimize_factor, OptimumReport, DEFAULT_GRID_RESOLUTION};
pub use scenario::{detection_scenario, IntensityReadouts, ScenarioReport, RECOMMENDED_PHASE};
pub use sweep::{
    sweep, GridSpec, SweepBody, SweepMethod, SweepRecord, SweepTable, DEFAULT_ANALYTIC_BUDGET,
    DEFAULT_ORACLE_BUDGET,
};
