//! Polarization squeezing of coherent light under non-degenerate parametric
//! amplification.
//!
//! The crate computes quantum Stokes moments of a two-mode coherent state
//! evolved by the pair-creation Hamiltonian `H = k (a_x^† a_y^† + a_x a_y)`,
//! evaluates four polarization-squeezing criteria, locates the parameters of
//! maximal squeezing, and cross-checks every closed form against an
//! independent truncated Fock-space simulation.
//!
//! Two evaluation routes exist on purpose:
//!
//! - [`analytic`] — closed forms in `cosh 2T`, `sinh 2T`, `sinh 4T`
//!   (microseconds per point, principal variances only);
//! - [`fock`] — brute-force state evolution in the number basis, exploiting
//!   conservation of the photon-number difference (full covariance, arbitrary
//!   directions, the arbiter whenever the routes are compared).
//!
//! The headline effect: along `S1`, the squeezing factor reaches `e^{-2T}` at
//! `theta = pi/4`, `phi_x + phi_y = 3*pi/2`, so the degree of squeezing
//! `1 - e^{-2T}` approaches one at moderate interaction times.
//!
//! # Quick start
//!
//! ```
//! use polsqueeze::input::{CoherentInput, InteractionTime};
//! use polsqueeze::criteria::{assess, Direction};
//!
//! // Equal-amplitude input, phase sum 3*pi/2, one unit of interaction time.
//! let input = CoherentInput::new(1.0, std::f64::consts::FRAC_PI_4,
//!                                2.356194490192345, 2.356194490192345).unwrap();
//! let time = InteractionTime::new(1.0).unwrap();
//! let moments = polsqueeze::analytic::moments(&input, time);
//! let report = assess(&moments, &Direction::x()).unwrap();
//! let degree = report.degree.unwrap();
//! assert!((degree - (1.0 - (-2.0f64).exp())).abs() < 1e-12);
//! ```
//!
//! The `examples/` directory holds one runnable program per capability
//! (`cargo run --example evaluate_point`, `optimal_squeezing`,
//! `squeezing_region`, `parameter_sweep`, `detection_scheme`,
//! `fock_verifier`), and the thin `polsqueeze` binary exposes the same
//! operations as subcommands.

pub mod analytic;
pub mod cli;
pub mod config;
pub mod criteria;
pub mod error;
pub mod explorer;
pub mod fock;
pub mod input;
pub mod moments;
pub mod report;
pub mod validate;

pub use error::{Error, Result};
pub use input::{BogoliubovCoefficients, CoherentInput, InteractionTime};
pub use moments::{Covariance, MomentSource, StokesMoments};
