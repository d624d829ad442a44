//! Run configuration: truncation defaults, comparison tolerances, output
//! settings, and the seed for sampled-direction diagnostics.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fock::TruncationPolicy;

/// Environment variable that may point at a TOML config file.
pub const CONFIG_ENV_VAR: &str = "POLSQUEEZE_CONFIG";

/// Output format for sweep tables (`evaluate`/`optimize` reports are JSON,
/// `region` curves CSV, regardless).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Defaults shared by the command-line surface and the validation suite.
/// Every field has a default, so a config file may set any subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Probability mass the Fock truncation may discard.
    pub epsilon_trunc: f64,
    /// Tolerated moment change under cutoff doubling.
    pub observable_tol: f64,
    /// Ladder-length ceiling.
    pub max_cutoff: usize,
    /// Safety multiplier on the cutoff-sizing growth estimate.
    pub growth_guard: f64,
    /// Scaled-deviation tolerance for analytic/Fock agreement.
    pub rel_tol: f64,
    /// Scale floor of the deviation metric (values below it compare
    /// absolutely).
    pub abs_floor: f64,
    /// Budget for closed-form sweep points.
    pub analytic_budget: usize,
    /// Budget for Fock sweep points.
    pub oracle_budget: usize,
    /// Output format for sweeps.
    pub format: OutputFormat,
    /// Output path; stdout when absent.
    pub output: Option<PathBuf>,
    /// Seed for sampled-direction diagnostics; fixed seed means byte-identical
    /// diagnostic output.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let policy = TruncationPolicy::default();
        Self {
            epsilon_trunc: policy.epsilon_trunc,
            observable_tol: policy.observable_tol,
            max_cutoff: policy.max_cutoff,
            growth_guard: policy.growth_guard,
            rel_tol: 1e-6,
            abs_floor: 1e-2,
            analytic_budget: crate::explorer::DEFAULT_ANALYTIC_BUDGET,
            oracle_budget: crate::explorer::DEFAULT_ORACLE_BUDGET,
            format: OutputFormat::Csv,
            output: None,
            seed: 0x5457_454e,
        }
    }
}

impl RunConfig {
    /// Load configuration: an explicit path wins, then the `POLSQUEEZE_CONFIG`
    /// environment variable, then built-in defaults.
    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        let path = explicit
            .map(PathBuf::from)
            .or_else(|| std::env::var_os(CONFIG_ENV_VAR).map(PathBuf::from));
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: RunConfig = toml::from_str(&text)
            .map_err(|e| Error::Config(format!("cannot parse {}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.policy().validate()?;
        if !(self.rel_tol > 0.0) {
            return Err(Error::Config(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_floor > 0.0) {
            return Err(Error::Config(format!("abs_floor must be > 0, got {}", self.abs_floor)));
        }
        Ok(())
    }

    /// The truncation policy these defaults describe.
    pub fn policy(&self) -> TruncationPolicy {
        TruncationPolicy {
            epsilon_trunc: self.epsilon_trunc,
            observable_tol: self.observable_tol,
            max_cutoff: self.max_cutoff,
            growth_guard: self.growth_guard,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let config = RunConfig::default();
        config.validate().unwrap();
        assert_eq!(config.policy(), TruncationPolicy::default());
    }

    #[test]
    fn partial_toml_overrides() {
        let config: RunConfig = toml::from_str("epsilon_trunc = 1e-8\nseed = 7\n").unwrap();
        assert_eq!(config.epsilon_trunc, 1e-8);
        assert_eq!(config.seed, 7);
        assert_eq!(config.max_cutoff, 512);
    }

    #[test]
    fn invalid_values_are_rejected() {
        let config: RunConfig = toml::from_str("epsilon_trunc = 2.0\n").unwrap();
        assert!(config.validate().is_err());
    }
}
