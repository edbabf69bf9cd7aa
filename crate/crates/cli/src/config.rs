use std::collections::BTreeMap;
use std::fmt;

use lncert_core::exact::Interval;
use lncert_core::ln::{LnConfig, DEFAULT_MAX_BISECTIONS};
use lncert_core::{Certificate, Policy, Rational};

pub const MAX_BISECTIONS_ENV: &str = "LNCERT_MAX_BISECTIONS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Human,
    Json,
}

/// Where `max_bisections` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Default,
    Env,
    Flag,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Default => "default",
            Source::Env => "env",
            Source::Flag => "flag",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CliConfig {
    pub eps: Rational,
    pub refinement_floor: Rational,
    pub pi_lo: Rational,
    pub pi_hi: Rational,
    pub output_mode: OutputMode,
    pub max_bisections: usize,
    pub max_bisections_source: Source,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            eps: Rational::ten_pow_neg(6),
            refinement_floor: Rational::ten_pow_neg(30),
            pi_lo: Rational::frac(223, 71),
            pi_hi: Rational::frac(22, 7),
            output_mode: OutputMode::Human,
            max_bisections: DEFAULT_MAX_BISECTIONS,
            max_bisections_source: Source::Default,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl CliConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.refinement_floor.is_positive() {
            return Err(ConfigError(format!(
                "refinement floor must be positive, got {}",
                self.refinement_floor
            )));
        }
        if self.eps <= self.refinement_floor {
            return Err(ConfigError(format!(
                "eps must exceed the refinement floor, got eps = {} and floor = {}",
                self.eps, self.refinement_floor
            )));
        }
        if self.pi_lo >= self.pi_hi {
            return Err(ConfigError(format!(
                "need pi_lo < pi_hi, got [{}, {}]",
                self.pi_lo, self.pi_hi
            )));
        }
        if self.max_bisections == 0 {
            return Err(ConfigError("max_bisections must be at least 1".to_string()));
        }
        Ok(())
    }

    /// Applies the environment override unless a flag already set the cap.
    pub fn apply_env(&mut self, value: Option<String>) -> Result<(), ConfigError> {
        if self.max_bisections_source == Source::Flag {
            return Ok(());
        }
        if let Some(v) = value {
            self.max_bisections = v
                .trim()
                .parse()
                .map_err(|_| ConfigError(format!("{MAX_BISECTIONS_ENV} must be a positive integer, got {v:?}")))?;
            self.max_bisections_source = Source::Env;
        }
        Ok(())
    }

    pub fn policy(&self) -> Policy {
        Policy {
            floor: self.refinement_floor.clone(),
            ln: LnConfig {
                max_bisections: self.max_bisections,
                ..LnConfig::default()
            },
        }
    }

    pub fn pi(&self) -> Interval {
        Interval::new(self.pi_lo.clone(), self.pi_hi.clone()).expect("validated")
    }

    /// Provenance entries echoed into every certificate.
    pub fn provenance(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("cli_eps".to_string(), self.eps.canonical());
        m.insert("cli_refinement_floor".to_string(), self.refinement_floor.canonical());
        m.insert("cli_pi_lo".to_string(), self.pi_lo.canonical());
        m.insert("cli_pi_hi".to_string(), self.pi_hi.canonical());
        m.insert("cli_max_bisections".to_string(), self.max_bisections.to_string());
        m.insert(
            "cli_max_bisections_source".to_string(),
            self.max_bisections_source.to_string(),
        );
        m
    }

    pub fn stamp(&self, cert: Certificate) -> Certificate {
        self.provenance()
            .into_iter()
            .fold(cert, |c, (k, v)| c.with_config(&k, v))
    }
}
