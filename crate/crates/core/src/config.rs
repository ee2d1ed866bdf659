//! Run-time caps and output settings shared by the library entry points and the CLI.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::charsum::DEFAULT_MQ_CAP;
use crate::error::{Error, Result};
use crate::gf::DEFAULT_FIELD_CAP;
use crate::graphs::DEFAULT_VERTEX_CAP;

/// Default cap on elementary character evaluations for one spectrum sweep.
pub const DEFAULT_WORK_CAP: u64 = 1_000_000_000;
/// Sweeps over more than this many w-vectors are sampled instead of exhaustive.
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 1_000_000;
/// Number of w-vectors drawn by a sampled sweep.
pub const DEFAULT_SAMPLE: usize = 100_000;

pub const WORK_CAP_ENV: &str = "SKQ_WORK_CAP";

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Edgelist,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub work_cap: u64,
    pub vertex_cap: u64,
    pub mq_cap: usize,
    pub field_cap: usize,
    pub exhaustive_limit: u64,
    pub sample: usize,
    pub seed: u64,
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            work_cap: DEFAULT_WORK_CAP,
            vertex_cap: DEFAULT_VERTEX_CAP as u64,
            mq_cap: DEFAULT_MQ_CAP,
            field_cap: DEFAULT_FIELD_CAP,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            sample: DEFAULT_SAMPLE,
            seed: 0,
            threads: None,
            output: None,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    /// Defaults, with the work cap taken from `SKQ_WORK_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Ok(v) = std::env::var(WORK_CAP_ENV) {
            cfg.work_cap = v.trim().parse().map_err(|_| {
                Error::InvalidSpec(format!("{WORK_CAP_ENV}={v} is not a positive integer"))
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parses a TOML config; unknown keys are rejected.
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("work_cap", self.work_cap as u128),
            ("vertex_cap", self.vertex_cap as u128),
            ("mq_cap", self.mq_cap as u128),
            ("field_cap", self.field_cap as u128),
            ("exhaustive_limit", self.exhaustive_limit as u128),
            ("sample", self.sample as u128),
        ];
        if let Some((name, _)) = caps.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidSpec(format!("{name} must be positive")));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidSpec("threads must be positive".into()));
        }
        Ok(())
    }
}
