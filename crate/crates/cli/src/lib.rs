//! Report generation behind the `flipchain` binary.

mod emit;
pub mod report;

use std::path::PathBuf;

use flipchain_core::betti::{BettiError, BettiReport};
use flipchain_core::chambers::ChamberError;
use flipchain_core::exactpoly::Rational;
use flipchain_core::stability::{FramedModel, StabilityError};
use flipchain_core::verify::Grid;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{ChamberReport, SigmaEntry, StabilityReport, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Chambers,
    Betti,
    StabilityCheck,
    VerifyAll,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Latex,
    #[default]
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub d: Option<i64>,
    pub g: Option<i64>,
    pub format: Format,
    /// `betti`: restrict to one chamber index.
    pub chamber: Option<i64>,
    pub model_path: Option<PathBuf>,
    /// `stability-check`: explicit σ values instead of chamber representatives.
    pub sigmas: Vec<Rational>,
    pub seed: Option<u64>,
    pub grid: Option<Grid>,
    /// `verify-all`: number of random rank-2 models.
    pub models: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            d: None,
            g: None,
            format: Format::Text,
            chamber: None,
            model_path: None,
            sigmas: Vec::new(),
            seed: None,
            grid: None,
            models: None,
        }
    }
}

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_MODELS: usize = 10_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Chamber(#[from] ChamberError),
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    /// 1 for a failed consistency check, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Betti(
                BettiError::RouteMismatch { .. } | BettiError::NegativeExponentSurvived { .. } | BettiError::NotDivisible(_),
            ) => 1,
            CliError::Csv(_) | CliError::Pool(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn required(v: Option<i64>, name: &str) -> Result<i64, CliError> {
    v.ok_or_else(|| CliError::InvalidInput(format!("--{name} is required")))
}

/// Worker count from `FLIPCHAIN_THREADS`, if set to a positive integer.
pub fn thread_limit() -> Result<Option<usize>, CliError> {
    match std::env::var("FLIPCHAIN_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::InvalidInput(format!("FLIPCHAIN_THREADS must be a positive integer, got {v:?}"))),
        },
    }
}

pub fn load_model(path: &PathBuf) -> Result<FramedModel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(FramedModel::from_json(&text)?)
}

fn execute(cfg: &RunConfig) -> Result<(String, bool, Vec<String>), CliError> {
    match cfg.command {
        Command::Chambers => {
            let r = ChamberReport::build(required(cfg.d, "d")?, required(cfg.g, "g")?)?;
            Ok((emit::chambers(&r, cfg.format)?, true, Vec::new()))
        }
        Command::Betti => {
            let r = BettiReport::build(required(cfg.d, "d")?, required(cfg.g, "g")?, cfg.chamber)?;
            let failures = r.failures();
            Ok((emit::betti(&r, cfg.format)?, failures.is_empty(), failures))
        }
        Command::StabilityCheck => {
            let path = cfg
                .model_path
                .as_ref()
                .ok_or_else(|| CliError::InvalidInput("--model is required".into()))?;
            let model = load_model(path)?;
            let r = StabilityReport::build(&model, &cfg.sigmas)?;
            let failures = r.failures();
            Ok((emit::stability(&r, cfg.format)?, failures.is_empty(), failures))
        }
        Command::VerifyAll => {
            let grid = cfg.grid.unwrap_or_default();
            if grid.g_max < 2 || grid.d_min > -1 {
                return Err(CliError::InvalidInput(format!(
                    "grid needs g_max ≥ 2 and d_min ≤ -1, got ({}, {})",
                    grid.g_max, grid.d_min
                )));
            }
            let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
            let models = cfg.models.unwrap_or(DEFAULT_MODELS);
            let run = || VerifyReport::build(grid, seed, models);
            let r = match thread_limit()? {
                Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(run),
                None => run(),
            };
            let failures = r.failures();
            Ok((emit::verify(&r, cfg.format)?, failures.is_empty(), failures))
        }
    }
}

/// Runs one command; never panics on bad input.
pub fn run(cfg: &RunConfig) -> Outcome {
    match execute(cfg) {
        Ok((stdout, true, _)) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Ok((stdout, false, failures)) => Outcome {
            code: 1,
            stdout,
            stderr: failures.iter().map(|f| format!("consistency failure: {f}\n")).collect(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
