use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::Args;
use gorbit_core::TolerancePolicy;
use serde::Deserialize;

/// Flags shared by every subcommand. Anything left unset falls back to the
/// `--config` file, then to defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON config file; flags given on the command line override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Space id, e.g. `table1/row8?n=1`. Repeatable for `campaign`.
    #[arg(long)]
    pub space: Vec<String>,
    /// Metric eigenvalues, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    /// Kostant-form coefficients, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Option<Vec<f64>>,
    /// Use the ideal-complement construction with this (0-based) ideal;
    /// `--gamma` then lists the coefficients of the other ideals.
    #[arg(long)]
    pub ideal: Option<usize>,
    /// Seed. Repeatable (comma separated) for `campaign`.
    #[arg(long, value_delimiter = ',')]
    pub seed: Vec<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Relative feasibility tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include wall-clock time in the report (breaks byte-identical reruns).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    space: Option<SpaceList>,
    alpha: Option<Vec<f64>>,
    gamma: Option<Vec<f64>>,
    ideal: Option<usize>,
    seed: Option<SeedList>,
    samples: Option<usize>,
    tol: Option<TolSpec>,
    out: Option<PathBuf>,
    timing: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SpaceList {
    One(String),
    Many(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SeedList {
    One(u64),
    Many(Vec<u64>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum TolSpec {
    FeasTol(f64),
    Policy(TolerancePolicy),
}

/// Fully resolved settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub spaces: Vec<String>,
    pub alpha: Option<Vec<f64>>,
    pub gamma: Option<Vec<f64>>,
    pub ideal: Option<usize>,
    pub seeds: Vec<u64>,
    pub samples: Option<usize>,
    pub tol: TolerancePolicy,
    pub out: Option<PathBuf>,
    pub timing: bool,
}

fn read_file(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

impl Settings {
    pub fn resolve(flags: &Flags) -> anyhow::Result<Self> {
        let file = match &flags.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let spaces = if !flags.space.is_empty() {
            flags.space.clone()
        } else {
            match file.space {
                Some(SpaceList::One(s)) => vec![s],
                Some(SpaceList::Many(v)) => v,
                None => vec![],
            }
        };
        let seeds = if !flags.seed.is_empty() {
            flags.seed.clone()
        } else {
            match file.seed {
                Some(SeedList::One(s)) => vec![s],
                Some(SeedList::Many(v)) => v,
                None => vec![],
            }
        };
        let mut tol = match file.tol {
            Some(TolSpec::Policy(p)) => p,
            Some(TolSpec::FeasTol(f)) => TolerancePolicy {
                feas_tol: f,
                ..TolerancePolicy::default()
            },
            None => TolerancePolicy::default(),
        };
        if let Some(f) = flags.tol {
            tol.feas_tol = f;
        }
        tol.validate()?;
        Ok(Self {
            spaces,
            alpha: flags.alpha.clone().or(file.alpha),
            gamma: flags.gamma.clone().or(file.gamma),
            ideal: flags.ideal.or(file.ideal),
            seeds,
            samples: flags.samples.or(file.samples),
            tol,
            out: flags.out.clone().or(file.out),
            timing: flags.timing || file.timing.unwrap_or(false),
        })
    }

    pub fn single_space(&self) -> anyhow::Result<&str> {
        match self.spaces.as_slice() {
            [s] => Ok(s),
            [] => anyhow::bail!("--space is required"),
            _ => anyhow::bail!("exactly one --space is expected"),
        }
    }

    pub fn single_seed(&self) -> anyhow::Result<u64> {
        match self.seeds.as_slice() {
            [] => Ok(0),
            [s] => Ok(*s),
            _ => anyhow::bail!("exactly one --seed is expected"),
        }
    }
}
