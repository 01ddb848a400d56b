use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::UsageError;

#[derive(Debug, Parser)]
#[command(name = "pacsc", version, about = "Bounds and simulators for approximately-correct decoding")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a bound by name.
    Bounds {
        name: BoundName,
        #[command(flatten)]
        params: Params,
    },
    /// Decoding success of a concrete scheme against the PAC-Nayak bound.
    Simulate {
        #[command(flatten)]
        params: Params,
    },
    /// Memorization-learner experiment under Zipf or uniform examples.
    Learn {
        #[command(flatten)]
        params: Params,
    },
    /// Server guessing game for classically-driven blind computation.
    Delegate {
        #[command(flatten)]
        params: Params,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bounds { .. } => "bounds",
            Command::Simulate { .. } => "simulate",
            Command::Learn { .. } => "learn",
            Command::Delegate { .. } => "delegate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundName {
    Nayak,
    PacNayak,
    Binom,
    BinomSum,
    Qpsc,
    PacHolevo,
    ZipfLower,
    Memorization,
    FlowThresholds,
    ServerGuess,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeArg {
    Truncation,
    QracProduct,
    RandomClassical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionArg {
    Zipf,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyArg {
    ZeroPad,
    RandomPad,
    MajorityPriorPad,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeakArg {
    Prefix,
    Full,
    Parities,
}

/// Every tunable. Unset values fall back to per-command defaults; values in
/// `--config` replace values given as flags.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Message length, domain bits, or MBQC qubits, depending on the command.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// Qubits (or bits) of the encoding; leaked bits for `delegate`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    /// Binomial index for `binom` and `binom-sum`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    /// Qubits per copy for `pac-holevo`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Total description bits for `server-guess` and `delegate`.
    #[arg(long = "T", id = "T")]
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeArg>,
    /// Skip the exhaustive optimal-decoder column.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub no_oracle: Option<bool>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<DistributionArg>,
    /// Examples per trial; defaults to the memorization sample count.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    /// Give the learner every point once instead of sampling.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_sweep: Option<bool>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<StrategyArg>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leak: Option<LeakArg>,
    /// Run data-parallel loops on one thread.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing)]
    pub sequential: Option<bool>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Output file; defaults to `$PACSC_OUT_DIR/<command>-<seed>.<format>` or stdout.
    #[arg(long)]
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
    /// JSON file whose keys override the flags above.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

macro_rules! overlay {
    ($base:expr, $top:expr, $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field.clone(); } )*
    };
}

impl Params {
    /// Applies `--config`, if any.
    pub fn resolve(mut self) -> anyhow::Result<Self> {
        let Some(path) = self.config.take() else {
            return Ok(self);
        };
        let file = load_config(&path)?;
        overlay!(
            self, file, n, m, k, ell, beta, eps, delta, t, trials, seed, scheme, no_oracle, distribution, samples,
            full_sweep, strategy, leak, sequential, format, out
        );
        Ok(self)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn flag(value: Option<bool>) -> bool {
        value.unwrap_or(false)
    }
}

fn load_config(path: &Path) -> anyhow::Result<Params> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("config {}: {e}", path.display())).into())
}

pub fn require<T>(value: Option<T>, flag: &str, hint: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| UsageError(format!("missing --{flag} ({hint})")).into())
}
