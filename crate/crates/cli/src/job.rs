//! Command-line grammar and the validated job it produces.

use std::collections::BTreeSet;
use std::path::PathBuf;

use bggkit_core::{DynkinSpec, Guardrails, ParabolicSpec, Weight};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const GUARDRAIL_SCALE_ENV: &str = "BGGKIT_GUARDRAIL_SCALE";

#[derive(Parser, Debug)]
#[command(name = "bggkit", version, about = "BGG diagrams, Casimir data and exact verification for parabolic geometries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Grading, Hasse diagram, BGG components, Casimir data and splitting reports.
    Report(JobArgs),
    /// The report plus brute-force cross-checks of every invariant.
    Verify(JobArgs),
    /// The BGG diagram alone (DOT by default).
    Diagram(JobArgs),
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    /// Simple type, e.g. A2, B3, G2.
    #[arg(long = "type", value_name = "Xn")]
    pub type_: String,
    /// Crossed nodes, 1-based Bourbaki numbering, comma separated.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub crossed: Vec<usize>,
    /// Highest weight of V in fundamental-weight coordinates.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1.., allow_negative_numbers = true)]
    pub weight: Vec<i64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Limit on the dimension of each chain space built by the verifier.
    #[arg(long, value_name = "N")]
    pub max_dim: Option<usize>,
    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Report,
    Verify,
    Diagram,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub dynkin: DynkinSpec,
    /// 0-based crossed nodes.
    pub crossed: BTreeSet<usize>,
    pub highest_weight: Weight,
    pub mode: Mode,
    pub format: Format,
    pub guardrails: Guardrails,
    pub out: Option<PathBuf>,
}

impl JobSpec {
    pub fn parabolic(&self) -> ParabolicSpec {
        ParabolicSpec::new(self.crossed.iter().copied())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guardrail(String),
    #[error("{0}")]
    Internal(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Guardrail(_) => 3,
            CliError::Internal(_) | CliError::VerifyFailed(_) | CliError::Io(_) => 4,
        }
    }
}

impl From<bggkit_core::Error> for CliError {
    fn from(e: bggkit_core::Error) -> Self {
        use bggkit_core::Error as E;
        match e {
            E::Guardrail { .. } => CliError::Guardrail(e.to_string()),
            E::UnknownType(_)
            | E::InvalidRank { .. }
            | E::NodeOutOfRange { .. }
            | E::EmptyCrossed
            | E::DimensionMismatch { .. }
            | E::NotDominant(_) => CliError::Usage(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// Reads the guardrail scale from the environment, if set.
pub fn guardrail_scale() -> Result<Option<f64>, CliError> {
    match std::env::var(GUARDRAIL_SCALE_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(Some(x)),
            _ => Err(CliError::Usage(format!(
                "{GUARDRAIL_SCALE_ENV} must be a positive number, got '{s}'"
            ))),
        },
    }
}

/// Validates parsed arguments into a job.
pub fn job_spec(mode: Mode, args: &JobArgs, scale: Option<f64>) -> Result<JobSpec, CliError> {
    let dynkin: DynkinSpec = args.type_.parse()?;
    let rank = dynkin.rank();
    if args.weight.len() != rank {
        return Err(CliError::Usage(format!(
            "weight has {} entries but {dynkin} has rank {rank}",
            args.weight.len()
        )));
    }
    let mut crossed = BTreeSet::new();
    for &i in &args.crossed {
        if i == 0 || i > rank {
            return Err(CliError::Usage(format!(
                "crossed node {i} out of range 1..={rank} for {dynkin}"
            )));
        }
        crossed.insert(i - 1);
    }
    if crossed.is_empty() {
        return Err(bggkit_core::Error::EmptyCrossed.into());
    }
    let highest_weight = Weight(args.weight.clone());
    if !highest_weight.is_dominant() {
        return Err(bggkit_core::Error::NotDominant(highest_weight.to_string()).into());
    }
    let mut guardrails = Guardrails::default();
    if let Some(s) = scale {
        guardrails = guardrails.scaled(s);
    }
    if let Some(n) = args.max_dim {
        guardrails.chain_dim = n;
    }
    let format = args.format.unwrap_or(match mode {
        Mode::Diagram => Format::Dot,
        _ => Format::Json,
    });
    Ok(JobSpec {
        dynkin,
        crossed,
        highest_weight,
        mode,
        format,
        guardrails,
        out: args.out.clone(),
    })
}

/// Parses a full argument vector (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<JobSpec, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    let (mode, args) = match &cli.command {
        Command::Report(a) => (Mode::Report, a),
        Command::Verify(a) => (Mode::Verify, a),
        Command::Diagram(a) => (Mode::Diagram, a),
    };
    job_spec(mode, args, guardrail_scale()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<JobSpec, CliError> {
        parse_args(std::iter::once("bggkit").chain(s.split_whitespace()))
    }

    #[test]
    fn valid_report() {
        let j = parse("report --type A2 --crossed 1,2 --weight 0,0 --format json").unwrap();
        assert_eq!(j.dynkin.to_string(), "A2");
        assert_eq!(j.crossed.iter().copied().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(j.mode, Mode::Report);
        assert_eq!(j.format, Format::Json);
    }

    #[test]
    fn node_out_of_range() {
        let e = parse("report --type A2 --crossed 3 --weight 0,0").unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn verify_mode() {
        let j = parse("verify --type B2 --crossed 1 --weight 1,0").unwrap();
        assert_eq!(j.mode, Mode::Verify);
        assert_eq!(j.highest_weight, Weight(vec![1, 0]));
    }

    #[test]
    fn usage_errors() {
        for s in [
            "report --type Q2 --crossed 1 --weight 0,0",
            "report --type A2 --crossed 1 --weight 0",
            "report --type A2 --crossed 1 --weight -1,0",
            "report --type A2 --crossed 0 --weight 0,0",
            "frobnicate --type A2 --crossed 1 --weight 0,0",
        ] {
            assert_eq!(parse(s).unwrap_err().exit_code(), 2, "{s}");
        }
    }

    #[test]
    fn defaults_and_max_dim() {
        let j = parse("diagram --type A1 --crossed 1 --weight 0 --max-dim 7").unwrap();
        assert_eq!(j.format, Format::Dot);
        assert_eq!(j.guardrails.chain_dim, 7);
    }
}
