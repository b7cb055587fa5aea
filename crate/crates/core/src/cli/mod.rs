//! Command execution behind the `liesolv` binary. Every command returns a
//! text rendering, a structured [`RunReport`] and an exit code, so the
//! binary only parses arguments and prints.

mod commands;
pub mod algebra_file;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::families::FamilySpec;
use crate::ordinary::WitnessBudget;
use crate::resla::AxiomReport;
use crate::scalar::Field;

pub use algebra_file::{AlgebraFile, BracketEntry, CoordinateMap, ParsedAlgebra};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DISAGREEMENT: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Syntax { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}: axioms violated:\n{}", .violations.join("\n"))]
    Axioms { path: PathBuf, violations: Vec<String> },
    #[error("{path}: {message}")]
    Build { path: PathBuf, message: String },
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Compute(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Syntax { .. } | CliError::Axioms { .. } | CliError::Build { .. } => {
                EXIT_INPUT
            }
        }
    }
}

/// Which kind of algebra the `family` command writes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyChoice {
    Restricted(FamilySpec),
    Ordinary { tag: OrdinaryFamily, field: Field },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdinaryFamily {
    Abelian(usize),
    AffineLine,
    Heisenberg,
    TwoEigenvectors,
    FreeClass2Rank4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdinaryAction {
    Classify,
    Witness,
    Envelope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Axioms { file: PathBuf },
    Solvable { file: PathBuf, max_steps: usize },
    Classify { file: PathBuf, ladder: u32, core_dim_limit: usize, oracle: bool },
    SzIndex { file: PathBuf },
    Family { choice: FamilyChoice, output: PathBuf },
    RationalExample,
    Ordinary { action: OrdinaryAction, file: PathBuf, budget: WitnessBudget, m_max: usize },
    Corpus { dir: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Axioms { .. } => "axioms",
            Command::Solvable { .. } => "solvable",
            Command::Classify { .. } => "classify",
            Command::SzIndex { .. } => "sz-index",
            Command::Family { .. } => "family",
            Command::RationalExample => "rational-example",
            Command::Ordinary { action: OrdinaryAction::Classify, .. } => "ordinary classify",
            Command::Ordinary { action: OrdinaryAction::Witness, .. } => "ordinary witness",
            Command::Ordinary { action: OrdinaryAction::Envelope, .. } => "ordinary envelope",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// Structured result of one command. Contains no timings or paths, so it is
/// identical across runs with the same inputs, seed and budgets.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of the input file, hex.
    pub input_digest: Option<String>,
    pub seed: u64,
    pub budgets: BTreeMap<String, u64>,
    pub result: serde_json::Value,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub text: String,
    pub report: RunReport,
    pub exit_code: u8,
}

impl RunOutput {
    pub fn json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("plain data serializes")
    }
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Read and validate an algebra file; axioms are checked unless `skip_axioms`.
pub fn load(path: &Path, skip_axioms: bool) -> Result<(ParsedAlgebra, String), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Syntax {
        path: path.into(),
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    let file: AlgebraFile = serde_json::from_str(&text).map_err(|e| CliError::Syntax {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let alg = file.build().map_err(|e| CliError::Build { path: path.into(), message: e.to_string() })?;
    if !skip_axioms {
        let report = axiom_report(&alg);
        if !report.passed() {
            let violations = report.violations.iter().map(|v| report.describe(v)).collect();
            return Err(CliError::Axioms { path: path.into(), violations });
        }
    }
    Ok((alg, digest(&bytes)))
}

pub fn axiom_report(alg: &ParsedAlgebra) -> AxiomReport {
    match alg {
        ParsedAlgebra::Restricted(a) => a.check_axioms(),
        ParsedAlgebra::Ordinary(l) => {
            AxiomReport { violations: l.check_lie_axioms(), names: l.names().to_vec() }
        }
    }
}

pub fn run(cmd: &Command, seed: u64) -> Result<RunOutput, CliError> {
    let mut out = commands::execute(cmd, seed)?;
    out.report.command = cmd.name().to_string();
    Ok(out)
}
