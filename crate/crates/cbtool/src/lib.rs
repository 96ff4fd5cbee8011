//! `cbtool`: check, compare, factorize and slice chain-bundle documents.
//!
//! Every input and output is a JSON [`doc::Document`]. Exit codes: 0 valid,
//! 1 invalid or failed, 2 unreadable input, 3 capability not available.

pub mod codec;
pub mod commands;
pub mod doc;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::doc::Document;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<chainbundle::Error> for CliError {
    fn from(e: chainbundle::Error) -> Self {
        use chainbundle::Error as E;
        match e {
            E::ProductsUnsupported { .. }
            | E::InfiniteHomset { .. }
            | E::SearchSpaceTooLarge { .. }
            | E::AmbientTooLarge { .. }
            | E::Unsupported(_) => CliError::Unsupported(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_document(text: &str) -> Result<Document, serde_json::Error> {
    serde_json::from_str(text)
}

/// Pretty JSON with a trailing newline.
pub fn render_document(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "cbtool", version, about = "Chain bundles over categories with zero")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,
    /// Require corestrictions to be epimorphisms.
    #[arg(long, global = true)]
    pub strict_corestriction: bool,
    /// Enumeration cap: ambient group order and search candidates.
    #[arg(long, global = true, env = "CBTOOL_BOUND")]
    pub bound: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate any document.
    Check { doc: PathBuf },
    /// Decide whether SMALL is a subchain bundle of BIG.
    Subchain { small: PathBuf, big: PathBuf },
    /// Epi-inclusion factorization of a full map.
    Factorize { map: PathBuf },
    /// Extract chains with a selector: `inclusions`, `boundary` or a selector document.
    Chains {
        bundle: PathBuf,
        #[arg(long, default_value = "inclusions")]
        selector: String,
    },
    /// Termwise product of two bundles.
    Product { left: PathBuf, right: PathBuf },
    /// Every chain complex structure on a bundle.
    Complexes { bundle: PathBuf },
    /// The category of chains extracted from the bundles.
    Gamma {
        #[arg(required = true)]
        bundles: Vec<PathBuf>,
        #[arg(long, default_value = "inclusions")]
        selector: String,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Output { code, stdout, stderr };
        }
    };
    commands::run(&cli)
}
