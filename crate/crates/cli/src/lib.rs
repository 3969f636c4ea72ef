//! Command-line front end: instance files in, JSON out.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input (including bad
//! arguments), 2 a structural precondition fails (disconnected or complete
//! graph, zero capacity, a violated certificate), 3 a resource limit was hit
//! (iteration cap, ρ cap, oracle budget).

mod commands;
pub mod generate;
pub mod instance;

use std::ffi::OsString;
use std::fmt;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use instance::{Instance, ParseError};

#[derive(Debug, Parser)]
#[command(name = "domatic", version, about = "Fractional connected domatic packings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Instance file, or `-` for standard input.
    pub file: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum capacity node separator (the connectivity k).
    Separator(InputArg),
    /// Capacitated fractional connected domatic packing of size k/ρ.
    Pack {
        #[command(flatten)]
        input: InputArg,
        /// Largest doubling level for ρ before giving up (exit 3).
        #[arg(long)]
        rho_cap: Option<String>,
        /// Master/pricing rounds before giving up (exit 3).
        #[arg(long, default_value_t = 10_000)]
        max_rounds: usize,
        /// Append an exact feasibility report of the packing.
        #[arg(long)]
        verify: bool,
        /// On a complete graph, pack every vertex alone at its capacity
        /// instead of failing.
        #[arg(long)]
        complete_singletons: bool,
    },
    /// Primal-dual dominating set under node costs.
    Ds {
        #[command(flatten)]
        input: InputArg,
        /// Check the analysis certificates; exit 2 if any fails.
        #[arg(long)]
        check_certificates: bool,
        /// Edge-density constant of the input's graph family.
        #[arg(long, default_value = "3")]
        c_prime: String,
    },
    /// Connected dominating set: exact LP, then rounding.
    Cds(InputArg),
    /// Brute-force optimum on small instances.
    Exact {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum)]
        what: ExactWhat,
        /// Refuse instances with more vertices (exit 3).
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
    },
    /// Integral optimum over LP optimum, for dominating and connected
    /// dominating sets.
    Gap {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
    },
    /// Write a generated instance file to standard output.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactWhat {
    Ds,
    Cds,
    DsLp,
    CdsLp,
    Packing,
    Separator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Path,
    Cycle,
    Star,
    Complete,
    Grid,
    GridSubgraph,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: FamilyKind,
    /// Vertex count (path, cycle, complete), leaf count (star) or rows.
    pub size: usize,
    /// Columns, for grids.
    pub cols: Option<usize>,
    /// Probability `p/q` of keeping each non-tree grid edge.
    #[arg(long, default_value = "1/2")]
    pub keep: String,
    /// Capacity of every vertex, or `lo:hi` for random integers.
    #[arg(long, default_value = "1")]
    pub capacity: String,
    /// Cost of every vertex, or `lo:hi` for random integers.
    #[arg(long, default_value = "1")]
    pub cost: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Structural(String),
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Structural(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Structural(m) | CliError::Resource(m) => f.write_str(m),
        }
    }
}

impl From<domatic_core::Error> for CliError {
    fn from(e: domatic_core::Error) -> Self {
        if e.is_resource() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Structural(e.to_string())
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(format!("parse error: {e}"))
    }
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line. `stdin` is consulted only for the `-` input.
pub fn run<I, T>(args: I, stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match commands::execute(&cli.command, stdin) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err((e, partial)) => Outcome {
            code: e.exit_code(),
            stdout: partial,
            stderr: format!("error: {e}\n"),
        },
    }
}
