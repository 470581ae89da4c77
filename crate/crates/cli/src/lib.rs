//! Command-line front end: problem files in, human tables or JSON reports out.

pub mod commands;
pub mod problem;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub use commands::{execute, Env, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Vertices and dimensions of the diagram of each ideal.
    Diagram,
    /// Vertices of the diagram of each ideal, one per line.
    Vertices,
    /// Hilbert-Samuel values HS(0..=bound).
    Hilbert,
    /// Krull dimension of the quotient.
    Dim,
    /// Whether the generators form a regular sequence.
    Regseq,
    /// Flatness of each map germ from a complete intersection.
    FlatCi,
    /// Milnor number of the fibre and the determinacy bound.
    Milnor,
    /// Diagrams of the jets of each ideal over the mu range.
    Jet,
    /// Jet sweep against the full ideal over the mu range.
    Sweep,
    /// Standard-basis engine against the linear-algebra oracle below the bound.
    OracleCheck,
    /// Built-in reproduction of the jet and determinant examples.
    DetExample,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Diagram => "diagram",
            Command::Vertices => "vertices",
            Command::Hilbert => "hilbert",
            Command::Dim => "dim",
            Command::Regseq => "regseq",
            Command::FlatCi => "flat-ci",
            Command::Milnor => "milnor",
            Command::Jet => "jet",
            Command::Sweep => "sweep",
            Command::OracleCheck => "oracle-check",
            Command::DetExample => "det-example",
        }
    }
}

/// Exact computations in local rings K{x}. Series with an infinite tail are
/// entered unit-cleared: a germ `(g)/(u)` with `u(0) != 0` generates the same
/// ideal as `g`, and jets are taken of the series `g/u`.
#[derive(Parser, Debug, Clone)]
#[command(name = "staircase", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Problem file; not used by det-example.
    pub file: Option<PathBuf>,
    /// Order weights `w1,w2,..` (default all 1).
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random coordinate changes tried by axis searches.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Length bound: HS range for hilbert, oracle N for oracle-check,
    /// oracle slices for axis searches.
    #[arg(long)]
    pub bound: Option<u32>,
    /// Inclusive jet-order range `a..b`.
    #[arg(long)]
    pub mu: Option<String>,
    /// Length bound of sweep slices (default mu_max + 3).
    #[arg(long)]
    pub len: Option<u32>,
    /// Only this ideal block.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Only this map block.
    #[arg(long)]
    pub map: Option<String>,
    /// Emit a JSON report.
    #[arg(long)]
    pub json: bool,
    /// Exit with status 2 when a verdict is CertifiedNo.
    #[arg(long)]
    pub expect_yes: bool,
}

/// Parses `args` (program name first), runs, and returns the outcome. Usage
/// errors map to exit status 1.
pub fn run_args<I, T>(args: I, env: &Env) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, env),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::failure(1, text)
            }
        }
    }
}
