//! `torq`: quadruple-point invariants of embedded tori from the command line.

mod commands;
mod format;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "torq",
    version,
    about = "Mod-2 quadruple-point invariant of embedded tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print c, n and Q for every component and the total Q.
    QInvariant {
        path: PathBuf,
        #[arg(long)]
        box_margin: Option<u32>,
        /// Cross-check one-voxel tubes against the linking and meridian-disk oracles.
        #[arg(long)]
        verify_oracle: bool,
    },
    /// Parity of quadruple points of a regular homotopy from f to g.
    Predict {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        box_margin: Option<u32>,
    },
    /// Mapping classes given as "a b c d".
    #[command(subcommand)]
    Mcg(McgCommand),
    /// Move sequences.
    #[command(subcommand)]
    Moves(MovesCommand),
    /// Write a fixture embedding file.
    Fixture(FixtureArgs),
    /// Betti numbers of each solid, its boundary surface and its outer region.
    Homology {
        path: PathBuf,
        #[arg(long)]
        box_margin: Option<u32>,
    },
}

#[derive(Subcommand)]
enum McgCommand {
    /// Whether the reparametrized inclusion is regularly homotopic to the inclusion.
    Check {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Quadruple-point parity between the reparametrizations by F and G.
    Parity {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Write a matrix with reduction U as a word in S, L, N, R.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
}

#[derive(Subcommand)]
enum MovesCommand {
    /// Quadruple-point parity of a move file.
    Eval { path: PathBuf },
    /// Print a built-in move sequence.
    Build(BuildArgs),
}

#[derive(Args)]
pub struct BuildArgs {
    /// double-meridian-twist, double-longitude-twist, rotate-pi, reflect-xy,
    /// swap-ml, lemma-l2 or word
    pub name: String,
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<i64>,
    #[arg(long)]
    pub min: Option<u32>,
    #[arg(long)]
    pub saddle: Option<u32>,
    #[arg(long)]
    pub max: Option<u32>,
    /// Generator word such as "S^2 L^-1 N", for `word`.
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Prefix the meridian/longitude swap, for `word`.
    #[arg(long)]
    pub swap: bool,
    /// Also write the sequence as a move file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct FixtureArgs {
    /// donut, rectangle-tube, trefoil-tube or drilled-cube
    pub name: String,
    #[arg(long, default_value_t = 3)]
    pub outer: i64,
    #[arg(long, default_value_t = 4)]
    pub width: i64,
    #[arg(long, default_value_t = 3)]
    pub height: i64,
    #[arg(long, default_value_t = 4)]
    pub side: i64,
    /// lattice, even or odd
    #[arg(long, default_value = "even")]
    pub framing: String,
    /// Exchange the two marking cycles.
    #[arg(long)]
    pub swap: bool,
    #[arg(long)]
    pub box_margin: Option<u32>,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure with the name of the underlying error.
#[derive(Debug)]
pub struct CliError {
    pub name: &'static str,
    pub message: String,
    /// Bad input rather than a failed computation.
    pub input: bool,
}

impl CliError {
    pub fn input(name: &'static str, message: impl Into<String>) -> Self {
        CliError {
            name,
            message: message.into(),
            input: true,
        }
    }

    pub fn domain(name: &'static str, message: impl Into<String>) -> Self {
        CliError {
            name,
            message: message.into(),
            input: false,
        }
    }

    fn exit_code(&self) -> u8 {
        if self.input {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.message)
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::QInvariant {
            path,
            box_margin,
            verify_oracle,
        } => commands::q_invariant(&path, box_margin, verify_oracle),
        Command::Predict { f, g, box_margin } => commands::predict(&f, &g, box_margin),
        Command::Mcg(McgCommand::Check { matrix }) => commands::mcg_check(&matrix),
        Command::Mcg(McgCommand::Parity { f, g }) => commands::mcg_parity(&f, &g),
        Command::Mcg(McgCommand::Decompose { matrix }) => commands::mcg_decompose(&matrix),
        Command::Moves(MovesCommand::Eval { path }) => commands::moves_eval(&path),
        Command::Moves(MovesCommand::Build(args)) => commands::moves_build(&args),
        Command::Fixture(args) => commands::fixture(&args),
        Command::Homology { path, box_margin } => commands::homology(&path, box_margin),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
