//! `diraclie`: batch verification of Dirac Lie group data stored as JSON.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! unreadable or malformed input, 3 when a search exceeds its size limits.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "diraclie", version, about = "Exact verification of Dirac Lie group data")]
struct Cli {
    /// Print a markdown report instead of JSON.
    #[arg(long, global = true)]
    md: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lie algebras given by structure constants.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Linear Dirac subspaces of g ⊕ g*.
    Dirac {
        #[command(subcommand)]
        action: DiracAction,
    },
    /// Multiplicative data (g0, δ).
    Mult {
        #[command(subcommand)]
        action: MultAction,
    },
    /// Homogeneous Dirac structures over a subalgebra h.
    Homog {
        #[command(subcommand)]
        action: HomogAction,
    },
    /// Replay the seeded random property checks.
    Props {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
}

#[derive(Subcommand)]
enum AlgebraAction {
    /// Check antisymmetry and the Jacobi identity.
    Check { path: PathBuf },
}

#[derive(Subcommand)]
enum DiracAction {
    /// Check the Lagrangian condition and, given an algebra, integrability.
    Check {
        path: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MultAction {
    /// Check the cocycle identity, N-invariance and integrability.
    Check { path: PathBuf },
}

#[derive(Subcommand)]
enum HomogAction {
    /// Classify a candidate D.
    Classify { path: PathBuf },
    /// Enumerate candidates over an integer grid.
    Search {
        path: PathBuf,
        #[arg(long, default_value_t = 1)]
        bound: i64,
        /// Largest number of grid presentations to enumerate.
        #[arg(long, default_value_t = dirac_core::homogeneous::DEFAULT_SEARCH_LIMIT)]
        limit: u128,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Algebra { action: AlgebraAction::Check { path } } => commands::algebra_check(&path),
        Command::Dirac { action: DiracAction::Check { path, algebra } } => {
            commands::dirac_check(&path, algebra.as_deref())
        }
        Command::Mult { action: MultAction::Check { path } } => commands::mult_check(&path),
        Command::Homog { action: HomogAction::Classify { path } } => commands::homog_classify(&path),
        Command::Homog { action: HomogAction::Search { path, bound, limit } } => {
            commands::homog_search(&path, bound, limit)
        }
        Command::Props { seed, cases } => Ok(commands::props(seed, cases)),
    };
    match outcome {
        Ok(report) => {
            print!("{}", report.render(cli.md));
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
