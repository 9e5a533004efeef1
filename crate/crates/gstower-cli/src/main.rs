//! `gstower` — growth invariants of finitely presented pro-p groups and
//! Z_p-towers, from the command line.
//!
//! Exit codes: 0 success/certified, 1 input error, 2 inconclusive
//! certification, 3 hypothesis failure.

mod cmd_poly;
mod cmd_presentation;
mod cmd_tower;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gstower::gspoly::Rational;
use gstower::numfmt::parse_rational;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "gstower",
    version,
    about = "Exact growth invariants of pro-p groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Seed recorded for randomized property checks (outputs are
    /// deterministic for a fixed config and seed).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Bracket tolerance for negativity analysis, as an exact rational
    /// ("1/1048576", "0.001").
    #[arg(long, global = true, default_value = "1/1048576")]
    tol: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a finitely presented pro-p group from a JSON file.
    Presentation {
        /// Presentation file: {"p", "generators", "relators"}.
        #[arg(long)]
        file: PathBuf,
        /// Truncation degree N for the algebra computations.
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Certified growth table along a Z_p-tower.
    Tower {
        /// Tower config (JSON file path, or `-` for stdin): full form or
        /// the cyclotomic shorthand {"p", "ell", "T1", "mu"}.
        #[arg(long)]
        config: String,
        /// First level.
        #[arg(long, default_value_t = 0)]
        n_start: u32,
        /// Last level (inclusive).
        #[arg(long, default_value_t = 6)]
        n_end: u32,
        /// Tower exponent k >= 1; overrides the config value.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Analyze a single growth polynomial.
    Poly {
        /// Dense coefficient list, lowest degree first: "1 -3 2".
        #[arg(long, conflicts_with = "q")]
        coeffs: Option<String>,
        /// Vertex-form data: D R R' p.
        #[arg(long, num_args = 4, value_names = ["D", "R", "RP", "P"])]
        q: Option<Vec<String>>,
    },
}

pub struct RunConfig {
    pub format: Format,
    pub seed: Option<u64>,
    pub tol: Rational,
}

fn exit_code_for(err: &gstower::Error) -> u8 {
    match err {
        gstower::Error::Hypotheses(_) => 3,
        gstower::Error::Inconclusive | gstower::Error::UnresolvedDepth { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `gstower ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let cli = Cli::parse();

    if let Ok(threads) = std::env::var("GSTOWER_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("error: GSTOWER_THREADS must be a positive integer");
                return ExitCode::from(1);
            }
        }
    }

    let tol = match parse_rational(&cli.tol) {
        Ok(t) if t > Rational::new(0.into(), 1.into()) => t,
        Ok(_) => {
            eprintln!("error: tolerance must be positive");
            return ExitCode::from(1);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let config = RunConfig {
        format: cli.format,
        seed: cli.seed,
        tol,
    };

    let outcome = match cli.command {
        Command::Presentation { file, max_degree } => {
            cmd_presentation::run(&config, &file, max_degree)
        }
        Command::Tower {
            config: source,
            n_start,
            n_end,
            k,
        } => cmd_tower::run(&config, &source, n_start, n_end, k),
        Command::Poly { coeffs, q } => cmd_poly::run(&config, coeffs.as_deref(), q.as_deref()),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = err
                .downcast_ref::<gstower::Error>()
                .map(exit_code_for)
                .unwrap_or(1);
            ExitCode::from(code)
        }
    }
}
