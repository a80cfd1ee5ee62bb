//! `congruence`: compute and verify the congruence invariant σ(A) = Tr(ᵗA·A⁻¹).
//!
//! Reports go to stdout as JSON, diagnostics to stderr. Exit codes: 0 on
//! success, 1 when a property violation was found, 2 on input or usage errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use congruence_core::random::DEFAULT_SEED;
use congruence_core::Strategy;

#[derive(Debug, Parser)]
#[command(name = "congruence", version, about)]
struct Cli {
    /// Run every loop on the current thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// σ of a matrix document under all three formulas.
    Sigma {
        /// Matrix JSON document ("-" for stdin).
        file: PathBuf,
    },
    /// Transpose, inverse, adjugate, scalar and symmetric identities on a matrix.
    Props {
        file: PathBuf,
        /// Nonzero scalar for the scalar-multiple identity [default: 2, or 1 in GF(2)].
        #[arg(long, allow_hyphen_values = true)]
        scalar: Option<String>,
    },
    /// κ = 3 − σ and its explicit polynomial for a 3×3 matrix.
    Kappa { file: PathBuf },
    /// The canonical form A(a, b, c) and D = a² + b² + c² − abc.
    Canon {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        /// `rational`, `gf<p>`, `gf(<p>)` or `prime:<p>`.
        #[arg(long, default_value = "rational")]
        field: String,
    },
    /// Seeded random invariance and identity trials.
    Fuzz {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "rational")]
        field: String,
        /// Entry bound for rational draws.
        #[arg(long, default_value_t = 9)]
        bound: u64,
    },
    /// Congruence orbits of GL(n, p) with σ per orbit.
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Allow p = 7.
        #[arg(long)]
        allow_p7: bool,
    },
    /// Brute-force isomorphism test of two zeropotent algebras over GF(p).
    Iso {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Field to work in; integer rational documents are reduced mod p.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        allow_p7: bool,
    },
    /// Search for X with ᵗX·A(a,b,c)·X = A(s,0,0), s² = D, over GF(p).
    ExploreReduction {
        #[arg(long)]
        p: u64,
        /// Examine this many random triples instead of all p³.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    };
    match commands::run(cli.command, strategy) {
        Ok(outcome) => {
            println!("{}", outcome.report);
            if outcome.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
