mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mrg_core::bounds::Mode;

#[derive(Parser, Debug)]
#[command(name = "mrg", version, about = "Growth bounds and exact checks for multi-recurrences over Q and Q(z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Spec file (JSON).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Positive rational p/q.
    #[arg(long, global = true, default_value = "1/10")]
    epsilon: String,
    /// Search box half-width N.
    #[arg(long = "box", global = true, default_value_t = 4)]
    box_n: u64,
    /// Search [0, N]^t instead of [-N, N]^t.
    #[arg(long, global = true)]
    nonneg: bool,
    /// Monic irreducible polynomial in z, or "inf".
    #[arg(long, global = true)]
    place: Option<String>,
    #[arg(long, global = true, default_value = "conservative")]
    mode: Mode,
    /// Override the field degree d.
    #[arg(long, global = true)]
    d: Option<u64>,
    /// Override |S|.
    #[arg(long, global = true)]
    s: Option<u64>,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Projective height of one function (H(f) = H(1, f)) or of a vector.
    Height {
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
        /// Heights of rationals instead of rational functions.
        #[arg(long)]
        rational: bool,
    },
    /// Pairwise independence over Q(z), or triviality of the exponent group over Q.
    Indep,
    /// Number-field constants: T, tau, A, and the three cardinality bounds.
    BoundsNf,
    /// Function-field constants C5, C6 and C8.
    BoundsFf,
    /// Enumerate and classify solutions of the damped inequality over Q.
    VerifyNf {
        /// Distinguished term (from 1).
        #[arg(long, default_value_t = 1)]
        i0: usize,
    },
    /// Check valuation growth over Q(z) on a box.
    VerifyFf,
    /// The Wronskian threshold C7 for a one-variable spec.
    Wronskian,
    /// Brownawell-Masser inequality for a vanishing sum.
    CheckBm {
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
        #[arg(long, default_value_t = 0)]
        genus: u64,
    },
    /// Zannier's inequality for a sum of independent functions.
    CheckZannier {
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
        /// Number of leading functions whose zeros join S.
        #[arg(long)]
        r: usize,
        /// Additional places in S.
        #[arg(long = "extra-place")]
        extra: Vec<String>,
        #[arg(long, default_value_t = 0)]
        genus: u64,
    },
    /// Exponent bounds for alpha_0 = prod b_i^k_i.
    CheckLemma61 {
        #[arg(required = true, allow_hyphen_values = true)]
        basis: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        k: Vec<i64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Height { exprs, rational } => commands::height(exprs, *rational),
        Command::Indep => commands::indep(&cli.common),
        Command::BoundsNf => commands::bounds_nf(&cli.common),
        Command::BoundsFf => commands::bounds_ff(&cli.common),
        Command::VerifyNf { i0 } => commands::verify_nf(&cli.common, *i0),
        Command::VerifyFf => commands::verify_ff(&cli.common),
        Command::Wronskian => commands::wronskian(&cli.common),
        Command::CheckBm { exprs, genus } => commands::check_bm(exprs, *genus),
        Command::CheckZannier { exprs, r, extra, genus } => commands::check_zannier(&cli.common, exprs, *r, extra, *genus),
        Command::CheckLemma61 { basis, k } => commands::check_lemma61(basis, k),
    };
    match result {
        Ok(out) => {
            if cli.common.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable report"));
            } else {
                print!("{}", out.text);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
