mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subrings_core::closure::Substitution;
use subrings_core::subring::DEFAULT_NODE_BUDGET;

use crate::commands::{run, Failure};
use crate::output::Format;

/// Exact counts of subrings of Z^n, their lower bounds and local zeta factors.
#[derive(Parser, Debug)]
#[command(name = "subrings", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format. CSV is available for tabular commands only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Maximum search nodes for any single enumeration.
    #[arg(long, global = true, env = "SUBRINGS_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// All subrings, f_n(p^e).
    F,
    /// Irreducible subrings, g_n(p^e).
    G,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count subrings of index p^e in Z^n, or irreducible ones with a given diagonal.
    Count {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        e: Option<usize>,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Kind::F)]
        kind: Kind,
        /// Diagonal exponents, comma separated; counts g_alpha(p) instead.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "e", "kind"])]
        alpha: Option<Vec<usize>>,
    },
    /// Fit a polynomial in p through counts at several primes.
    Interp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        degree_cap: usize,
        #[arg(long, value_enum, default_value_t = Kind::G)]
        kind: Kind,
    },
    /// Lower-bound exponents h, b and c with their witnesses.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
    },
    /// Recompute the published table of bound exponents and compare.
    Table1 {
        /// Exit with status 2 if any row disagrees.
        #[arg(long)]
        strict: bool,
    },
    /// Coefficients of the local zeta factor for n <= 4.
    ZetaCoeff {
        #[arg(long)]
        n: usize,
        /// Largest exponent e to print.
        #[arg(long)]
        e: usize,
        /// Also evaluate each coefficient at this prime.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Congruence conditions for a diagonal and their solution count.
    Closure {
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<usize>,
        #[arg(long)]
        p: u64,
        /// Rescaling a_ij -> p^k a_ij' given as i,j,k (1-based); repeatable.
        #[arg(long = "subst", value_parser = parse_subst)]
        subst: Vec<Substitution>,
    },
    /// Check that every sandwich subgroup Z + m^2 Z^n <= G <= Z + m Z^n is a subring.
    AuditSandwich {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
    },
    /// Run the acceptance suite.
    Verify {
        /// Run only this check (1-based).
        #[arg(long)]
        check: Option<usize>,
    },
}

fn parse_subst(s: &str) -> Result<Substitution, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let nums: Vec<usize> = parts.iter().map(|x| x.trim().parse::<usize>()).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    match nums[..] {
        [i, j, k] => Ok(Substitution::new(i, j, k as u32)),
        _ => Err(format!("expected i,j,k, got {s:?}")),
    }
}

fn main() -> ExitCode {
    // clap reports usage errors with status 2, which here means a mismatch.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (text, code) = match run(&cli.command, &cli.common) {
        Ok(out) => (out.text, out.code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    let written = match &cli.common.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
