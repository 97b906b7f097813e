//! `gsum` — Gaussian summation of infinite sums with 1/k^2 tails.
//!
//! Exit status: 0 on success, 1 on usage errors (bad flags, unparsable
//! expressions), 2 on numerical failures.

mod commands;
mod expr;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use gsum_core::summator::RuleProvider;
use gsum_core::Side;

const CACHE_DIR_ENV: &str = "GSUM_CACHE_DIR";
const CACHE_DIR_DEFAULT: &str = ".gsum-cache";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(std::io::Error),
}

impl From<gsum_core::Error> for CliError {
    fn from(err: gsum_core::Error) -> Self {
        use gsum_core::Error as E;
        match err {
            E::Argument(_) | E::Domain(_) => CliError::Usage(err.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    /// sum over k >= 1 of g(k), with g extending evenly to negative k
    Positive,
    /// sum over all nonzero integers k of g(k)
    TwoSided,
}

impl From<SideArg> for Side {
    fn from(side: SideArg) -> Side {
        match side {
            SideArg::Positive => Side::PositiveHalf,
            SideArg::TwoSided => Side::TwoSidedNonzero,
        }
    }
}

/// Gaussian summation rules for infinite sums: generate nodes/weights,
/// evaluate sums adaptively, reproduce the reference benchmarks.
#[derive(Parser, Debug)]
#[command(name = "gsum", version, max_term_width = 100)]
struct Cli {
    /// Rule cache directory [env GSUM_CACHE_DIR, default .gsum-cache]
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the nodes and weights of the n-point summation rule
    Rule {
        /// Rule size (1..=256)
        #[arg(long)]
        n: usize,
    },
    /// Adaptively evaluate the sum of g(k) for an expression in k
    ///
    /// Precedence: '^' (right-associative) binds tighter than unary
    /// minus, which binds tighter than '*' and '/', then '+' and '-'.
    /// Functions: sin cos tan exp log sqrt sinh cosh abs; constant pi.
    Sum {
        /// Summand g(k), e.g. "sin(40/k)/k"
        #[arg(long)]
        expr: String,
        /// Which sum the expression defines
        #[arg(long, value_enum)]
        side: SideArg,
        /// Relative tolerance on successive rule differences
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Largest rule size to try
        #[arg(long = "n-max", default_value_t = 64)]
        n_max: usize,
    },
    /// Error benchmarks against independent references
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Zero distribution of the n-point rule's denominator polynomial
    Zeros {
        /// Rule size (1..=256)
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum BenchCommand {
    /// Relative errors for the Hardy-Littlewood sum H(x) = sum sin(x/k)/k
    Hl {
        /// Comma-separated x values
        #[arg(long, value_delimiter = ',', value_name = "LIST")]
        x: Vec<f64>,
        /// Largest rule size
        #[arg(long = "n-max", default_value_t = 64)]
        n_max: usize,
    },
    /// Relative errors for sum over k of 1/(a^2+k^2) vs (pi/a) coth(pi a),
    /// with the a-priori estimate 8 nu exp(-nu^2/(pi a)) alongside
    Coth {
        #[arg(long)]
        a: f64,
        /// Largest rule size
        #[arg(long = "n-max", default_value_t = 64)]
        n_max: usize,
    },
    /// Richardson-extrapolation error curves on the same sum
    Richardson {
        #[arg(long)]
        a: f64,
        /// Comma-separated extrapolation orders
        #[arg(long = "N", value_delimiter = ',', value_name = "LIST")]
        orders: Vec<usize>,
        /// Largest partial-sum index
        #[arg(long = "n-max", default_value_t = 100_000)]
        n_max: usize,
    },
}

fn cache_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(CACHE_DIR_DEFAULT))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut provider = RuleProvider::with_cache_dir(cache_dir(cli.cache_dir));
    let rendered = match cli.command {
        Command::Rule { n } => commands::rule(&mut provider, n, cli.format)?,
        Command::Sum {
            expr,
            side,
            tol,
            n_max,
        } => {
            let ast = expr::parse_expr(&expr).map_err(|e| CliError::Usage(e.to_string()))?;
            commands::sum(&mut provider, &expr, ast, side.into(), tol, n_max, cli.format)?
        }
        Command::Bench(BenchCommand::Hl { x, n_max }) => {
            commands::bench_hl(&mut provider, &x, n_max, cli.format)?
        }
        Command::Bench(BenchCommand::Coth { a, n_max }) => {
            commands::bench_coth(&mut provider, a, n_max, cli.format)?
        }
        Command::Bench(BenchCommand::Richardson { a, orders, n_max }) => {
            commands::bench_richardson(a, &orders, n_max, cli.format)?
        }
        Command::Zeros { n } => commands::zeros(&mut provider, n, cli.format)?,
    };
    output::emit(cli.out.as_deref(), &rendered).map_err(CliError::Io)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version are successes; everything else is a usage error
            if err.use_stderr() {
                eprint!("{err}");
                std::process::exit(1);
            }
            print!("{err}");
            std::process::exit(0);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            std::process::exit(1);
        }
        Err(CliError::Numerical(message)) => {
            eprintln!("numerical failure: {message}");
            std::process::exit(2);
        }
        Err(CliError::Io(err)) => {
            eprintln!("i/o error: {err}");
            std::process::exit(2);
        }
    }
}
