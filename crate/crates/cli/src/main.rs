//! `drinfeld`: batch front end for the drinfeld-core library.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse or usage error, 3 budget
//! exceeded, 4 unmet precondition.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drinfeld_core::{FqField, DEFAULT_BUDGET};

use crate::output::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "drinfeld", version, about = "Torsion of Drinfeld modules over F_q(T) and F_q((T))")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Size of the constant field.
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Ascending coefficients of the modulus defining F_q over F_p, e.g. "1,1,1".
    #[arg(long, global = true)]
    modulus: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,
    /// Maximum number of elements (or degree, for primorials) enumerated.
    #[arg(long, env = "DRINFELD_BUDGET", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Decimal places for transcendental statistics.
    #[arg(long, default_value_t = 20, global = true)]
    digits: u32,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full torsion submodule by enumeration.
    Torsion {
        #[arg(long = "phiT")]
        phi_t: String,
    },
    /// Rank one torsion from the closed-form classification.
    Classify {
        #[arg(long = "phiT")]
        phi_t: String,
    },
    /// Torsion of every normalized rank one module up to a degree bound.
    Census {
        #[arg(long)]
        deg_bound: usize,
    },
    /// Twists with nonzero torsion.
    TwistSearch {
        #[arg(long = "phiT")]
        phi_t: String,
        #[arg(long, default_value_t = 2)]
        deg_bound: usize,
    },
    /// Local analysis at a degree-one place, or of a module given by series.
    Local(LocalArgs),
    /// Primorial and Euler-function statistics.
    Stats(StatsArgs),
    /// Weil height of a projective point, and the minimal parallelotope of
    /// the span when the coordinates are independent.
    Height {
        #[arg(long)]
        coords: String,
    },
    /// The module whose T-torsion is the span of a basis.
    Kernel {
        #[arg(long)]
        basis: String,
    },
}

#[derive(Args, Debug)]
struct LocalArgs {
    /// Coefficients a_0, ..., a_r; rational functions, or Laurent series with --series.
    #[arg(long = "phiT")]
    phi_t: String,
    /// Monic irreducible of degree one, e.g. "T+1".
    #[arg(long, required_unless_present = "series", conflicts_with = "series")]
    place: Option<String>,
    /// Read the coefficients and points as Laurent series in the uniformizer.
    #[arg(long)]
    series: bool,
    /// Expansion precision for rational coefficients and points.
    #[arg(long, default_value_t = 20)]
    precision: i64,
    /// Points to classify (repeatable).
    #[arg(long = "x")]
    points: Vec<String>,
    /// Largest degree of a torsion witness searched for.
    #[arg(long, default_value_t = 4)]
    a_deg_bound: usize,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "mode")]
struct StatsMode {
    /// Primorial table: φ_A, Mertens product and liminf statistic for n = 1..N.
    #[arg(long, requires = "n")]
    mertens: bool,
    /// Per-degree maximum of |m| / (φ_A(m) ln ln φ_A(m)).
    #[arg(long, requires = "deg_bound")]
    phigrowth: bool,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[command(flatten)]
    mode: StatsMode,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    deg_bound: Option<usize>,
}

#[derive(Debug)]
enum CliError {
    Core(drinfeld_core::Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<drinfeld_core::Error> for CliError {
    fn from(e: drinfeld_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use drinfeld_core::Error as E;
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) | CliError::Core(E::Parse(_)) => 2,
            CliError::Core(E::BudgetExceeded { .. }) => 3,
            CliError::Core(_) => 4,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn build_field(g: &Global) -> CliResult<FqField> {
    let q = g.q.ok_or_else(|| CliError::Usage("--q is required".into()))?;
    let Some(m) = &g.modulus else {
        return Ok(FqField::new(q)?);
    };
    let coeffs = m
        .split(',')
        .map(|c| c.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("bad modulus coefficient {c:?}"))))
        .collect::<CliResult<Vec<u32>>>()?;
    let (p, e) = drinfeld_core::field::prime_power(q).ok_or(drinfeld_core::Error::NotPrimePower(q as u64))?;
    if coeffs.len() != e as usize + 1 {
        return Err(CliError::Usage(format!("modulus for q = {q} must have degree {e}")));
    }
    Ok(FqField::with_modulus(p, &coeffs)?)
}

fn run(cli: &Cli) -> CliResult<String> {
    let g = &cli.global;
    let field = build_field(g)?;
    let budget = g.budget.unwrap_or(DEFAULT_BUDGET);
    let fmt = match g.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    match &cli.command {
        Command::Torsion { phi_t } => commands::torsion(&field, phi_t, budget)?.render(fmt),
        Command::Classify { phi_t } => commands::classify(&field, phi_t)?.render(fmt),
        Command::Census { deg_bound } => commands::census(&field, *deg_bound, budget)?.render(fmt),
        Command::TwistSearch { phi_t, deg_bound } => {
            commands::twist_search(&field, phi_t, *deg_bound, budget)?.render(fmt)
        }
        Command::Local(a) => {
            let req = commands::LocalRequest {
                phi_t: &a.phi_t,
                place: a.place.as_deref(),
                precision: a.precision,
                points: &a.points,
                a_deg_bound: a.a_deg_bound,
            };
            commands::local(&field, &req)?.render(fmt)
        }
        Command::Stats(a) => {
            if a.mode.mertens {
                commands::mertens(&field, a.n.unwrap(), g.digits, budget)?.render(fmt)
            } else {
                commands::phigrowth(&field, a.deg_bound.unwrap(), g.digits, budget)?.render(fmt)
            }
        }
        Command::Height { coords } => commands::height(&field, coords)?.render(fmt),
        Command::Kernel { basis } => commands::kernel(&field, basis)?.render(fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match &cli.global.output {
            Some(path) => std::fs::write(path, out)?,
            None => print!("{out}"),
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
