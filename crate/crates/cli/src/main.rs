mod commands;
mod output;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use circulant::groups::DEFAULT_CENSUS_BUDGET;
use circulant::oracle::{DEFAULT_ISO_BUDGET, DEFAULT_ISO_CAP};
use circulant::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Format, Sink};

/// Circulant graph isomorphisms of Type-1 (multipliers) and Type-2 (rotations).
#[derive(Debug, Parser)]
#[command(name = "circulant", version)]
struct Cli {
    /// Output format. JSON is the contract; table and csv are projections.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for parallel sweeps.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub n: u64,
    /// Connection set, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub set: Vec<i64>,
}

#[derive(Debug, Args)]
pub struct RotationArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub set: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    M2,
    M2General,
    M3,
    M3General,
    M5,
    M5General,
    M7,
    M7General,
    GeneralP,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub kind: FamilyKind,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub s: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub p_list: Vec<u64>,
    #[arg(long)]
    pub y: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub x: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reflexive modular reduction of a list of jumps.
    Reduce {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        values: Vec<i64>,
    },
    /// Type-1 set and group of C_n(R).
    T1set(GraphArgs),
    /// Type-2 set and group of C_n(R) with respect to m.
    T2set(RotationArgs),
    /// Every rotation image of C_n(R) with respect to m.
    Vset(RotationArgs),
    /// Per-shift table of rotated directed jumps and verdicts.
    Table {
        #[command(flatten)]
        graph: RotationArgs,
        /// Shift range such as 0..6 (inclusive) or a single shift.
        #[arg(long = "t", value_parser = parse_range::<u64>)]
        t: Option<RangeInclusive<u64>>,
    },
    /// Generate and verify a family of Type-2 isomorphic graphs.
    Family(FamilyArgs),
    /// Classify the relation between C_n(A) and C_n(B).
    Iso {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        b: Vec<i64>,
        #[arg(long)]
        m: Option<u64>,
        /// Largest order for the exhaustive search.
        #[arg(long, default_value_t = DEFAULT_ISO_CAP)]
        cap: u64,
        /// Search nodes before the exhaustive search gives up.
        #[arg(long, default_value_t = DEFAULT_ISO_BUDGET)]
        search_budget: u64,
    },
    /// Enumerate connection sets and report Type-2 classes.
    Census {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// Set sizes such as 4 or 3..5 (inclusive).
        #[arg(long, value_parser = parse_range::<usize>)]
        sizes: RangeInclusive<usize>,
        /// Maximum number of candidate sets.
        #[arg(long, env = "CIRCULANT_CENSUS_BUDGET", default_value_t = DEFAULT_CENSUS_BUDGET)]
        budget: u128,
        /// Only visit sets containing this jump.
        #[arg(long)]
        require_jump: Option<u64>,
    },
}

fn parse_range<T>(s: &str) -> Result<RangeInclusive<T>, String>
where
    T: std::str::FromStr + PartialOrd + Copy,
{
    let num = |v: &str| v.trim().parse::<T>().map_err(|_| format!("not a number: {v:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidTheta(_) => 3,
        Error::InvalidFamilyParams(_) | Error::DegenerateFamily(_) => 4,
        Error::VerificationFailure(_) | Error::GroupAxiom(_) | Error::SubgroupViolation { .. } => 5,
        Error::BudgetExceeded { .. } => 6,
        _ => 2,
    }
}

/// Failure of a command: the exit code and what to say on stderr.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, message: format!("output: {e}") }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut sink = Sink::open(cli.out.as_deref(), cli.format)?;
    let result = match cli.command {
        Command::Reduce { n, values } => commands::reduce(&mut sink, n, &values),
        Command::T1set(g) => commands::t1set(&mut sink, &g),
        Command::T2set(g) => commands::t2set(&mut sink, &g),
        Command::Vset(g) => commands::vset(&mut sink, &g),
        Command::Table { graph, t } => commands::table(&mut sink, &graph, t),
        Command::Family(args) => commands::family(&mut sink, &args),
        Command::Iso { n, a, b, m, cap, search_budget } => {
            commands::iso(&mut sink, n, &a, &b, m, cap, search_budget)
        }
        Command::Census { n, m, sizes, budget, require_jump } => {
            commands::census(&mut sink, n, m, sizes, budget, require_jump)
        }
    };
    sink.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("error: thread pool: {e}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
