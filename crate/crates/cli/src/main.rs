//! `lcs`: dimensions, containment indices and structure checks for the lower
//! central series of free associative algebras.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Failure;

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "LCS_THREADS";

/// Largest component, in words, computed without `--allow-large`.
pub const DEFAULT_MAX_COORDS: u64 = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "lcs", version, about = "Lower central series workbench for free associative algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report `wall_clock_ms` as 0, for byte-identical reruns.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Lift the component size cap.
    #[arg(long, global = true)]
    pub allow_large: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    R22,
    R23,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Pbw,
    Sl2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graded dimensions of L3, M3, M2*M4, N3 or B3 style ideals.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Containment index of a product of M-ideals.
    Containment {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        tuple: Vec<usize>,
        /// Defaults to the tuple sum plus 2.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Non-containment witness for a tuple.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        tuple: Vec<usize>,
        #[arg(long, value_enum, default_value_t = WitnessKind::Pbw)]
        kind: WitnessKind,
    },
    /// PBW degree of an element.
    PbwDegree {
        expr: String,
        /// Defaults to the largest generator in the expression.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Membership of an element's degree component in an ideal.
    Membership {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        ideal: String,
        /// Defaults to the degree of a homogeneous element.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The generating set S_i of M_i(A_2).
    Generators {
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Also compare the generated ideal with M_i.
        #[arg(long)]
        check: bool,
    },
    /// Symbolic check of the identity suite.
    VerifyIdentities {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Graded dimensions of a series of R_{i,j}(A_n) = A_n / M_i M_j.
    QuotientDims {
        #[arg(long)]
        n: usize,
        #[arg(long = "mod", value_delimiter = ',')]
        modulus: Vec<usize>,
        #[arg(long)]
        series: String,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Structure theorem counts against echelon dimensions.
    StructureCheck {
        #[arg(long, value_enum)]
        which: Structure,
        /// Largest generator count (r22 only).
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Series indices to compare; defaults to 2..=5 (r22) or 5 (r23).
        #[arg(long, value_delimiter = ',')]
        r: Vec<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Observed against conjectured I(A_n, (2, ..., 2)).
    ConjectureSweep {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        /// Entries whose top component has more words are skipped.
        #[arg(long, default_value_t = 20_000)]
        max_coords: u64,
    },
    /// Membership of the three open element families in M_5(A_3).
    OpenElements {
        #[arg(long, default_value_t = 7)]
        cutoff: usize,
    },
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = v
        .parse()
        .map_err(|_| Failure::Usage(format!("{} must be a positive integer, got `{}`", THREADS_VAR, v)))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = init_threads().and_then(|_| commands::run(&cli.command, &cli.global));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lcs: {}", f);
            ExitCode::from(f.code())
        }
    }
}
