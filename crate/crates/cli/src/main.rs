//! `cmlie`: dimension tables, bases, index sets and the verification suite.

mod commands;
mod config;
mod error;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::FileConfig;
use crate::error::{exit, CliResult};
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "cmlie", version, about = "Free bigraded Lie algebras on two generators")]
struct Cli {
    /// Output format [default: table]
    #[arg(long, global = true, value_enum, env = "CMLIE_FORMAT")]
    format: Option<Format>,

    /// Nilpotency truncation N: brackets of total degree above N vanish [default: 14]
    #[arg(long, global = true, env = "CMLIE_TRUNCATION")]
    truncation: Option<u32>,

    /// Worker threads; 0 lets rayon decide [default: 0]
    #[arg(long, global = true, env = "CMLIE_THREADS")]
    threads: Option<usize>,

    /// TOML file with defaults for any of the settings above or below
    #[arg(long, global = true, env = "CMLIE_CONFIG")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DimsMode {
    /// Free Lie algebra on one generator per index-set member
    FreeUpperBound,
    /// Outer special derivations, restricted to bidegrees fixed by the roots of unity
    OuterSpecial,
    /// Classical Witt numbers for two generators
    ClassicalWitt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Lyndon,
    SpecialDerivation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    FlipXBracket,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension table by bidegree and by total degree
    Dims {
        /// Number of roots of unity: 2, 4 or 6 [default: 2]
        #[arg(long, env = "CMLIE_WK")]
        wk: Option<i64>,
        /// Largest total degree [default: 12]
        #[arg(long, env = "CMLIE_MAX_DEGREE")]
        max_degree: Option<i64>,
        #[arg(long, value_enum, default_value = "free-upper-bound")]
        mode: DimsMode,
    },
    /// Basis of one bidegree, e.g. `2,2` or `(2,2)`
    Basis {
        bidegree: String,
        #[arg(long, value_enum, default_value = "lyndon")]
        kind: BasisKind,
    },
    /// Members of the index set up to a total-degree bound
    IndexSet {
        /// Number of roots of unity: 2, 4 or 6 [default: 2]
        #[arg(long, env = "CMLIE_WK")]
        wk: Option<i64>,
        /// Largest total degree [default: 12]
        #[arg(long, visible_alias = "bound", env = "CMLIE_MAX_DEGREE")]
        max_degree: Option<i64>,
    },
    /// Run every consistency check and both reference tables
    Verify {
        /// Largest total degree checked [default: 12]
        #[arg(long, env = "CMLIE_MAX_DEGREE")]
        max_degree: Option<i64>,
        /// Seed for the randomized checks [default: 24301]
        #[arg(long, env = "CMLIE_SEED")]
        seed: Option<u64>,
        /// Number of random Leibniz samples [default: 1000]
        #[arg(long, env = "CMLIE_SAMPLES")]
        samples: Option<usize>,
        /// Test hook: corrupt the bracket before running the checks
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

fn run(cli: Cli) -> CliResult<i32> {
    let file = FileConfig::load(cli.config.as_deref())?;
    let format = config::pick(cli.format, file.format, Format::Table);
    let truncation = config::pick(cli.truncation, file.truncation, config::DEFAULT_TRUNCATION);
    let threads = config::pick(cli.threads, file.threads, 0);
    if threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    let wk = |flag: Option<i64>| config::pick(flag, file.wk, config::DEFAULT_WK);
    let max_degree = |flag: Option<i64>| config::pick(flag, file.max_degree, config::DEFAULT_MAX_DEGREE);

    let record = match cli.command {
        Command::Dims { wk: w, max_degree: n, mode } => {
            commands::dims(wk(w), max_degree(n), mode, truncation)?
        }
        Command::Basis { bidegree, kind } => commands::basis(&bidegree, kind, truncation)?,
        Command::IndexSet { wk: w, max_degree: n } => commands::index_set(wk(w), max_degree(n))?,
        Command::Verify {
            max_degree: n,
            seed,
            samples,
            inject_fault,
        } => {
            let opts = cmlie::verify::VerifyOptions {
                max_degree: max_degree(n),
                truncation,
                seed: config::pick(seed, file.seed, config::DEFAULT_SEED),
                leibniz_samples: config::pick(samples, file.samples, config::DEFAULT_SAMPLES),
                fault: inject_fault.map(|Fault::FlipXBracket| cmlie::lie::BracketFault::FlipXWithLong),
            };
            commands::verify(&opts)?
        }
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    record.write(format, &mut out)?;
    out.flush()?;
    Ok(if record.all_passed() {
        exit::OK
    } else {
        exit::VERIFICATION_FAILED
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
