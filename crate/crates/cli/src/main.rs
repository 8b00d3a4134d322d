//! `rcsp`: generate, solve, approximate and kernelize dense ranking CSP instances.

mod bench;
mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ranking_csp::characterize::CharacterizeError;
use ranking_csp::{
    FormatError, GenerateError, GeneratorMode, GeneratorSpec, Instance, KernelError, ModelError, Oracle,
    OracleError, ProblemKind,
};

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;
const EXIT_ORACLE_CAP: u8 = 5;
const EXIT_IO: u8 = 6;

#[derive(Parser)]
#[command(
    name = "rcsp",
    version,
    about = "Dense ranking r-CSPs: betweenness, transitive FAST and FAST"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve exactly with the exhaustive oracle.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Also decide whether at most `k` constraints must be edited.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long, default_value_t = ranking_csp::oracle::DEFAULT_CAP)]
        oracle_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run Inc-Degree on a FAST instance.
    Approx {
        #[command(flatten)]
        input: InputArgs,
        /// Compare against the oracle optimum.
        #[arg(long)]
        compare: bool,
        #[arg(long, default_value_t = ranking_csp::oracle::DEFAULT_CAP)]
        oracle_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kernelize an instance with parameter k.
    Kernelize(commands::KernelizeArgs),
    /// Check characterizations and the approximation inequalities.
    VerifyLemmas(verify::VerifyArgs),
    /// Sweep a generator grid and write one CSV row per cell.
    Bench(bench::BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Planted,
    Uniform,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Provider {
    Exact,
    Incdegree,
    Localsearch,
}

#[derive(Args, Clone, Debug)]
struct GenArgs {
    #[arg(long)]
    family: Option<ranking_csp::Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Planted)]
    mode: Mode,
    /// Number of planted edits.
    #[arg(long, default_value_t = 0)]
    edits: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone, Debug)]
struct InputArgs {
    /// Instance file; generator flags are used when absent.
    instance: Option<PathBuf>,
    #[command(flatten)]
    gen: GenArgs,
}

/// A violated command precondition.
#[derive(Debug)]
struct Precondition(String);

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Precondition {}

fn precondition(msg: impl Into<String>) -> anyhow::Error {
    Precondition(msg.into()).into()
}

impl GenArgs {
    fn spec(&self) -> Result<GeneratorSpec> {
        let (Some(family), Some(n), Some(r)) = (self.family, self.n, self.r) else {
            return Err(precondition("give an instance file or --family, --n and --r"));
        };
        let mode = match self.mode {
            Mode::Planted => GeneratorMode::Planted { edits: self.edits },
            Mode::Uniform => {
                if self.edits != 0 {
                    return Err(precondition("--edits only applies to --mode planted"));
                }
                GeneratorMode::Uniform
            }
        };
        Ok(GeneratorSpec {
            kind: ProblemKind::new(family, r)?,
            n,
            mode,
            seed: self.seed,
        })
    }
}

impl InputArgs {
    fn load(&self) -> Result<Instance> {
        match &self.instance {
            Some(path) => {
                if self.gen.family.is_some() || self.gen.n.is_some() || self.gen.r.is_some() {
                    return Err(precondition(
                        "generator flags cannot be combined with an instance file",
                    ));
                }
                ranking_csp::format::read_instance(path)
                    .map_err(|e| anyhow::Error::new(e).context(format!("reading {}", path.display())))
            }
            None => Ok(ranking_csp::generate(&self.gen.spec()?)?.instance),
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| anyhow::Error::new(e).context(format!("writing {}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { gen, out } => {
            let g = ranking_csp::generate(&gen.spec()?)?;
            emit(out.as_ref(), &ranking_csp::serialize(&g.instance))
        }
        Command::Solve {
            input,
            k,
            oracle_cap,
            out,
        } => emit(
            out.as_ref(),
            &commands::solve(&input.load()?, k, Oracle::with_cap(oracle_cap))?,
        ),
        Command::Approx {
            input,
            compare,
            oracle_cap,
            out,
        } => {
            let oracle = compare.then(|| Oracle::with_cap(oracle_cap));
            emit(out.as_ref(), &commands::approx(&input.load()?, oracle)?)
        }
        Command::Kernelize(args) => commands::kernelize(&args),
        Command::VerifyLemmas(args) => {
            let (report, ok) = verify::run(&args)?;
            print!("{report}");
            if !ok {
                bail!("verification failed");
            }
            Ok(())
        }
        Command::Bench(args) => bench::run(&args),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<FormatError>() {
            return if matches!(e, FormatError::Io(_)) {
                EXIT_IO
            } else {
                EXIT_PARSE
            };
        }
        if cause.is::<std::io::Error>() {
            return EXIT_IO;
        }
        if cause.is::<OracleError>() {
            return EXIT_ORACLE_CAP;
        }
        if let Some(e) = cause.downcast_ref::<KernelError>() {
            return if matches!(e, KernelError::Oracle(_)) {
                EXIT_ORACLE_CAP
            } else {
                EXIT_PRECONDITION
            };
        }
        if let Some(e) = cause.downcast_ref::<CharacterizeError>() {
            return if matches!(e, CharacterizeError::Oracle(_)) {
                EXIT_ORACLE_CAP
            } else {
                EXIT_PRECONDITION
            };
        }
        if cause.is::<Precondition>()
            || cause.is::<ModelError>()
            || cause.is::<GenerateError>()
            || cause.is::<ranking_csp::approx::ApproxError>()
        {
            return EXIT_PRECONDITION;
        }
    }
    EXIT_OTHER
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
