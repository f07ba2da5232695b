mod commands;
mod corpus;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{emit, Envelope, Outcome};

/// Exact computations with quasi-hereditary algebras, exact Borel
/// subalgebras and directed bocses.
///
/// Exit codes: 0 pass, 1 failed verdict, 2 usage or precondition error,
/// 3 internal theorem violation.
#[derive(Parser, Debug)]
#[command(name = "borelbocs", version)]
struct Cli {
    /// Re-verify every certificate of the report from the input alone.
    #[arg(long, global = true)]
    recheck: bool,
    /// Include wall-clock timings (makes the output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "BORELBOCS_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and validate the algebras of a problem file.
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Quasi-hereditary verdict with standard modules and filtrations.
    Qh {
        #[command(subcommand)]
        action: QhCmd,
    },
    /// The dual coring of an extension.
    Coring {
        #[command(subcommand)]
        action: CoringCmd,
    },
    /// Directedness, normality and regularity of a bocs.
    Bocs {
        #[command(subcommand)]
        action: BocsCmd,
    },
    /// The right algebra of a bocs or of the dual coring of an extension.
    RightAlgebra { file: PathBuf },
    /// The flags B1, B2, B3, H, N and R of an extension.
    Borel {
        #[command(subcommand)]
        action: BorelCmd,
    },
    /// Extension -> bocs -> right algebra, or bocs -> right algebra -> bocs.
    Roundtrip { file: PathBuf },
    /// Ext between simples of B, their inductions, or the comparison map.
    Ext {
        file: PathBuf,
        /// Label of the first simple of B.
        #[arg(long)]
        from: String,
        /// Label of the second simple of B.
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Ext over B, over Λ of the inductions, or the map between them.
        #[arg(long, value_enum, default_value_t = Over::Compare)]
        over: Over,
    },
    /// The built-in corpus F0–F5 against its expected values.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCmd,
    },
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Dimensions, classes and global dimension, for Λ and B when given.
    Validate { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum QhCmd {
    /// Decide quasi-heredity of Λ under `order`.
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CoringCmd {
    /// Serialisable coring with counit and splitting verdicts.
    Build { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum BocsCmd {
    /// Directedness, group-like search and degree-one regularity.
    Check {
        file: PathBuf,
    },
    /// Apply reductions until none applies.
    Regularize {
        file: PathBuf,
        /// Let the reduction element range over all of rad B.
        #[arg(long)]
        widen: bool,
        /// Give up after this many reductions.
        #[arg(long, default_value_t = 32)]
        max_steps: usize,
    },
}

#[derive(Subcommand, Debug)]
enum BorelCmd {
    /// All six flags with witnesses.
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum FixturesCmd {
    /// Every fixture, or just `name`.
    Run {
        name: Option<String>,
        /// Print the JSON report instead of one line per check.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Over {
    B,
    Lambda,
    Compare,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let opts = commands::Flags { recheck: cli.recheck, timings: cli.timings };
    let (name, result) = match &cli.command {
        Command::Algebra { action: AlgebraCmd::Validate { file } } => {
            ("algebra validate", commands::run_file(file, &opts, commands::algebra_validate))
        }
        Command::Qh { action: QhCmd::Check { file } } => ("qh check", commands::run_file(file, &opts, commands::qh_check)),
        Command::Coring { action: CoringCmd::Build { file } } => {
            ("coring build", commands::run_file(file, &opts, commands::coring_build))
        }
        Command::Bocs { action: BocsCmd::Check { file } } => {
            ("bocs check", commands::run_file(file, &opts, commands::bocs_check))
        }
        Command::Bocs { action: BocsCmd::Regularize { file, widen, max_steps } } => (
            "bocs regularize",
            commands::run_file(file, &opts, |p, f| commands::bocs_regularize(p, f, *widen, *max_steps)),
        ),
        Command::RightAlgebra { file } => ("right-algebra", commands::run_file(file, &opts, commands::right_algebra)),
        Command::Borel { action: BorelCmd::Check { file } } => {
            ("borel check", commands::run_file(file, &opts, commands::borel_check))
        }
        Command::Roundtrip { file } => ("roundtrip", commands::run_file(file, &opts, commands::roundtrip)),
        Command::Ext { file, from, to, degree, over } => (
            "ext",
            commands::run_file(file, &opts, |p, f| commands::ext(p, f, from, to, *degree, *over)),
        ),
        Command::Fixtures { action: FixturesCmd::Run { name, json } } => {
            return corpus::run(name.as_deref(), *json, &opts);
        }
    };
    let (envelope, code) = match result {
        Ok((env, outcome)) => {
            let code = match outcome {
                Outcome::Pass => 0,
                Outcome::Fail => 1,
            };
            (env, code)
        }
        Err((env, e)) => {
            let code = e.exit_code();
            (env.with_error(&e), code)
        }
    };
    emit(envelope.render(name));
    ExitCode::from(code as u8)
}

pub(crate) type CmdResult = Result<(Envelope, Outcome), (Envelope, borelbocs::Error)>;
