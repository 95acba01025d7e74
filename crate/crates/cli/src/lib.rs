//! Command-line front end: every subcommand produces one JSON document and an exit code.

mod commands;
mod inputs;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Parser, Debug, Clone)]
#[command(name = "conradian", version, about = "Enumerate, audit and count conradian left-preorders")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Presentation file, or the name of a shipped one (z, z2, z2rel, klein, heis, t2, t3, t4)
    #[arg(long, global = true)]
    pub rsp: Option<String>,

    /// Ball radius for audits and searches (each command has its own default)
    #[arg(long, global = true)]
    pub radius: Option<usize>,

    /// Worker threads; output does not depend on this
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Collection step budget per group operation
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List the conradian preorders of a certified series, with the count cross-check
    Enumerate {
        /// Every base level (the default)
        #[arg(long, conflicts_with = "level")]
        all: bool,
        /// Only preorders relative to G_l
        #[arg(long)]
        level: Option<usize>,
        /// Also run the full audit on every listed cone
        #[arg(long)]
        audit: bool,
        /// List sign-vector cones at the level even without a certificate
        #[arg(long)]
        force_relative: bool,
    },
    /// Audit one preorder: cone axioms, conradian condition, convexity
    Audit {
        /// Cone literal such as "l=0,eps=[+,-]"
        #[arg(long, conflicts_with_all = ["evaluator", "bs12"])]
        cone: Option<String>,
        /// Tabulated evaluator dump (JSON)
        #[arg(long, conflicts_with = "bs12")]
        evaluator: Option<PathBuf>,
        /// The evaluation-at-zero preorder of BS(1,2)
        #[arg(long)]
        bs12: bool,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        /// Level whose convexity is audited (default: every level from the base up)
        #[arg(long)]
        level: Option<usize>,
        /// Change the preorder at one element first, e.g. "g=(1,0)" or "g=(2,0),to=0"
        #[arg(long)]
        perturb: Option<String>,
        /// Largest n tried for the minimal conradian exponent
        #[arg(long, default_value_t = 8)]
        n_max: u32,
    },
    /// Search for a crossing in an ordered action
    #[command(alias = "crossing-search")]
    Crossing {
        /// "bs12" or "coset:<cone literal>"
        #[arg(long)]
        action: String,
        #[arg(long, default_value_t = 3)]
        word_bound: usize,
        #[arg(long, default_value_t = 4)]
        n_bound: u64,
        /// "dyadic:<max numerator>:<max exponent>" or "ball:<radius>"
        #[arg(long)]
        points: Option<String>,
        /// Accept witnesses whose condition 2 is only checked up to the bound
        #[arg(long)]
        allow_proxy: bool,
        /// Also turn a persistent conradian violation into a crossing
        #[arg(long)]
        bridge: bool,
    },
    /// Find a smallest set of elements singling a preorder out among its neighbours
    Isolate {
        #[arg(long)]
        level: Option<usize>,
        /// Cone literal; the level may come from --level instead
        #[arg(long)]
        target: String,
    },
    /// Subnormality and abelian-jump scan of the stored series
    Scan,
    /// List the Cayley ball
    Ball,
    /// Normal form of a word such as "2 1^-1 3^2"
    Collect {
        #[arg(long)]
        word: String,
    },
    /// Check the relations on a ball
    Consistency,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    All,
    Axioms,
    Conradian,
    Convexity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

/// Runs one command on the calling thread pool.
pub fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    commands::dispatch(cli)
}

/// Runs one command on a pool of `--jobs` threads (or rayon's default).
pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.global.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build()?;
    pool.install(|| execute(cli))
}
