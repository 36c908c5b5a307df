//! `rowmotion`: orbits, verification suites, homomesy spans and trajectories
//! for toggle dynamics on `[a]×[b]`.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rowmotion_core::lab::Setting;
use rowmotion_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "rowmotion",
    version,
    about = "Toggle dynamics and homomesy on products of two chains"
)]
#[command(
    after_help = "Elements are written i:j for (i,j) in [a]×[b]; on [2]×[2] the letters w,x,y,z name \
(1,1),(2,1),(1,2),(2,2). Init vectors and custom statistics list values in row-major order \
(1,1),(2,1),...,(a,1),(1,2),... Rationals are written p/q."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit partition of J(P), or the orbit of one array.
    Orbits(OrbitsArgs),
    /// Run a verification suite by id, or `all`.
    Verify(VerifyArgs),
    /// Space of homomesic linear statistics on J(P).
    Span(SpanArgs),
    /// Step-by-step states from an explicit start.
    Trajectory(TrajectoryArgs),
    /// Experiments on maps outside the rowmotion/promotion family.
    Experiment(ExperimentArgs),
}

#[derive(Args, Debug, Clone)]
struct Shape {
    #[arg(long, default_value_t = 2)]
    a: usize,
    #[arg(long, default_value_t = 2)]
    b: usize,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SettingArg {
    Combinatorial,
    PlUnit,
    PlHomog,
    Birational,
}

impl From<SettingArg> for Setting {
    fn from(s: SettingArg) -> Setting {
        match s {
            SettingArg::Combinatorial => Setting::Combinatorial,
            SettingArg::PlUnit => Setting::PlUnit,
            SettingArg::PlHomog => Setting::PlHomog,
            SettingArg::Birational => Setting::Birational,
        }
    }
}

#[derive(Args, Debug)]
struct OrbitsArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, value_enum, default_value_t = SettingArg::Combinatorial)]
    setting: SettingArg,
    /// rowmotion, promotion, or plan:<elements>.
    #[arg(long, default_value = "rowmotion")]
    map: String,
    /// Start array for the continuous settings.
    #[arg(long)]
    init: Option<String>,
    /// cardinality, file:k, element:i:j, opposite:i:j or custom:c1,...
    #[arg(long, default_value = "cardinality")]
    stat: String,
    /// Step bound for continuous orbits (default 4n for presets, 12n for plans).
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    max_states: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite id, or `all`.
    id: String,
    #[command(flatten)]
    shape: Shape,
    /// Setting for order-n and opposite-pairs.
    #[arg(long, value_enum)]
    setting: Option<SettingArg>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples per check (default 100 piecewise-linear, 20 birational).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    max_states: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SpanArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, default_value = "rowmotion")]
    map: String,
    #[arg(long, default_value_t = 1_000_000)]
    max_states: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TrajectoryArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, value_enum, default_value_t = SettingArg::PlUnit)]
    setting: SettingArg,
    #[arg(long, default_value = "rowmotion")]
    map: String,
    #[arg(long)]
    init: String,
    /// Number of steps (default n = a + b).
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value = "cardinality")]
    stat: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExperimentName {
    /// Twelve-step table for (1,k,k,k)/d, 4 <= k <= d.
    InfiniteOrder,
    /// Return time of --init under the map.
    OrbitLength,
    /// Running averages of a statistic along the orbit of --init.
    Cesaro,
    /// Antichain cardinality under α₂α₁α₃ and its lifts.
    Antichain,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    name: ExperimentName,
    #[command(flatten)]
    shape: Shape,
    /// Defaults to the plan w,x,z,y on [2]×[2].
    #[arg(long)]
    map: Option<String>,
    /// antichain: combinatorial (default), pl-unit or birational.
    /// orbit-length and cesaro: pl-unit (default) or pl-homog.
    #[arg(long, value_enum)]
    setting: Option<SettingArg>,
    #[arg(long, default_value_t = 100)]
    d: i64,
    #[arg(long)]
    init: Option<String>,
    /// Defaults to custom:1,-1,-1,1.
    #[arg(long)]
    stat: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    horizon: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_states: usize,
    #[command(flatten)]
    output: Output,
}

/// A failed run, with its exit status.
#[derive(Debug)]
pub enum Failure {
    /// A check did not hold, or a birational step was singular (exit 1).
    Check(String),
    /// Bad flags or input (exit 2).
    Usage(String),
    /// State space over the guard (exit 3).
    Guard(String),
}

impl Failure {
    /// Errors raised while reading flags and inputs.
    pub fn from_input(e: Error) -> Failure {
        match e {
            Error::SizeGuard { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }

    /// Errors raised during a computation.
    pub fn from_run(e: Error) -> Failure {
        match e {
            Error::Singular { .. } => Failure::Check(e.to_string()),
            _ => Failure::from_input(e),
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Guard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) | Failure::Guard(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Orbits(args) => commands::orbits(args),
        Command::Verify(args) => commands::verify(args),
        Command::Span(args) => commands::span(args),
        Command::Trajectory(args) => commands::trajectory(args),
        Command::Experiment(args) => commands::experiment(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rowmotion: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
