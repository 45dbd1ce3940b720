//! `leaper`: distance tables, velocity sweeps, ratio distributions,
//! Fibonacci knights and sumset growth, as CSV or JSON.
//!
//! Exit codes: 0 on success, 2 for an invalid configuration, 3 when an
//! internal invariant fails (e.g. an unreachable cell for a piece that was
//! checked to be primitive).

mod commands;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leaper_core::estimators::Normalizer;
use leaper_core::Error;

use commands::{PieceSpec, RunConfig};
use table::Table;

#[derive(Parser, Debug)]
#[command(name = "leaper", version, about = "Exact reachability experiments for leaper pieces on Z^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance table `x,y,distance` over the box of the given radius.
    Distance(Common),
    /// Box-average velocity over a doubling schedule of radii.
    Velocity(Common),
    /// Empirical versus limiting distribution of the knight/king ratio.
    Cdf(Common),
    /// Fibonacci knights 1..=radius with their velocities.
    Fibo(Common),
    /// Sumset sizes |lA0| and shell sizes for l = 1..=radius.
    Sumset(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// king | taxicab | knight A B | fibo N
    #[arg(long, num_args = 1..=3, value_name = "PIECE")]
    piece: Vec<String>,
    /// Radius of the reporting box (upper index for fibo and sumset).
    #[arg(long)]
    radius: Option<u32>,
    /// Extra padding around the reporting box; defaults to twice the
    /// longest move in the 1-norm.
    #[arg(long)]
    margin: Option<u32>,
    #[arg(long, value_enum, default_value_t = NormalizerArg::Box)]
    normalizer: NormalizerArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of grid intervals for the cdf table.
    #[arg(long, default_value_t = 100)]
    grid_resolution: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormalizerArg {
    Box,
    Punctured,
}

impl From<NormalizerArg> for Normalizer {
    fn from(n: NormalizerArg) -> Self {
        match n {
            NormalizerArg::Box => Normalizer::Box,
            NormalizerArg::Punctured => Normalizer::Punctured,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Config(String),
    Internal(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unreachable { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let (name, common) = match &command {
        Command::Distance(c) => ("distance", c),
        Command::Velocity(c) => ("velocity", c),
        Command::Cdf(c) => ("cdf", c),
        Command::Fibo(c) => ("fibo", c),
        Command::Sumset(c) => ("sumset", c),
    };
    let spec = match (name, common.piece.is_empty()) {
        ("fibo", _) => None,
        (_, true) => return Err(Failure::Config("--piece is required".into())),
        _ => Some(PieceSpec::parse(&common.piece).map_err(Failure::Config)?),
    };
    let radius = common.radius.unwrap_or(match name {
        "distance" => 3,
        "velocity" => 1000,
        "cdf" => 500,
        "fibo" => 12,
        _ => 40,
    });
    if radius == 0 {
        return Err(Failure::Config("--radius must be at least 1".into()));
    }
    let normalizer = Normalizer::from(common.normalizer);

    let table: Table = match command {
        Command::Distance(_) => commands::cmd_distance(&spec.unwrap().build()?, radius, common.margin)?,
        Command::Velocity(_) => commands::cmd_velocity(spec.unwrap(), radius, common.margin, normalizer)?,
        Command::Cdf(_) => commands::cmd_cdf(spec.unwrap(), radius, common.margin, common.grid_resolution)?,
        Command::Fibo(_) => commands::cmd_fibo(radius)?,
        Command::Sumset(_) => commands::cmd_sumset(&spec.unwrap().build()?, radius)?,
    };

    let config = RunConfig {
        subcommand: name,
        piece: spec,
        radius,
        margin: common.margin,
        normalizer: normalizer.as_str(),
        grid_resolution: (name == "cdf").then_some(common.grid_resolution),
    };
    let mut out: Box<dyn Write> = match &common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match common.format {
        Format::Csv => table.write_csv(&mut out)?,
        Format::Json => {
            let config = serde_json::to_value(&config).map_err(|e| Failure::Internal(e.to_string()))?;
            table.write_json(config, &mut out)?
        }
    }
    out.flush()?;
    Ok(())
}
