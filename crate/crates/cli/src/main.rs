use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use optomag_core::optics::Orbit;

mod commands;
mod error;
mod format;
mod settings;

use commands::IdentifyOptions;
use error::CliError;
use settings::ConfigArgs;

/// Walker modes, whispering-gallery scattering and FMR mode identification
/// for a magnetized YIG sphere.
#[derive(Debug, Parser)]
#[command(name = "optomag", version)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct ModeArgs {
    /// Polar order.
    #[arg(long)]
    n: u32,
    /// Azimuthal order.
    #[arg(long, allow_negative_numbers = true)]
    m: i32,
    /// Radial index.
    #[arg(long)]
    r: u32,
}

impl ModeArgs {
    fn triple(&self) -> (u32, i32, u32) {
        (self.n, self.m, self.r)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrbitArg {
    Cw,
    Ccw,
}

impl From<OrbitArg> for Orbit {
    fn from(o: OrbitArg) -> Self {
        match o {
            OrbitArg::Cw => Orbit::Cw,
            OrbitArg::Ccw => Orbit::Ccw,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List Walker modes up to a polar order as CSV.
    Modes {
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Equatorial magnetization texture as CSV, with a JSON summary.
    ///
    /// The summary goes next to the output file with a .json extension, or
    /// to stderr when writing to stdout.
    Texture {
        #[command(flatten)]
        mode: ModeArgs,
        /// Half-width of the grid in points (odd, at least 21).
        #[arg(long, default_value_t = 41)]
        grid: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Allowed scattering channels for one input orbit as JSON.
    Channels {
        #[command(flatten)]
        mode: ModeArgs,
        /// Input TM index; defaults to the ladder reference index.
        #[arg(long)]
        m_tm: Option<u32>,
        #[arg(long, value_enum)]
        orbit: OrbitArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scattered amplitude against drive frequency for both orbits as CSV.
    Spectrum {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        m_tm: Option<u32>,
        /// Half-width of the drive sweep, GHz; defaults to ten magnon linewidths.
        #[arg(long)]
        span: Option<f64>,
        #[arg(long, default_value_t = 401)]
        points: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Label the dips of measured FMR spectra.
    Identify {
        /// CSV files with a `freq_ghz,s11` header.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Kittel frequency, GHz; overrides `# kittel_ghz=` in every file.
        #[arg(long)]
        kittel: Option<f64>,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        /// Minimum dip prominence in |S11| units.
        #[arg(long, default_value_t = 0.05)]
        prominence: f64,
        /// Minimum dip separation, GHz.
        #[arg(long, default_value_t = 0.01)]
        min_separation: f64,
        /// Assignment tolerance, GHz.
        #[arg(long, default_value_t = optomag_core::identify::DEFAULT_TOLERANCE_GHZ)]
        tolerance: f64,
        /// Fit a common magnetization scale across all files.
        #[arg(long)]
        fit_ms: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = cli.config.resolve()?;
    match cli.command {
        Command::Modes { n_max, output } => commands::modes(&cfg, n_max, output.as_deref()),
        Command::Texture { mode, grid, output } => {
            commands::texture(&cfg, mode.triple(), grid, output.as_deref())
        }
        Command::Channels { mode, m_tm, orbit, output } => {
            commands::channels(&cfg, mode.triple(), m_tm, orbit.into(), output.as_deref())
        }
        Command::Spectrum { mode, m_tm, span, points, output } => {
            commands::spectrum(&cfg, mode.triple(), m_tm, span, points, output.as_deref())
        }
        Command::Identify {
            files,
            kittel,
            n_max,
            prominence,
            min_separation,
            tolerance,
            fit_ms,
            output,
        } => {
            let opts = IdentifyOptions {
                kittel,
                n_max,
                prominence,
                min_separation,
                tolerance,
                fit_ms,
            };
            commands::identify(&cfg, &files, &opts, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("optomag: {e}");
            e.exit_code()
        }
    }
}
