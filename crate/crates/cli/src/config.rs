// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reserving_core::impact::Statistic;
use reserving_core::oracle::{FdScheme, DEFAULT_TOLERANCE};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "reserving-impact",
    version,
    about = "Cell-level sensitivity of loss reserves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chain-ladder, Mack and BF reserves by accident year.
    Reserves(RunArgs),
    /// Impact triangle of a statistic.
    Impact(RunArgs),
    /// Euler contributions `IF * X` of an order-one statistic.
    Marginal(RunArgs),
    /// Compare analytic impacts with finite differences.
    Verify(RunArgs),
    /// SVG heatmap of an impact triangle.
    Heatmap(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatArg {
    ReserveAy,
    ReserveTotal,
    BfAy,
    BfTotal,
    MseAy,
    MseTotal,
    RmseAy,
    RmseTotal,
    Quantile,
    Marginal,
}

impl From<StatArg> for Statistic {
    fn from(s: StatArg) -> Self {
        match s {
            StatArg::ReserveAy => Statistic::ReserveAy,
            StatArg::ReserveTotal => Statistic::ReserveTotal,
            StatArg::BfAy => Statistic::BfAy,
            StatArg::BfTotal => Statistic::BfTotal,
            StatArg::MseAy => Statistic::MseAy,
            StatArg::MseTotal => Statistic::MseTotal,
            StatArg::RmseAy => Statistic::RmseAy,
            StatArg::RmseTotal => Statistic::RmseTotal,
            StatArg::Quantile => Statistic::Quantile,
            StatArg::Marginal => Statistic::Marginal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Incremental triangle file (`I=<n>` header, then one row per line).
    pub input: PathBuf,

    #[arg(long, value_enum, default_value = "reserve-total")]
    pub stat: StatArg,

    /// Accident year for per-year statistics.
    #[arg(long)]
    pub year: Option<usize>,

    /// Quantile level.
    #[arg(long, default_value_t = 0.995)]
    pub q: f64,

    /// Prior ultimates file (`i,mu` lines) or `cl` for chain-ladder ultimates.
    #[arg(long, default_value = "cl")]
    pub priors: String,

    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also run the finite-difference check (impact and marginal only).
    #[arg(long)]
    pub verify: bool,

    /// Relative finite-difference step.
    #[arg(long)]
    pub fd_step: Option<f64>,

    /// Largest accepted relative error.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Reserves,
    Impact,
    Marginal,
    Verify,
    Heatmap,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PriorSource {
    ChainLadder,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub input: PathBuf,
    pub stat: Statistic,
    pub year: Option<usize>,
    pub q: f64,
    pub priors: PriorSource,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub verify: bool,
    pub scheme: FdScheme,
    pub tolerance: f64,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl RunConfig {
    pub fn from_command(command: Command) -> Result<Self, CliError> {
        let (mode, args) = match command {
            Command::Reserves(a) => (Mode::Reserves, a),
            Command::Impact(a) => (Mode::Impact, a),
            Command::Marginal(a) => (Mode::Marginal, a),
            Command::Verify(a) => (Mode::Verify, a),
            Command::Heatmap(a) => (Mode::Heatmap, a),
        };
        Self::new(mode, args)
    }

    pub fn new(mode: Mode, args: RunArgs) -> Result<Self, CliError> {
        let mut stat = Statistic::from(args.stat);
        if mode == Mode::Marginal {
            if stat == Statistic::Marginal {
                stat = Statistic::ReserveTotal;
            }
            if !stat.is_order_one() {
                return Err(usage(format!(
                    "marginal contributions need reserve-ay or reserve-total, got {stat}"
                )));
            }
        }
        // `--stat marginal` takes an optional year selecting reserve-ay.
        if stat != Statistic::Marginal && mode != Mode::Reserves {
            match (stat.is_per_year(), args.year) {
                (true, None) => return Err(usage(format!("--year is required for {stat}"))),
                (false, Some(_)) => return Err(usage(format!("--year does not apply to {stat}"))),
                _ => {}
            }
        }
        if args.year == Some(0) {
            return Err(usage("--year counts from 1"));
        }
        if !(args.q > 0.0 && args.q < 1.0) {
            return Err(usage(format!("--q must lie in (0, 1), got {}", args.q)));
        }
        let mut scheme = FdScheme::default();
        if let Some(step) = args.fd_step {
            if !(step > 0.0 && step.is_finite()) {
                return Err(usage(format!("--fd-step must be positive, got {step}")));
            }
            scheme.relative_step = step;
        }
        if !(args.tolerance > 0.0) {
            return Err(usage(format!("--tolerance must be positive, got {}", args.tolerance)));
        }
        let format = match (mode, args.format) {
            (Mode::Heatmap, None | Some(Format::Svg)) => Format::Svg,
            (Mode::Heatmap, Some(f)) => return Err(usage(format!("heatmap writes svg, not {f:?}"))),
            (Mode::Reserves | Mode::Verify, Some(Format::Svg)) => {
                return Err(usage("svg output is only available for impact triangles"))
            }
            (_, f) => f.unwrap_or(Format::Csv),
        };
        let priors = match args.priors.as_str() {
            "cl" => PriorSource::ChainLadder,
            p => PriorSource::File(PathBuf::from(p)),
        };
        Ok(Self {
            mode,
            input: args.input,
            stat,
            year: args.year,
            q: args.q,
            priors,
            format,
            out: args.out,
            verify: args.verify || mode == Mode::Verify,
            scheme,
            tolerance: args.tolerance,
        })
    }
}
