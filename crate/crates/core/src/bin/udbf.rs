use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use binomial_filters::analysis::SweepSpec;
use binomial_filters::commands::{self, FilterSpec, Report};
use binomial_filters::compare::CompareOptions;
use binomial_filters::export::Format;
use binomial_filters::noise::{DEFAULT_SEED, DEFAULT_SIGMA, NoiseSpec};
use binomial_filters::transient::InputKind;
use binomial_filters::{Error, Order, ReferenceKind};
use clap::{ArgAction, Args, Parser, Subcommand};

/// Uniformly damped binomial low-pass filters.
#[derive(Parser)]
#[command(name = "udbf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the damping constant and denominator of a design
    Design(Common),
    /// Log-spaced frequency sweep: magnitude, unwrapped phase, delays
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        wmin: Option<f64>,
        #[arg(long)]
        wmax: Option<f64>,
    },
    /// Step or impulse response of the analog prototype
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "step", value_parser = parse_input)]
        input: InputKind,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Bilinear IIR coefficients with a pole audit
    Digitize {
        #[command(flatten)]
        common: Common,
        /// Sample rate in Hz
        #[arg(long)]
        fs: f64,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        prewarp: bool,
    },
    /// Noisy step through digitized udb, butterworth and binomial designs
    Compare {
        #[arg(short = 'n', default_value_t = 7)]
        n: usize,
        #[arg(long, conflicts_with = "hz")]
        wn: Option<f64>,
        #[arg(long)]
        hz: Option<f64>,
        /// Sample rate in Hz (default 100 times the cutoff in Hz)
        #[arg(long)]
        fs: Option<f64>,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        prewarp: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SIGMA)]
        sigma: f64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "udb")]
    kind: ReferenceKind,
    #[arg(short = 'n')]
    n: usize,
    /// Cutoff in rad/s
    #[arg(long, required_unless_present = "hz", conflicts_with = "hz")]
    wn: Option<f64>,
    /// Cutoff in Hz
    #[arg(long)]
    hz: Option<f64>,
    /// Damping override (udb only)
    #[arg(long)]
    zeta: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write the main output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn spec(&self) -> FilterSpec {
        FilterSpec {
            kind: self.kind,
            n: self.n,
            omega_n: self.wn,
            cutoff_hz: self.hz,
            zeta: self.zeta,
        }
    }
}

fn parse_input(s: &str) -> Result<InputKind, String> {
    match s {
        "step" => Ok(InputKind::Step),
        "impulse" => Ok(InputKind::Impulse),
        _ => Err(format!("expected step or impulse, got '{s}'")),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let (report, output) = match cli.command {
        Command::Design(c) => (commands::cmd_design(&c.spec(), c.output.format)?, c.output),
        Command::Analyze { common, points, wmin, wmax } => {
            let spec = common.spec();
            let sweep = if points.is_some() || wmin.is_some() || wmax.is_some() {
                let base = SweepSpec::around(spec.omega()?);
                Some(SweepSpec {
                    omega_min: wmin.unwrap_or(base.omega_min),
                    omega_max: wmax.unwrap_or(base.omega_max),
                    points: points.unwrap_or(base.points),
                })
            } else {
                None
            };
            (commands::cmd_analyze(&spec, sweep, common.output.format)?, common.output)
        }
        Command::Simulate { common, input, horizon, dt } => (
            commands::cmd_simulate(&common.spec(), input, horizon, dt, common.output.format)?,
            common.output,
        ),
        Command::Digitize { common, fs, prewarp } => (
            commands::cmd_digitize(&common.spec(), fs, prewarp, common.output.format)?,
            common.output,
        ),
        Command::Compare { n, wn, hz, fs, horizon, prewarp, seed, sigma, output } => {
            let omega_n = match (wn, hz) {
                (_, Some(hz)) => 2.0 * std::f64::consts::PI * hz,
                (w, None) => w.unwrap_or(1.0),
            };
            let base = CompareOptions::new(Order::new(n)?, omega_n);
            let options = CompareOptions {
                sample_rate: fs.unwrap_or(base.sample_rate),
                horizon: horizon.unwrap_or(base.horizon),
                prewarp,
                noise: NoiseSpec { seed, sigma },
                ..base
            };
            (commands::cmd_compare(&options, output.format)?, output)
        }
    };
    emit(report, output)
}

fn emit(report: Report, output: Output) -> Result<(), Error> {
    match &output.out {
        Some(path) => {
            fs::write(path, &report.body).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
            if let Some(summary) = report.summary {
                print!("{summary}");
            }
        }
        None => {
            print!("{}", report.body);
            if let Some(summary) = report.summary {
                eprint!("{summary}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("udbf: {e}");
            ExitCode::FAILURE
        }
    }
}
