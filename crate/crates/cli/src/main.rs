//! Command-line front end: identity verification, term dumps, evaluation,
//! convergence sweeps, and rendering.
//!
//! Exit codes: 0 on success, 1 on domain errors (negative radicand, bad
//! config, sequence errors), 2 on usage errors.

mod config;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nestrad::algebra::expand_identity;
use nestrad::evaluator::{evaluate, sweep, EvalError, EvalSettings, TailMode};
use nestrad::render::{render, RenderFormat};
use nestrad::scheme::{Preset, SchemeError, SchemeInstance};
use nestrad::SchemeKind;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "nestrad",
    version,
    about = "Construct, verify, evaluate, and render generalized nested radicals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the three telescoping relations by exact polynomial expansion
    VerifyIdentities {
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Dump exact term coefficients, one JSON row per depth
    Terms {
        #[command(flatten)]
        source: Source,
        /// Number of leading terms to dump
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        #[arg(long, value_enum, default_value_t = TermsFormat::Json)]
        format: TermsFormat,
    },
    /// Evaluate a depth-k truncation at high precision
    Eval {
        #[command(flatten)]
        source: Source,
        /// Number of radical layers before the tail
        #[arg(long)]
        depth: u64,
        /// Tail seeding: zero | fixed | const:<decimal>
        #[arg(long, value_parser = parse_tail, default_value = "zero")]
        tail: TailMode,
        /// Significant digits of the output
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
        precision: u32,
        #[arg(long, value_enum, default_value_t = EvalFormat::Text)]
        format: EvalFormat,
    },
    /// Evaluate every depth 1..=max-depth and report convergence
    Sweep {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_depth: u64,
        /// Tail seeding: zero | fixed | const:<decimal>
        #[arg(long, value_parser = parse_tail, default_value = "zero")]
        tail: TailMode,
        /// Significant digits of each value
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
        precision: u32,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
    },
    /// Render a depth-k truncation as text or LaTeX
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        #[arg(long, value_enum, default_value_t = RenderArg::Text)]
        format: RenderArg,
        /// Render the innermost level without the trailing ellipsis
        #[arg(long)]
        no_ellipsis: bool,
    },
}

/// Scheme selection: exactly one of a built-in preset or a config file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in preset
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// Scheme config file with key=value lines (kind, x, a, n)
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

impl Source {
    fn instance(&self) -> Result<SchemeInstance, CliError> {
        match (&self.preset, &self.config) {
            (Some(preset), None) => Ok(preset.preset().instance()),
            (None, Some(path)) => Ok(config::load(path)?),
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Classic,
    Cor1,
    Cor2,
    Cor3,
    Cor4,
}

impl PresetArg {
    fn preset(self) -> Preset {
        match self {
            PresetArg::Classic => Preset::Classic,
            PresetArg::Cor1 => Preset::Cor1,
            PresetArg::Cor2 => Preset::Cor2,
            PresetArg::Cor3 => Preset::Cor3,
            PresetArg::Cor4 => Preset::Cor4,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TermsFormat {
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderArg {
    Text,
    Latex,
}

fn parse_tail(text: &str) -> Result<TailMode, String> {
    match text {
        "zero" => Ok(TailMode::Zero),
        "fixed" => Ok(TailMode::FixedPoint),
        other => match other.strip_prefix("const:") {
            Some(constant) => TailMode::constant(constant).map_err(|err| err.to_string()),
            None => Err("expected `zero`, `fixed`, or `const:<decimal>`".to_string()),
        },
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Domain(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::VerifyIdentities { format } => {
            let mut all_hold = true;
            for kind in [SchemeKind::P1, SchemeKind::P2, SchemeKind::P3] {
                let report = expand_identity(kind);
                all_hold &= report.holds;
                match format {
                    ReportFormat::Text => println!(
                        "{} {}",
                        kind.name(),
                        if report.holds { "OK" } else { "FAIL" }
                    ),
                    ReportFormat::Json => println!("{}", report.to_json()),
                }
            }
            if !all_hold {
                return Err(CliError::Domain(
                    "an identity did not expand to zero".to_string(),
                ));
            }
            Ok(())
        }
        Command::Terms {
            source,
            depth,
            format: TermsFormat::Json,
        } => {
            let instance = source.instance()?;
            for term in instance.terms().take(depth as usize) {
                let term = term.map_err(EvalError::from)?;
                println!("{}", term.to_json());
            }
            Ok(())
        }
        Command::Eval {
            source,
            depth,
            tail,
            precision,
            format,
        } => {
            let instance = source.instance()?;
            let settings = EvalSettings {
                precision,
                depth,
                tail,
            };
            let result = evaluate(&instance, &settings)?;
            match format {
                EvalFormat::Text => println!("{}", result.value),
                EvalFormat::Json => println!("{}", result.to_json()),
            }
            Ok(())
        }
        Command::Sweep {
            source,
            max_depth,
            tail,
            precision,
            format,
        } => {
            let instance = source.instance()?;
            let rows = sweep(&instance, max_depth, &tail, precision)?;
            match format {
                SweepFormat::Csv => {
                    println!("depth,value,abs_error");
                    for row in rows {
                        println!("{},{},{}", row.depth, row.value, row.abs_error);
                    }
                }
                SweepFormat::Json => {
                    for row in rows {
                        println!("{}", row.to_json());
                    }
                }
            }
            Ok(())
        }
        Command::Render {
            source,
            depth,
            format,
            no_ellipsis,
        } => {
            let instance = source.instance()?;
            let fmt = match format {
                RenderArg::Text => RenderFormat::text(),
                RenderArg::Latex => RenderFormat::latex(),
            }
            .with_ellipsis(!no_ellipsis);
            println!("{}", render(&instance, depth, &fmt)?);
            Ok(())
        }
    }
}
