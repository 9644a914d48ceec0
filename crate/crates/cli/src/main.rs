//! `dirac-squaring`: generate, verify and relate solution bases, and solve the
//! slab quantization problem, with JSON or CSV output.

mod commands;
mod config;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use commands::{BasesArgs, CovariantArgs, MajoranaArgs, MapsArgs, QuantizeCommand};
use config::ConfigFile;

/// Bad flags or configuration; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "dirac-squaring", version, about, allow_negative_numbers = true)]
struct Cli {
    /// `key = value` file supplying defaults for any numeric or named option.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Compare every construction against its tabulated closed form.
    #[arg(long, global = true)]
    reference_check: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit squared, plane-wave or helicity solution sets.
    #[command(allow_negative_numbers = true)]
    Bases(BasesArgs),
    /// Basis-change matrices between the plane-wave and helicity bases.
    #[command(allow_negative_numbers = true)]
    Maps(MapsArgs),
    /// Real and imaginary Majorana families and the two-point map test.
    #[command(allow_negative_numbers = true)]
    Majorana(MajoranaArgs),
    /// Allowed longitudinal momenta between two plates.
    #[command(subcommand)]
    Quantize(QuantizeCommand),
    /// The boundary operator G and the agreement of its constructions.
    #[command(allow_negative_numbers = true)]
    CovariantG(CovariantArgs),
}

fn run(cli: Cli) -> Result<String> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let reference = cli.reference_check || cfg.flag("reference_check");
    if reference && cli.format == Format::Csv {
        return Err(UsageError("--reference-check produces JSON only".into()).into());
    }
    let reference = if reference { Some(commands::reference(&cfg)?) } else { None };
    match cli.command {
        None => match reference {
            Some(r) => commands::render(&r),
            None => Err(UsageError("a subcommand or --reference-check is required".into()).into()),
        },
        Some(Command::Bases(a)) => commands::bases(&a, &cfg, cli.format, reference),
        Some(Command::Maps(a)) => commands::maps(&a, &cfg, cli.format, reference),
        Some(Command::Majorana(a)) => commands::majorana(&a, &cfg, cli.format, reference),
        Some(Command::Quantize(q)) => commands::quantize(&q, &cfg, cli.format, reference),
        Some(Command::CovariantG(a)) => commands::covariant_g(&a, &cfg, cli.format, reference),
    }
}

fn exit_status(err: &anyhow::Error) -> u8 {
    use dirac_squaring::Error;
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidInput(_) | Error::NonFinite(_) | Error::DegenerateMode(_)) => 2,
        Some(_) => 3,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let out = cli.out.clone();
    let result = run(cli).and_then(|text| match &out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().lock().write_all(text.as_bytes()).context("writing stdout"),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
