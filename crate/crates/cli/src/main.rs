use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flipchain::{run, Command, Format, RunConfig};
use flipchain_core::exactpoly::{parse_rational, Rational};
use flipchain_core::verify::Grid;

#[derive(Parser)]
#[command(name = "flipchain", version, about = "Walls, flips, Betti numbers and stability checks for rank-2 framed modules")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Shorthand for --format json.
    #[arg(long)]
    json: bool,
}

impl Output {
    fn format(&self) -> Format {
        if self.json {
            return Format::Json;
        }
        match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Latex => Format::Latex,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Args)]
struct Cell {
    /// Degree, negative.
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    /// Genus, at least 2.
    #[arg(long, allow_hyphen_values = true)]
    g: i64,
}

fn sigma_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

#[derive(Subcommand)]
enum Cmd {
    /// Walls, chambers and flip loci.
    Chambers {
        #[command(flatten)]
        cell: Cell,
        #[command(flatten)]
        out: Output,
    },
    /// Poincaré polynomials of every chamber, by two routes.
    Betti {
        #[command(flatten)]
        cell: Cell,
        /// Only this chamber index.
        #[arg(long, allow_hyphen_values = true)]
        chamber: Option<i64>,
        #[command(flatten)]
        out: Output,
    },
    /// Stability verdicts for a model file.
    StabilityCheck {
        #[arg(long)]
        model: PathBuf,
        /// Evaluate at these σ instead of chamber representatives and walls.
        #[arg(long, value_parser = sigma_arg, num_args = 1..)]
        sigma: Vec<Rational>,
        #[command(flatten)]
        out: Output,
    },
    /// Full consistency sweep; exits 1 on any failure.
    VerifyAll {
        /// Largest genus and most negative degree.
        #[arg(long, num_args = 2, value_names = ["G_MAX", "D_MIN"], allow_hyphen_values = true)]
        grid: Option<Vec<i64>>,
        #[arg(long)]
        seed: Option<u64>,
        /// Random rank-2 models in the stability suite.
        #[arg(long)]
        models: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

fn config(cli: Cli) -> RunConfig {
    match cli.command {
        Cmd::Chambers { cell, out } => RunConfig {
            d: Some(cell.d),
            g: Some(cell.g),
            format: out.format(),
            ..RunConfig::new(Command::Chambers)
        },
        Cmd::Betti { cell, chamber, out } => RunConfig {
            d: Some(cell.d),
            g: Some(cell.g),
            chamber,
            format: out.format(),
            ..RunConfig::new(Command::Betti)
        },
        Cmd::StabilityCheck { model, sigma, out } => RunConfig {
            model_path: Some(model),
            sigmas: sigma,
            format: out.format(),
            ..RunConfig::new(Command::StabilityCheck)
        },
        Cmd::VerifyAll { grid, seed, models, out } => RunConfig {
            grid: grid.map(|v| Grid { g_max: v[0], d_min: v[1] }),
            seed,
            models,
            format: out.format(),
            ..RunConfig::new(Command::VerifyAll)
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = run(&config(cli));
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
