//! `congrlab`: congruence lattices, Boolean centers and lifting properties of
//! finite algebras from the command line.

mod cache;
mod check;
mod goldens;
mod render;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use congrlab_core::algebra::{direct_product_with, dual, ordinal_sum};
use congrlab_core::fixtures::fixture_names;
use congrlab_core::lifting::quotient;
use congrlab_core::report::{build_report, con_dot, fixture_report_for};
use congrlab_core::{build_from_spec, AlgebraSpec, Config, Congruence, FiniteAlgebra};

const AFTER_HELP: &str = "\
Exit codes:
  0  success, or the checked property holds
  1  the checked property fails (evidence is printed on stdout)
  2  input or validation error

Environment:
  CONGRLAB_CACHE  directory in which computed congruence lattices are stored,
                  keyed by a hash of the algebra's operation tables

Congruences are written as blocks of labels, e.g. \"0|a|b|c|x,1\".";

#[derive(Parser, Debug)]
#[command(name = "congrlab", version, about, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Built-in fixture to load (repeatable; see `congrlab fixture`).
    #[arg(long, global = true, value_name = "NAME")]
    fixture: Vec<String>,

    /// JSON algebra spec to load (repeatable; loaded after any fixtures).
    #[arg(long, global = true, value_name = "PATH")]
    file: Vec<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Congruence for `quotient`, in block syntax.
    #[arg(long, global = true, value_name = "BLOCKS")]
    by: Option<String>,

    /// Write output here instead of stdout (a directory for `regen-goldens`).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Refuse algebras and constructions with more elements than this.
    #[arg(long, global = true, value_name = "N")]
    max_size: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List Con(A) in canonical order.
    Con,
    /// List the Boolean center of Con(A) with complements.
    Center,
    /// List the factor congruences FC(A) with complements.
    Fc,
    /// Build A/θ for the congruence given by --by.
    Quotient,
    /// Build the direct product of all inputs, in order.
    Product,
    /// Build the ordinal sum of two inputs (first below second).
    Osum,
    /// Build the order dual.
    Dual,
    /// Decide a property; exit 1 when it fails.
    Check {
        #[arg(value_enum)]
        property: Property,
    },
    /// Full analysis: counts, flags and per-congruence lifting table.
    Report,
    /// List fixtures, or show one.
    Fixture {
        name: Option<String>,
        /// Print the JSON spec that rebuilds the fixture.
        #[arg(long)]
        emit_spec: bool,
    },
    /// Hasse diagram of Con(A) in Graphviz DOT.
    Dot,
    /// Rewrite the report and DOT goldens of every fixture.
    RegenGoldens,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Fclp,
    Cblp,
    Blp,
    FiltBlp,
    IdBlp,
    FcNormal,
    BNormal,
    Arithmetical,
    Crt,
}

/// Anything that ends in exit code 2.
#[derive(Debug)]
pub struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<congrlab_core::Error> for CliError {
    fn from(e: congrlab_core::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

pub fn fail<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError(msg.into()))
}

/// Command output and whether the checked property holds.
struct Outcome {
    text: String,
    holds: bool,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, holds: true }
    }
}

/// A loaded input, remembering the fixture name when there is one.
struct Input {
    algebra: FiniteAlgebra,
    fixture: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(cli.out.as_deref(), &cli.command, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, command: &Command, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) if !matches!(command, Command::RegenGoldens) => Ok(std::fs::write(path, text)?),
        _ => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn config(cli: &Cli) -> Config {
    match cli.max_size {
        Some(n) => Config::default().with_max_carrier(n),
        None => Config::default(),
    }
}

fn load(cli: &Cli, cfg: &Config) -> Result<Vec<Input>, CliError> {
    let mut inputs = Vec::new();
    for name in &cli.fixture {
        inputs.push(Input {
            algebra: congrlab_core::fixture(name)?,
            fixture: Some(name.clone()),
        });
    }
    for path in &cli.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        let spec = AlgebraSpec::from_json(&text)
            .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        inputs.push(Input {
            algebra: build_from_spec(&spec)?,
            fixture: None,
        });
    }
    for input in &inputs {
        cfg.check_carrier(input.algebra.size())?;
    }
    Ok(inputs)
}

fn single(cli: &Cli, cfg: &Config) -> Result<Input, CliError> {
    let mut inputs = load(cli, cfg)?;
    match inputs.len() {
        1 => Ok(inputs.remove(0)),
        0 => fail("no input: pass --fixture NAME or --file PATH"),
        n => fail(format!("expected exactly one input, got {n}")),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = config(cli);
    let format = cli.format;
    match &cli.command {
        Command::Con => {
            let an = cache::analyze(&single(cli, &cfg)?.algebra, &cfg)?;
            Ok(match format {
                Format::Dot => con_dot(&an),
                _ => render::congruences(&an, format == Format::Json),
            }
            .into())
        }
        Command::Center | Command::Fc => {
            let an = cache::analyze(&single(cli, &cfg)?.algebra, &cfg)?;
            let members = match cli.command {
                Command::Center => an.center.members().to_vec(),
                _ => an.fc.members().to_vec(),
            };
            let title = match cli.command {
                Command::Center => "B",
                _ => "FC",
            };
            Ok(match format {
                Format::Dot => con_dot(&an),
                _ => render::members(&an, title, &members, format == Format::Json),
            }
            .into())
        }
        Command::Quotient => {
            let Some(by) = &cli.by else {
                return fail("quotient needs --by BLOCKS");
            };
            let alg = single(cli, &cfg)?.algebra;
            let theta = Congruence::parse(&alg, by)?;
            let q = quotient(&alg, &theta)?;
            render::algebra(&q.quotient, format).map(Outcome::from)
        }
        Command::Product => {
            let inputs = load(cli, &cfg)?;
            if inputs.len() < 2 {
                return fail("product needs at least two inputs");
            }
            let refs: Vec<&FiniteAlgebra> = inputs.iter().map(|i| &i.algebra).collect();
            render::algebra(&direct_product_with(&refs, &cfg)?.0, format).map(Outcome::from)
        }
        Command::Osum => {
            let inputs = load(cli, &cfg)?;
            if inputs.len() != 2 {
                return fail(format!("osum needs exactly two inputs, got {}", inputs.len()));
            }
            let sum = ordinal_sum(&inputs[0].algebra, &inputs[1].algebra)?;
            cfg.check_carrier(sum.size())?;
            render::algebra(&sum, format).map(Outcome::from)
        }
        Command::Dual => {
            let alg = single(cli, &cfg)?.algebra;
            render::algebra(&dual(&alg)?, format).map(Outcome::from)
        }
        Command::Check { property } => {
            let alg = single(cli, &cfg)?.algebra;
            let an = cache::analyze(&alg, &cfg)?;
            let verdict = check::run(&an, *property)?;
            Ok(Outcome {
                text: verdict.render(&an, *property, format == Format::Json),
                holds: verdict.holds,
            })
        }
        Command::Report => {
            let input = single(cli, &cfg)?;
            let an = cache::analyze(&input.algebra, &cfg)?;
            let report = match &input.fixture {
                Some(name) => fixture_report_for(name, &an)?,
                None => build_report(&an, None)?,
            };
            Ok(match format {
                Format::Table => report.to_text(),
                Format::Json => report.to_json(),
                Format::Dot => con_dot(&an),
            }
            .into())
        }
        Command::Fixture { name, emit_spec } => match name {
            None => Ok(render::fixture_list(format == Format::Json).into()),
            Some(name) => {
                let alg = congrlab_core::fixture(name)?;
                if *emit_spec {
                    Ok(render::spec_json(&alg).into())
                } else {
                    render::algebra(&alg, format).map(Outcome::from)
                }
            }
        },
        Command::Dot => {
            let an = cache::analyze(&single(cli, &cfg)?.algebra, &cfg)?;
            Ok(con_dot(&an).into())
        }
        Command::RegenGoldens => {
            let dir = cli
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from(goldens::DEFAULT_DIR));
            let written = goldens::regen(&dir, &cfg)?;
            Ok(format!(
                "wrote {} files for {} fixtures to {}\n",
                written,
                fixture_names().len(),
                dir.display()
            )
            .into())
        }
    }
}

