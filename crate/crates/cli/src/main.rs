//! `symplefs`: exact Lefschetz numbers and Euler characteristics of
//! S-arithmetic symplectic groups from the command line.

mod commands;
mod render;
mod request;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use render::{render, Payload};
use request::{Format, ProblemArgs, RequestConfig};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Torsion(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Torsion(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Torsion(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<symplefs::Error> for CliError {
    fn from(e: symplefs::Error) -> Self {
        match e {
            symplefs::Error::TorsionUnverified => CliError::Torsion(e.to_string()),
            symplefs::Error::Inconsistent(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "symplefs",
    version,
    about = "Lefschetz numbers of symplectic arithmetic groups"
)]
struct Cli {
    /// JSON request file; flags override its keys
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ZetaArgs {
    /// Base field: q, quad:<d> or external:<path>
    #[arg(long)]
    field: Option<String>,
    /// Largest j in ζ_F(1-2j)
    #[arg(long)]
    jmax: Option<u32>,
}

#[derive(Args, Debug)]
struct EulerArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// A single signature class, e.g. "2,0;1,1"
    #[arg(long)]
    signature: Option<String>,
    /// Also run the numeric adelic cross-check with this many series terms
    #[arg(long)]
    adelic_terms: Option<u64>,
}

#[derive(Args, Debug)]
struct GenusArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Even weights k for dim S_k
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Inclusive range of integer levels, a..b
    #[arg(long)]
    levels: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Special values ζ_F(1-2j)
    Zeta(ZetaArgs),
    /// Lefschetz number of the involution
    Lefschetz(ProblemArgs),
    /// Euler characteristics of the fixed components
    EulerChar(EulerArgs),
    /// Index of the principal congruence subgroup
    Index(ProblemArgs),
    /// Genus of the Shimura curve and dimensions of cusp forms
    Genus(GenusArgs),
    /// One row per integer level
    Table(TableArgs),
    /// Run the oracle and invariant suites
    Verify {
        /// Only suites whose name starts with this
        #[arg(long)]
        suite: Option<String>,
    },
}

fn load(cli: &Cli) -> Result<RequestConfig, CliError> {
    match &cli.config {
        Some(path) => RequestConfig::load(path),
        None => Ok(RequestConfig::default()),
    }
}

fn output(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Failed(e.to_string())),
    }
}

fn run_verify(
    suite: Option<&str>,
    format: Format,
    out: Option<&PathBuf>,
) -> Result<bool, CliError> {
    if let Some(name) = suite {
        if !verify::SUITES.iter().any(|(s, _)| s.starts_with(name)) {
            let known: Vec<_> = verify::SUITES.iter().map(|(s, _)| *s).collect();
            return Err(CliError::Usage(format!(
                "unknown suite {name:?}; known suites: {}",
                known.join(", ")
            )));
        }
    }
    let reports = verify::run(suite);
    let ok = reports.iter().all(|r| r.failed == 0);
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&reports)
                .map_err(|e| CliError::Failed(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            for r in &reports {
                let status = if r.failed == 0 { "PASS" } else { "FAIL" };
                s += &format!(
                    "{status} {:<11} {} passed, {} failed\n",
                    r.name, r.passed, r.failed
                );
                for f in &r.failures {
                    s += &format!("    {}: {f}\n", r.name);
                }
            }
            s
        }
    };
    output(&text, out)?;
    Ok(ok)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let mut cfg = load(&cli)?;
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let payload: Payload = match &cli.command {
        Command::Zeta(a) => {
            if let Some(f) = &a.field {
                cfg.field = Some(request::FieldJson::Spec(f.clone()));
            }
            cfg.jmax = a.jmax.or(cfg.jmax);
            commands::zeta(&cfg)?
        }
        Command::Lefschetz(p) => commands::lefschetz(&cfg.overlay(p))?,
        Command::EulerChar(a) => {
            let mut cfg = cfg.overlay(&a.problem);
            cfg.signature = a.signature.clone().or(cfg.signature);
            cfg.adelic_terms = a.adelic_terms.or(cfg.adelic_terms);
            commands::euler_char(&cfg)?
        }
        Command::Index(p) => commands::index(&cfg.overlay(p))?,
        Command::Genus(a) => {
            let mut cfg = cfg.overlay(&a.problem);
            cfg.weights = a.weights.clone().or(cfg.weights);
            commands::genus(&cfg)?
        }
        Command::Table(a) => {
            let mut cfg = cfg.overlay(&a.problem);
            cfg.levels = a.levels.clone().or(cfg.levels);
            commands::table(&cfg)?
        }
        Command::Verify { suite } => {
            // Human-readable summary unless JSON is asked for explicitly.
            let format = cli.format.or(cfg.format).unwrap_or(Format::Csv);
            let ok = run_verify(suite.as_deref(), format, cli.out.as_ref())?;
            return Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            });
        }
    };
    output(&render(&payload, format)?, cli.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
