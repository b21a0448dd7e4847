//! Command-line front end: build structures, run verification checks, export graphs.
//!
//! Exit codes: 0 pass, 1 counterexample or failed check, 2 usage or input error,
//! 3 budget exceeded.

mod structures;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use finrep::{parse_field_spec, Budget, Field, FieldCtx};

#[derive(Parser)]
#[command(name = "finrep", version, about = "Finite geometries X(n,t,q), their models, and checks between them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an incidence structure and print its counts.
    Build {
        kind: structures::Kind,
        #[command(flatten)]
        params: Params,
    },
    /// Run a check; exit 0 when it holds and 1 with a counterexample when it does not.
    Verify {
        check: verify::Check,
        #[command(flatten)]
        params: Params,
    },
    /// Write a structure or graph as JSON or DIMACS.
    Export {
        kind: structures::ExportKind,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dimacs,
}

#[derive(Args, Clone, Debug)]
pub struct Params {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub t: Option<u32>,
    /// Order of the base field; the default polynomial is used.
    #[arg(long)]
    pub q: Option<u64>,
    /// Base field as `p^h/poly`, `p^h` or `q`, e.g. `2^2/x2+x+1`.
    #[arg(long)]
    pub field: Option<String>,
    /// Where to write the JSON report or the exported file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Upper bound on enumerated objects or search nodes.
    #[arg(long)]
    pub budget: Option<u128>,
    /// Seed for sampled diagnostics.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of samples for sampled diagnostics.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// A point set file (schema finrep.pointset/1).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Structure a check runs on, where there is a choice.
    #[arg(long, value_enum)]
    pub on: Option<structures::Kind>,
}

impl Params {
    pub fn n(&self) -> anyhow::Result<usize> {
        self.n.map(|x| x as usize).ok_or_else(|| usage("--n is required"))
    }

    pub fn t(&self) -> anyhow::Result<usize> {
        self.t.map(|x| x as usize).ok_or_else(|| usage("--t is required"))
    }

    pub fn field(&self) -> anyhow::Result<Field> {
        match (&self.field, self.q) {
            (Some(spec), q) => {
                let f = parse_field_spec(spec)?;
                if let Some(q) = q {
                    if q != f.order() as u64 {
                        bail!(usage(&format!("--q {q} disagrees with --field {spec}")));
                    }
                }
                Ok(f)
            }
            (None, Some(q)) => Ok(FieldCtx::gf(q)?),
            (None, None) => Err(usage("one of --q or --field is required")),
        }
    }

    pub fn budget(&self) -> Budget {
        self.budget.map(Budget::new).unwrap_or_default()
    }

    pub fn read_input(&self) -> anyhow::Result<Option<finrep::pointsets::PointSet>> {
        let Some(path) = &self.input else { return Ok(None) };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(Some(finrep::pointsets::PointSet::from_json(&value)?))
    }
}

/// Marks an error as a usage error (exit code 2).
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: &str) -> anyhow::Error {
    anyhow!(Usage(msg.to_string()))
}

pub fn write_output(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<finrep::Error>() {
        Some(finrep::Error::BudgetExceeded { .. }) => 3,
        Some(finrep::Error::Verification(_)) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Build { kind, params } => {
            let g = structures::build(kind, &params)?;
            if let Some(path) = &params.out {
                let text = match params.format {
                    Format::Json => serde_json::to_string_pretty(&g.to_json())? + "\n",
                    Format::Dimacs => g.to_dimacs(),
                };
                write_output(Some(path), &text)?;
            }
            println!("{}", g.summary());
            Ok(true)
        }
        Command::Export { kind, params } => {
            let text = structures::export(kind, &params)?;
            write_output(params.out.as_ref(), &text)?;
            Ok(true)
        }
        Command::Verify { check, params } => {
            let report = verify::run(check, &params)?;
            print!("{}", report.key_values());
            if let Some(path) = &params.out {
                write_output(Some(path), &(serde_json::to_string_pretty(&report.to_json())? + "\n"))?;
            }
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            let code = exit_code(&err);
            let kind = match code {
                1 => "counterexample",
                3 => "budget",
                _ => "usage",
            };
            eprintln!("error[{kind}]: {err:#}");
            ExitCode::from(code)
        }
    }
}
