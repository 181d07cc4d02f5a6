//! `gyrokit`: verify gyrogroup models, cosets, and dyadic prenorm metrics.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure,
//! 2 on an input error.

mod ball;
mod finite;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use gyrokit::{Einstein2, Einstein3, EinsteinModel, FiniteTable, MobiusModel, Report, SampleSpec, SubsetSpec};

#[derive(Parser, Debug)]
#[command(name = "gyrokit", version, about = "Gyrogroup models, cosets, and dyadic prenorm metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Axioms G1–G4 and the derived identities.
    Check,
    /// Derived identities only.
    Identities,
    /// Subgyrogroup tests and the left coset partition of `--subset`.
    Cosets,
    /// Prenorm, ρ and d from `--chain`; quotient metric with `--quotient`.
    Metric,
    /// `a ⊕ (b ⊕ V) = (a ⊕ b) ⊕ V` for `a, b ∈ W` (`--within`, default V).
    Microassoc,
    /// Admissible chain shrunk from the neighborhood `--subset`.
    Hull,
    /// Diagonal intersection of the `--chain` files.
    Intersect,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// `einstein`, `mobius`, or `table:<path>`.
    #[arg(long, global = true)]
    pub model: Option<String>,
    /// Einstein dimension.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub dim: u8,
    /// Speed bound of the Einstein model.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub c: f64,
    /// `0,2` on tables; `axis:x` or `ball:0.5` on ball models.
    #[arg(long, global = true)]
    pub subset: Option<SubsetSpec>,
    /// The set W for `microassoc`.
    #[arg(long, global = true)]
    pub within: Option<SubsetSpec>,
    /// Chain file; repeat for `intersect`.
    #[arg(long, global = true)]
    pub chain: Vec<PathBuf>,
    #[arg(long, global = true, default_value_t = 10)]
    pub depth: u32,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Componentwise tolerance on ball models.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub eps: f64,
    /// Also write the report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Element pairs `x:y`, separated by `;` (or `,` on tables).
    #[arg(long, global = true)]
    pub pairs: Option<String>,
    /// Add the quotient metric over the cosets of `--subset` (default: the tail).
    #[arg(long, global = true)]
    pub quotient: bool,
}

impl Opts {
    pub fn spec(&self) -> SampleSpec {
        SampleSpec::new(self.samples, self.seed)
    }
}

enum Model {
    Table(FiniteTable),
    Einstein2(Einstein2),
    Einstein3(Einstein3),
    Mobius(MobiusModel),
}

fn load_model(cmd: Command, opts: &Opts) -> anyhow::Result<(String, Model)> {
    let Some(name) = opts.model.clone() else { bail!("--model is required") };
    let model = match name.as_str() {
        "einstein" if opts.dim == 2 => Model::Einstein2(EinsteinModel::new(opts.c, opts.eps)?),
        "einstein" => Model::Einstein3(EinsteinModel::new(opts.c, opts.eps)?),
        "mobius" => {
            if opts.c != 1.0 {
                bail!("the Möbius disk has c = 1");
            }
            Model::Mobius(MobiusModel::new(opts.eps)?)
        }
        other => {
            let Some(path) = other.strip_prefix("table:") else {
                bail!("unknown model {other:?}; expected einstein, mobius, or table:<path>")
            };
            let bytes = std::fs::read(path).with_context(|| format!("reading {path}"))?;
            // broken tables are loadable for inspection by the axiom commands
            let t = match cmd {
                Command::Check | Command::Identities => FiniteTable::table_load_unvalidated(&bytes),
                _ => FiniteTable::table_load(&bytes),
            };
            Model::Table(t.with_context(|| format!("loading {path}"))?)
        }
    };
    Ok((name, model))
}

fn run(cmd: Command, opts: &Opts) -> anyhow::Result<(String, Report)> {
    let (name, model) = load_model(cmd, opts)?;
    let report = match &model {
        Model::Table(m) => finite::run(m, cmd, opts)?,
        Model::Einstein2(m) => ball::run(m, m.law(), cmd, opts)?,
        Model::Einstein3(m) => ball::run(m, m.law(), cmd, opts)?,
        Model::Mobius(m) => ball::run(m, m.law(), cmd, opts)?,
    };
    Ok((name, report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &cli.opts) {
        Ok((name, mut report)) => {
            report.stamp(&name, cli.opts.seed);
            let report = report.sorted();
            let text = report.to_json_lines();
            print!("{text}");
            if let Some(path) = &cli.opts.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
