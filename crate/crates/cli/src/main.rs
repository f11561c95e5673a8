use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use umbral_core::config::{OperatorSpec, RunConfig};
use umbral_core::error::Error;

mod commands;

#[derive(Parser)]
#[command(
    name = "umbral",
    version,
    about = "Exact psi-umbral and Q-umbral operator calculus"
)]
struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working degree N.
    #[arg(long, global = true)]
    degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Family, operator and `S` selection shared by the subcommands.
#[derive(Args, Clone, Debug, Default)]
pub struct Select {
    /// `classical`, `q:2`, `fibonacci`, `hyperbolic`, `custom:1,3/2,...`; repeatable.
    #[arg(long = "family")]
    families: Vec<String>,
    /// Builtin name, `series:c0,c1,...`, `columns:p0;p1;...` or a JSON literal.
    #[arg(long)]
    operator: Option<String>,
    /// Coefficients of `S` as a series in partial_psi, comma separated.
    #[arg(long)]
    s: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Basic sequence of Q, or the Sheffer sequence of (Q, S).
    Sequence(Select),
    /// Run the verification suites.
    Verify {
        #[command(flatten)]
        select: Select,
        /// Suite name; repeatable. Default: every suite.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Perturb the partial_psi-basic sequence: `n,i,delta` adds delta x^i to p_n.
        #[arg(long)]
        perturb: Option<String>,
    },
    /// Expand an operator in the dual pair {Q, R}.
    Expand {
        #[command(flatten)]
        select: Select,
        /// The operator to expand.
        #[arg(long, default_value = "id")]
        target: String,
        #[arg(long, value_enum, default_value_t = Raiser::Multiplication)]
        raiser: Raiser,
    },
    /// Decide whether an operator is a series in some partial_psi.
    Detect(Select),
    /// Antiderivative of a polynomial.
    Integrate {
        #[command(flatten)]
        select: Select,
        /// Polynomial such as `1 + 2*x^3`.
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Integral::Psi)]
        kind: Integral,
    },
    /// Star products and Poisson tables.
    Star {
        #[command(flatten)]
        select: Select,
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        /// Poisson parameter lambda.
        #[arg(long, conflicts_with = "left")]
        poisson: Option<String>,
        /// Largest m of the Poisson table.
        #[arg(long, default_value_t = 4)]
        m: usize,
    },
    /// Spectral operator of the Sheffer sequence of (Q, S).
    Spectral(Select),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Raiser {
    /// Multiplication by x.
    Multiplication,
    /// The dual operator of Q.
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Integral {
    /// Inverse of partial_psi.
    Psi,
    /// Jackson integral of a q-deformed family.
    Q,
    /// R-integral of an r_series family.
    R,
}

fn load_config(cli: &Cli, select: &Select) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };
    if !select.families.is_empty() {
        cfg.families = select
            .families
            .iter()
            .map(|f| umbral_core::config::FamilySpec::Short(f.clone()))
            .collect();
    }
    if let Some(op) = &select.operator {
        cfg.operator = Some(op.parse::<OperatorSpec>()?);
    }
    if let Some(s) = &select.s {
        cfg.s = Some(s.split(',').map(|c| c.trim().to_string()).collect());
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let select = match &cli.command {
        Command::Sequence(s) | Command::Detect(s) | Command::Spectral(s) => s,
        Command::Verify { select, .. }
        | Command::Expand { select, .. }
        | Command::Integrate { select, .. }
        | Command::Star { select, .. } => select,
    };
    let mut cfg = load_config(cli, select)?;
    let single = !matches!(cli.command, Command::Verify { .. });
    if single && cfg.families.is_empty() {
        cfg.families
            .push(umbral_core::config::FamilySpec::Short("classical".into()));
    }
    if let Command::Verify {
        suites, perturb, ..
    } = &cli.command
    {
        if !suites.is_empty() {
            cfg.suites = suites.clone();
        }
        if let Some(p) = perturb {
            cfg.perturb = Some(commands::parse_perturbation(p)?);
        }
    }
    let resolved = cfg.resolve(cli.degree, cli.seed)?;
    let f = cli.format;
    match &cli.command {
        Command::Sequence(_) => commands::sequence(&resolved, f).map(|o| (o, true)),
        Command::Verify { .. } => commands::verify(&resolved, f),
        Command::Expand { target, raiser, .. } => {
            commands::expand(&resolved, &target.parse()?, *raiser, f).map(|o| (o, true))
        }
        Command::Detect(_) => commands::detect(&resolved, f).map(|o| (o, true)),
        Command::Integrate { poly, kind, .. } => {
            commands::integrate(&resolved, poly, *kind, f).map(|o| (o, true))
        }
        Command::Star {
            left,
            right,
            poisson,
            m,
            ..
        } => commands::star(
            &resolved,
            left.as_deref(),
            right.as_deref(),
            poisson.as_deref(),
            *m,
            f,
        )
        .map(|o| (o, true)),
        Command::Spectral(_) => commands::spectral(&resolved, f).map(|o| (o, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, ok)) => {
            let written = match &cli.out {
                Some(path) => {
                    fs::write(path, &output).with_context(|| format!("writing {}", path.display()))
                }
                None => {
                    print!("{output}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            match e.downcast_ref::<Error>() {
                Some(inner) => eprintln!("error[{}]: {e:#}", inner.name()),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}
