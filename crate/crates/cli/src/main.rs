use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use s1_yamabe_cli::commands::{self, Common, EllArg, Method};
use s1_yamabe_cli::error::{CliError, EXIT_USAGE};
use s1_yamabe_cli::report::Report;

/// Equivariant Yamabe functionals of circle bundles over 2-orbifolds.
#[derive(Debug, Parser)]
#[command(name = "s1yamabe", version)]
struct Cli {
    /// Print the report's tables as CSV instead of the report.
    #[arg(long, global = true)]
    csv: bool,
    /// Write the report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for randomized starting points; recorded in the report.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Relative tolerance (quadrature, or minimizer stopping rule).
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chern number and Euler characteristic of CP^1(m1, m2).
    Invariants {
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        m2: u64,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
    },
    /// Upper bounds for a weight pair, a model, or the Hebey–Vaugon bound.
    Bound {
        #[arg(long, requires = "m2", conflicts_with_all = ["model", "hebey_vaugon"])]
        m1: Option<u64>,
        #[arg(long, requires = "m1")]
        m2: Option<u64>,
        #[arg(long, value_name = "PATH", conflicts_with = "hebey_vaugon")]
        model: Option<PathBuf>,
        #[arg(long)]
        hebey_vaugon: bool,
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Minimal orbit cardinality; omit for free actions.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Einstein–Hilbert functional of a model, at its own or a given fibre length.
    Functional {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        /// `VALUE` or `scan:lo:hi:n` (log-spaced).
        #[arg(long)]
        ell: Option<EllArg>,
    },
    /// Upper bound for the invariant Yamabe constant by descent.
    Minimize {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long, default_value_t = 2000)]
        max_iterations: usize,
    },
    /// Closed-form scan over constant fibre lengths.
    Scan {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        #[arg(long)]
        ell: Option<EllArg>,
        /// Also tabulate the collapse bounds (needs chi <= 0).
        #[arg(long)]
        collapse: bool,
    },
    /// Conformal uniformization of the base to positive curvature.
    Laplace {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
    },
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let common = Common {
        seed: cli.seed,
        tol: cli.tol,
    };
    match &cli.command {
        Command::Invariants { m1, m2, method } => commands::invariants(*m1, *m2, *method, &common),
        Command::Bound {
            m1,
            m2,
            model,
            hebey_vaugon,
            n,
            k,
        } => match (m1, m2, model, hebey_vaugon) {
            (_, _, _, true) => commands::bound_hebey_vaugon(*n, *k, &common),
            (Some(a), Some(b), None, false) => commands::bound_pair(*a, *b, &common),
            (None, None, Some(p), false) => commands::bound_model(p, &common),
            _ => Err(CliError::usage(
                "bound needs --m1/--m2, --model, or --hebey-vaugon",
            )),
        },
        Command::Functional { model, ell } => commands::functional(model, *ell, &common),
        Command::Minimize {
            model,
            grid,
            max_iterations,
        } => commands::minimize(model, *grid, *max_iterations, &common),
        Command::Scan {
            model,
            ell,
            collapse,
        } => commands::scan(model, *ell, *collapse, &common),
        Command::Laplace { model } => commands::laplace(model, &common),
    }
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let text = report.to_text()?;
    if let Some(path) = &cli.out {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut stdout = std::io::stdout().lock();
    if cli.csv {
        for (i, t) in report.tables.iter().enumerate() {
            if i > 0 {
                stdout.write_all(b"\r\n")?;
            }
            stdout.write_all(t.to_csv()?.as_bytes())?;
        }
    } else if cli.out.is_none() {
        stdout.write_all(text.as_bytes())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code as u8);
        }
    };
    match emit(&cli, &report) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
