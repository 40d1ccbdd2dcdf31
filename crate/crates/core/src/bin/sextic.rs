use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use elliptic_sextic::report::{
    dump_equations, knormality_for, parse_checks, parse_tau, run, EquationSet, RunConfig, Variety,
};
use elliptic_sextic::Result;

#[derive(Parser)]
#[command(
    name = "sextic",
    about = "Verify the equations of an elliptic normal sextic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Lattice parameter as RE,IM.
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    /// key = value file applied before the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the check groups and write a JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Relative singular-value cut.
        #[arg(long)]
        tol: Option<f64>,
        /// Comma-separated check groups (default: all).
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock time per group.
        #[arg(long)]
        timings: bool,
    },
    /// Write the closed-form quadrics or secant cubics.
    DumpEquations {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = ["quadrics", "cubics"])]
        what: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the k-normality table of the sextic or a projection.
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = ["c6", "cp", "cpq"])]
        variety: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        degrees: Vec<usize>,
    },
}

fn config(common: &Common) -> Result<RunConfig> {
    let mut cfg = RunConfig::default().with_env()?;
    if let Some(path) = &common.config {
        cfg.apply_file_text(&std::fs::read_to_string(path)?)?;
    }
    if let Some(t) = &common.tau {
        cfg.tau = parse_tau(t)?;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(s) = common.samples {
        cfg.samples = s;
    }
    Ok(cfg)
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            common,
            tol,
            checks,
            out,
            timings,
        } => {
            let mut cfg = config(&common)?;
            if let Some(t) = tol {
                cfg.rel_tol = t;
            }
            if let Some(c) = checks {
                cfg.checks = parse_checks(&c)?;
            }
            if out.is_some() {
                cfg.output_path = out;
            }
            cfg.timings |= timings;
            let report = run(&cfg)?;
            print!("{}", report.table());
            if let Some(p) = &cfg.output_path {
                std::fs::write(p, report.to_json()?)?;
            }
            Ok(report.passed())
        }
        Command::DumpEquations { common, what, out } => {
            let cfg = config(&common)?;
            let what: EquationSet = what.parse()?;
            write_or_print(out.as_ref(), &dump_equations(&cfg, what)?)?;
            Ok(true)
        }
        Command::Table {
            common,
            variety,
            degrees,
        } => {
            let cfg = config(&common)?;
            let variety: Variety = variety.parse()?;
            let rows = knormality_for(&cfg, variety, &degrees)?;
            println!(
                "{:<8} {:>6} {:>6} {:>8} {:>12}  pass",
                "variety", "degree", "dim", "expected", "sv_gap"
            );
            for r in &rows {
                println!(
                    "{:<8} {:>6} {:>6} {:>8} {:>12.3e}  {}",
                    r.variety, r.degree, r.dim, r.expected, r.sv_gap, r.pass
                );
            }
            println!("{}", serde_json::to_string(&rows)?);
            Ok(rows.iter().all(|r| r.pass))
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
