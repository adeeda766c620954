use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use levkit::{exit_code, run_command, Command, RunConfig};
use levkit_core::mainterm::Backend;

#[derive(Parser)]
#[command(name = "levkit", version, about = "Levinson bounds and mollified moments of Dirichlet L-functions")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Run document (TOML, or the JSON config echo of a report).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    backend: Option<BackendArg>,
    /// Jet order in both shift variables.
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Optimizer evaluation budget.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Lower bound for the proportion of zeros on the critical line.
    Bound,
    /// Search mollifier coefficients for a larger bound.
    Optimize,
    /// Compare the numerical twisted second moment with its main term.
    VerifyMoment,
    /// Compare the arithmetic oracle with the analytic main term.
    SigmaOracle,
    /// Run the invariant suite.
    Selftest,
}

#[derive(ValueEnum, Clone, Copy)]
enum BackendArg {
    Exact,
    #[value(alias = "quadrature")]
    Quad,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot configure {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let rc = RunConfig {
        command: match cli.command {
            Cmd::Bound => Command::Bound,
            Cmd::Optimize => Command::Optimize,
            Cmd::VerifyMoment => Command::VerifyMoment,
            Cmd::SigmaOracle => Command::SigmaOracle,
            Cmd::Selftest => Command::Selftest,
        },
        config_path: cli.config,
        backend: cli.backend.map(|b| match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Quad => Backend::Quadrature,
        }),
        jet_order_override: cli.order,
        output_path: cli.out.clone(),
        seed: cli.seed,
        budget: cli.budget,
    };
    match run_command(&rc) {
        Ok(outcome) => {
            print!("{}", outcome.table);
            let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => println!("{text}"),
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(err) => {
            let doc = json!({ "error": { "category": err.category(), "message": err.to_string() } });
            eprintln!("{doc}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
