//! Thin CLI over the library: every verification is a subcommand that runs
//! a seeded config and writes a machine-readable report. Exit status is
//! nonzero iff any row fails.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use projave::harness::{read_polytope_fixture, run, Report, RunConfig};

#[derive(Parser)]
#[command(name = "projave", version, about = "projection-averaged Sobolev functional experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration (seed mandatory)
    #[arg(long)]
    config: PathBuf,
    /// Override the config seed
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the exact constants and their p = 1 consistency identities
    Constants(RunArgs),
    /// Sharpness ratios E_{i,p}(f) / (c_{n,p} ||f||_{p*}) over a profile grid
    VerifySobolev(RunArgs),
    /// The monotone chain E_{n,p} >= ... >= E_{1,p} with common random numbers
    Chain(RunArgs),
    /// Petty products |Pi_p° K| |K|^{(n-p)/p} against the sharp bound
    Petty(RunArgs),
    /// Grassmannian comparison of projected surface integrals and the
    /// rotational-average residuals
    GeomIneq(RunArgs),
    /// Bounded-variation functionals of characteristic functions
    Bv(RunArgs),
    /// Validate a polytope fixture file and print its summary
    ValidateFixture {
        #[arg(long)]
        path: PathBuf,
    },
}

fn execute(args: &RunArgs, expected: &str) -> Result<Report, String> {
    let mut config = RunConfig::from_path(&args.config).map_err(|e| e.to_string())?;
    if config.command_name() != expected {
        return Err(format!(
            "config command '{}' does not match subcommand '{expected}'",
            config.command_name()
        ));
    }
    if let Some(seed) = args.seed {
        config.set_seed(seed);
    }
    run(&config).map_err(|e| e.to_string())
}

fn emit(report: &Report, args: &RunArgs) -> Result<(), String> {
    let text = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json().map_err(|e| e.to_string())?,
    };
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string())?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, expected) = match &cli.command {
        Command::Constants(a) => (a, "constants"),
        Command::VerifySobolev(a) => (a, "verify-sobolev"),
        Command::Chain(a) => (a, "chain"),
        Command::Petty(a) => (a, "petty"),
        Command::GeomIneq(a) => (a, "geom-ineq"),
        Command::Bv(a) => (a, "bv"),
        Command::ValidateFixture { path } => {
            return match read_polytope_fixture(path) {
                Ok(polytope) => {
                    let sam = polytope
                        .surface_area_measure()
                        .map(|m| m.is_even())
                        .unwrap_or(false);
                    println!(
                        "valid: dim={} vertices={} facets={} volume={} surface={} origin_symmetric={}",
                        polytope.dim(),
                        polytope.n_vertices(),
                        polytope.facets().len(),
                        polytope.volume(),
                        polytope.total_surface_area(),
                        sam
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("invalid fixture: {e}");
                    ExitCode::from(2)
                }
            };
        }
    };
    let report = match execute(args, expected) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = emit(&report, args) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if report.any_failure() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
