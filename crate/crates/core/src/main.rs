use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qnlimit::budget::{run_budget, run_validation, BudgetRequest, Curve, OutputFormat};
use qnlimit::constants::{DEFAULT_F_MAX_HZ, DEFAULT_F_MIN_HZ, DEFAULT_POINTS};
use qnlimit::{Band, Error, IfoConfig, Interferometer};

/// Quantum-noise budgets of gravitational-wave interferometers under optical loss.
#[derive(Parser)]
#[command(name = "qnlimit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate noise curves on a log-spaced frequency grid.
    Budget(BudgetArgs),
    /// Run the cross-validation suite; exits 1 if any check fails.
    Validate(ValidateArgs),
    /// Print the default configuration as JSON.
    PrintConfigTemplate,
}

#[derive(Args)]
struct BandArgs {
    /// JSON configuration; defaults to the built-in design point.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_F_MIN_HZ)]
    fmin: f64,
    #[arg(long, default_value_t = DEFAULT_F_MAX_HZ)]
    fmax: f64,
}

#[derive(Args)]
struct BudgetArgs {
    #[command(flatten)]
    band: BandArgs,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    points: usize,
    /// Comma-separated curve names, e.g. `sql,loss_limit_a4,full_fixed_zeta(1.2)`.
    #[arg(long, default_value = "sql,loss_limit_a4,full_optimal")]
    curves: String,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Emit amplitude spectral density instead of power spectral density.
    #[arg(long)]
    asd: bool,
    /// Accepted for interface uniformity; budgets are deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    band: BandArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report as JSON to this path as well.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn budget(args: BudgetArgs) -> Result<(), Error> {
    let req = BudgetRequest {
        config: args.band.config,
        band: Band::new(args.band.fmin, args.band.fmax)?,
        points: args.points,
        curves: Curve::parse_list(&args.curves)?,
        out: args.out,
        format: args.format.parse::<OutputFormat>()?,
        asd: args.asd,
    };
    run_budget(&req).map(drop)
}

fn validate(args: ValidateArgs) -> Result<bool, Error> {
    let cfg = match &args.band.config {
        Some(path) => IfoConfig::from_json(&std::fs::read_to_string(path)?)?,
        None => IfoConfig::aligo_like(),
    };
    let ifo = Interferometer::new(cfg, Band::new(args.band.fmin, args.band.fmax)?)?;
    let report = run_validation(&ifo, args.seed)?;
    print!("{report}");
    if let Some(path) = args.out {
        std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Budget(args) => budget(args).map(|_| true),
        Command::Validate(args) => validate(args),
        Command::PrintConfigTemplate => {
            println!("{}", IfoConfig::aligo_like().to_json_pretty());
            Ok(true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
