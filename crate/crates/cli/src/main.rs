use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use casimir_cli::{render, run, CliError, Format, Overrides, RunConfig};
use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

/// Casimir force, gradient, calibration force and oscillator shift for an
/// elliptic cylindrical lens above a plate.
#[derive(Debug, Parser)]
#[command(name = "casimir-lens", version)]
struct Args {
    /// Run configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output file; overrides the config. Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format; overrides the config.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Relative tolerance; overrides the config.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Worker threads for sweeps.
    #[arg(long)]
    threads: Option<usize>,
    /// Suppress warnings on stderr.
    #[arg(long)]
    quiet: bool,
}

fn execute(args: &Args) -> Result<u8, CliError> {
    if args.threads == Some(0) {
        return Err(CliError::Config("--threads must be at least 1".into()));
    }
    let overrides = Overrides {
        output: args.output.clone(),
        format: args.format.map(|f| match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }),
        tolerance: args.tolerance,
    };
    let cfg = RunConfig::load(&args.config)?.resolve(&overrides)?;
    let out = run(&cfg, args.threads)?;
    for w in &out.warnings {
        log::warn!("{w}");
    }
    if out.unconverged > 0 {
        log::error!("{} point(s) did not converge; their rows hold partial values", out.unconverged);
    }
    let bytes = render(&cfg, &out)?;
    match &cfg.output.path {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(out.exit_code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let level = if args.quiet { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match execute(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
