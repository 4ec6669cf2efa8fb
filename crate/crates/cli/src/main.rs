use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lab2w::mpbessel::Tolerance;
use lab2w::xsection::BaselineKind;
use lab2w_cli::commands::{self, FnKind, Format, SpectrumOptions};
use lab2w_cli::error::{exit, CliError, CliResult};
use lab2w_cli::scenario::{load_scenario, ModeSpec};

/// Laser-assisted bremsstrahlung in two plane waves.
#[derive(Parser)]
#[command(name = "lab2w", version)]
struct Cli {
    /// Worker threads for spectrum evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaselineArg {
    Unit,
    BetheHeitler,
}

impl From<BaselineArg> for BaselineKind {
    fn from(b: BaselineArg) -> Self {
        match b {
            BaselineArg::Unit => BaselineKind::Unit,
            BaselineArg::BetheHeitler => BaselineKind::BetheHeitler,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify the scenario and print every deciding inequality.
    Regime {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Multiphoton weight spectrum, optionally scaled by a baseline cross section.
    Spectrum {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeSpec>,
        #[arg(long)]
        tail_tol: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "unit")]
        baseline: BaselineArg,
        /// Debug aid: stop at this shell radius.
        #[arg(long)]
        debug_max_radius: Option<i64>,
    },
    /// Check the sum rules (and the equal-frequency addition theorem).
    Sumcheck {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Debug aid: stop at this shell radius, exposing the deficit.
        #[arg(long)]
        debug_max_radius: Option<i64>,
    },
    /// Tabulate a special function over an index range.
    Fntable {
        #[arg(value_enum)]
        function: FnKind,
        /// Index range `a:b`.
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Second index range `a:b` for two-index functions.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        rp: String,
        /// Comma-separated arguments.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        args: Vec<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

fn run(cli: &Cli) -> CliResult<()> {
    let text = match &cli.command {
        Command::Regime { scenario } => commands::cmd_regime(&load_scenario(scenario)?, cli.format),
        Command::Spectrum { scenario, mode, tail_tol, tol, baseline, debug_max_radius } => {
            let opts = SpectrumOptions {
                mode: *mode,
                tail_tol: *tail_tol,
                tol: *tol,
                baseline: (*baseline).into(),
                max_radius: *debug_max_radius,
                format: cli.format,
            };
            commands::cmd_spectrum(&load_scenario(scenario)?, &opts)
        }
        Command::Sumcheck { scenario, tol, debug_max_radius } => {
            let report = commands::cmd_sumcheck(&load_scenario(scenario)?, *tol, *debug_max_radius)?;
            // The report is written even when a check fails.
            emit(cli, &report.render(cli.format))?;
            report.into_result()?;
            return Ok(());
        }
        Command::Fntable { function, r, rp, args, tol } => {
            let tol = Tolerance::new(*tol, Tolerance::default().max_terms)?;
            let (r, rp) = (commands::parse_range(r)?, commands::parse_range(rp)?);
            commands::cmd_fntable(*function, r, rp, args, &tol, cli.format)
        }
    }?;
    emit(cli, &text)
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => run(&cli),
    };
    match result {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("lab2w: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
