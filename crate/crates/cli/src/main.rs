use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qbg_cli::commands::{self, CliError, Options};
use qbg_cli::reproduce;
use qbg_cli::spec_file::{parse_spec, GameSpec};
use qbg_cli::sweep::{self, Axis};
use qbg_cli::{EXIT_MISMATCH, EXIT_USAGE};
use qbg_core::engine::MixingConvention;

/// Quantized Barro-Gordon policy game toolkit.
#[derive(Debug, Parser)]
#[command(name = "qbg", version)]
struct Cli {
    /// Emit CSV instead of aligned tables.
    #[arg(long, global = true)]
    csv: bool,

    /// Game specification file.
    #[arg(long, global = true, value_name = "PATH")]
    spec: Option<PathBuf>,

    /// Which operator each mixing weight applies (crossed or local).
    #[arg(long, global = true, default_value = "crossed")]
    convention: MixingConvention,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Payoff table, pure equilibria and dominated strategies.
    Classical,
    /// Closed-form quantum payoffs and the candidate's equilibrium report.
    Quantize,
    /// Every equilibrium region of the quantized game.
    Equilibria,
    /// Payoffs and equilibrium flags over a grid, as CSV.
    Sweep {
        /// `name=start:stop:steps` with name in p, q, beta_sq, gamma_sq, delta_sq.
        /// Give one or two; the first varies slowest.
        #[arg(long = "axis", required = true)]
        axes: Vec<Axis>,
    },
    /// Rederive the published results and compare them with the library.
    Reproduce {
        #[arg(long, hide = true, value_name = "CHECK")]
        inject_fault: Option<String>,
    },
}

fn load_spec(path: Option<&PathBuf>) -> Result<GameSpec, CliError> {
    let path = path.ok_or_else(|| CliError::Usage("this command needs --spec <path>".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_spec(&text)?)
}

fn run(cli: &Cli) -> Result<(String, u8), CliError> {
    let opts = Options {
        csv: cli.csv,
        convention: cli.convention,
    };
    let spec = || load_spec(cli.spec.as_ref());
    let out = match &cli.command {
        Command::Classical => commands::classical(&spec()?, &opts)?,
        Command::Quantize => commands::quantize(&spec()?, &opts)?,
        Command::Equilibria => commands::equilibria(&spec()?, &opts)?,
        Command::Sweep { axes } => sweep::sweep(&spec()?, &opts, axes)?,
        Command::Reproduce { inject_fault } => {
            if cli.convention != MixingConvention::default() {
                return Err(CliError::Usage("reproduce always uses the crossed convention".into()));
            }
            if let Some(name) = inject_fault {
                if !reproduce::is_anchor(name) {
                    return Err(CliError::Usage(format!("unknown check `{name}`")));
                }
            }
            let report = reproduce::reproduce(&reproduce::Options {
                inject_fault: inject_fault.clone(),
            });
            let text = report.render(cli.csv);
            if !report.passed() {
                eprintln!("reproduction mismatch: {}", report.failing().join(", "));
                return Ok((text, EXIT_MISMATCH as u8));
            }
            text
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
