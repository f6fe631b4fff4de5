//! `aelgate`: command-line front end for the simulation toolkit.

mod commands;
mod error;
mod output;
mod params;
mod scenario;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, CliResult};
use crate::scenario::{prepare, CommandName, FigureName, Format, Scenario};

#[derive(Parser)]
#[command(name = "aelgate", version, about = "Transport, interaction and gate-fidelity calculations for two-electron atoms in tweezers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Global {
    /// yb173 or sr87; the default depends on the command.
    #[arg(long, global = true)]
    species: Option<String>,
    /// Output file; stdout if absent (figures default to <name>.csv).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Omit the timestamped metadata line.
    #[arg(long, global = true)]
    no_header: bool,
    /// Worker threads for parameter sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct Overrides {
    /// Physics parameters as `--key value`, e.g. `--omega_tw_khz 103`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, num_args = 0.., value_name = "--KEY VALUE")]
    rest: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Transport infidelity against ramp duration.
    Transport(Overrides),
    /// Singlet/triplet interaction energies in one tweezer.
    Busch(Overrides),
    /// Optical-switch light shift and scattering rates.
    Rates(Overrides),
    /// Density-matrix trajectory of SWAP gates.
    Gate(Overrides),
    /// Infidelity after N SWAP gates.
    RepeatSwap(Overrides),
    /// Infidelity after n gates against the switch shift.
    VosScan(Overrides),
    /// Sideband-cooling estimates.
    Cooling(Overrides),
    /// Gate infidelity against initial motional excitation.
    ImperfectCooling(Overrides),
    /// Reproduce a figure with its default parameters.
    Figure {
        #[arg(value_enum)]
        name: FigureName,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Check a scenario file without computing anything.
    Validate { scenario: PathBuf },
    /// List the parameters of a command with their defaults.
    Keys {
        /// Command name, e.g. gate or vos-scan.
        command: String,
        /// Figure name when the command is `figure`.
        #[arg(value_enum)]
        figure: Option<FigureName>,
    },
}

fn scenario_from(cli: &Cli) -> CliResult<Option<Scenario>> {
    let (mut s, rest) = match &cli.command {
        Cmd::Validate { scenario } => {
            let s = Scenario::read(scenario)?;
            prepare(&s)?;
            println!("ok");
            return Ok(None);
        }
        Cmd::Keys { command, figure } => {
            let mut s = Scenario::new(
                serde_json::from_value(serde_json::Value::String(command.clone()))
                    .map_err(|_| CliError::Validation(format!("unknown command '{command}'")))?,
            );
            s.figure = *figure;
            s.species = cli.global.species.clone();
            let prep = prepare(&s)?;
            let mut text = String::new();
            for spec in prep.params.specs() {
                text += &format!("--{:<22} {:<14} {}\n", spec.key, spec.default.to_string(), spec.help);
            }
            emit(text.as_bytes())?;
            return Ok(None);
        }
        Cmd::Run { scenario, overrides } => (Scenario::read(scenario)?, &overrides.rest),
        Cmd::Figure { name, overrides } => {
            let mut s = Scenario::new(CommandName::Figure);
            s.figure = Some(*name);
            (s, &overrides.rest)
        }
        Cmd::Transport(o) => (Scenario::new(CommandName::Transport), &o.rest),
        Cmd::Busch(o) => (Scenario::new(CommandName::Busch), &o.rest),
        Cmd::Rates(o) => (Scenario::new(CommandName::Rates), &o.rest),
        Cmd::Gate(o) => (Scenario::new(CommandName::Gate), &o.rest),
        Cmd::RepeatSwap(o) => (Scenario::new(CommandName::RepeatSwap), &o.rest),
        Cmd::VosScan(o) => (Scenario::new(CommandName::VosScan), &o.rest),
        Cmd::Cooling(o) => (Scenario::new(CommandName::Cooling), &o.rest),
        Cmd::ImperfectCooling(o) => (Scenario::new(CommandName::ImperfectCooling), &o.rest),
    };
    let g = &cli.global;
    if g.species.is_some() {
        s.species = g.species.clone();
    }
    if g.out.is_some() {
        s.output = g.out.clone();
    }
    if g.format.is_some() {
        s.format = g.format;
    }
    s.no_header |= g.no_header;
    s.apply_tokens(rest)?;
    Ok(Some(s))
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(n) = cli.global.jobs {
        if n == 0 {
            return Err(CliError::Validation("jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Validation(format!("thread pool: {e}")))?;
    }
    let Some(s) = scenario_from(&cli)? else {
        return Ok(());
    };
    let prep = prepare(&s)?;
    let format = s.format.unwrap_or_default();
    let out = s.output.clone().or_else(|| {
        prep.figure.map(|f| {
            PathBuf::from(format!("{}.{}", f.as_str(), if format == Format::Json { "json" } else { "csv" }))
        })
    });
    let result = commands::execute(&prep)?;
    let header = (!s.no_header).then(output::metadata_line);
    let body = output::render(&result.table, format, header.as_deref())?;
    match &out {
        Some(path) => {
            output::write_file(path, &body)?;
            let side = output::sidecar(&prep, &result.table, &result.model, header.as_deref())?;
            output::write_file(&output::sidecar_path(path), &side)?;
            eprintln!("wrote {} ({} rows)", path.display(), result.table.rows.len());
        }
        None => {
            emit(&body)?;
        }
    }
    Ok(())
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(bytes: &[u8]) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(bytes).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io("stdout", e)),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
