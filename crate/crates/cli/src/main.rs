mod commands;
mod diag;
mod repl;

use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use atomxr_core::intent::{provider_from_arg, Translator};
use atomxr_core::runtime::RuntimeConfig;
use atomxr_core::scene::read_spec;
use atomxr_core::session::Session;

use commands::{Failure, RunArgs};

/// Author, run and lint AtomScript scenes from the terminal.
#[derive(Debug, Parser)]
#[command(name = "atomxr", version)]
struct Cli {
    /// Model provider: offline, echo, fixtures:<path> or live.
    #[arg(long, global = true, default_value = "offline")]
    provider: String,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Interactive authoring loop (the default).
    Repl {
        /// Scene to start from.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Runtime config JSON.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Validate a script, play it against a scene and print the trace as JSONL.
    Run {
        file: PathBuf,
        /// Scene the script is added to; an empty scene when absent.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Player inputs, one JSON object per line.
        #[arg(long)]
        inputs: Option<PathBuf>,
        /// Runtime config JSON.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Ticks to simulate; 600 or the last input tick, whichever is later.
        #[arg(long)]
        ticks: Option<u64>,
        /// Write the trace here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the canonical form of a script.
    Fmt {
        file: PathBuf,
        /// Rewrite the file in place.
        #[arg(long)]
        write: bool,
    },
    /// Parse and validate a script without running it.
    Check { file: PathBuf },
    /// Rebuild the prompt-hash to completion map from an intent corpus.
    RecordFixtures {
        corpus: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn translator(provider: &str) -> Result<Arc<Translator>, Failure> {
    Ok(Arc::new(Translator::new(provider_from_arg(provider).map_err(Failure::usage)?)))
}

fn config_from(path: Option<&PathBuf>) -> Result<RuntimeConfig, Failure> {
    let Some(p) = path else { return Ok(RuntimeConfig::default()) };
    let text = std::fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    match cli.command.unwrap_or(Command::Repl { spec: None, config: None }) {
        Command::Repl { spec, config } => {
            let mut session = Session::new(translator(&cli.provider)?, config_from(config.as_ref())?);
            if let Some(p) = spec {
                session = session.with_spec(read_spec(&p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?);
            }
            let stdin = std::io::stdin();
            let prompt = stdin.is_terminal();
            repl::Repl::new(session).run(stdin.lock(), &mut out, prompt);
            Ok(())
        }
        Command::Run { file, spec, inputs, config, ticks, out: dest } => {
            commands::run(&mut out, &mut err, &RunArgs { file, spec, inputs, config, ticks, out: dest })
        }
        Command::Fmt { file, write } => commands::fmt(&mut out, &mut err, &file, write),
        Command::Check { file } => commands::check(&mut err, &file),
        Command::RecordFixtures { corpus, out: dest } => {
            commands::record_fixtures(&mut out, &corpus, dest.as_deref(), translator(&cli.provider)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::USAGE } else { commands::OK });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::from(commands::OK),
        Err(f) => {
            eprintln!("atomxr: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
