use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qheat_cli::params::parse_assignment;
use qheat_cli::{list, run, CliError, Format, RunRequest};

#[derive(Parser)]
#[command(name = "qheat", version, about = "Reproducible quantum heat-engine experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its dataset.
    Run {
        /// Experiment id (see `qheat list`).
        #[arg(short, long)]
        experiment: String,
        /// Parameter override, repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// TOML file with an [experiment-id] table of parameters.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// List experiments and their parameters.
    List {
        #[arg(long, default_value = "csv", hide_default_value = true)]
        format: Format,
    },
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { experiment, set, config, format, out } => {
            let overrides = set.iter().map(|s| parse_assignment(s)).collect::<Result<Vec<_>, _>>()?;
            let text = run(&RunRequest { experiment, overrides, config, format })?;
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::List { format } => print!("{}", list(format)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qheat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
