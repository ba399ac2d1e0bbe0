mod args;
mod commands;
mod golden;
mod record;
mod tables;

use args::{Cli, Command, Format};
use clap::Parser;
use record::{error_json, real, CliError, CliResult};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const THREADS_ENV: &str = "BANDLIMIT_THREADS";

fn thread_count(flag: Option<usize>) -> CliResult<Option<usize>> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("{THREADS_ENV}={v:?} is not a thread count")))?,
        ),
        Err(_) => flag,
    };
    if n == Some(0) {
        return Err(CliError::Config("thread count must be positive".into()));
    }
    Ok(n)
}

fn execute(cli: &Cli) -> CliResult<Option<CliError>> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Config(format!("--tol must be positive, got {}", cli.tol)));
    }
    if let Some(n) = thread_count(cli.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let start = Instant::now();
    let (mut record, failure) = match &cli.command {
        Command::Tables { allow_large } => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("tables"));
            let r = tables::emit(&dir, *allow_large, cli.tol)?;
            (r, None)
        }
        cmd => commands::run(cmd, cli.tol)?,
    };
    if cli.timing {
        record.diag("wall_time_ms", real(start.elapsed().as_secs_f64() * 1e3)?);
    }
    let text = match cli.format {
        Format::Json => record.to_json(),
        Format::Csv => record.to_csv()?,
    };
    match (&cli.command, &cli.out) {
        (Command::Tables { .. }, _) | (_, None) => std::io::stdout().write_all(text.as_bytes())?,
        (_, Some(path)) => std::fs::write(path, text)?,
    }
    Ok(failure)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = execute(&cli).and_then(|f| f.map_or(Ok(()), Err));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_json(cli.command.name(), &e));
            ExitCode::from(e.exit_code())
        }
    }
}
