mod cli;
mod coin_file;
mod commands;
mod error;
mod table;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, OutputArgs};
use crate::error::CliError;
use crate::table::Table;

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
fn write_atomically(path: &Path, table: &Table, args: &OutputArgs) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    let mut out = std::io::BufWriter::new(tmp.as_file_mut());
    table.write(args.format, &mut out)?;
    out.flush()?;
    drop(out);
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Write(e.error))?;
    Ok(())
}

fn emit(table: Table, args: &OutputArgs) -> Result<(), CliError> {
    let table = if args.float { table.into_lossy() } else { table };
    match &args.output {
        Some(path) => write_atomically(path, &table, args),
        None => {
            let stdout = std::io::stdout().lock();
            let mut out = std::io::BufWriter::new(stdout);
            table.write(args.format, &mut out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let report = commands::run(&cli.command)?;
    emit(report.table, &cli.output)?;
    Ok(match report.failure {
        None => ExitCode::SUCCESS,
        Some(why) => {
            eprintln!("rieszwalk: verification failed: {why}");
            ExitCode::from(1)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("rieszwalk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
