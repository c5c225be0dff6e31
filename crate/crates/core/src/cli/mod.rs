//! Command-line front end: parse the configuration, evaluate a point or a
//! sweep, and write CSV.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 at least one row
//! failed to evaluate (the CSV is still written), 4 I/O failure.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

use crate::sweep::{evaluate_point, run_sweep};

pub use config::{parse_config, ConfigError, RunConfiguration, UsageError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MODEL: u8 = 3;
pub const EXIT_IO: u8 = 4;

pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_config(argv) {
        Ok(c) => c,
        Err(ConfigError::Clap(e)) => {
            let code = e.exit_code();
            let _ = e.print();
            return u8::try_from(code).unwrap_or(EXIT_USAGE);
        }
        Err(ConfigError::Usage(e)) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match execute(&config) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}

enum Failure {
    Usage(String),
    Io(String),
}

fn execute(config: &RunConfiguration) -> Result<u8, Failure> {
    let usage = |e: UsageError| Failure::Usage(e.0);
    let control = config.control().map_err(usage)?;
    let rows = match config.sweep_spec().map_err(usage)? {
        Some(spec) => {
            run_sweep(&spec, &control, config.oracle).map_err(|e| Failure::Usage(e.to_string()))?
        }
        None => vec![evaluate_point(
            &config.model_inputs().map_err(usage)?,
            &control,
            config.oracle,
        )],
    };
    let angles = config.row_angles_deg(rows.len());

    let io = |e: std::io::Error| Failure::Io(e.to_string());
    match &config.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::Io(format!("cannot create '{}': {e}", path.display())))?;
            let mut out = BufWriter::new(file);
            output::write_csv(&rows, &angles, config.oracle, &mut out).map_err(io)?;
            out.flush().map_err(io)?;
        }
        None => {
            let stdout = std::io::stdout();
            output::write_csv(&rows, &angles, config.oracle, stdout.lock()).map_err(io)?;
        }
    }

    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    if failed > 0 {
        eprintln!(
            "warning: {failed} of {} points failed; see the error column",
            rows.len()
        );
        Ok(EXIT_MODEL)
    } else {
        Ok(EXIT_OK)
    }
}
