//! Command-line surface of the `sqfree` library.
//!
//! [`run`] takes an argument vector and returns the exit status together
//! with the rendered output, so the binary is a thin wrapper and tests can
//! drive every subcommand in-process.

pub mod commands;
pub mod output;
pub mod verify;

use clap::error::ErrorKind;
use clap::Parser;

use crate::commands::{dispatch, Cli};
use crate::output::{render, Format, OutputRecord, Status};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub records: Vec<OutputRecord>,
    /// Text for stdout.
    pub stdout: String,
    /// Text for stderr (clap help and usage messages).
    pub stderr: String,
}

fn requested_format<I: AsRef<str>>(argv: &[I]) -> Format {
    let args: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let json = args.windows(2).any(|w| w == ["--format", "json"]) || args.contains(&"--format=json");
    if json {
        Format::Json
    } else {
        Format::Text
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            let informational = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            if informational {
                return Outcome { exit_code: 0, records: vec![], stdout: err.to_string(), stderr: String::new() };
            }
            let format = requested_format(&argv);
            let command = argv.get(1).cloned().unwrap_or_default();
            let record = OutputRecord::usage_error(&command, err.kind().to_string());
            let stdout = if format == Format::Json { render(&[record.clone()], format) } else { String::new() };
            return Outcome {
                exit_code: Status::UsageError.exit_code(),
                records: vec![record],
                stdout,
                stderr: err.render().to_string(),
            };
        }
    };
    let records = dispatch(&cli);
    let exit_code = records.iter().map(|r| r.status.exit_code()).max().unwrap_or(0);
    Outcome { exit_code, stdout: render(&records, cli.format), records, stderr: String::new() }
}
