//! Command-line front end for `fibercomm-core`: descriptor files, bundled
//! datasets, tables, CSV and SVG output.

pub mod commands;
pub mod descriptor;
pub mod report;
pub mod svg;

use std::ffi::OsString;

use clap::Parser;

pub use commands::{Cli, CliError};
pub use descriptor::{load_descriptor, parse_descriptor, DescriptorError, ManifoldDescriptor};
pub use report::{Payload, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Result of one invocation, with everything that would be printed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Parses `args` (without the program name) and runs the command.
pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("fibercomm")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            let code = if code == 0 { EXIT_OK } else { EXIT_USAGE };
            return Outcome {
                code,
                stdout,
                stderr,
                report: None,
            };
        }
    };
    match commands::execute(&cli) {
        Ok(report) => {
            let stdout = if cli.json {
                report.render_json()
            } else {
                report.render_table()
            };
            Outcome {
                code: EXIT_OK,
                stdout,
                stderr: String::new(),
                report: Some(report),
            }
        }
        Err(e) => Outcome {
            code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: format!("error[{}]: {}\n", e.code, e.message),
            report: None,
        },
    }
}
