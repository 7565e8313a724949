mod args;
mod commands;
mod montecarlo;
mod report;
mod validate;

use args::{Cli, Command};
use clap::Parser;
use std::process::ExitCode;

pub enum CliError {
    Config(String),
    Numeric(curvelab_core::Error),
}

impl From<curvelab_core::Error> for CliError {
    fn from(e: curvelab_core::Error) -> Self {
        match e {
            curvelab_core::Error::DomainError { .. }
            | curvelab_core::Error::TooFewSamples { .. }
            | curvelab_core::Error::EmptyWindow { .. } => CliError::Config(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Config(m) => m.clone(),
            CliError::Numeric(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let start = std::time::Instant::now();
    let name = cli.command.name();
    let config = cli.command.config_json(&cli.common);
    let outcome = match &cli.command {
        Command::Airy(a) => commands::airy(a),
        Command::PdfBulk(a) => commands::pdf_bulk(a),
        Command::PdfEdge(a) => commands::pdf_edge(a, &cli.common),
        Command::CharfnFinite(a) => commands::charfn_finite(a),
        Command::DensityFinite(a) => commands::density_finite(a),
        Command::McBulk(a) => montecarlo::mc_bulk(a, &cli.common),
        Command::McEdge(a) => montecarlo::mc_edge(a, &cli.common),
        Command::McExtreme(a) => montecarlo::mc_extreme(a, &cli.common),
        Command::ExtremeDirect(a) => commands::extreme_direct(a),
        Command::Asymptotics(a) => commands::asymptotics(a),
        Command::Compare(a) => commands::compare(a, &cli.common),
        Command::Validate(a) => validate::validate(a, &cli.common),
    };
    let summary_path = cli.common.summary.as_deref();
    match outcome {
        Ok(mut report) => {
            report.config = match config {
                serde_json::Value::Object(m) => m,
                _ => report.config,
            };
            report.threads = cli.common.threads;
            let csv = report.csv();
            if let Err(e) = report::write_text(cli.common.output.as_deref(), &csv, false) {
                eprintln!("error: cannot write CSV: {e}");
                return ExitCode::from(1);
            }
            let summary = report.summary(start.elapsed().as_secs_f64());
            let text = serde_json::to_string_pretty(&summary).unwrap_or_default() + "\n";
            if let Err(e) = report::write_text(summary_path, &text, true) {
                eprintln!("error: cannot write summary: {e}");
                return ExitCode::from(1);
            }
            if name == "validate" && report.any_failed() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            let code = err.exit_code();
            let msg = err.message();
            eprintln!("error: {msg}");
            let summary = report::error_summary(name, &config, &msg, code as i32);
            let text = serde_json::to_string_pretty(&summary).unwrap_or_default() + "\n";
            let _ = report::write_text(summary_path, &text, true);
            ExitCode::from(code)
        }
    }
}
