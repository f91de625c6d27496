//! Command-line driver: reports, seeded searches, circuit and code tools.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod search;

use std::io::Write;
use std::sync::mpsc;
use std::time::Duration;

use args::Cli;
use config::ToolConfig;
use error::{CliError, CliResult};

fn emit(output: &commands::Output, config: &ToolConfig) -> CliResult<()> {
    match &config.out {
        Some(path) => {
            let mut file = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)?;
            file.write_all(output.text.as_bytes())?;
            if let Some(note) = &output.note {
                println!("{note}");
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(output.text.as_bytes())?;
            if let Some(note) = &output.note {
                eprintln!("{note}");
            }
        }
    }
    Ok(())
}

/// Runs a parsed command line; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let result = ToolConfig::from_opts(&cli.global).and_then(|config| {
        let output = match cli.global.timeout_ms {
            None => commands::run(&cli.command, &config)?,
            Some(ms) => {
                let (tx, rx) = mpsc::channel();
                let worker_config = config.clone();
                let command = cli.command;
                std::thread::spawn(move || {
                    let _ = tx.send(commands::run(&command, &worker_config));
                });
                rx.recv_timeout(Duration::from_millis(ms))
                    .map_err(|_| CliError::Limit(format!("timed out after {ms} ms")))??
            }
        };
        emit(&output, &config)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("minrank: {e}");
            e.exit_code()
        }
    }
}
