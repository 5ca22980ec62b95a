//! Command-line front end: job configuration, dispatch and output documents.

pub mod commands;
pub mod config;

pub use commands::{run, Outcome, RunError};
pub use config::{CommandKind, ConfigError, Format, JobConfig};

use serde_json::json;

/// The bytes written for a finished run: a JSON document
/// `{"command", "input", "result"}` or the CSV table.
pub fn render(cfg: &JobConfig, outcome: &Outcome) -> Vec<u8> {
    match (cfg.format, &outcome.csv) {
        (Format::Csv, Some(csv)) => csv.clone(),
        _ => {
            let doc = json!({
                "command": cfg.command.name(),
                "input": cfg,
                "result": outcome.result,
            });
            let mut out = serde_json::to_vec(&doc).expect("documents are plain JSON values");
            out.push(b'\n');
            out
        }
    }
}
