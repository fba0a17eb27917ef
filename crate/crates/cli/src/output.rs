use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
    Svg,
}

/// What a command produces, before a format is chosen.
pub struct Outcome {
    pub parameters: Value,
    pub results: Value,
    pub text: String,
    /// Header row first.
    pub rows: Vec<Vec<String>>,
    pub svg: Option<String>,
}

#[derive(Serialize)]
struct Timing {
    seconds: f64,
}

#[derive(Serialize)]
struct OutputDocument<'a> {
    command: &'a str,
    parameters: &'a Value,
    tool_version: &'a str,
    results: &'a Value,
    timing: Option<Timing>,
}

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn render(
    command: &str,
    outcome: &Outcome,
    format: Format,
    elapsed: Option<Duration>,
) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let doc = OutputDocument {
                command,
                parameters: &outcome.parameters,
                tool_version: TOOL_VERSION,
                results: &outcome.results,
                timing: elapsed.map(|d| Timing {
                    seconds: d.as_secs_f64(),
                }),
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
            text.push('\n');
            Ok(text)
        }
        Format::Text => {
            let mut text = outcome.text.clone();
            if let Some(d) = elapsed {
                text.push_str(&format!("time = {:.3} s\n", d.as_secs_f64()));
            }
            Ok(text)
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in &outcome.rows {
                writer
                    .write_record(row)
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Svg => outcome
            .svg
            .clone()
            .ok_or_else(|| CliError::Input(format!("svg output is not available for {command}"))),
    }
}
