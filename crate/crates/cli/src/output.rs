use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Graph,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "graph" => Ok(Format::Graph),
            _ => Err(CliError::Usage(format!("unknown format `{s}` (json, csv, graph)"))),
        }
    }
}

pub struct Output {
    pub body: String,
    /// (suffix appended to the output path, contents)
    pub sidecars: Vec<(String, String)>,
    /// set when an assertion failed; the output is still written
    pub failed: Option<String>,
}

impl Output {
    pub fn new(body: String) -> Self {
        Output { body, sidecars: Vec::new(), failed: None }
    }
}

/// `{"config": …, "generated_at"?: …, key: value}` pretty-printed.
pub fn json_doc(cfg: &RunConfig, timestamp: Option<u64>, key: &str, value: impl Serialize) -> String {
    let mut doc = json!({ "config": cfg, key: value });
    if let Some(t) = timestamp {
        doc["generated_at"] = Value::from(t);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Comment lines that lead every text output.
pub fn header_lines(cfg: &RunConfig, timestamp: Option<u64>) -> String {
    let mut s = cfg.comment_line();
    s.push('\n');
    if let Some(t) = timestamp {
        s.push_str(&format!("# generated_at: {t}\n"));
    }
    s
}

pub fn csv_doc(cfg: &RunConfig, timestamp: Option<u64>, header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
    let mut s = header_lines(cfg, timestamp);
    s.push_str(&String::from_utf8(bytes).expect("utf-8 fields"));
    Ok(s)
}
