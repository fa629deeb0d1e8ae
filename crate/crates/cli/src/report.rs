use std::fmt;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug)]
pub enum CliError {
    /// Unparsable input or a violated module/complex invariant.
    Input(String),
    /// Valid input on which the computation's preconditions fail.
    Precondition(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Precondition(m) => f.write_str(m),
        }
    }
}

impl From<stablecat::Error> for CliError {
    fn from(e: stablecat::Error) -> Self {
        use stablecat::Error::*;
        match e {
            Precondition(_) | NotInterior { .. } => CliError::Precondition(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Serialize, Debug, Default)]
pub struct Metadata {
    pub collapse_notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
    pub version: &'static str,
}

/// A degree-indexed table, the only shape offered as TSV.
#[derive(Debug)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    pub inputs: Value,
    pub results: Value,
    pub metadata: Metadata,
    #[serde(skip)]
    pub table: Option<Table>,
    /// Set when two independent computations that must agree do not.
    #[serde(skip)]
    pub inconsistency: Option<String>,
}

impl Report {
    pub fn new(command: String, ring: Option<String>, inputs: Value, results: Value) -> Report {
        Report {
            command,
            ring,
            inputs,
            results,
            metadata: Metadata {
                version: env!("CARGO_PKG_VERSION"),
                ..Metadata::default()
            },
            table: None,
            inconsistency: None,
        }
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Report {
        for n in notes {
            if !self.metadata.collapse_notes.contains(&n) {
                self.metadata.collapse_notes.push(n);
            }
        }
        self
    }

    pub fn with_window(mut self, window: (i64, i64)) -> Report {
        self.metadata.window = Some(window);
        self
    }

    pub fn with_table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Report {
        self.table = Some(Table { header, rows });
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self).expect("reports serialize")),
            Format::Tsv => {
                let t = self
                    .table
                    .as_ref()
                    .ok_or_else(|| CliError::Input("this command has no dimension table; use --format json".into()))?;
                let mut out = t.header.join("\t");
                for r in &t.rows {
                    out.push('\n');
                    out.push_str(&r.join("\t"));
                }
                Ok(out)
            }
        }
    }
}
