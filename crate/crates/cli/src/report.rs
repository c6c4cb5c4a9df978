//! Command output in the three supported formats, plus the exit code.

use clap::ValueEnum;
use serde_json::{json, Value};

use frobpow::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_CONJECTURE_MISMATCH: i32 = 10;

/// What a command produced.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub csv: String,
    pub pretty: String,
    pub code: i32,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
            Format::Pretty => self.pretty.clone(),
        }
    }
}

pub fn series_json(s: &TruncatedSeries, closed_form: Option<String>) -> Value {
    json!({ "coeffs": s.coeffs(), "truncation": s.truncation(), "closed_form": closed_form })
}

pub fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
