//! Machine-readable reports. Pass/fail is a pure function of the recorded
//! margin (`pass = margin >= 0`), and a report's rows can be reproduced
//! bitwise from the config embedded in its header.
//!
//! Frozen CSV column order: `index,case,value,std_error,reference,margin,status,note`.
//! JSON reports carry the same data as `{"header": ..., "rows": [...]}`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quadrature::{Estimate, QuadratureSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportHeader {
    pub library_version: String,
    pub command: String,
    pub seed: u64,
    pub quadrature: QuadratureSpec,
    /// canonical JSON of the full run configuration; rerunning it
    /// reproduces the rows bitwise
    pub config: String,
    pub wall_clock_ms: u128,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportRow {
    pub index: usize,
    pub case: String,
    pub value: f64,
    pub std_error: f64,
    pub reference: Option<f64>,
    pub margin: f64,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub header: ReportHeader,
    pub rows: Vec<ReportRow>,
}

/// Row under construction; the command drivers fill one per case.
pub struct RowBuilder {
    case: String,
    value: f64,
    std_error: f64,
    reference: Option<f64>,
    margin: f64,
    note: String,
}

impl RowBuilder {
    pub fn new(case: impl Into<String>) -> Self {
        RowBuilder {
            case: case.into(),
            value: f64::NAN,
            std_error: 0.0,
            reference: None,
            margin: 0.0,
            note: String::new(),
        }
    }

    pub fn value(mut self, v: f64) -> Self {
        self.value = v;
        self
    }

    pub fn estimate(mut self, e: &Estimate) -> Self {
        self.value = e.value;
        self.std_error = e.std_error;
        self
    }

    pub fn reference(mut self, r: f64) -> Self {
        self.reference = Some(r);
        self
    }

    /// Signed pass margin; the row passes iff margin >= 0.
    pub fn margin(mut self, m: f64) -> Self {
        self.margin = m;
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = n.into();
        self
    }

    /// Failed row carrying an error; margin is -inf so it can never pass.
    pub fn error(mut self, err: &crate::error::Error) -> Self {
        self.margin = f64::NEG_INFINITY;
        self.note = err.to_string().replace('\n', " | ");
        self
    }

    pub fn build(self, index: usize) -> ReportRow {
        let pass = self.margin >= 0.0;
        ReportRow {
            index,
            case: self.case,
            value: self.value,
            std_error: self.std_error,
            reference: self.reference,
            margin: self.margin,
            pass,
            note: self.note,
        }
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn any_failure(&self) -> bool {
        self.rows.iter().any(|r| !r.pass)
    }

    /// Rows section only, used for bitwise reproducibility comparisons
    /// (the header records wall-clock time, which legitimately varies).
    pub fn rows_csv(&self) -> String {
        let mut out = String::from("index,case,value,std_error,reference,margin,status,note\n");
        for r in &self.rows {
            let reference = r
                .reference
                .map(|x| format!("{x}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.index,
                csv_quote(&r.case),
                r.value,
                r.std_error,
                reference,
                r.margin,
                if r.pass { "pass" } else { "fail" },
                csv_quote(&r.note)
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# projave-report-version: 1\n");
        out.push_str(&format!("# library_version: {}\n", self.header.library_version));
        out.push_str(&format!("# command: {}\n", self.header.command));
        out.push_str(&format!("# seed: {}\n", self.header.seed));
        out.push_str(&format!(
            "# quadrature: {}\n",
            serde_json::to_string(&self.header.quadrature).unwrap_or_default()
        ));
        out.push_str(&format!("# config: {}\n", self.header.config));
        out.push_str(&format!("# wall_clock_ms: {}\n", self.header.wall_clock_ms));
        out.push_str(&self.rows_csv());
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Extract the `# config: {...}` line of a CSV report.
    pub fn config_from_csv(text: &str) -> Option<String> {
        text.lines()
            .find(|l| l.starts_with("# config: "))
            .map(|l| l.trim_start_matches("# config: ").to_string())
    }
}
