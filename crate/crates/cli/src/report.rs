//! Deterministic report rendering: identical `(config, seed)` pairs must
//! produce byte-identical output, so rows are sorted by construction and
//! every cell is formatted through one fixed path.

use serde::Serialize;

use crate::config::OutputFormat;

/// One output row: cells in column order plus the provenance tag naming
/// the formula or mechanism the values come from (`plumbing` for pure
/// bookkeeping).
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub cells: Vec<String>,
    pub provenance: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    /// Echo of the effective inputs, in insertion order.
    pub input: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(command: &str, columns: Vec<&'static str>) -> Self {
        Report {
            command: command.into(),
            input: Vec::new(),
            seed: None,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn echo(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.input.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, cells: Vec<String>, provenance: &'static str) {
        assert_eq!(cells.len(), self.columns.len(), "row width mismatch");
        self.rows.push(Row { cells, provenance });
    }

    /// True when every row whose first cell is a check name reports
    /// "pass" in its last value cell.
    pub fn all_passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.cells.iter().all(|c| c != "fail"))
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Tsv => self.render_tsv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command\t{}\n", self.command));
        for (k, v) in &self.input {
            out.push_str(&format!("# input\t{k}={v}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("# seed\t{seed}\n"));
        }
        let mut header: Vec<&str> = self.columns.clone();
        header.push("provenance");
        out.push_str(&header.join("\t"));
        out.push('\n');
        for row in &self.rows {
            let mut cells: Vec<&str> = row.cells.iter().map(String::as_str).collect();
            cells.push(row.provenance);
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Fixed-precision float cell so rendering is platform-stable.
pub fn float_cell(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn bits_cell(bits: &[u8]) -> String {
    if bits.is_empty() {
        "-".into()
    } else {
        bits.iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn pass_cell(ok: bool) -> String {
    if ok {
        "pass".into()
    } else {
        "fail".into()
    }
}
