//! The single report schema every command emits.
//!
//! JSON (`schema = "exotic-report/1"`):
//!
//! ```text
//! {
//!   "schema":   "exotic-report/1",
//!   "command":  "fibers",
//!   "params":   { ...the resolved configuration, sorted keys... },
//!   "columns":  ["q", "key", ...],
//!   "rows":     [ { "q": 2, "key": [...], ... }, ... ],
//!   "summary":  { ...command-specific totals... },
//!   "passed":   true,
//!   "failures": [ ...counterexamples... ]
//! }
//! ```
//!
//! TSV is the `columns` header followed by one line per row. String cells are
//! written verbatim, every other cell as compact JSON.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA: &str = "exotic-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub params: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Map<String, Value>>,
    pub summary: Map<String, Value>,
    pub passed: bool,
    pub failures: Vec<Value>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            params: Map::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Map::new(),
            passed: true,
            failures: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.params.insert(key.to_string(), to_value(value));
    }

    pub fn summarize(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.to_string(), to_value(value));
    }

    /// Appends a row; `cells` must follow the column order.
    pub fn push_row(&mut self, cells: Vec<Value>) {
        assert_eq!(cells.len(), self.columns.len(), "row width");
        self.rows.push(self.columns.iter().cloned().zip(cells).collect());
    }

    /// Records a failed assertion.
    pub fn fail(&mut self, counterexample: impl Serialize) {
        self.passed = false;
        self.failures.push(to_value(counterexample));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .delimiter(b'\t')
            .quote_style(csv::QuoteStyle::Never)
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(self.columns.iter().map(|c| cell_text(&row[c])))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

pub fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("plain data serializes")
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Reads a TSV report back into a header and string cells.
pub fn parse_tsv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), csv::Error> {
    let mut r = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .quoting(false)
        .from_reader(text.as_bytes());
    let header = r.headers()?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<Result<_, _>>()?;
    Ok((header, rows))
}

/// The TSV cell text of a JSON value, so TSV can be checked against JSON.
pub fn tsv_cell(v: &Value) -> String {
    cell_text(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_report_is_header_only() {
        let r = Report::new("fibers", &["q", "key", "count"]);
        assert_eq!(r.to_tsv(), "q\tkey\tcount\n");
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut r = Report::new("x", &["a", "b"]);
        r.param("n", 3);
        r.push_row(vec![json!("s"), json!([1, 2])]);
        r.fail(json!({"why": "test"}));
        let text = r.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
        let (h, rows) = parse_tsv(&r.to_tsv()).unwrap();
        assert_eq!(h, vec!["a", "b"]);
        assert_eq!(rows, vec![vec!["s".to_string(), "[1,2]".to_string()]]);
    }
}
