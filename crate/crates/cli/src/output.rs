//! Tables with a `#` provenance header, rendered as CSV or JSON.

use serde::Serialize;

pub const TOOL: &str = "pinsker";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Severity order: a violation outranks an inconclusive result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Inconclusive,
    Violated,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Violated => 1,
            Outcome::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Violated => "violated",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub title: String,
    pub config: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub outcome: Outcome,
}

impl Section {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Section {
            title: title.into(),
            config: Vec::new(),
            notes: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            outcome: Outcome::Pass,
        }
    }

    pub fn config(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn raise(&mut self, outcome: Outcome) {
        self.outcome = self.outcome.max(outcome);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub sections: Vec<Section>,
}

impl Document {
    pub fn new(command: impl Into<String>) -> Self {
        Document { tool: TOOL, version: VERSION, command: command.into(), sections: Vec::new() }
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn outcome(&self) -> Outcome {
        self.sections.iter().map(|s| s.outcome).max().unwrap_or(Outcome::Pass)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("# {} {}\n# command: {}\n# section: {}\n", self.tool, self.version, self.command, s.title));
            for (k, v) in &s.config {
                out.push_str(&format!("# {k} = {v}\n"));
            }
            for n in &s.notes {
                out.push_str(&format!("# note: {n}\n"));
            }
            out.push_str(&format!("# outcome: {}\n", s.outcome.as_str()));
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&s.columns).expect("in-memory write");
            for r in &s.rows {
                w.write_record(r).expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory flush");
            out.push_str(&String::from_utf8(bytes).expect("utf-8 cells"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Json<'a> {
            #[serde(flatten)]
            doc: &'a Document,
            outcome: Outcome,
        }
        let mut s = serde_json::to_string_pretty(&Json { doc: self, outcome: self.outcome() }).expect("serializable");
        s.push('\n');
        s
    }
}

/// Shortest round-trip form, switching to exponent notation outside `[1e-4, 1e15)`.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else if x == 0.0 || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(1e-6), "1e-6");
        assert_eq!(num(f64::INFINITY), "inf");
        assert_eq!(num(-2.5e20), "-2.5e20");
    }

    #[test]
    fn csv_has_header_and_escaping() {
        let mut d = Document::new("test");
        let mut s = Section::new("demo", &["a", "b"]);
        s.config("grid", "standard");
        s.row(vec!["1".into(), "x, y".into()]);
        d.push(s);
        let text = d.to_csv();
        assert!(text.starts_with("# pinsker "));
        assert!(text.contains("# grid = standard\n"));
        assert!(text.contains("a,b\n1,\"x, y\"\n"));
        assert_eq!(d.outcome(), Outcome::Pass);
    }
}
