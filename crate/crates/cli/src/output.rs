//! CSV and JSON emission.
//!
//! Every document starts with provenance: a `#` comment line in CSV, top-level
//! fields in JSON. Numbers use the shortest representation that round-trips,
//! so output is byte-identical across runs.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::config::Format;

pub const TOOL: &str = "zerorange";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const SOLVE_SCHEMA: &str = include_str!("../schemas/solve.schema.json");
pub const TABLE_SCHEMA: &str = include_str!("../schemas/table.schema.json");

/// Shortest round-trip form, in exponent notation for very small or large
/// magnitudes.
pub fn number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    /// Absent for commands that run without a configuration.
    pub config_sha256: Option<String>,
}

impl Provenance {
    pub fn new(command: &'static str, config_sha256: Option<String>) -> Self {
        Provenance {
            tool: TOOL,
            version: VERSION,
            command,
            config_sha256,
        }
    }

    fn comment(&self) -> String {
        let mut line = format!("# {} {} command={}", self.tool, self.version, self.command);
        if let Some(h) = &self.config_sha256 {
            let _ = write!(line, " config_sha256={h}");
        }
        line
    }
}

/// Columns of numbers; `None` is an empty CSV cell or a JSON `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(provenance: Provenance, columns: Vec<&'static str>) -> Self {
        Table {
            provenance,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.provenance.comment();
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| v.map(number).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateRecord {
    #[serde(rename = "E_mK")]
    pub e_mk: f64,
    #[serde(rename = "E_hartree")]
    pub e_hartree: f64,
    pub nodes: usize,
    pub match_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub system: String,
    pub q_convention: &'static str,
    pub states: Vec<StateRecord>,
    /// `-B` of the deepest bound pair from `B = 1/(2 mu m a^2)`, or `null`.
    #[serde(rename = "threshold_mK")]
    pub threshold_mk: Option<f64>,
    /// Lowest two-body pole of the interaction actually used, which is where
    /// the hyper-radial continuum starts.
    #[serde(rename = "continuum_threshold_mK")]
    pub continuum_threshold_mk: f64,
}

impl SolveReport {
    pub fn to_csv(&self) -> String {
        let mut out = self.provenance.comment();
        let _ = write!(
            out,
            " system={} q_convention={}\nstate,E_mK,E_hartree,nodes\n",
            self.system, self.q_convention
        );
        for (k, s) in self.states.iter().enumerate() {
            let _ = writeln!(out, "{k},{},{},{}", number(s.e_mk), number(s.e_hartree), s.nodes);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Table(Table),
    Solve(SolveReport),
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Report::Table(t), Format::Csv) => t.to_csv(),
            (Report::Solve(s), Format::Csv) => s.to_csv(),
            (Report::Table(t), Format::Json) => json(t),
            (Report::Solve(s), Format::Json) => json(s),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Writes `text` to `path`, or to standard output for `-`.
pub fn emit(text: &str, path: &str) -> io::Result<()> {
    if path == "-" {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        // A closed downstream pipe (e.g. `| head`) is not an error.
        return match lock.write_all(text.as_bytes()).and_then(|_| lock.flush()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            other => other,
        };
    }
    if let Some(dir) = Path::new(path).parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(Provenance::new("demo", Some("ab".into())), vec!["x", "y"]);
        t.push(vec![Some(1.5), None]);
        t.push(vec![Some(-0.25), Some(3.0)]);
        assert_eq!(
            t.to_csv(),
            format!("# zerorange {VERSION} command=demo config_sha256=ab\nx,y\n1.5,\n-0.25,3\n")
        );
        assert_eq!(t.column("y").unwrap(), vec![None, Some(3.0)]);
    }

    #[test]
    fn number_forms() {
        assert_eq!(number(-144.5), "-144.5");
        assert_eq!(number(0.0), "0");
        assert_eq!(number(-1.25e-7), "-1.25e-7");
        assert_eq!(number(3e20), "3e20");
        assert_eq!(number(-1.25e-7).parse::<f64>().unwrap(), -1.25e-7);
    }

    #[test]
    fn json_has_provenance_fields() {
        let t = Table::new(Provenance::new("demo", None), vec!["x"]);
        let v: serde_json::Value = serde_json::from_str(&Report::Table(t).render(Format::Json)).unwrap();
        assert_eq!(v["tool"], "zerorange");
        assert_eq!(v["command"], "demo");
        assert!(v["config_sha256"].is_null());
    }
}
