use std::io::Write;

use fcgp_core::rational::format_rational;
use fcgp_core::{Direction, Rational};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::CliError;

pub const CSV_VERSION_LINE: &str = "# fcgp-csv v1";
pub const CSV_RATIO_LINE: &str =
    "# ratio = value/oracle for max, oracle/value for min (1 when both are 0); 1 is optimal";

pub const CSV_COLUMNS: [&str; 13] = [
    "instance",
    "algo",
    "k",
    "alpha",
    "epsilon",
    "direction",
    "value",
    "vertices",
    "wall_ms",
    "branch",
    "oracle",
    "ratio",
    "check",
];

/// One solver run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunRecord {
    pub instance: String,
    pub algo: String,
    pub k: usize,
    pub alpha: String,
    pub epsilon: Option<String>,
    pub direction: String,
    pub value: String,
    pub vertices: Vec<usize>,
    pub wall_ms: u64,
    /// `algorithm:branch` provenance tag.
    pub branch: String,
    pub oracle: Option<String>,
    pub ratio: Option<String>,
    /// `ok`, `violation`, `skipped`, or empty when nothing was checked.
    pub check: String,
}

impl RunRecord {
    pub fn to_row(&self) -> Vec<String> {
        vec![
            self.instance.clone(),
            self.algo.clone(),
            self.k.to_string(),
            self.alpha.clone(),
            self.epsilon.clone().unwrap_or_default(),
            self.direction.clone(),
            self.value.clone(),
            join_vertices(&self.vertices),
            self.wall_ms.to_string(),
            self.branch.clone(),
            self.oracle.clone().unwrap_or_default(),
            self.ratio.clone().unwrap_or_default(),
            self.check.clone(),
        ]
    }

    pub fn is_violation(&self) -> bool {
        self.check == "violation"
    }
}

pub fn join_vertices(vertices: &[usize]) -> String {
    vertices
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Approximation ratio in `[0, 1]` (1 is optimal) for either direction.
pub fn ratio(direction: Direction, value: &Rational, oracle: &Rational) -> Rational {
    let (num, den) = match direction {
        Direction::Max => (oracle, value),
        Direction::Min => (value, oracle),
    };
    // num is the side an optimal run can only match, never beat
    if num.is_zero() {
        Rational::one()
    } else {
        *den / *num
    }
}

pub fn fmt_ratio(r: &Rational) -> String {
    format_rational(r)
}

/// Aggregate line appended after the records of an experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub suite: String,
    pub runs: usize,
    pub worst_ratio: Option<Rational>,
    pub violations: usize,
    pub wall_ms: u64,
}

impl Summary {
    pub fn to_row(&self) -> Vec<String> {
        vec![
            "summary".into(),
            self.suite.clone(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            self.wall_ms.to_string(),
            format!("runs={}", self.runs),
            String::new(),
            self.worst_ratio.as_ref().map(fmt_ratio).unwrap_or_default(),
            format!("violations={}", self.violations),
        ]
    }
}

/// Writes the versioned CSV table: two comment lines, header, records and an
/// optional summary row.
pub fn write_csv<W: Write>(
    mut out: W,
    records: &[RunRecord],
    summary: Option<&Summary>,
) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::io("<output>", e);
    writeln!(out, "{CSV_VERSION_LINE}").map_err(io)?;
    writeln!(out, "{CSV_RATIO_LINE}").map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Usage(format!("csv output: {e}"));
    w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for r in records {
        w.write_record(r.to_row()).map_err(csv_err)?;
    }
    if let Some(s) = summary {
        w.write_record(s.to_row()).map_err(csv_err)?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

pub fn csv_string(records: &[RunRecord], summary: Option<&Summary>) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, records, summary)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn json_string(record: &RunRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("record serializes");
    s.push('\n');
    s
}
