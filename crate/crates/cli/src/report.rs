//! Report records and their JSON / CSV encodings.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Inconclusive => "inconclusive",
        }
    }
}

pub type Fields = BTreeMap<String, Value>;

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub check: String,
    pub params: Fields,
    pub target: Option<f64>,
    pub value: Option<f64>,
    pub residual: Option<f64>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Fields::is_empty")]
    pub detail: Fields,
}

impl Record {
    pub fn new(check: &str, status: CheckStatus) -> Self {
        Record {
            check: check.to_string(),
            params: Fields::new(),
            target: None,
            value: None,
            residual: None,
            status,
            detail: Fields::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.detail.insert(key.to_string(), value.into());
        self
    }

    pub fn numbers(mut self, target: Option<f64>, value: Option<f64>, residual: Option<f64>) -> Self {
        self.target = target;
        self.value = value;
        self.residual = residual;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub config: Value,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: Value, records: Vec<Record>, timestamp: Option<String>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                CheckStatus::Pass => summary.pass += 1,
                CheckStatus::Fail => summary.fail += 1,
                CheckStatus::Inconclusive => summary.inconclusive += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            tool: Tool {
                name: "ineqverify",
                version: env!("CARGO_PKG_VERSION"),
            },
            timestamp,
            config,
            records,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.inconclusive == 0
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        out.write_record(["check", "params", "target", "value", "residual", "status", "detail"])?;
        for r in &self.records {
            out.write_record([
                r.check.clone(),
                flatten(&r.params),
                number(r.target),
                number(r.value),
                number(r.residual),
                r.status.as_str().to_string(),
                flatten(&r.detail),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Column table for plot data: one `x` column and one column per series.
#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row.iter().map(|v| number(Some(*v))))?;
        }
        out.flush()?;
        Ok(())
    }
}

fn number(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:e}"),
        Some(x) if x.is_nan() => "NaN".to_string(),
        Some(x) if x > 0.0 => "inf".to_string(),
        Some(_) => "-inf".to_string(),
        None => String::new(),
    }
}

fn flatten(fields: &Fields) -> String {
    fields
        .iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(";")
}
