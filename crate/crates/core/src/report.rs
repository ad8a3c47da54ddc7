//! Check rows and their text, CSV and JSON renderings.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::Result;
use crate::numeric::{BigRat, QuadExt3};

/// An exact quantity on one side of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Integer(BigInt),
    Rational(BigRat),
    Quad(QuadExt3),
    /// An algebra element, already rendered as a coordinate string.
    Element(String),
}

impl ExactValue {
    fn to_json(&self) -> Value {
        match self {
            ExactValue::Quad(q) => json!({"rat": q.rat.to_string(), "irr": q.irr.to_string()}),
            other => Value::String(other.to_string()),
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Integer(n) => write!(f, "{n}"),
            ExactValue::Rational(r) => write!(f, "{r}"),
            ExactValue::Quad(q) => write!(f, "{q}"),
            ExactValue::Element(s) => f.write_str(s),
        }
    }
}

impl From<BigInt> for ExactValue {
    fn from(n: BigInt) -> Self {
        ExactValue::Integer(n)
    }
}

impl From<num_bigint::BigUint> for ExactValue {
    fn from(n: num_bigint::BigUint) -> Self {
        ExactValue::Integer(n.into())
    }
}

impl From<BigRat> for ExactValue {
    fn from(r: BigRat) -> Self {
        ExactValue::Rational(r)
    }
}

impl From<QuadExt3> for ExactValue {
    fn from(q: QuadExt3) -> Self {
        ExactValue::Quad(q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// Recorded for information; not a pass/fail comparison.
    Info,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub check_name: String,
    pub params: String,
    pub lhs: ExactValue,
    /// Relation the check asserts between the sides, e.g. `=` or `<=`.
    pub relation: &'static str,
    pub rhs: ExactValue,
    pub verdict: Verdict,
    /// Parameters lie outside the hypothesis of the inequality being checked.
    pub exploratory: bool,
    pub note: Option<String>,
}

impl CheckRow {
    pub fn new(
        check_name: impl Into<String>,
        params: impl Into<String>,
        lhs: impl Into<ExactValue>,
        relation: &'static str,
        rhs: impl Into<ExactValue>,
        verdict: Verdict,
    ) -> Self {
        CheckRow {
            check_name: check_name.into(),
            params: params.into(),
            lhs: lhs.into(),
            relation,
            rhs: rhs.into(),
            verdict,
            exploratory: false,
            note: None,
        }
    }

    pub fn exploratory(mut self, flag: bool) -> Self {
        self.exploratory = flag;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// A row counts as failed only if it is a non-exploratory failure.
    pub fn is_failure(&self) -> bool {
        self.verdict == Verdict::Fail && !self.exploratory
    }

    pub fn verdict_label(&self) -> String {
        if self.exploratory {
            format!("exploratory-{}", self.verdict)
        } else {
            self.verdict.to_string()
        }
    }
}

impl fmt::Display for CheckRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<16} {:<22} {} {} {}  [{}]",
            self.check_name,
            self.params,
            self.lhs,
            self.relation,
            self.rhs,
            self.verdict_label()
        )?;
        if let Some(n) = &self.note {
            write!(f, "  ({n})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

pub fn to_csv(rows: &[CheckRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check_name", "params", "lhs_exact", "rhs_exact", "verdict"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.check_name.as_str(),
            r.params.as_str(),
            &r.lhs.to_string(),
            &r.rhs.to_string(),
            &r.verdict_label(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| csv_err(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err<E: Into<std::io::Error>>(e: E) -> crate::Error {
    crate::Error::Io(e.into())
}

pub fn to_json(rows: &[CheckRow]) -> String {
    let arr: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "check_name": r.check_name,
                "params": r.params,
                "lhs_exact": r.lhs.to_json(),
                "relation": r.relation,
                "rhs_exact": r.rhs.to_json(),
                "verdict": r.verdict_label(),
                "note": r.note,
            })
        })
        .collect();
    serde_json::to_string_pretty(&Value::Array(arr)).expect("json values serialize") + "\n"
}

pub fn to_text(rows: &[CheckRow]) -> String {
    rows.iter().map(|r| format!("{r}\n")).collect()
}

pub fn render(rows: &[CheckRow], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Text => Ok(to_text(rows)),
        OutputFormat::Csv => to_csv(rows),
        OutputFormat::Json => Ok(to_json(rows)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<CheckRow> {
        vec![
            CheckRow::new("binomial", "q=2", QuadExt3::new(21.into(), 12.into()), "=", QuadExt3::new(21.into(), 12.into()), Verdict::Pass),
            CheckRow::new("eq4", "t=6", BigInt::from(5), ">=", BigRat::ratio(1, 3).unwrap(), Verdict::Fail).exploratory(true),
        ]
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&rows()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "check_name,params,lhs_exact,rhs_exact,verdict");
        assert_eq!(lines[1], "binomial,q=2,21+12√3,21+12√3,pass");
        assert_eq!(lines[2], "eq4,t=6,5,1/3,exploratory-fail");
    }

    #[test]
    fn json_quad_split() {
        let v: Value = serde_json::from_str(&to_json(&rows())).unwrap();
        assert_eq!(v[0]["lhs_exact"]["rat"], "21");
        assert_eq!(v[0]["lhs_exact"]["irr"], "12");
        assert_eq!(v[1]["rhs_exact"], "1/3");
    }

    #[test]
    fn exploratory_failures_do_not_count() {
        let r = rows();
        assert!(!r[1].is_failure());
        assert!(!r[0].is_failure());
        assert!(CheckRow::new("x", "", BigInt::from(0), "=", BigInt::from(1), Verdict::Fail).is_failure());
    }
}
