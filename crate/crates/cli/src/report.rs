//! Report envelope, closed-form-vs-numeric check rows and output encodings.

use std::collections::BTreeMap;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub quantity: String,
    pub closed_form: f64,
    pub numeric: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(quantity: impl Into<String>, closed_form: f64, numeric: f64, tolerance: f64) -> Self {
        let deviation = (numeric - closed_form).abs();
        Self {
            quantity: quantity.into(),
            closed_form,
            numeric,
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }

    /// A yes/no expectation encoded as 1/0 with zero tolerance.
    pub fn flag(quantity: impl Into<String>, expected: bool, actual: bool) -> Self {
        let as_f = |b: bool| if b { 1.0 } else { 0.0 };
        Self::new(quantity, as_f(expected), as_f(actual), 0.0)
    }

    pub fn prefixed(mut self, prefix: &str) -> Self {
        self.quantity = format!("{prefix}.{}", self.quantity);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub two_j: u32,
    pub command: String,
    pub payload: Value,
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
}

/// Output of one analysis: its payload tree and the checks it ran.
pub struct Section {
    pub payload: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn build(two_j: u32, command: &str, seed: Option<u64>, section: Section) -> (Report, Vec<Check>) {
        let tolerances = section
            .checks
            .iter()
            .map(|c| (c.quantity.clone(), c.tolerance))
            .collect();
        let failed: Vec<Value> = section
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| Value::String(c.quantity.clone()))
            .collect();
        let mut payload = section.payload;
        if let Value::Object(map) = &mut payload {
            map.insert(
                "checks".into(),
                serde_json::to_value(&section.checks).expect("checks serialize"),
            );
            map.insert("failed_checks".into(), Value::Array(failed));
        }
        let report = Report {
            schema_version: SCHEMA_VERSION.into(),
            two_j,
            command: command.into(),
            payload,
            seed,
            tolerances,
        };
        (report, section.checks)
    }
}

/// Compact JSON writer printing every float with 17 significant digits.
struct PreciseFormatter(CompactFormatter);

impl Formatter for PreciseFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json(report: &Report) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFormatter(CompactFormatter));
    report.serialize(&mut ser).expect("report serializes");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

fn csv_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

pub fn to_csv(checks: &[Check]) -> String {
    let mut out = String::from("quantity,closed_form,numeric,deviation\n");
    for c in checks {
        out.push_str(&format!(
            "{},{},{},{}\n",
            c.quantity,
            csv_float(c.closed_form),
            csv_float(c.numeric),
            csv_float(c.deviation)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_use_seventeen_significant_digits() {
        let (r, _) = Report::build(
            1,
            "test",
            Some(3),
            Section {
                payload: json!({ "x": 1.0 / 3.0, "n": 2 }),
                checks: vec![Check::new("a", 0.1, 0.1, 1e-10)],
            },
        );
        let s = to_json(&r);
        assert!(s.contains("\"x\":3.3333333333333331e-1"), "{s}");
        assert!(s.contains("\"n\":2"));
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn failed_checks_are_named() {
        let (r, checks) = Report::build(
            2,
            "test",
            None,
            Section {
                payload: json!({}),
                checks: vec![Check::new("ok", 1.0, 1.0, 0.0), Check::new("bad", 1.0, 2.0, 0.5)],
            },
        );
        assert_eq!(r.payload["failed_checks"], json!(["bad"]));
        assert_eq!(checks.iter().filter(|c| !c.pass).count(), 1);
        assert_eq!(r.tolerances["bad"], 0.5);
    }

    #[test]
    fn nan_never_passes() {
        assert!(!Check::new("x", 0.0, f64::NAN, 1.0).pass);
    }

    #[test]
    fn csv_layout() {
        let s = to_csv(&[Check::new("q", 0.5, 0.25, 1.0)]);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "quantity,closed_form,numeric,deviation");
        assert_eq!(lines[1], "q,5.0000000000000000e-1,2.5000000000000000e-1,2.5000000000000000e-1");
    }
}
