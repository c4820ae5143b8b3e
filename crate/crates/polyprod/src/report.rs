//! Report envelope and serialization.
//!
//! JSON payloads keep integers exact: values outside the 2^53 window are
//! emitted as decimal strings instead of floating approximations. Object
//! keys are emitted in sorted order so identical configurations produce
//! byte-identical payloads (timestamps aside).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

const SAFE_INTEGER: i64 = 1 << 53;

/// Exact JSON form of a big integer: a number inside +-2^53, a decimal
/// string beyond.
pub fn big_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) if i.abs() <= SAFE_INTEGER => json!(i),
        _ => json!(v.to_string()),
    }
}

/// Serializable result of one experiment run.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub schema_version: String,
    pub command: String,
    pub parameters: Value,
    /// Unix seconds at emission; excluded from determinism comparisons.
    pub unix_time: u64,
    pub results: Value,
    pub warnings: Vec<String>,
}

pub const SCHEMA_VERSION: &str = "1.0.0";

impl ExperimentReport {
    pub fn new(command: &str, parameters: Value, results: Value, warnings: Vec<String>) -> Self {
        let unix_time = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        ExperimentReport {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            parameters,
            unix_time,
            results,
            warnings,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// RFC 4180 field quoting: quote when the field contains a comma, a quote,
/// or a line break, doubling embedded quotes.
fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') || field.contains('\r') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// A header row plus data rows, CRLF line endings.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(
        &header
            .iter()
            .map(|h| csv_escape(h))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push_str("\r\n");
    for row in rows {
        out.push_str(
            &row.iter()
                .map(|f| csv_escape(f))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push_str("\r\n");
    }
    out
}
