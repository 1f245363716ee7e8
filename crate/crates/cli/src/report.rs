//! Report records and their JSON / text renderings.

use std::time::Duration;

use gradalg::homology::{GradedDims, NumericalPolynomial};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub index: usize,
    pub line: usize,
    pub column: usize,
    pub command: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Json>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }
}

/// Engine settings echoed into every JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineInfo {
    pub version: String,
    pub monomial_order: String,
    pub module_order: String,
    pub power_family: String,
    pub power_cap: usize,
    pub window: (i64, i64),
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub engine: EngineInfo,
    pub reports: Vec<Report>,
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("reports serialize")
}

pub fn to_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("[{}] {}:{} {}\n", r.index, r.line, r.column, r.command));
        match &r.error {
            Some(e) => out.push_str(&format!("  error: {e}\n")),
            None => {
                for l in r.text.lines() {
                    out.push_str(&format!("  {l}\n"));
                }
            }
        }
        out.push_str(&format!("  ({:.3} s)\n", r.elapsed.as_secs_f64()));
    }
    out
}

pub fn dims_json(d: &GradedDims) -> Json {
    Json::from(d.dense().into_iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>())
}

pub fn dims_text(d: &GradedDims) -> String {
    let parts: Vec<String> = d.dense().into_iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn numerical_json(p: &NumericalPolynomial) -> Json {
    json!({ "binomial_coefficients": p.coeffs, "display": p.to_string() })
}
