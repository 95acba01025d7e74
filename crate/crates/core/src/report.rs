//! JSON rendering helpers. Every integer leaves the crate as a decimal string.

use serde_json::{json, Value};

/// Elements that can appear in reports and counterexamples.
pub trait ReportElement {
    fn to_json(&self) -> Value;
}

impl ReportElement for num_bigint::BigInt {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl ReportElement for i64 {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

pub fn int<T: ToString>(x: T) -> Value {
    Value::String(x.to_string())
}

/// `{expected, actual, match}` cross-check block.
pub fn count_check(expected: impl ToString, actual: impl ToString) -> Value {
    let e = expected.to_string();
    let a = actual.to_string();
    let m = e == a;
    json!({ "expected": e, "actual": a, "match": m })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}
