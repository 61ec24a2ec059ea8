//! Report rendering: human-readable text and the machine-readable JSON
//! document with fields {basis, generators, halfspaces, flags}.

use grasscone_core::rational::{self, Rational};
use grasscone_core::{Cone, RatVec};
use serde_json::{json, Value};

pub struct Report {
    pub human: String,
    pub json: Value,
}

pub fn rat_string(value: &Rational) -> String {
    rational::display(value).to_string()
}

pub fn vector_json(v: &RatVec) -> Value {
    Value::Array(v.entries().iter().map(|e| Value::String(rat_string(e))).collect())
}

pub fn vectors_json(vs: &[RatVec]) -> Value {
    Value::Array(vs.iter().map(vector_json).collect())
}

/// Compact one-line form, e.g. `[[0,1],[1,-1]]`.
pub fn vectors_line(vs: &[RatVec]) -> String {
    let mut line = String::from("[");
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&v.to_string());
    }
    line.push(']');
    line
}

pub fn cone_json(basis: Option<&[String]>, cone: &Cone) -> Value {
    json!({
        "basis": basis.map(|labels| labels.to_vec()),
        "generators": cone.generators().map(vectors_json),
        "halfspaces": cone.halfspaces().map(vectors_json),
        "flags": {"canonical": cone.is_canonical()},
    })
}

pub fn basis_line(labels: &[String]) -> String {
    format!("basis: {}", labels.join(" "))
}

/// One vector per line under a heading.
pub fn vector_block(heading: &str, vs: &[RatVec]) -> String {
    let mut block = String::from(heading);
    block.push_str(":\n");
    for v in vs {
        block.push_str(&v.to_string());
        block.push('\n');
    }
    block
}
