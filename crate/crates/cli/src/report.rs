//! JSON reports. Rationals are written as `"p/q"` strings; object keys are
//! sorted, so equal inputs give byte-identical output.

use numindex_core::{FloatMatrix, Measured, RatMatrix, Rational, Space, SpaceKind};
use serde_json::{json, Value};

pub fn q(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn qvec(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub fn qmat(m: &RatMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| qvec(r)).collect())
}

pub fn fmat(m: &FloatMatrix) -> Value {
    json!(m.rows())
}

pub fn measured(m: &Measured) -> Value {
    match m {
        Measured::Exact(r) => json!({ "value": q(r), "exact": true }),
        Measured::Sampled { value, samples } => json!({ "value": value, "exact": false, "samples": samples }),
    }
}

/// The space definition document, in the same format the parser accepts.
pub fn space_definition(space: &Space) -> Value {
    match space.kind() {
        SpaceKind::Polytope(poly) => json!({
            "name": space.name(),
            "dim": space.dim(),
            "kind": "polytope",
            "vertices": poly.vertices().iter().map(|v| qvec(v)).collect::<Vec<_>>(),
        }),
        SpaceKind::Lp { p } => json!({
            "name": space.name(),
            "dim": space.dim(),
            "kind": "lp",
            "p": if p.is_infinite() { json!("inf") } else { json!(p) },
        }),
    }
}

#[derive(Clone, Debug)]
pub enum Provenance {
    Exact,
    Sampled { density: Option<usize>, seed: u64 },
}

impl Provenance {
    fn to_json(&self) -> Value {
        match self {
            Provenance::Exact => json!({ "mode": "exact" }),
            Provenance::Sampled { density: Some(d), seed } => json!({ "mode": "sampled", "density": d, "seed": seed }),
            Provenance::Sampled { density: None, seed } => json!({ "mode": "sampled", "seed": seed }),
        }
    }
}

pub struct Report {
    pub command: String,
    pub space: String,
    pub inputs: Value,
    pub result: Value,
    pub certifications: Vec<String>,
    pub provenance: Provenance,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "space": self.space,
            "inputs": self.inputs,
            "result": self.result,
            "certifications": self.certifications,
            "provenance": self.provenance.to_json(),
        })
    }

    /// Plain `key: value` lines for terminal use.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.result {
            Value::Object(map) => {
                for (k, v) in map {
                    out.push_str(&format!("{k}: {}\n", inline(v)));
                }
            }
            other => out.push_str(&format!("{}\n", inline(other))),
        }
        for c in &self.certifications {
            out.push_str(&format!("certified: {c}\n"));
        }
        out
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
