//! Machine-readable record of a computed bound.
//!
//! Numbers are stored as exact strings (`"num/den"` or an integer); there
//! are no floats. `inputs` is enough to recompute `value` with the same
//! method.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exact::Rational;

pub const SCHEMA: &str = "propb-certificate/1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertVerdict {
    /// The evaluated probability bound is below one: no hypergraph with
    /// these parameters fails to be 2-colorable.
    Refuted,
    /// The evaluated bound is at least one; nothing follows.
    NotRefuted,
    /// Every step was checked exactly.
    Certified,
    /// Some cases were left open; they are listed in the witnesses.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub method: String,
    pub inputs: BTreeMap<String, Value>,
    pub value: Rational,
    pub verdict: CertVerdict,
    pub witnesses: Vec<Value>,
    pub engine_version: String,
}

impl Certificate {
    pub fn new(method: impl Into<String>, value: Rational) -> Self {
        Certificate {
            schema: SCHEMA.to_string(),
            method: method.into(),
            inputs: BTreeMap::new(),
            value,
            verdict: CertVerdict::Certified,
            witnesses: Vec::new(),
            engine_version: ENGINE_VERSION.to_string(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable input"));
        self
    }

    pub fn witness(mut self, value: impl Serialize) -> Self {
        self.witnesses
            .push(serde_json::to_value(value).expect("serializable witness"));
        self
    }

    pub fn verdict(mut self, verdict: CertVerdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn partial(mut self) -> Self {
        self.verdict = CertVerdict::Partial;
        self
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == CertVerdict::Certified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = Certificate::new("schoenheim", Rational::from_integer(12))
            .input("n", 5)
            .input("v", 11)
            .witness(serde_json::json!({"note": "x"}));
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(c.to_json().contains("\"value\": \"12\""));
    }

    #[test]
    fn inputs_are_sorted() {
        let c = Certificate::new("m", Rational::one()).input("z", 1).input("a", 2);
        let keys: Vec<_> = c.inputs.keys().cloned().collect();
        assert_eq!(keys, vec!["a", "z"]);
        assert!(!c.clone().partial().is_certified());
    }
}
