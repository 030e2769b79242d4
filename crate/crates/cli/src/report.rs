//! The report envelope shared by every subcommand.

use std::collections::BTreeMap;

use lvmb_core::exactmath::parse_rational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "lvmb/1";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input_sha256: String,
    pub verdict: bool,
    pub results: Value,
    /// Decimal renderings of the exact rationals in `results`. Only present
    /// with `--approx`; never authoritative.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx_non_authoritative: Option<BTreeMap<String, String>>,
}

impl Report {
    pub fn new(command: &str, input: &[u8], verdict: bool, results: Value) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            input_sha256: digest(input),
            verdict,
            results,
            approx_non_authoritative: None,
        }
    }

    pub fn add_approximations(&mut self) {
        let mut out = BTreeMap::new();
        collect_fractions(&self.results, &mut out);
        self.approx_non_authoritative = Some(out);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn collect_fractions(v: &Value, out: &mut BTreeMap<String, String>) {
    match v {
        Value::String(s) if s.contains('/') => {
            if let Ok(q) = parse_rational(s) {
                if let Some(f) = q.to_f64() {
                    out.insert(s.clone(), format!("{f:.12}"));
                }
            }
        }
        Value::Array(items) => items.iter().for_each(|x| collect_fractions(x, out)),
        Value::Object(map) => map.values().for_each(|x| collect_fractions(x, out)),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn approximations_cover_nested_fractions() {
        let mut r = Report::new("x", b"", true, json!({"a": ["3/4", "1"], "b": {"c": "-1/3"}, "d": "n/a"}));
        r.add_approximations();
        let approx = r.approx_non_authoritative.unwrap();
        assert_eq!(approx.len(), 2);
        assert_eq!(approx["3/4"], "0.750000000000");
        assert_eq!(approx["-1/3"], "-0.333333333333");
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
