//! Suite reports: JSON with sorted keys, or an aligned text summary.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(flatten)]
    pub data: Map<String, Value>,
}

impl Check {
    pub fn new(name: &str, pass: bool) -> Self {
        Check { name: name.to_string(), pass, data: Map::new() }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("serializable detail"));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub pass: bool,
    pub details: Vec<Check>,
    /// Seconds per check; not covered by the byte-stability guarantee.
    pub timings: BTreeMap<String, f64>,
    #[serde(flatten)]
    pub summary: Map<String, Value>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), pass: true, details: Vec::new(), timings: BTreeMap::new(), summary: Map::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.details.push(check);
    }

    pub fn time(&mut self, name: &str, d: Duration) {
        self.timings.insert(name.to_string(), (d.as_secs_f64() * 1000.0).round() / 1000.0);
    }

    pub fn summarize(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.to_string(), serde_json::to_value(value).expect("serializable summary"));
    }

    /// Merges per-suite reports in the given order into one.
    pub fn combine(name: &str, parts: Vec<Report>) -> Report {
        let mut all = Report::new(name);
        for part in parts {
            for mut c in part.details {
                c.name = format!("{}/{}", part.suite, c.name);
                all.push(c);
            }
            all.pass &= part.pass;
            for (k, t) in part.timings {
                all.timings.insert(format!("{}/{}", part.suite, k), t);
            }
            if !part.summary.is_empty() {
                all.summary.insert(part.suite.clone(), Value::Object(part.summary));
            }
        }
        all
    }

    pub fn to_json(&self) -> String {
        // going through `Value` sorts every object's keys
        let v = serde_json::to_value(self).expect("serializable report");
        let mut s = serde_json::to_string_pretty(&v).expect("serializable report");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let verdict = |p: bool| if p { "PASS" } else { "FAIL" };
        let width = self.details.iter().map(|c| c.name.len()).max().unwrap_or(0).max(5);
        let mut out = format!("suite {}: {}\n", self.suite, verdict(self.pass));
        for c in &self.details {
            let extra: Vec<String> = c.data.iter().filter(|(_, v)| is_short(v)).map(|(k, v)| format!("{k}={}", compact(v))).collect();
            out.push_str(format!("  {:width$}  {}  {}", c.name, verdict(c.pass), extra.join(" ")).trim_end());
            out.push('\n');
        }
        out
    }
}

fn is_short(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.len() <= 8 && a.iter().all(|x| !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let r = Report::new("octonion");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["details"], Value::Array(vec![]));
        assert_eq!(v["pass"], Value::Bool(true));
    }

    #[test]
    fn failing_check_fails_report() {
        let mut r = Report::new("x");
        r.push(Check::new("a", true));
        r.push(Check::new("b", false).with("why", "mismatch"));
        assert!(!r.pass);
        assert!(r.to_text().contains("b      FAIL  why=mismatch"));
    }

    #[test]
    fn keys_are_sorted() {
        let mut r = Report::new("x");
        r.summarize("zeta", 1);
        r.summarize("alpha", 2);
        let json = r.to_json();
        let pos = |k: &str| json.find(k).unwrap();
        assert!(pos("alpha") < pos("details") && pos("details") < pos("zeta"));
    }
}
