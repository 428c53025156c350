//! Check reports, their JSON form and the plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
            Status::Skipped => "skipped",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One named check. Every value is an exact rational or expression string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<BTreeMap<String, String>>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check {
            name: name.into(),
            status,
            values: BTreeMap::new(),
            residual: None,
        }
    }

    pub fn value(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.values.insert(key.into(), value.into());
        self
    }

    pub fn residual(mut self, entries: BTreeMap<String, String>) -> Self {
        if !entries.is_empty() {
            self.residual = Some(entries);
        }
        self
    }

    pub fn error(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Check::new(name, Status::Error).value("error", err.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(input: impl Into<String>, fixture: Option<String>) -> Self {
        Report {
            version: VERSION.to_string(),
            input: input.into(),
            fixture,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 3 if any check errored, 1 if any failed, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Error) > 0 {
            3
        } else if self.count(Status::Fail) > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "kenmotsu {}  input {}", self.version, self.input);
        if let Some(f) = &self.fixture {
            let _ = write!(out, "  fixture {f}");
        }
        out.push('\n');
        for c in &self.checks {
            let _ = writeln!(out, "{:<8}{}", c.status.as_str(), c.name);
            for (k, v) in &c.values {
                let _ = writeln!(out, "        {k} = {v}");
            }
            if let Some(res) = &c.residual {
                for (k, v) in res {
                    let _ = writeln!(out, "        residual {k} = {v}");
                }
            }
        }
        let _ = writeln!(
            out,
            "{} pass, {} fail, {} error, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Error),
            self.count(Status::Skipped)
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("sha256:00", Some("kenmotsu3".into()));
        r.push(Check::new("scalar-curvature", Status::Pass).value("r", "-6"));
        let mut res = BTreeMap::new();
        res.insert("T1,T1".to_string(), "1/2".to_string());
        r.push(Check::new("soliton-residual", Status::Fail).residual(res));
        r.push(Check::new("structure", Status::Skipped));
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn json_shape() {
        let v: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["fixture"], "kenmotsu3");
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["checks"][0]["values"]["r"], "-6");
        assert_eq!(v["checks"][2]["status"], "skipped");
        assert!(v["checks"][0].get("residual").is_none());
    }

    #[test]
    fn exit_codes() {
        let mut r = Report::new("x", None);
        r.push(Check::new("a", Status::Pass));
        r.push(Check::new("b", Status::Skipped));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::new("c", Status::Fail));
        assert_eq!(r.exit_code(), 1);
        r.push(Check::error("d", "pole"));
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn text_summary() {
        let text = sample().to_text();
        assert!(text.contains("fail    soliton-residual"));
        assert!(text.ends_with("1 pass, 1 fail, 0 error, 1 skipped\n"));
    }
}
