//! Verification reports shared by every suite.

use crate::ratfun::Scalar;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

pub const SCHEMA: &str = "yangian-forge/report/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(&self) -> String {
        match self {
            Status::Pass => "pass".into(),
            Status::Fail => "fail".into(),
            Status::Skipped(r) => format!("skipped ({r})"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    /// The identity under test, e.g. "Y1 relation".
    pub anchor: String,
    pub params: BTreeMap<String, String>,
    #[serde(flatten)]
    pub status: Status,
    /// "0" or the leading term of the first nonzero residual entry.
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            residual: "0".into(),
            detail: None,
            wall_ms: None,
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Check {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    /// Pass iff every residual is zero; records the first nonzero one.
    pub fn residuals<'a>(mut self, rs: impl IntoIterator<Item = &'a Scalar>) -> Check {
        let bad = rs.into_iter().find(|r| !r.is_zero());
        match bad {
            None => {
                self.status = Status::Pass;
                self.residual = "0".into();
            }
            Some(r) => {
                self.status = Status::Fail;
                self.residual = r.leading_term_text();
            }
        }
        self
    }

    pub fn outcome(mut self, ok: bool, residual: impl Into<String>) -> Check {
        self.status = Status::from_bool(ok);
        self.residual = residual.into();
        self
    }

    pub fn skipped(mut self, reason: impl Into<String>) -> Check {
        self.status = Status::Skipped(reason.into());
        self.residual = "-".into();
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Check {
        self.detail = Some(d.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Turns an expected failure into a passing check and vice versa.
pub fn negative_control(c: Check, id: &str) -> Check {
    let failed = c.failed();
    let residual = c.residual.clone();
    Check::new(id, format!("negative control: {}", c.anchor))
        .outcome(failed, if failed { format!("nonzero as expected: {residual}") } else { "0 (control did not fire)".into() })
}

/// Runs `f` and stores its wall time on the check when `timed` is set.
pub fn timed(timed: bool, f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    let mut c = f();
    if timed {
        c.wall_ms = Some(t.elapsed().as_millis() as u64);
    }
    c
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, mut checks: Vec<Check>) -> VerificationReport {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = checks.iter().all(|c| !c.failed());
        VerificationReport { schema: SCHEMA, suite: suite.into(), params: BTreeMap::new(), pass, checks }
    }

    pub fn with_params(mut self, p: BTreeMap<String, String>) -> VerificationReport {
        self.params = p;
        self
    }

    pub fn single(suite: impl Into<String>, c: Check) -> VerificationReport {
        VerificationReport::new(suite, vec![c])
    }

    pub fn merge(suite: impl Into<String>, parts: Vec<VerificationReport>) -> VerificationReport {
        let checks = parts
            .into_iter()
            .flat_map(|r| {
                let s = r.suite.clone();
                r.checks.into_iter().map(move |mut c| {
                    c.id = format!("{s}/{}", c.id);
                    c
                })
            })
            .collect();
        VerificationReport::new(suite, checks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("{:<8} {}  [{}]", c.status.label(), c.id, c.anchor));
            if c.failed() {
                s.push_str(&format!("  residual: {}", c.residual));
            }
            s.push('\n');
        }
        let (p, f, k) = self.checks.iter().fold((0, 0, 0), |(p, f, k), c| match c.status {
            Status::Pass => (p + 1, f, k),
            Status::Fail => (p, f + 1, k),
            Status::Skipped(_) => (p, f, k + 1),
        });
        s.push_str(&format!(
            "suite {}: {} ({p} passed, {f} failed, {k} skipped)\n",
            self.suite,
            if self.pass { "PASS" } else { "FAIL" }
        ));
        s
    }
}
