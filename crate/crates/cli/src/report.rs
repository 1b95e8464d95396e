use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use forge_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// True unless the check ran and failed; a skip does not fail the run.
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, passed: bool, details: Value) -> Self {
        CheckResult {
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            passed,
            reason: None,
            details,
            timing_ms: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Skip,
            passed: true,
            reason: Some(reason.into()),
            details: Value::Null,
            timing_ms: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn error(name: impl Into<String>, e: &Error) -> Self {
        let mut c = CheckResult::new(name, false, json!({ "error": e.to_string() }));
        c.reason = Some(e.to_string());
        c
    }

    /// Unsuitable primes and degenerate reductions are skips, anything
    /// else is a failure.
    pub fn from_error(name: impl Into<String>, e: &Error) -> Self {
        match e {
            Error::PrimeUnsuitable(_) | Error::DegenerateParams(_) => CheckResult::skip(name, e.to_string()),
            _ => CheckResult::error(name, e),
        }
    }

    /// Runs `f`, recording its wall time and turning errors into results.
    pub fn timed(name: &str, f: impl FnOnce() -> forge_core::Result<CheckResult>) -> Self {
        let t = Instant::now();
        let mut c = f().unwrap_or_else(|e| CheckResult::from_error(name, &e));
        c.elapsed = t.elapsed();
        c
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Value,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: &str, params: Value, seed: u64, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        RunReport { command: command.into(), params, seed, checks, passed }
    }

    /// Copies measured wall times into the serialized output, which makes the
    /// report nondeterministic.
    pub fn with_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.timing_ms = Some(c.elapsed.as_secs_f64() * 1e3);
        }
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Serialization with timings stripped, for comparing runs.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(cs) = v["checks"].as_array_mut() {
            for c in cs {
                if let Some(o) = c.as_object_mut() {
                    o.remove("timing_ms");
                }
            }
        }
        v.to_string()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            match &c.reason {
                Some(r) => out.push_str(&format!("{tag} {} ({r})\n", c.name)),
                None => out.push_str(&format!("{tag} {}\n", c.name)),
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{}: {} checks, {} failed, seed {}\n",
            self.command,
            self.checks.len(),
            failed,
            self.seed
        ));
        out
    }
}
