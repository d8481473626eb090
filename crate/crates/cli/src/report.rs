use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

/// Outcome of one command. The JSON rendering leaves out the wall time so
/// that fixed inputs give byte-identical reports.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub output: Value,
    pub lines: Vec<String>,
    pub checks: Vec<Check>,
    pub counterexamples: Vec<Value>,
    pub wall_time: Duration,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            parameters: Map::new(),
            output: Value::Null,
            lines: Vec::new(),
            checks: Vec::new(),
            counterexamples: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.into(), value.into());
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Value) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn sorted_checks(&self) -> Vec<&Check> {
        let mut checks: Vec<&Check> = self.checks.iter().collect();
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        checks
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .sorted_checks()
            .into_iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "output": self.output,
            "checks": checks,
            "counterexamples": self.counterexamples,
            "passed": self.passed(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            let _ = writeln!(out, "{line}");
        }
        for c in self.sorted_checks() {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Value::Null => {
                    let _ = writeln!(out, "{verdict} {}", c.name);
                }
                d => {
                    let _ = writeln!(out, "{verdict} {}  {d}", c.name);
                }
            }
        }
        for x in &self.counterexamples {
            let _ = writeln!(out, "counterexample: {x}");
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.passed).count();
            let verdict = if failed == 0 { "pass" } else { "fail" };
            let _ = writeln!(out, "{}: {verdict} ({} checks, {failed} failed)", self.command, self.checks.len());
        }
        let _ = writeln!(out, "wall time: {:.3}s", self.wall_time.as_secs_f64());
        out
    }
}
