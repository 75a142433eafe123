use serde_json::{json, Value};

#[derive(Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, details: Value) -> Self {
        Check { name: name.into(), pass, details }
    }
}

/// The JSON document printed by every command.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    /// Set when the input could not be processed.
    pub error: Option<String>,
    pub headline: String,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.into(),
            inputs,
            results: Value::Null,
            checks: Vec::new(),
            error: None,
            headline: String::new(),
        }
    }

    pub fn failure(command: &str, inputs: Value, msg: &str) -> Self {
        let mut r = Report::new(command, inputs);
        r.results = json!({ "error": msg });
        r.checks.push(Check::new("input", false, json!(msg)));
        r.error = Some(msg.into());
        r
    }

    pub fn check(&mut self, name: &str, pass: bool, details: Value) {
        self.checks.push(Check::new(name, pass, details));
    }

    pub fn exit_code(&self) -> u8 {
        if self.error.is_some() {
            1
        } else if self.checks.iter().any(|c| !c.pass) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "pass": c.pass, "details": c.details }))
            .collect();
        let doc = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": checks,
        });
        serde_json::to_string_pretty(&doc).expect("JSON values always serialize")
    }

    pub fn summary(&self) -> String {
        if let Some(e) = &self.error {
            return format!("{}: error: {e}", self.command);
        }
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        let status = if failed.is_empty() {
            let n = self.checks.len();
            format!("{n} check{} passed", if n == 1 { "" } else { "s" })
        } else {
            format!("FAILED checks: {}", failed.join(", "))
        };
        if self.headline.is_empty() {
            format!("{}: {status}", self.command)
        } else {
            format!("{}: {}; {status}", self.command, self.headline)
        }
    }
}
