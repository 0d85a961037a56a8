//! JSON audit traces: `{command, seed, depth, params, steps, result, checks}`.
//! Object keys come out sorted, so equal inputs give byte-identical output.

use serde::Serialize;
use serde_json::{Map, Value};

/// Seed used when none is given on the command line.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trace {
    pub command: String,
    pub seed: Option<u64>,
    pub depth: Option<usize>,
    pub params: Map<String, Value>,
    pub steps: Vec<Value>,
    pub result: Value,
    pub checks: Vec<Check>,
}

impl Trace {
    pub fn new(command: &str) -> Self {
        Trace {
            command: command.into(),
            seed: None,
            depth: None,
            params: Map::new(),
            steps: Vec::new(),
            result: Value::Null,
            checks: Vec::new(),
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.into(), value.into());
    }

    pub fn step(&mut self, value: Value) {
        self.steps.push(value);
    }

    pub fn check(&mut self, name: &str, pass: bool) -> bool {
        self.checks.push(Check {
            name: name.into(),
            pass,
        });
        pass
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}
