//! Machine-readable verdicts. Keys are sorted, so exact-backend output is
//! stable byte for byte. Float residuals are only reported on the float
//! backend; exact certificates carry counts and exact values.

use std::collections::BTreeMap;

use poncelet_core::numeric::Backend;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub operation: String,
    pub backend: String,
    pub inputs: BTreeMap<String, Value>,
    pub evidence: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub verdict: &'static str,
}

impl Certificate {
    pub fn new(operation: &str, backend: Backend) -> Self {
        Certificate {
            operation: operation.into(),
            backend: backend.name().into(),
            inputs: BTreeMap::new(),
            evidence: BTreeMap::new(),
            checks: Vec::new(),
            warnings: Vec::new(),
            error: None,
            verdict: "pass",
        }
    }

    fn exact(&self) -> bool {
        self.backend == Backend::Exact.name()
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn evidence(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.evidence.insert(key.into(), value.into());
        self
    }

    /// Float evidence; dropped on the exact backend.
    pub fn float_evidence(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        if !self.exact() {
            self.evidence.insert(key.into(), value.into());
        }
        self
    }

    pub fn check(&mut self, name: &str, passed: bool) -> bool {
        self.push(name, passed, None, None);
        passed
    }

    /// `value <= tol`; the value is kept off exact certificates.
    pub fn residual(&mut self, name: &str, value: f64, tol: f64) -> bool {
        let passed = value <= tol;
        let shown = (!self.exact()).then_some(value);
        self.push(name, passed, shown, Some(tol));
        passed
    }

    fn push(&mut self, name: &str, passed: bool, value: Option<f64>, tol: Option<f64>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            value: value.map(sanitize),
            tol,
        });
        if !passed {
            self.verdict = "fail";
        }
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn fail(&mut self, error: impl std::fmt::Display) {
        self.error = Some(error.to_string());
        self.verdict = "fail";
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
        s.push('\n');
        s
    }
}

// JSON has no infinities
fn sanitize(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}
