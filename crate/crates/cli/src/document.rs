use std::collections::BTreeMap;
use std::fmt::Write as _;

use adaequalitas::kernel::DerivationTrace;
use serde::Serialize;
use serde_json::Value;

pub const TRACE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub rule: String,
    pub before: String,
    pub after: String,
    pub note: String,
}

/// Everything one command reports: what ran, on what, the steps taken and
/// the result.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceDocument {
    pub method: String,
    pub input: String,
    pub assumptions: Vec<String>,
    pub steps: Vec<StepRecord>,
    pub result: BTreeMap<String, Value>,
    /// One-line answer, printed last in text mode.
    pub summary: String,
}

#[derive(Serialize)]
struct Header<'a> {
    trace_version: u32,
    method: &'a str,
    input: &'a str,
    assumptions: &'a [String],
}

#[derive(Serialize)]
struct Footer<'a> {
    result: &'a BTreeMap<String, Value>,
    summary: &'a str,
}

impl TraceDocument {
    pub fn new(method: &str, input: impl Into<String>) -> Self {
        TraceDocument {
            method: method.to_string(),
            input: input.into(),
            assumptions: Vec::new(),
            steps: Vec::new(),
            result: BTreeMap::new(),
            summary: String::new(),
        }
    }

    pub fn with_trace(mut self, trace: &DerivationTrace) -> Self {
        let start = self.steps.len();
        self.steps
            .extend(trace.steps().iter().enumerate().map(|(i, s)| StepRecord {
                step: start + i + 1,
                rule: s.rule.as_str().to_string(),
                before: s.before.clone(),
                after: s.after.clone(),
                note: s.note.clone(),
            }));
        self
    }

    pub fn assume(mut self, text: impl Into<String>) -> Self {
        self.assumptions.push(text.into());
        self
    }

    pub fn set(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.result.insert(key.to_string(), value.into());
        self
    }

    pub fn summary(mut self, text: impl Into<String>) -> Self {
        self.summary = text.into();
        self
    }

    /// Line-delimited JSON: a versioned header, one record per step, then
    /// the result.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        let header = Header {
            trace_version: TRACE_VERSION,
            method: &self.method,
            input: &self.input,
            assumptions: &self.assumptions,
        };
        out.push_str(&serde_json::to_string(&header).expect("serializable"));
        out.push('\n');
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("serializable"));
            out.push('\n');
        }
        let footer = Footer {
            result: &self.result,
            summary: &self.summary,
        };
        out.push_str(&serde_json::to_string(&footer).expect("serializable"));
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "method: {}", self.method);
        let _ = writeln!(out, "input:  {}", self.input);
        if !self.assumptions.is_empty() {
            let _ = writeln!(out, "assumptions:");
            for a in &self.assumptions {
                let _ = writeln!(out, "  - {a}");
            }
        }
        let _ = writeln!(out);
        for s in &self.steps {
            let _ = writeln!(out, "{:>2}. {}", s.step, s.rule);
            for (label, text) in [
                ("before:", &s.before),
                ("after: ", &s.after),
                ("note:  ", &s.note),
            ] {
                if !text.is_empty() {
                    let _ = writeln!(out, "      {label} {text}");
                }
            }
        }
        if !self.result.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "result:");
            for (k, v) in &self.result {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "  {k}: {shown}");
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{}", self.summary);
        out
    }
}
