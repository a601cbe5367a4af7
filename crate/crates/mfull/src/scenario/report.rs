use serde::Serialize;
use serde_json::Value;
use std::fmt::Write;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
    /// A conditional statement whose hypothesis never held within bounds.
    Vacuous,
    Error,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unknown => "unknown",
            Verdict::Vacuous => "vacuous",
            Verdict::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub seed: u64,
    /// Resolution length bound.
    pub bound: usize,
    /// Degree bound for reported Hilbert data.
    pub degrees: usize,
    /// Random candidates per weight class in the m-full search.
    pub budget: usize,
    pub window: (usize, usize),
    pub spair_budget: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: 1, bound: 8, degrees: 24, budget: 8, window: (1, 6), spair_budget: crate::groebner::default_budget() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub label: String,
    pub verdict: Verdict,
    pub values: Value,
    /// Wall time; kept out of JSON so reruns compare byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn new(label: impl Into<String>, verdict: Verdict, values: Value) -> Self {
        CheckOutcome { label: label.into(), verdict, values, elapsed: Duration::ZERO }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub engine: String,
    pub version: String,
    pub kind: String,
    pub name: String,
    pub field: String,
    /// Prime-field runs stand in for characteristic zero.
    pub field_heuristic: bool,
    pub settings: Settings,
    pub checks: Vec<CheckOutcome>,
    pub verdict: Verdict,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(kind: &str, name: &str, field: &super::FieldSpec, settings: Settings) -> Self {
        Report {
            engine: "mfull".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            kind: kind.into(),
            name: name.into(),
            field: field.label(),
            field_heuristic: !matches!(field, super::FieldSpec::Q),
            settings,
            checks: Vec::new(),
            verdict: Verdict::Pass,
            elapsed: Duration::ZERO,
        }
    }

    /// Error beats fail beats everything else; unknown and vacuous checks
    /// do not fail a report.
    pub fn finish(mut self) -> Self {
        self.verdict = if self.checks.iter().any(|c| c.verdict == Verdict::Error) {
            Verdict::Error
        } else if self.checks.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Error => 2,
            Verdict::Fail => 1,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn check(&self, label: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.label == label)
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let st = &self.settings;
        let _ = writeln!(s, "{} {} | {} {} | field {}{}", self.engine, self.version, self.kind, self.name, self.field, if self.field_heuristic { " (heuristic)" } else { "" });
        let _ = writeln!(
            s,
            "seed {} | bound {} | degrees {} | window {}..{} | candidates {} | s-pair budget {}",
            st.seed, st.bound, st.degrees, st.window.0, st.window.1, st.budget, st.spair_budget
        );
        let w = self.checks.iter().map(|c| c.label.chars().count()).max().unwrap_or(5).clamp(5, 60);
        let _ = writeln!(s, "{:>3}  {:<w$}  {:<8}  {:>9}  values", "#", "check", "verdict", "ms");
        for (i, c) in self.checks.iter().enumerate() {
            let label: String = c.label.chars().take(w).collect();
            let _ = writeln!(s, "{:>3}  {:<w$}  {:<8}  {:>9.1}  {}", i + 1, label, c.verdict.label(), c.elapsed.as_secs_f64() * 1e3, summary(&c.values));
        }
        let _ = writeln!(s, "verdict: {} ({:.2} s)", self.verdict.label(), self.elapsed.as_secs_f64());
        s
    }
}

/// One-line rendering of a values object for the table.
fn summary(v: &Value) -> String {
    let mut out = match v {
        Value::Object(m) => m
            .iter()
            .filter(|(_, x)| !matches!(x, Value::Array(a) if a.len() > 12))
            .map(|(k, x)| format!("{k}={}", compact(x)))
            .collect::<Vec<_>>()
            .join(" "),
        x => compact(x),
    };
    if out.chars().count() > 160 {
        out = out.chars().take(157).collect::<String>() + "...";
    }
    out
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}
