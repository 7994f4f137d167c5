use serde::Serialize;
use serde_json::Value;

use super::config::ConfigEcho;

pub const SCHEMA_VERSION: u32 = 1;

/// At most this many counterexamples are stored per check.
pub const MAX_STORED_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Counterexample,
    PrecisionExhausted,
}

impl Verdict {
    /// Process exit status for the verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Counterexample => 1,
            Verdict::PrecisionExhausted => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub trial_seed: u64,
    pub detail: String,
    pub inputs: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The statement being exercised, in words.
    pub statement: String,
    pub trials: u64,
    pub passes: u64,
    pub precision_exhausted: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    pub wall_time_ms: f64,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0 && self.precision_exhausted == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub config: ConfigEcho,
    pub annotations: Vec<String>,
    pub checks: Vec<CheckRecord>,
    /// Certificates, counts and other structured results.
    pub attachments: Value,
    pub verdict: Verdict,
    pub wall_time_ms: f64,
}

impl SuiteReport {
    pub(crate) fn assemble(
        suite: &str,
        config: ConfigEcho,
        annotations: Vec<String>,
        checks: Vec<CheckRecord>,
        attachments: Value,
        wall_time_ms: f64,
    ) -> Self {
        let verdict = if checks.iter().any(|c| c.counterexample_count > 0) {
            Verdict::Counterexample
        } else if checks.iter().any(|c| c.precision_exhausted > 0) {
            Verdict::PrecisionExhausted
        } else {
            Verdict::Pass
        };
        SuiteReport {
            schema: SCHEMA_VERSION,
            suite: suite.to_string(),
            config,
            annotations,
            checks,
            attachments,
            verdict,
            wall_time_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with every timing field removed, for diffing runs.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        strip_timing(&mut v);
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// One line per check plus the verdict.
    pub fn summary(&self) -> String {
        let mut out = format!("suite {} ({})\n", self.suite, self.verdict_word());
        for note in &self.annotations {
            out.push_str(&format!("  note: {note}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<4} {:<32} {}/{} passed, {} counterexamples, {} precision-exhausted, {:.0} ms\n",
                if c.passed() { "ok" } else { "FAIL" },
                c.id,
                c.passes,
                c.trials,
                c.counterexample_count,
                c.precision_exhausted,
                c.wall_time_ms
            ));
        }
        out
    }

    fn verdict_word(&self) -> &'static str {
        match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Counterexample => "counterexample found",
            Verdict::PrecisionExhausted => "precision exhausted",
        }
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.retain(|k, _| k != "wall_time_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
