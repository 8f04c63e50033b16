//! Property-check reports and their line-oriented `key=value` rendering.

use std::fmt;
use std::time::Duration;

/// One failed trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// The trial seed; `None` for exhaustive runs.
    pub seed: Option<u64>,
    /// Index of the input in the enumeration, for exhaustive runs.
    pub index: Option<usize>,
    pub counterexample: String,
    pub expected: String,
    pub actual: String,
}

/// How the inputs of a run were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Random { seed: u64, max_size: usize },
    Exhaustive { max_size: usize },
}

/// The outcome of checking one property.
#[derive(Debug, Clone)]
pub struct Report {
    pub property: String,
    pub mode: Mode,
    /// Inputs on which the property was actually checked.
    pub trials: usize,
    /// Inputs drawn but outside the property's precondition (for example,
    /// not normalizing within fuel, or an enumeration cap was reached).
    pub skipped: usize,
    pub failures: Vec<Failure>,
    /// Extra measurements, rendered as `note.<key>=<value>`.
    pub notes: Vec<(String, String)>,
    pub elapsed: Duration,
}

/// Number of failures spelled out in the rendered records.
const SHOWN_FAILURES: usize = 5;

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.notes.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Stable `key=value` lines, one field per line. Elapsed time is left
    /// out so that records of equal runs are identical.
    pub fn records(&self) -> Vec<String> {
        let mut out = vec![format!("property={}", self.property)];
        match self.mode {
            Mode::Random { seed, max_size } => {
                out.push("mode=random".into());
                out.push(format!("seed={seed}"));
                out.push(format!("max_size={max_size}"));
            }
            Mode::Exhaustive { max_size } => {
                out.push("mode=exhaustive".into());
                out.push(format!("max_size={max_size}"));
            }
        }
        out.push(format!("trials={}", self.trials));
        out.push(format!("skipped={}", self.skipped));
        out.push(format!("failures={}", self.failures.len()));
        for (k, v) in &self.notes {
            out.push(format!("note.{k}={v}"));
        }
        for (i, f) in self.failures.iter().take(SHOWN_FAILURES).enumerate() {
            if let Some(s) = f.seed {
                out.push(format!("failure.{i}.seed={s}"));
            }
            if let Some(n) = f.index {
                out.push(format!("failure.{i}.index={n}"));
            }
            out.push(format!("failure.{i}.counterexample={}", f.counterexample));
            out.push(format!("failure.{i}.expected={}", f.expected));
            out.push(format!("failure.{i}.actual={}", f.actual));
        }
        out.push(format!("status={}", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.records() {
            writeln!(f, "{line}")?;
        }
        writeln!(f, "elapsed_ms={}", self.elapsed.as_millis())
    }
}
