use std::fmt;

use serde::Serialize;

/// Structural failures: malformed input, mismatched groupoids, bad parameters.
///
/// Axiom violations are not errors; they are collected in a [`ValidationReport`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown label `{label}` in {context}")]
    UnknownLabel { context: String, label: String },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("groupoid mismatch: {0}")]
    GroupoidMismatch(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("unbound generator `{0}`")]
    Unbound(String),
    #[error("bibundle is not biprincipal: {0}")]
    NotBiprincipal(String),
    #[error("action law fails: {0}")]
    ActionLaw(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json error in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One violated axiom together with the labels that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
    pub detail: String,
}

/// Outcome of an exhaustive axiom check. Empty means every axiom holds.
///
/// Only the first witness per axiom is kept; `counts` records how many
/// instances failed in total.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub counts: Vec<(String, usize)>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, witness: Vec<String>, detail: impl Into<String>) {
        if let Some(entry) = self.counts.iter_mut().find(|(a, _)| a == axiom) {
            entry.1 += 1;
            return;
        }
        self.counts.push((axiom.to_string(), 1));
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witness,
            detail: detail.into(),
        });
    }

    pub fn violates(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn violation(&self, axiom: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for v in other.violations {
            let n = other
                .counts
                .iter()
                .find(|(a, _)| *a == v.axiom)
                .map_or(1, |(_, n)| *n);
            self.counts.push((v.axiom.clone(), n));
            self.violations.push(v);
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let n = self
                .counts
                .iter()
                .find(|(a, _)| *a == v.axiom)
                .map_or(1, |(_, n)| *n);
            write!(f, "{} at ({}) x{}: {}", v.axiom, v.witness.join(", "), n, v.detail)?;
        }
        Ok(())
    }
}
