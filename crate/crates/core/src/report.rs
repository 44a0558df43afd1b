//! Check results with first-failure witnesses.

use serde::Serialize;

use crate::scalar::{Scalar, Vars};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        inputs: impl Into<String>,
        residual: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(Witness {
                inputs: inputs.into(),
                residual: residual.into(),
            }),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends another report, prefixing its check names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}/{}", c.name);
            }
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Prints `sum_k v_k * label_k`, skipping zero components.
pub fn format_vector(vars: &Vars, v: &[Scalar], symbol: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let basis = format!("{symbol}{}", k + 1);
        let text = vars.print(c);
        parts.push(if c.is_one() {
            basis
        } else if text == "-1" {
            format!("-{basis}")
        } else {
            format!("({text})*{basis}")
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Basis tuple label such as `(e1, e2, ε1)`.
pub fn format_tuple(items: &[String]) -> String {
    format!("({})", items.join(", "))
}
