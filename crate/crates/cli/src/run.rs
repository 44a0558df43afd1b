//! The run report printed by every command.

use std::io::Write;

use lsa_core::{Check, Report, Witness};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Input {
    pub name: String,
    pub sha256: String,
}

impl Input {
    pub fn new(name: impl Into<String>, bytes: &[u8]) -> Self {
        Input {
            name: name.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<Check> for CheckLine {
    fn from(c: Check) -> Self {
        CheckLine {
            name: c.name,
            passed: c.passed,
            witness: c.witness,
            detail: c.detail,
        }
    }
}

/// Everything a command reports. Wall-clock times are kept out of the
/// serialized form so that identical runs give identical bytes.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub trials: usize,
    pub inputs: Vec<Input>,
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Value>,
    pub passed: bool,
    #[serde(skip)]
    pub stages: Vec<(String, u128)>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, trials: usize) -> Self {
        RunReport {
            tool: "lsa",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            seed,
            trials,
            inputs: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            output: None,
            passed: true,
            stages: Vec::new(),
        }
    }

    pub fn input(&mut self, input: Input) {
        self.inputs.push(input);
    }

    /// Adds a module report, prefixing its check names.
    pub fn absorb(&mut self, prefix: &str, report: Report) {
        let mut r = Report::new();
        r.absorb(prefix, report);
        for c in r.checks {
            self.push(c);
        }
        self.notes.extend(r.notes);
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Runs `f` and records its wall time as a stage.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = std::time::Instant::now();
        let out = f();
        self.stages
            .push((stage.into(), start.elapsed().as_millis()));
        out
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn write_json(&self, out: &mut impl Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    pub fn write_text(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "lsa {} ({})", self.command, self.version)?;
        for i in &self.inputs {
            writeln!(out, "  input {} sha256:{}", i.name, &i.sha256[..16])?;
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            match &c.witness {
                Some(w) => writeln!(out, "  {mark} {} at {} -> {}", c.name, w.inputs, w.residual)?,
                None => writeln!(out, "  {mark} {}", c.name)?,
            }
            if let Some(d) = &c.detail {
                writeln!(out, "       {d}")?;
            }
        }
        for n in &self.notes {
            writeln!(out, "  note: {n}")?;
        }
        if let Some(doc) = &self.output {
            writeln!(out, "{}", serde_json::to_string_pretty(doc)?)?;
        }
        for (stage, ms) in &self.stages {
            writeln!(out, "  time {stage}: {ms} ms")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(
            out,
            "{}: {} checks, {} failed",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed
        )
    }
}
