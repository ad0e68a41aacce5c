use std::fmt;

use serde::Serialize;

use crate::error::AlgebraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for the record, never fails the run.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub instance: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(instance: impl Into<String>, seed: u64) -> Self {
        Self { instance: instance.into(), seed, checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn suite(&mut self, name: &str) -> Recorder<'_> {
        Recorder { suite: name.to_string(), checks: &mut self.checks }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance {} (seed {})", self.instance, self.seed)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            write!(f, "{tag} [{}] {}", c.suite, c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        let total = self.checks.iter().filter(|c| c.status != Status::Info).count();
        write!(f, "{} of {} checks passed", total - failed, total)
    }
}

/// Appends checks for one suite.
pub struct Recorder<'a> {
    suite: String,
    checks: &'a mut Vec<Check>,
}

/// Outcome of a single sample: `Err` carries the witness.
pub type Sample = std::result::Result<(), String>;

impl From<AlgebraError> for String {
    fn from(e: AlgebraError) -> Self {
        e.to_string()
    }
}

impl Recorder<'_> {
    fn push(&mut self, name: &str, status: Status, detail: Option<String>) {
        self.checks.push(Check { suite: self.suite.clone(), name: name.to_string(), status, detail });
    }

    pub fn info(&mut self, name: &str, detail: impl Into<String>) {
        self.push(name, Status::Info, Some(detail.into()));
    }

    pub fn fail(&mut self, name: &str, witness: impl Into<String>) {
        self.push(name, Status::Fail, Some(witness.into()));
    }

    /// A single deterministic check.
    pub fn check(&mut self, name: &str, outcome: Sample) {
        match outcome {
            Ok(()) => self.push(name, Status::Pass, None),
            Err(w) => self.push(name, Status::Fail, Some(w)),
        }
    }

    /// Runs `count` samples and keeps the first failing witness.
    pub fn sampled(&mut self, name: &str, count: usize, mut sample: impl FnMut(usize) -> Sample) {
        for i in 0..count {
            if let Err(w) = sample(i) {
                self.push(name, Status::Fail, Some(format!("sample {i}: {w}")));
                return;
            }
        }
        self.push(name, Status::Pass, Some(format!("{count} samples")));
    }

    /// Runs over an explicit case list and keeps the first failing witness.
    pub fn cases<T>(&mut self, name: &str, cases: impl IntoIterator<Item = T>, mut case: impl FnMut(T) -> Sample) {
        let mut count = 0;
        for c in cases {
            count += 1;
            if let Err(w) = case(c) {
                self.push(name, Status::Fail, Some(w));
                return;
            }
        }
        self.push(name, Status::Pass, Some(format!("{count} case{}", if count == 1 { "" } else { "s" })));
    }
}

/// `Ok` when `lhs == rhs`, otherwise a witness showing both sides.
pub fn expect_eq<T: PartialEq + fmt::Display>(what: &str, lhs: &T, rhs: &T) -> Sample {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: {lhs} ≠ {rhs}"))
    }
}

pub fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Sample {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}
