//! Pass/fail verdicts with concrete counterexample witnesses.

use std::fmt;

use crate::psoset::Elem;

/// The elements violating a verdict, plus a rendered explanation.
///
/// Witnesses are always the first violation in row-major scan order, so
/// repeated runs report the same tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<Elem>,
    pub note: String,
}

impl Witness {
    pub fn new(elements: Vec<Elem>, note: impl Into<String>) -> Self {
        Witness {
            elements,
            note: note.into(),
        }
    }
}

/// One named boolean outcome. A failed verdict always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass(name: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        Verdict {
            name: name.into(),
            passed: false,
            witness: Some(witness),
        }
    }

    pub fn from_option(name: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            None => Verdict::pass(name),
            Some(w) => Verdict::fail(name, w),
        }
    }
}

/// Ordered collection of verdicts produced by one checker run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub verdicts: Vec<Verdict>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn push(&mut self, verdict: Verdict) {
        self.verdicts.push(verdict);
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            if v.passed {
                writeln!(f, "PASS {}", v.name)?;
            } else {
                let note = v.witness.as_ref().map(|w| w.note.as_str()).unwrap_or("");
                writeln!(f, "FAIL {}: {}", v.name, note)?;
            }
        }
        Ok(())
    }
}
