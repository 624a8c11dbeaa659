//! Verifier reports: itemized verdicts with the first violating witness and
//! its residual, printed canonically.

use serde::Serialize;

use crate::symalg::{KVector, Naming, Poly};

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Item {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Item {
    pub fn pass(name: impl Into<String>) -> Self {
        Item { name: name.into(), status: Status::Pass, witness: None, residual: None, note: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>, residual: impl Into<String>) -> Self {
        Item {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            residual: Some(residual.into()),
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, note: impl Into<String>) -> Self {
        Item { name: name.into(), status: Status::Skipped, witness: None, residual: None, note: Some(note.into()) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_prefix(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}{}", self.name);
        self
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: &str, residual: &str) -> Self {
        if ok {
            Item::pass(name)
        } else {
            Item::fail(name, witness, residual)
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Report {
    pub check: String,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report { check: check.into(), items: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends another report's items with a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut it in other.items {
            it.name = format!("{prefix}/{}", it.name);
            self.items.push(it);
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }

    pub fn verdict(&self) -> Status {
        if self.items.iter().any(|i| i.status == Status::Fail) {
            Status::Fail
        } else if self.items.iter().any(|i| i.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Skipped
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn item(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.item(name).map(|i| i.status)
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("check {}: {}\n", self.check, self.verdict().as_str());
        for it in &self.items {
            s.push_str(&format!("  [{}] {}", it.status.as_str(), it.name));
            if let Some(n) = &it.note {
                s.push_str(&format!(" ({n})"));
            }
            s.push('\n');
            if let Some(w) = &it.witness {
                s.push_str(&format!("      at: {w}\n"));
            }
            if let Some(r) = &it.residual {
                s.push_str(&format!("      residual: {r}\n"));
            }
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }
}

/// Accumulates "this should vanish" cases and keeps the first violation.
pub struct ZeroCheck<'a> {
    name: String,
    naming: &'a Naming,
    cases: usize,
    first: Option<(String, String)>,
}

impl<'a> ZeroCheck<'a> {
    pub fn new(name: impl Into<String>, naming: &'a Naming) -> Self {
        ZeroCheck { name: name.into(), naming, cases: 0, first: None }
    }

    pub fn kvector(&mut self, witness: impl FnOnce() -> String, residual: &KVector) {
        self.cases += 1;
        if self.first.is_none() && !residual.is_zero() {
            self.first = Some((witness(), residual.display(self.naming)));
        }
    }

    pub fn poly(&mut self, witness: impl FnOnce() -> String, residual: &Poly) {
        self.cases += 1;
        if self.first.is_none() && !residual.is_zero() {
            self.first = Some((witness(), residual.display(&self.naming.coords)));
        }
    }

    /// Registers a precomputed violation text.
    pub fn text(&mut self, witness: impl FnOnce() -> String, residual: Option<String>) {
        self.cases += 1;
        if self.first.is_none() {
            if let Some(r) = residual {
                self.first = Some((witness(), r));
            }
        }
    }

    pub fn failed(&self) -> bool {
        self.first.is_some()
    }

    pub fn finish(self) -> Item {
        let note = format!("{} cases", self.cases);
        match self.first {
            None => Item::pass(self.name).with_note(note),
            Some((w, r)) => Item::fail(self.name, w, r).with_note(note),
        }
    }
}
