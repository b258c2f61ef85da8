//! Validation reports shared by the signature, 2-category, and limit checkers.
//!
//! Checkers never abort on the first bad axiom instance: they scan the whole
//! finite datum and return every violation, sorted by a canonical key so that
//! reports are deterministic regardless of internal iteration order.

use std::fmt;

/// One violated invariant, identified by a stable code plus a human-readable
/// description of the offending instance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValidationEntry {
    /// Stable machine-readable code, e.g. `globularity`, `assoc-coherence`.
    pub code: String,
    /// The cell or table entry the violation is about.
    pub subject: String,
    /// What failed, with both sides of the offending equation where relevant.
    pub detail: String,
}

impl ValidationEntry {
    pub fn new(
        code: impl Into<String>,
        subject: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        ValidationEntry {
            code: code.into(),
            subject: subject.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for ValidationEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.code, self.subject, self.detail)
    }
}

/// The result of an exhaustive invariant scan. Empty iff the datum is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport::default()
    }

    pub fn push(&mut self, entry: ValidationEntry) {
        self.entries.push(entry);
    }

    pub fn add(&mut self, code: &str, subject: impl Into<String>, detail: impl Into<String>) {
        self.push(ValidationEntry::new(code, subject, detail));
    }

    /// Absorb another report, prefixing subjects with a context label.
    pub fn absorb(&mut self, context: &str, other: ValidationReport) {
        for mut e in other.entries {
            e.subject = format!("{context}: {}", e.subject);
            self.entries.push(e);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[ValidationEntry] {
        &self.entries
    }

    pub fn has_code(&self, code: &str) -> bool {
        self.entries.iter().any(|e| e.code == code)
    }

    /// Canonicalize entry order. Called before a report leaves a checker.
    pub fn finish(mut self) -> Self {
        self.entries.sort();
        self.entries.dedup();
        self
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "ok");
        }
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
