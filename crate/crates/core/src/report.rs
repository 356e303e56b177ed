//! Pass/fail bookkeeping for verification suites.

use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report {
            name: name.into(),
            ..Report::default()
        }
    }

    /// Records one check; `describe` is only called on failure.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.checked += 1;
        self.failures.push(msg);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures
            .extend(other.failures.into_iter().map(|f| format!("{}: {f}", other.name)));
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: ok ({} checks)", self.name, self.checked)
        } else {
            format!(
                "{}: {} of {} checks failed; first: {}",
                self.name,
                self.failures.len(),
                self.checked,
                self.failures[0]
            )
        }
    }
}
