//! Reporting helpers for the acceptance suite in `tests/acceptance.rs`.

use std::io::Write;
use std::time::Duration;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.pass && self.elapsed <= self.budget
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {}: {} [{:.2} s of {} s]",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }

    /// Writes the PASS/FAIL line straight to stdout, bypassing the test
    /// harness capture so that it shows for passing tests too, then fails
    /// the test if the criterion is not met.
    pub fn finish(self) {
        let line = self.line();
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{line}");
        let _ = out.flush();
        drop(out);
        assert!(self.passed(), "{line}");
    }
}
