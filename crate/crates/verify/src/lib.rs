//! Reporting helpers for the acceptance suite: one `PASS`/`FAIL` line per
//! criterion, followed by indented detail lines.

use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub elapsed: Duration,
}

/// Collects the evidence for one criterion.
#[derive(Debug)]
pub struct Criterion {
    id: u32,
    title: String,
    failures: Vec<String>,
    details: Vec<String>,
    start: Instant,
}

impl Criterion {
    pub fn new(id: u32, title: &str) -> Self {
        Criterion {
            id,
            title: title.to_string(),
            failures: Vec::new(),
            details: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Records a sub-check; failing ones are listed under the criterion.
    pub fn check(&mut self, ok: bool, what: impl Into<String>) -> bool {
        let what = what.into();
        if ok {
            self.details.push(format!("ok    {what}"));
        } else {
            self.details.push(format!("FAIL  {what}"));
            self.failures.push(what);
        }
        ok
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.details.push(format!("note  {}", text.into()));
    }

    pub fn warn(&mut self, text: impl Into<String>) {
        self.details.push(format!("WARNING {}", text.into()));
    }

    /// Fails the criterion if it ran longer than `budget`.
    pub fn finish(mut self, budget: Duration) -> Outcome {
        let elapsed = self.start.elapsed();
        self.check(
            elapsed <= budget,
            format!(
                "runtime {:.2}s within budget {}s",
                elapsed.as_secs_f64(),
                budget.as_secs()
            ),
        );
        Outcome {
            id: self.id,
            title: self.title,
            passed: self.failures.is_empty(),
            details: self.details,
            elapsed,
        }
    }
}

/// Prints every outcome; returns whether all passed.
pub fn report(outcomes: &[Outcome]) -> bool {
    for o in outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {}. {} ({:.2}s)",
            o.id,
            o.title,
            o.elapsed.as_secs_f64()
        );
        for d in &o.details {
            println!("         {d}");
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("acceptance: {passed}/{} criteria passed", outcomes.len());
    passed == outcomes.len()
}
