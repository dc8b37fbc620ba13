//! Check records, reports, and the two built-in suites.
//!
//! Every check compares a library answer against an oracle written
//! independently here (brute force, closed forms, or pointwise evaluation).

mod acceptance;
mod gen;
mod properties;

use std::fmt::{Display, Write as _};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use acceptance::{acceptance, criteria, Criterion};
pub use gen::{random_expr, random_finperm};
pub use properties::properties;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl Record {
    pub fn new(
        name: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        got: impl Into<String>,
        pass: bool,
    ) -> Self {
        Record {
            name: name.into(),
            inputs: inputs.into(),
            expected: expected.into(),
            got: got.into(),
            pass,
        }
    }

    /// A record whose expected and got strings are compared for equality.
    pub fn compare(name: impl Into<String>, inputs: impl Into<String>, expected: String, got: String) -> Self {
        let pass = expected == got;
        Record::new(name, inputs, expected, got, pass)
    }
}

/// Records plus the command that produced them. Output is sorted by record
/// name, so it does not depend on the order checks ran in.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    records: Vec<Record>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = Record>) {
        self.records.extend(rs);
    }

    pub fn records(&self) -> Vec<&Record> {
        let mut v: Vec<&Record> = self.records.iter().collect();
        v.sort_by(|a, b| a.name.cmp(&b.name));
        v
    }

    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// ```text
    /// # <command>
    /// PASS <name>: <inputs> -> <got> (expected <expected>)
    /// summary: <n> checks, <p> passed, <f> failed
    /// ```
    pub fn render_text(&self) -> String {
        let mut s = format!("# {}\n", self.command);
        for r in self.records() {
            let tag = if r.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{tag} {}: {} -> {} (expected {})",
                r.name, r.inputs, r.got, r.expected
            );
        }
        let _ = writeln!(
            s,
            "summary: {} checks, {} passed, {} failed",
            self.records.len(),
            self.passed(),
            self.failed()
        );
        s
    }

    /// One line per record with fields in the fixed order `name pass inputs
    /// expected got`, then `summary command total passed failed`. Values
    /// containing spaces, quotes or `=` are double-quoted with `\` escapes.
    pub fn render_machine(&self) -> String {
        let mut s = String::new();
        for r in self.records() {
            let _ = writeln!(
                s,
                "record name={} pass={} inputs={} expected={} got={}",
                quote(&r.name),
                r.pass,
                quote(&r.inputs),
                quote(&r.expected),
                quote(&r.got)
            );
        }
        let _ = writeln!(
            s,
            "summary command={} total={} passed={} failed={}",
            quote(&self.command),
            self.records.len(),
            self.passed(),
            self.failed()
        );
        s
    }
}

/// Counts checks and keeps the first failure.
#[derive(Default)]
pub(crate) struct Tally {
    checks: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    pub(crate) fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            self.first.get_or_insert_with(what);
        }
    }

    pub(crate) fn equal<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: impl FnOnce() -> String) {
        let ok = got == want;
        self.check(ok, || format!("{}: got {got:?}, want {want:?}", what()));
    }

    /// Unwraps a library result, counting an error as a failed check.
    pub(crate) fn ok<T, E: Display>(&mut self, r: Result<T, E>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    pub(crate) fn within(&mut self, start: Instant, limit: Duration) {
        let elapsed = start.elapsed();
        self.check(elapsed < limit, || format!("runtime exceeded {}s", limit.as_secs()));
    }

    pub(crate) fn record(self, name: &str, inputs: impl Into<String>) -> Record {
        let expected = format!("{} checks pass", self.checks);
        let got = match self.first {
            None => expected.clone(),
            Some(f) => format!("{} of {} failed; first: {f}", self.failures, self.checks),
        };
        Record::new(name, inputs, expected, got, self.failures == 0)
    }
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn quote(v: &str) -> String {
    if !v.is_empty() && !v.contains([' ', '"', '=', '\\', '\t', '\n']) {
        return v.to_string();
    }
    let mut q = String::with_capacity(v.len() + 2);
    q.push('"');
    for c in v.chars() {
        match c {
            '"' | '\\' => {
                q.push('\\');
                q.push(c);
            }
            '\n' => q.push_str("\\n"),
            _ => q.push(c),
        }
    }
    q.push('"');
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_sort_and_count() {
        let mut r = Report::new("suite demo");
        r.push(Record::compare("b", "x", "1".into(), "1".into()));
        r.push(Record::compare("a", "y z", "1".into(), "2".into()));
        assert_eq!(r.passed(), 1);
        assert_eq!(r.records()[0].name, "a");
        let m = r.render_machine();
        assert_eq!(
            m,
            "record name=a pass=false inputs=\"y z\" expected=1 got=2\n\
             record name=b pass=true inputs=x expected=1 got=1\n\
             summary command=\"suite demo\" total=2 passed=1 failed=1\n"
        );
        assert!(r
            .render_text()
            .starts_with("# suite demo\nFAIL a: y z -> 2 (expected 1)\n"));
        assert_eq!(quote(""), "\"\"");
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
