use std::collections::BTreeSet;

use super::Pi2Error;

/// A total relation `R(n, t)`; `n ∈ A` iff `R(n, t)` holds for infinitely
/// many `t`.
///
/// Every variant knows its own answer, and for the `n ∉ A` cases a stage
/// bound past which `R(n, ·)` stays false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi2Predicate {
    Always,
    Never,
    /// `t < n`
    Lt,
    /// `n` even
    Even,
    /// Finite set of true `(n, t)` pairs; false elsewhere.
    Table(BTreeSet<(u64, u64)>),
}

impl Pi2Predicate {
    pub fn named(name: &str) -> Result<Self, Pi2Error> {
        match name {
            "always" => Ok(Pi2Predicate::Always),
            "never" => Ok(Pi2Predicate::Never),
            "lt" => Ok(Pi2Predicate::Lt),
            "even" => Ok(Pi2Predicate::Even),
            _ => Err(Pi2Error::UnknownPredicate(name.to_string())),
        }
    }

    /// Lines `n t 0|1`; lines with `0` are accepted and ignored.
    pub fn parse_table(text: &str) -> Result<Self, Pi2Error> {
        let mut set = BTreeSet::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let parsed = match f.as_slice() {
                [n, t, v] => n.parse::<u64>().ok().zip(t.parse::<u64>().ok()).zip(match *v {
                    "0" => Some(false),
                    "1" => Some(true),
                    _ => None,
                }),
                _ => None,
            };
            match parsed {
                Some(((n, t), true)) => {
                    set.insert((n, t));
                }
                Some((_, false)) => {}
                None => return Err(Pi2Error::BadTableLine { line: i + 1 }),
            }
        }
        Ok(Pi2Predicate::Table(set))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Pi2Predicate::Always => "always",
            Pi2Predicate::Never => "never",
            Pi2Predicate::Lt => "lt",
            Pi2Predicate::Even => "even",
            Pi2Predicate::Table(_) => "table",
        }
    }

    pub fn holds(&self, n: u64, t: u64) -> bool {
        match self {
            Pi2Predicate::Always => true,
            Pi2Predicate::Never => false,
            Pi2Predicate::Lt => t < n,
            Pi2Predicate::Even => n.is_multiple_of(2),
            Pi2Predicate::Table(s) => s.contains(&(n, t)),
        }
    }

    /// Whether `n ∈ A`.
    pub fn truth_class(&self, n: u64) -> bool {
        match self {
            Pi2Predicate::Always => true,
            Pi2Predicate::Even => n.is_multiple_of(2),
            Pi2Predicate::Never | Pi2Predicate::Lt | Pi2Predicate::Table(_) => false,
        }
    }

    /// Stabilization certificate: `Some(b)` when `R(n, t)` is false for
    /// every `t ≥ b`; `None` when no such bound exists.
    pub fn false_from(&self, n: u64) -> Option<u64> {
        match self {
            Pi2Predicate::Always => None,
            Pi2Predicate::Never => Some(0),
            Pi2Predicate::Lt => Some(n),
            Pi2Predicate::Even if n.is_multiple_of(2) => None,
            Pi2Predicate::Even => Some(0),
            Pi2Predicate::Table(s) => Some(
                s.range((n, 0)..=(n, u64::MAX))
                    .next_back()
                    .map(|&(_, t)| t + 1)
                    .unwrap_or(0),
            ),
        }
    }
}
