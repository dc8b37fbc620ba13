//! Coding an enumerated set `A` into commutator identities.
//!
//! ω is split into columns `R_i` (`i ∈ ℤ`), column `i` listed increasingly as
//! `c_i^0 < c_i^1 < …`. Four permutations are built:
//!
//! * `w` shifts every column one step right, `c_i^j ↦ c_{i+1}^j`;
//! * `g0` swaps `c_0^{2j} ↔ c_0^{2j+1}` and `g1` swaps `c_0^{2j+1} ↔ c_0^{2j+2}`;
//! * `b` swaps `c_n^t ↔ c_n^{t+1}` whenever the enumeration gives `h(t) = n`.
//!
//! Conjugating `b` so that column `n` lands on column 0 and commuting with
//! `g0`/`g1` reveals whether `n` was enumerated, and at which parity of
//! stage. With left-to-right action that conjugator is `w^{-n}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::pairing::{fold, pair, unfold, unpair};
use crate::perm::{Atom, AtomRegistry, AtomRule, PermError, PermExpr, Window};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CeError {
    #[error("enumeration repeats value {value} at stages {first} and {second}")]
    NonInjective { value: u64, first: u64, second: u64 },
    #[error("window must reach point {needed} to cover column 0 past the horizon")]
    WindowTooSmall { needed: u64 },
    #[error("line {line}: expected `stage value`")]
    BadLine { line: usize },
    #[error("stage {stage} is not below horizon {horizon}")]
    StageOutOfRange { stage: u64, horizon: u64 },
    #[error("unknown set `{0}` (expected evens, empty, primes25 or @file)")]
    UnknownSet(String),
    #[error("commutators disagree with the enumeration at n = {0}")]
    Inconsistent(u64),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Bijection `ℤ × ω → ω`, `(i, j) ↦ π(fold(i), j)`, increasing in `j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColumnSchemeZ;

impl ColumnSchemeZ {
    pub fn encode(self, column: i64, index: u64) -> u64 {
        pair(fold(column), index)
    }

    pub fn decode(self, x: u64) -> (i64, u64) {
        let (a, j) = unpair(x);
        (unfold(a), j)
    }
}

pub fn default_scheme_z() -> ColumnSchemeZ {
    ColumnSchemeZ
}

/// A finite injective enumeration `h` defined on stages below `horizon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumerator {
    name: String,
    horizon: u64,
    by_stage: BTreeMap<u64, u64>,
    by_value: BTreeMap<u64, u64>,
}

pub const PRIMES25: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

impl Enumerator {
    pub fn from_pairs(
        name: impl Into<String>,
        pairs: impl IntoIterator<Item = (u64, u64)>,
        horizon: u64,
    ) -> Result<Self, CeError> {
        let mut by_stage = BTreeMap::new();
        let mut by_value = BTreeMap::new();
        for (t, n) in pairs {
            if t >= horizon {
                return Err(CeError::StageOutOfRange { stage: t, horizon });
            }
            if let Some(&first) = by_value.get(&n) {
                return Err(CeError::NonInjective {
                    value: n,
                    first,
                    second: t,
                });
            }
            // A repeated stage simply overwrites; keep the value map in sync.
            if let Some(old) = by_stage.insert(t, n) {
                by_value.remove(&old);
            }
            by_value.insert(n, t);
        }
        Ok(Enumerator {
            name: name.into(),
            horizon,
            by_stage,
            by_value,
        })
    }

    /// `h(t) = 2t`.
    pub fn evens(horizon: u64) -> Self {
        Self::from_pairs("evens", (0..horizon).map(|t| (t, 2 * t)), horizon).unwrap()
    }

    pub fn empty(horizon: u64) -> Self {
        Self::from_pairs("empty", [], horizon).unwrap()
    }

    /// `h(t)` is the t-th prime for `t < 25`.
    pub fn primes25(horizon: u64) -> Self {
        let pairs = PRIMES25.iter().enumerate().map(|(t, &p)| (t as u64, p));
        Self::from_pairs("primes25", pairs.take_while(|&(t, _)| t < horizon), horizon).unwrap()
    }

    pub fn named(name: &str, horizon: u64) -> Result<Self, CeError> {
        match name {
            "evens" => Ok(Self::evens(horizon)),
            "empty" => Ok(Self::empty(horizon)),
            "primes25" => Ok(Self::primes25(horizon)),
            _ => Err(CeError::UnknownSet(name.to_string())),
        }
    }

    /// Lines `t n`; blank lines and `#` comments are skipped. The horizon
    /// is one past the largest stage unless given.
    pub fn parse_table(name: &str, text: &str, horizon: Option<u64>) -> Result<Self, CeError> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace().map(str::parse::<u64>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(t)), Some(Ok(n)), None) => pairs.push((t, n)),
                _ => return Err(CeError::BadLine { line: i + 1 }),
            }
        }
        let horizon = horizon.unwrap_or_else(|| pairs.iter().map(|&(t, _)| t + 1).max().unwrap_or(0));
        Self::from_pairs(name, pairs, horizon)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn value_at(&self, stage: u64) -> Option<u64> {
        self.by_stage.get(&stage).copied()
    }

    /// The stage enumerating `n`, if any below the horizon.
    pub fn stage_of(&self, n: u64) -> Option<u64> {
        self.by_value.get(&n).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.by_stage.iter().map(|(&t, &n)| (t, n))
    }
}

struct ShiftRule(ColumnSchemeZ);

impl AtomRule for ShiftRule {
    fn forward(&self, x: u64) -> Result<u64, PermError> {
        let (i, j) = self.0.decode(x);
        Ok(self.0.encode(i + 1, j))
    }

    fn inverse(&self, y: u64) -> Result<u64, PermError> {
        let (i, j) = self.0.decode(y);
        Ok(self.0.encode(i - 1, j))
    }
}

/// Swaps column-0 indices `2j+offset ↔ 2j+offset+1` for `offset ∈ {0, 1}`.
struct ColumnZeroSwaps {
    scheme: ColumnSchemeZ,
    offset: u64,
}

impl ColumnZeroSwaps {
    fn image(&self, x: u64) -> u64 {
        let (i, j) = self.scheme.decode(x);
        if i != 0 || j < self.offset {
            return x;
        }
        let partner = if (j - self.offset).is_multiple_of(2) {
            j + 1
        } else {
            j - 1
        };
        self.scheme.encode(0, partner)
    }
}

impl AtomRule for ColumnZeroSwaps {
    fn forward(&self, x: u64) -> Result<u64, PermError> {
        Ok(self.image(x))
    }

    fn inverse(&self, y: u64) -> Result<u64, PermError> {
        Ok(self.image(y))
    }
}

struct EnumerationSwaps {
    scheme: ColumnSchemeZ,
    stage_of: BTreeMap<u64, u64>,
}

impl EnumerationSwaps {
    fn image(&self, x: u64) -> u64 {
        let (i, j) = self.scheme.decode(x);
        if i < 0 {
            return x;
        }
        match self.stage_of.get(&(i as u64)) {
            Some(&t) if j == t => self.scheme.encode(i, t + 1),
            Some(&t) if j == t + 1 => self.scheme.encode(i, t),
            _ => x,
        }
    }
}

impl AtomRule for EnumerationSwaps {
    fn forward(&self, x: u64) -> Result<u64, PermError> {
        Ok(self.image(x))
    }

    fn inverse(&self, y: u64) -> Result<u64, PermError> {
        Ok(self.image(y))
    }
}

pub fn gen_w(s: ColumnSchemeZ) -> PermExpr {
    PermExpr::Atom(Atom::new("w", None, Arc::new(ShiftRule(s))))
}

pub fn gen_g0(s: ColumnSchemeZ) -> PermExpr {
    PermExpr::Atom(Atom::new(
        "g0",
        None,
        Arc::new(ColumnZeroSwaps { scheme: s, offset: 0 }),
    ))
}

pub fn gen_g1(s: ColumnSchemeZ) -> PermExpr {
    PermExpr::Atom(Atom::new(
        "g1",
        None,
        Arc::new(ColumnZeroSwaps { scheme: s, offset: 1 }),
    ))
}

/// Injectivity is enforced when the [`Enumerator`] is built, so the
/// transpositions are disjoint and `b` is an involution.
pub fn gen_b(s: ColumnSchemeZ, e: &Enumerator) -> PermExpr {
    let rule = EnumerationSwaps {
        scheme: s,
        stage_of: e.by_value.clone(),
    };
    PermExpr::Atom(Atom::new("b", None, Arc::new(rule)))
}

/// Standard atoms plus `w`, `g0`, `g1`, `b` for this enumeration.
pub fn registry(s: ColumnSchemeZ, e: &Enumerator) -> AtomRegistry {
    let mut r = AtomRegistry::standard();
    for g in [gen_w(s), gen_g0(s), gen_g1(s), gen_b(s, e)] {
        if let PermExpr::Atom(a) = g {
            r.insert(a);
        }
    }
    r
}

/// The two probes for `n`: `[g0, b^{w^{-n}}]` and `[g1, b^{w^{-n}}]`.
pub fn probes(s: ColumnSchemeZ, e: &Enumerator, n: u64) -> (PermExpr, PermExpr) {
    let shifted = gen_b(s, e).conj(gen_w(s).pow(-(n as i64)));
    (gen_g0(s).comm(shifted.clone()), gen_g1(s).comm(shifted))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeVerdict {
    In { stage: u64 },
    NotByHorizon { horizon: u64 },
}

/// Outcome of both probes on column 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub verdict: DecodeVerdict,
    pub g0_nontrivial: bool,
    pub g1_nontrivial: bool,
}

/// Smallest window holding column-0 indices up to `horizon + 2`.
pub fn column_zero_window(s: ColumnSchemeZ, horizon: u64) -> Window {
    Window::new(s.encode(0, horizon + 2) + 1).unwrap()
}

/// Column-0 points inside `w`.
pub fn column_zero_points(s: ColumnSchemeZ, w: Window) -> impl Iterator<Item = u64> {
    (0..).map(move |j| s.encode(0, j)).take_while(move |&x| w.contains(x))
}

/// Evaluates both probes on column 0. Their support lies inside column 0
/// at indices `t, t+1, t+2` (or `t-1` for the g1 probe), so covering indices
/// up to `horizon + 1` makes the check exact relative to the horizon.
pub fn probe_membership(n: u64, s: ColumnSchemeZ, e: &Enumerator, w: Window) -> Result<ProbeReport, CeError> {
    let needed = s.encode(0, e.horizon() + 1);
    if !w.contains(needed) {
        return Err(CeError::WindowTooSmall { needed: needed + 1 });
    }
    let (c0, c1) = probes(s, e, n);
    let mut g0_nontrivial = false;
    let mut g1_nontrivial = false;
    for x in column_zero_points(s, w) {
        g0_nontrivial |= c0.eval(x)? != x;
        g1_nontrivial |= c1.eval(x)? != x;
        if g0_nontrivial && g1_nontrivial {
            break;
        }
    }
    let verdict = if g0_nontrivial || g1_nontrivial {
        let stage = e.stage_of(n).ok_or(CeError::Inconsistent(n))?;
        DecodeVerdict::In { stage }
    } else {
        DecodeVerdict::NotByHorizon { horizon: e.horizon() }
    };
    Ok(ProbeReport {
        verdict,
        g0_nontrivial,
        g1_nontrivial,
    })
}

pub fn decode_membership(n: u64, s: ColumnSchemeZ, e: &Enumerator, w: Window) -> Result<DecodeVerdict, CeError> {
    probe_membership(n, s, e, w).map(|r| r.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{equal_on, window_image};
    use std::collections::BTreeSet;

    const S: ColumnSchemeZ = ColumnSchemeZ;

    #[test]
    fn scheme_values() {
        assert_eq!(S.encode(0, 0), 0);
        assert_eq!(S.encode(0, 1), 2);
        assert_eq!(S.encode(-1, 0), 1);
        for x in 0..5000 {
            let (i, j) = S.decode(x);
            assert_eq!(S.encode(i, j), x);
        }
        for i in -5..5 {
            for j in 0..50 {
                assert!(S.encode(i, j) < S.encode(i, j + 1));
            }
        }
    }

    #[test]
    fn w_shifts_columns() {
        let w = gen_w(S);
        assert_eq!(w.eval(S.encode(0, 5)).unwrap(), S.encode(1, 5));
        assert_eq!(w.eval(S.encode(-1, 0)).unwrap(), S.encode(0, 0));
        // injective with inverse on a window
        let img = window_image(&w, Window::new(64).unwrap()).unwrap();
        let vals: BTreeSet<u64> = img.values().copied().collect();
        assert_eq!(vals.len(), 64);
        for (x, y) in img {
            assert_eq!(w.eval_inverse(y).unwrap(), x);
        }
    }

    #[test]
    fn g0_g1_on_column_zero() {
        let (g0, g1) = (gen_g0(S), gen_g1(S));
        assert_eq!(g0.eval(S.encode(0, 0)).unwrap(), S.encode(0, 1));
        assert_eq!(g1.eval(S.encode(0, 0)).unwrap(), S.encode(0, 0));
        assert_eq!(g1.eval(S.encode(0, 1)).unwrap(), S.encode(0, 2));
        assert_eq!(g0.eval(S.encode(3, 7)).unwrap(), S.encode(3, 7));
    }

    #[test]
    fn b_for_evens() {
        let e = Enumerator::evens(8);
        let b = gen_b(S, &e);
        assert_eq!(b.eval(S.encode(4, 2)).unwrap(), S.encode(4, 3));
        assert_eq!(b.eval(S.encode(1, 0)).unwrap(), S.encode(1, 0));
        let w = Window::new(128).unwrap();
        assert!(equal_on(&PermExpr::Prod(vec![b.clone(), b]), &PermExpr::identity(), w).unwrap());
    }

    #[test]
    fn rejects_repeats() {
        let err = Enumerator::from_pairs("x", [(0, 3), (1, 3)], 4).unwrap_err();
        assert_eq!(
            err,
            CeError::NonInjective {
                value: 3,
                first: 0,
                second: 1
            }
        );
        assert!(matches!(
            Enumerator::parse_table("f", "0 1\n1 1\n", None),
            Err(CeError::NonInjective { .. })
        ));
        assert_eq!(
            Enumerator::parse_table("f", "0 x", None),
            Err(CeError::BadLine { line: 1 })
        );
    }

    #[test]
    fn decodes_evens_with_horizon_8() {
        let e = Enumerator::evens(8);
        let w = column_zero_window(S, 8);
        let r0 = probe_membership(0, S, &e, w).unwrap();
        assert_eq!(r0.verdict, DecodeVerdict::In { stage: 0 });
        assert!(r0.g1_nontrivial && !r0.g0_nontrivial);
        assert_eq!(
            decode_membership(1, S, &e, w).unwrap(),
            DecodeVerdict::NotByHorizon { horizon: 8 }
        );
        let r2 = probe_membership(2, S, &e, w).unwrap();
        assert_eq!(r2.verdict, DecodeVerdict::In { stage: 1 });
        assert!(r2.g0_nontrivial && !r2.g1_nontrivial);
    }

    #[test]
    fn small_window_is_rejected() {
        let e = Enumerator::evens(8);
        let err = decode_membership(0, S, &e, Window::new(10).unwrap()).unwrap_err();
        assert!(matches!(err, CeError::WindowTooSmall { .. }));
    }

    #[test]
    fn literal_conjugation_direction_is_trivial_on_column_zero() {
        // With left-to-right action `b^{w^1}` moves column -1, where b is the
        // identity, so the literal commutator is trivial whatever A is.
        let e = Enumerator::evens(8);
        let lit = gen_g0(S).comm(gen_b(S, &e).conj(gen_w(S)));
        let w = column_zero_window(S, 8);
        assert!(equal_on(&lit, &PermExpr::identity(), w).unwrap());
        let (c0, c1) = probes(S, &e, 1);
        assert!(equal_on(&c0, &PermExpr::identity(), w).unwrap());
        assert!(equal_on(&c1, &PermExpr::identity(), w).unwrap());
    }

    #[test]
    fn probes_fix_other_columns() {
        let e = Enumerator::evens(16);
        for n in 0..8 {
            let (c0, c1) = probes(S, &e, n);
            for col in [-1i64, 1, 2] {
                for j in 0..40 {
                    let x = S.encode(col, j);
                    assert_eq!(c0.eval(x).unwrap(), x);
                    assert_eq!(c1.eval(x).unwrap(), x);
                }
            }
        }
    }
}
