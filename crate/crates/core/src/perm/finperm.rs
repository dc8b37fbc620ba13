use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::PermError;

/// A permutation of ω with finite support. Fixed points are implicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinPerm {
    moves: BTreeMap<u64, u64>,
}

impl FinPerm {
    pub fn identity() -> Self {
        FinPerm::default()
    }

    /// Builds from an explicit point map. Identity entries are dropped.
    pub fn from_map(map: BTreeMap<u64, u64>) -> Result<Self, PermError> {
        let moves: BTreeMap<u64, u64> = map.into_iter().filter(|(a, b)| a != b).collect();
        let domain: BTreeSet<u64> = moves.keys().copied().collect();
        let range: BTreeSet<u64> = moves.values().copied().collect();
        if range.len() != moves.len() || domain != range {
            return Err(PermError::NotAPermutation);
        }
        Ok(FinPerm { moves })
    }

    /// A single cycle `(a0 a1 ... ak)`, mapping each entry to the next.
    pub fn cycle(points: &[u64]) -> Result<Self, PermError> {
        if points.len() < 2 {
            return Err(PermError::MalformedCycle);
        }
        let distinct: BTreeSet<u64> = points.iter().copied().collect();
        if distinct.len() != points.len() {
            return Err(PermError::MalformedCycle);
        }
        let mut moves = BTreeMap::new();
        for (i, &p) in points.iter().enumerate() {
            moves.insert(p, points[(i + 1) % points.len()]);
        }
        Ok(FinPerm { moves })
    }

    pub fn transposition(a: u64, b: u64) -> Result<Self, PermError> {
        Self::cycle(&[a, b])
    }

    /// Product of cycles, applied left to right.
    pub fn from_cycles(cycles: &[Vec<u64>]) -> Result<Self, PermError> {
        let mut acc = FinPerm::identity();
        for c in cycles {
            acc = acc.then(&FinPerm::cycle(c)?);
        }
        Ok(acc)
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.moves.get(&x).copied().unwrap_or(x)
    }

    pub fn apply_inverse(&self, y: u64) -> u64 {
        // Walk the cycle through y back to its predecessor.
        let mut cur = y;
        loop {
            let next = self.apply(cur);
            if next == y {
                return cur;
            }
            cur = next;
        }
    }

    pub fn inverse(&self) -> FinPerm {
        FinPerm {
            moves: self.moves.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &FinPerm) -> FinPerm {
        let support: BTreeSet<u64> = self.support().chain(other.support()).collect();
        let moves = support
            .into_iter()
            .map(|x| (x, other.apply(self.apply(x))))
            .filter(|(a, b)| a != b)
            .collect();
        FinPerm { moves }
    }

    pub fn is_identity(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.moves.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.moves.len()
    }

    pub fn max_point(&self) -> Option<u64> {
        self.moves.keys().next_back().copied()
    }

    pub fn moves(&self) -> &BTreeMap<u64, u64> {
        &self.moves
    }

    /// Nontrivial cycles, each rotated to start at its least point, sorted.
    pub fn cycles(&self) -> Vec<Vec<u64>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.moves.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut cyc = vec![start];
            let mut cur = self.apply(start);
            while cur != start {
                seen.insert(cur);
                cyc.push(cur);
                cur = self.apply(cur);
            }
            out.push(cyc);
        }
        out
    }

    /// Map from cycle length to number of nontrivial cycles of that length.
    pub fn cycle_type(&self) -> BTreeMap<usize, usize> {
        let mut ty = BTreeMap::new();
        for c in self.cycles() {
            *ty.entry(c.len()).or_insert(0) += 1;
        }
        ty
    }

    pub fn two_cycles(&self) -> usize {
        self.cycle_type().get(&2).copied().unwrap_or(0)
    }

    pub fn is_involution(&self) -> bool {
        self.moves.iter().all(|(&a, &b)| self.apply(b) == a)
    }

    pub fn pow(&self, k: i64) -> FinPerm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let moves = self
            .moves
            .keys()
            .map(|&x| {
                let mut y = x;
                for _ in 0..k.unsigned_abs() {
                    y = base.apply(y);
                }
                (x, y)
            })
            .filter(|(a, b)| a != b)
            .collect();
        FinPerm { moves }
    }
}

impl fmt::Debug for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinPerm(")?;
        if self.is_identity() {
            write!(f, "id")?;
        }
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        write!(f, ")")
    }
}

/// Finds `h` with `h⁻¹ p h = q` (left-to-right action), matching cycles of
/// equal length in order of their least points.
pub fn conjugator_finitary(p: &FinPerm, q: &FinPerm) -> Result<FinPerm, PermError> {
    if p.cycle_type() != q.cycle_type() {
        return Err(PermError::CycleTypeMismatch);
    }
    let mut by_len_q: BTreeMap<usize, Vec<Vec<u64>>> = BTreeMap::new();
    for c in q.cycles() {
        by_len_q.entry(c.len()).or_default().push(c);
    }
    let mut h = BTreeMap::new();
    let mut taken: BTreeMap<usize, usize> = BTreeMap::new();
    for c in p.cycles() {
        let idx = taken.entry(c.len()).or_insert(0);
        let target = &by_len_q[&c.len()][*idx];
        *idx += 1;
        for (a, b) in c.iter().zip(target) {
            h.insert(*a, *b);
        }
    }
    // Points of the common carrier fixed by p go to points fixed by q.
    let carrier: BTreeSet<u64> = p.support().chain(q.support()).collect();
    let fixed_p: Vec<u64> = carrier.iter().copied().filter(|x| p.apply(*x) == *x).collect();
    let fixed_q: Vec<u64> = carrier.iter().copied().filter(|x| q.apply(*x) == *x).collect();
    for (a, b) in fixed_p.into_iter().zip(fixed_q) {
        h.insert(a, b);
    }
    FinPerm::from_map(h)
}
