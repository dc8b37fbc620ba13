use super::{FinPerm, PermError, PermExpr, Window};

/// Periodic involution pattern: within each block `[period·k, period·(k+1))`
/// the listed offset pairs are swapped and the listed offsets are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSwaps {
    period: u64,
    pairs: Vec<(u64, u64)>,
    fixed: Vec<u64>,
}

impl PeriodicSwaps {
    /// `pairs` and `fixed` must partition `0..period`, and `pairs` must be
    /// nonempty so the pattern has infinitely many 2-cycles.
    pub fn new(period: u64, pairs: Vec<(u64, u64)>, fixed: Vec<u64>) -> Result<Self, PermError> {
        let mut seen = vec![false; period as usize];
        let offsets = pairs.iter().flat_map(|&(a, b)| [a, b]).chain(fixed.iter().copied());
        for o in offsets {
            if o >= period || seen[o as usize] {
                return Err(PermError::BadCertificate("offsets must partition the period"));
            }
            seen[o as usize] = true;
        }
        if seen.iter().any(|s| !s) || pairs.is_empty() {
            return Err(PermError::BadCertificate("offsets must partition the period"));
        }
        Ok(PeriodicSwaps { period, pairs, fixed })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    fn image(&self, x: u64) -> u64 {
        let (block, off) = (x / self.period, x % self.period);
        for &(a, b) in &self.pairs {
            if off == a {
                return block * self.period + b;
            }
            if off == b {
                return block * self.period + a;
            }
        }
        x
    }

    fn pair(&self, k: u64) -> (u64, u64) {
        let n = self.pairs.len() as u64;
        let (a, b) = self.pairs[(k % n) as usize];
        let base = (k / n) * self.period;
        (base + a, base + b)
    }

    fn fixed_point(&self, k: u64) -> Option<u64> {
        if self.fixed.is_empty() {
            return None;
        }
        let n = self.fixed.len() as u64;
        Some((k / n) * self.period + self.fixed[(k % n) as usize])
    }
}

/// An involution with infinitely many 2-cycles, given as a periodic pattern
/// relabelled by a finitary permutation `q` (the pattern conjugated by `q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapCertificate {
    pattern: PeriodicSwaps,
    relabel: FinPerm,
}

impl SwapCertificate {
    pub fn periodic(pattern: PeriodicSwaps) -> Self {
        SwapCertificate {
            pattern,
            relabel: FinPerm::identity(),
        }
    }

    /// Certificate for `q⁻¹ f q` given one for `f`.
    pub fn conjugated(&self, q: &FinPerm) -> Self {
        SwapCertificate {
            pattern: self.pattern.clone(),
            relabel: self.relabel.then(q),
        }
    }

    pub fn image(&self, x: u64) -> u64 {
        let base = self.relabel.apply_inverse(x);
        self.relabel.apply(self.pattern.image(base))
    }

    pub fn is_moved(&self, x: u64) -> bool {
        self.image(x) != x
    }

    pub fn has_fixed_points(&self) -> bool {
        !self.pattern.fixed.is_empty()
    }

    /// The k-th swapped pair, in pattern order.
    pub fn pair(&self, k: u64) -> (u64, u64) {
        let (a, b) = self.pattern.pair(k);
        (self.relabel.apply(a), self.relabel.apply(b))
    }

    pub fn fixed_point(&self, k: u64) -> Option<u64> {
        self.pattern.fixed_point(k).map(|f| self.relabel.apply(f))
    }

    /// Past this point the certificate is purely periodic with period
    /// [`PeriodicSwaps::period`], aligned to multiples of the period.
    pub fn periodic_from(&self) -> u64 {
        let p = self.pattern.period;
        match self.relabel.max_point() {
            Some(m) => (m / p + 1) * p,
            None => 0,
        }
    }

    pub fn period(&self) -> u64 {
        self.pattern.period
    }

    /// Checks the certificate against evaluation on every window point.
    pub fn verify_on(&self, e: &PermExpr, w: Window) -> Result<bool, PermError> {
        for x in 0..w.bound() {
            if e.eval(x)? != self.image(x) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blk_pattern() {
        let c = SwapCertificate::periodic(PeriodicSwaps::new(4, vec![(0, 1)], vec![2, 3]).unwrap());
        assert_eq!(c.image(4), 5);
        assert_eq!(c.image(6), 6);
        assert_eq!(c.pair(2), (8, 9));
        assert_eq!(c.fixed_point(3), Some(7));
    }

    #[test]
    fn conjugated_relabels() {
        let c = SwapCertificate::periodic(PeriodicSwaps::new(4, vec![(0, 1)], vec![2, 3]).unwrap());
        let q = FinPerm::transposition(0, 2).unwrap();
        let d = c.conjugated(&q);
        // q⁻¹ f q: 2 -> 0 -> 1 -> 1
        assert_eq!(d.image(2), 1);
        assert_eq!(d.image(0), 0);
        assert_eq!(d.periodic_from(), 4);
    }

    #[test]
    fn rejects_bad_partition() {
        assert!(PeriodicSwaps::new(4, vec![(0, 1)], vec![2]).is_err());
        assert!(PeriodicSwaps::new(2, vec![], vec![0, 1]).is_err());
        assert!(PeriodicSwaps::new(2, vec![(0, 0)], vec![1]).is_err());
    }
}
