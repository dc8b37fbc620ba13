use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::IntalgError;

/// Interval endpoint in `ℚ ∪ {−∞, +∞}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn int(k: i64) -> Bound {
        Bound::Finite(BigRational::from_integer(k.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Bound {
        Bound::Finite(BigRational::new(n.into(), d.into()))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Bound::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::PosInf => f.write_str("+inf"),
            Bound::Finite(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Bound::Finite(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl FromStr for Bound {
    type Err = IntalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "-inf" => return Ok(Bound::NegInf),
            "+inf" | "inf" => return Ok(Bound::PosInf),
            _ => {}
        }
        let bad = || IntalgError::BadElement(s.to_string());
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        Ok(Bound::Finite(BigRational::new(n, d)))
    }
}

/// An element of the interval algebra: a finite union of half-open
/// intervals `[a, b)`, kept sorted, disjoint and non-touching, so that equal
/// elements are structurally equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BElem {
    intervals: Vec<(Bound, Bound)>,
}

impl BElem {
    pub fn zero() -> Self {
        BElem::default()
    }

    pub fn one() -> Self {
        BElem {
            intervals: vec![(Bound::NegInf, Bound::PosInf)],
        }
    }

    /// `[a, b)`; empty when `a ≥ b`.
    pub fn interval(a: Bound, b: Bound) -> Self {
        BElem::from_intervals(vec![(a, b)])
    }

    /// `[n, n + 1)`.
    pub fn unit(n: i64) -> Self {
        BElem::interval(Bound::int(n), Bound::int(n + 1))
    }

    /// Normal form of an arbitrary list; empty intervals are dropped.
    pub fn from_intervals(mut v: Vec<(Bound, Bound)>) -> Self {
        v.retain(|(a, b)| a < b && *a != Bound::PosInf && *b != Bound::NegInf);
        v.sort();
        let mut out: Vec<(Bound, Bound)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match out.last_mut() {
                Some((_, hi)) if a <= *hi => {
                    if b > *hi {
                        *hi = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        BElem { intervals: out }
    }

    pub fn intervals(&self) -> &[(Bound, Bound)] {
        &self.intervals
    }

    pub fn is_zero(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn join(&self, o: &BElem) -> BElem {
        let mut v = self.intervals.clone();
        v.extend(o.intervals.iter().cloned());
        BElem::from_intervals(v)
    }

    pub fn meet(&self, o: &BElem) -> BElem {
        let (x, y) = (&self.intervals, &o.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < x.len() && j < y.len() {
            let lo = (&x[i].0).max(&y[j].0);
            let hi = (&x[i].1).min(&y[j].1);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if x[i].1 < y[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        BElem::from_intervals(out)
    }

    pub fn complement(&self) -> BElem {
        let mut out = Vec::new();
        let mut cur = Bound::NegInf;
        for (a, b) in &self.intervals {
            if cur < *a {
                out.push((cur, a.clone()));
            }
            cur = b.clone();
        }
        if cur < Bound::PosInf {
            out.push((cur, Bound::PosInf));
        }
        BElem { intervals: out }
    }

    /// `self ∧ ¬o`.
    pub fn minus(&self, o: &BElem) -> BElem {
        self.meet(&o.complement())
    }

    pub fn leq(&self, o: &BElem) -> bool {
        self.minus(o).is_zero()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        let p = Bound::Finite(q.clone());
        self.intervals.iter().any(|(a, b)| *a <= p && p < *b)
    }

    /// Least bound, `None` for zero.
    pub fn lower(&self) -> Option<&Bound> {
        self.intervals.first().map(|(a, _)| a)
    }

    /// Greatest bound, `None` for zero.
    pub fn upper(&self) -> Option<&Bound> {
        self.intervals.last().map(|(_, b)| b)
    }

    /// Random element with endpoints in `[lo, hi]`, denominators up to 4, and
    /// an occasional infinite end.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, max_parts: usize) -> BElem {
        let k = rng.gen_range(0..=max_parts);
        let mut pts: Vec<Bound> = (0..2 * k)
            .map(|_| {
                let d = rng.gen_range(1..=4);
                Bound::ratio(rng.gen_range(lo * d..=hi * d), d)
            })
            .collect();
        pts.sort();
        if k > 0 && rng.gen_bool(0.15) {
            pts[0] = Bound::NegInf;
        }
        if k > 0 && rng.gen_bool(0.15) {
            pts[2 * k - 1] = Bound::PosInf;
        }
        BElem::from_intervals(pts.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect())
    }
}

impl fmt::Display for BElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, b)) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "[{a},{b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for BElem {
    type Err = IntalgError;

    /// `0`, `1`, or `;`-separated `[a,b)` with `a < b`; input need not be in
    /// normal form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "0" | "" => return Ok(BElem::zero()),
            "1" => return Ok(BElem::one()),
            _ => {}
        }
        let bad = || IntalgError::BadElement(s.to_string());
        let mut v = Vec::new();
        for part in t.split(';') {
            let inner = part
                .trim()
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            let (a, b): (Bound, Bound) = (a.parse()?, b.parse()?);
            if a >= b {
                return Err(bad());
            }
            v.push((a, b));
        }
        Ok(BElem::from_intervals(v))
    }
}
