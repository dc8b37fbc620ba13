use std::collections::{BTreeMap, BTreeSet};

use super::{PermError, PermExpr, Window};

/// Cycle statistics of a permutation restricted to a finite point set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleProfile {
    /// Cycle length ↦ number of cycles lying entirely inside the point set.
    pub counts: BTreeMap<usize, usize>,
    /// Points whose orbit leaves the set, or outruns the step budget, before
    /// closing.
    pub escapes: usize,
}

impl CycleProfile {
    pub fn count(&self, len: usize) -> usize {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    pub fn two_cycles(&self) -> usize {
        self.count(2)
    }

    pub fn points_in_cycles(&self) -> usize {
        self.counts.iter().map(|(l, c)| l * c).sum()
    }
}

/// Verdict on the "finitely vs infinitely many 2-cycles" question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    /// Exactly this many 2-cycles, backed by a finiteness certificate.
    FinTwoCycles(usize),
    /// At least `two_cycles` 2-cycles seen inside a window of this size.
    InfEvidence {
        two_cycles: usize,
        window: u64,
    },
    Unknown,
}

pub fn window_image(e: &PermExpr, w: Window) -> Result<BTreeMap<u64, u64>, PermError> {
    w.points().map(|x| Ok((x, e.eval(x)?))).collect()
}

/// True iff `e1` and `e2` agree on every window point. Sound for
/// disequality only.
pub fn equal_on(e1: &PermExpr, e2: &PermExpr, w: Window) -> Result<bool, PermError> {
    for x in w.points() {
        if e1.eval(x)? != e2.eval(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn cycle_profile(e: &PermExpr, w: Window, step_budget: u64) -> Result<CycleProfile, PermError> {
    let pts: BTreeSet<u64> = w.points().collect();
    profile_on(e, &pts, step_budget.max(w.bound()))
}

/// Cycle profile restricted to an arbitrary finite point set.
pub fn profile_on(e: &PermExpr, points: &BTreeSet<u64>, step_budget: u64) -> Result<CycleProfile, PermError> {
    let mut profile = CycleProfile::default();
    let mut done: BTreeSet<u64> = BTreeSet::new();
    for &start in points {
        if done.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        let mut cur = e.eval(start)?;
        let mut closed = false;
        let mut steps = 1u64;
        loop {
            if cur == start {
                closed = true;
                break;
            }
            if !points.contains(&cur) || done.contains(&cur) || steps >= step_budget {
                break;
            }
            orbit.push(cur);
            cur = e.eval(cur)?;
            steps += 1;
        }
        if closed {
            *profile.counts.entry(orbit.len()).or_insert(0) += 1;
        } else {
            profile.escapes += orbit.len();
        }
        done.extend(orbit);
    }
    Ok(profile)
}

/// Finitary expressions get an exact count; otherwise enough 2-cycles in
/// the window count as evidence of infinitely many.
pub fn classify(e: &PermExpr, w: Window, evidence_threshold: usize) -> Result<ClassVerdict, PermError> {
    if let Some(f) = e.finitary()? {
        return Ok(ClassVerdict::FinTwoCycles(f.two_cycles()));
    }
    let profile = cycle_profile(e, w, w.default_budget())?;
    if profile.two_cycles() >= evidence_threshold {
        Ok(ClassVerdict::InfEvidence {
            two_cycles: profile.two_cycles(),
            window: w.bound(),
        })
    } else {
        Ok(ClassVerdict::Unknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::atoms::{blk, swapadj, z};
    use crate::perm::FinPerm;

    fn w(n: u64) -> Window {
        Window::new(n).unwrap()
    }

    #[test]
    fn images() {
        let id = PermExpr::identity();
        let m = window_image(&id, w(4)).unwrap();
        assert!(m.iter().all(|(a, b)| a == b));
        let t = PermExpr::fin(FinPerm::transposition(0, 1).unwrap());
        let m = window_image(&t, w(3)).unwrap();
        assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 0), (2, 2)]);
        let c = PermExpr::fin(FinPerm::cycle(&[0, 1, 2]).unwrap()).pow(3);
        assert!(window_image(&c, w(3)).unwrap().iter().all(|(a, b)| a == b));
    }

    #[test]
    fn profiles() {
        let t = PermExpr::fin(FinPerm::transposition(0, 1).unwrap());
        let p = cycle_profile(&t, w(4), 16).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(p.escapes, 0);

        let p = cycle_profile(&PermExpr::atom(swapadj()), w(6), 24).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(2, 3)]));
        assert_eq!(p.escapes, 0);

        let p = cycle_profile(&PermExpr::atom(z()), w(8), 32).unwrap();
        assert_eq!(p.counts, BTreeMap::from([(1, 1)]));
        assert_eq!(p.escapes, 7);
    }

    #[test]
    fn classification() {
        let t = PermExpr::fin(FinPerm::transposition(0, 1).unwrap());
        assert_eq!(classify(&t, w(8), 10).unwrap(), ClassVerdict::FinTwoCycles(1));
        assert_eq!(
            classify(&PermExpr::atom(swapadj()), w(64), 10).unwrap(),
            ClassVerdict::InfEvidence {
                two_cycles: 32,
                window: 64
            }
        );
        assert_eq!(
            classify(&PermExpr::atom(z()), w(64), 10).unwrap(),
            ClassVerdict::Unknown
        );
        assert_eq!(
            classify(&PermExpr::atom(blk()), w(64), 10).unwrap(),
            ClassVerdict::InfEvidence {
                two_cycles: 16,
                window: 64
            }
        );
    }

    #[test]
    fn equal_on_detects_difference() {
        let t = PermExpr::fin(FinPerm::transposition(0, 1).unwrap());
        assert!(equal_on(&t, &t, w(5)).unwrap());
        assert!(!equal_on(&t, &PermExpr::identity(), w(1)).unwrap());
    }
}
