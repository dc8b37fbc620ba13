use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use super::{gen_pn, ColumnScheme2, Part, Pi2Error, Pi2Predicate};
use crate::pairing::{pair, unpair};
use crate::perm::{profile_on, Atom, AtomRule, ClassVerdict, CycleProfile, PermError, PermExpr, Window};

/// Stage `s + 1` handles the pair with code `s = ⟨n, t⟩ = π(n, t)`.
pub fn stage_code(n: u64, t: u64) -> u64 {
    pair(n, t)
}

/// What a single stage did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: u64,
    pub column: u64,
    pub t: u64,
    pub holds: bool,
    /// The three least unused elements `p < q < r` of `S_{n,2}`.
    pub triple: [u64; 3],
}

/// Stagewise construction of `b`.
///
/// After `s` stages `b^s` is defined on `E^s`: the negative columns (fixed)
/// plus every element consumed so far. Each stage takes the three least
/// elements of `S_{n,2}` outside `E^s`; when `R(n, t)` holds the first two
/// are swapped, otherwise all three are fixed.
#[derive(Clone, Debug)]
pub struct Construction {
    scheme: ColumnScheme2,
    predicate: Pi2Predicate,
    stages: u64,
    used: HashSet<u64>,
    image: HashMap<u64, u64>,
    consumed: BTreeMap<u64, u64>,
    case1: BTreeMap<u64, u64>,
}

impl Construction {
    pub fn new(scheme: ColumnScheme2, predicate: Pi2Predicate) -> Self {
        Construction {
            scheme,
            predicate,
            stages: 0,
            used: HashSet::new(),
            image: HashMap::new(),
            consumed: BTreeMap::new(),
            case1: BTreeMap::new(),
        }
    }

    pub fn run(scheme: ColumnScheme2, predicate: Pi2Predicate, stages: u64) -> Self {
        let mut c = Construction::new(scheme, predicate);
        c.run_to(stages);
        c
    }

    pub fn scheme(&self) -> ColumnScheme2 {
        self.scheme
    }

    pub fn predicate(&self) -> &Pi2Predicate {
        &self.predicate
    }

    pub fn stages(&self) -> u64 {
        self.stages
    }

    pub fn step(&mut self) -> StageRecord {
        let (n, t) = unpair(self.stages);
        let mut triple = [0u64; 3];
        let mut k = 0;
        for slot in &mut triple {
            loop {
                let x = self.scheme.encode(n as i64, Part::Right, k);
                k += 1;
                if !self.in_domain(x) {
                    *slot = x;
                    break;
                }
            }
        }
        let holds = self.predicate.holds(n, t);
        for &x in &triple {
            self.used.insert(x);
            self.image.insert(x, x);
        }
        if holds {
            let [p, q, _] = triple;
            self.image.insert(p, q);
            self.image.insert(q, p);
            *self.case1.entry(n).or_insert(0) += 1;
        }
        *self.consumed.entry(n).or_insert(0) += 3;
        self.stages += 1;
        StageRecord {
            stage: self.stages,
            column: n,
            t,
            holds,
            triple,
        }
    }

    pub fn run_to(&mut self, stages: u64) {
        while self.stages < stages {
            self.step();
        }
    }

    /// Membership in `E^s`.
    pub fn in_domain(&self, x: u64) -> bool {
        let (i, _, _) = self.scheme.decode(x);
        i < 0 || self.used.contains(&x)
    }

    /// `b^s(x)` on `E^s`.
    pub fn image(&self, x: u64) -> Option<u64> {
        let (i, _, _) = self.scheme.decode(x);
        if i < 0 {
            Some(x)
        } else {
            self.image.get(&x).copied()
        }
    }

    /// Elements of `S_{n,2}` consumed so far.
    pub fn consumed(&self, n: u64) -> u64 {
        self.consumed.get(&n).copied().unwrap_or(0)
    }

    /// Number of Case-1 stages (added 2-cycles) for column `n`.
    pub fn case1_count(&self, n: u64) -> u64 {
        self.case1.get(&n).copied().unwrap_or(0)
    }

    /// Consumed elements, i.e. `E^s` without the stage-0 columns.
    pub fn consumed_points(&self) -> BTreeSet<u64> {
        self.used.iter().copied().collect()
    }

    /// The stage that decides `x ∈ S_{n,2}`: column `n`'s `t`-th stage
    /// consumes indices `3t, 3t+1, 3t+2`.
    pub fn deciding_stage(&self, n: u64, k: u64) -> u64 {
        stage_code(n, k / 3) + 1
    }

    /// `b` as an atom; queries past the constructed stages fail with the
    /// stage they would need.
    pub fn to_atom(self) -> PermExpr {
        PermExpr::Atom(Atom::new("b", None, Arc::new(StageBuiltB(Arc::new(self)))))
    }

    pub fn shared_atom(self: &Arc<Self>) -> PermExpr {
        PermExpr::Atom(Atom::new("b", None, Arc::new(StageBuiltB(Arc::clone(self)))))
    }
}

struct StageBuiltB(Arc<Construction>);

impl StageBuiltB {
    fn image(&self, x: u64) -> Result<u64, PermError> {
        let c = &self.0;
        match c.scheme.decode(x) {
            (i, _, _) if i < 0 => Ok(x),
            (_, Part::Left, _) => Ok(x),
            (n, Part::Right, k) => c.image(x).ok_or(PermError::StageBudget {
                needed: c.deciding_stage(n as u64, k),
                available: c.stages,
            }),
        }
    }
}

impl AtomRule for StageBuiltB {
    fn forward(&self, x: u64) -> Result<u64, PermError> {
        self.image(x)
    }

    fn inverse(&self, y: u64) -> Result<u64, PermError> {
        self.image(y)
    }
}

pub fn build_b(s: ColumnScheme2, r: &Pi2Predicate, max_stage: u64) -> PermExpr {
    Construction::run(s, r.clone(), max_stage).to_atom()
}

pub fn two_cycle_count(n: u64, r: &Pi2Predicate, stages: u64) -> u64 {
    Construction::run(ColumnScheme2, r.clone(), stages).case1_count(n)
}

/// Smallest window containing every consumed element of column `n` and its
/// mirror in the left part.
pub fn sufficient_column_window(c: &Construction, n: u64) -> Window {
    let k = c.consumed(n);
    let top = if k == 0 {
        0
    } else {
        let s = c.scheme();
        s.encode(n as i64, Part::Left, k - 1)
            .max(s.encode(n as i64, Part::Right, k - 1))
    };
    Window::new(top + 1).unwrap()
}

/// Cycle profile of `b·b^{p_n}` on the decided part of column `n` inside
/// the window. Consumed window points of other columns, the only places
/// off column `n` where `b` can act, must be fixed.
pub fn product_on_column(c: &Arc<Construction>, n: u64, w: Window) -> Result<CycleProfile, Pi2Error> {
    let s = c.scheme();
    let b = c.shared_atom();
    let product = PermExpr::Prod(vec![b.clone(), b.conj(gen_pn(s, n))]);
    for &x in c.used.iter().filter(|&&x| w.contains(x)) {
        if s.decode(x).0 != n as i64 && product.eval(x)? != x {
            return Err(Pi2Error::OffColumnMotion(x));
        }
    }
    let points: BTreeSet<u64> = (0..c.consumed(n))
        .flat_map(|k| [Part::Left, Part::Right].map(|p| s.encode(n as i64, p, k)))
        .filter(|&x| w.contains(x))
        .collect();
    let budget = 4 * points.len() as u64 + 4;
    Ok(profile_on(&product, &points, budget)?)
}

/// Certificate first: when the predicate proves `R(n, ·)` false from some
/// `t` on and the stages have passed it, the count is final. Otherwise a
/// count at or above `threshold` is evidence for `n ∈ A`.
pub fn decode_at_horizon(c: &Construction, n: u64, threshold: u64) -> ClassVerdict {
    let count = c.case1_count(n);
    if let Some(bound) = c.predicate().false_from(n) {
        if bound == 0 || stage_code(n, bound - 1) < c.stages() {
            return ClassVerdict::FinTwoCycles(count as usize);
        }
    }
    if count >= threshold {
        ClassVerdict::InfEvidence {
            two_cycles: count as usize,
            window: c.stages(),
        }
    } else {
        ClassVerdict::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: ColumnScheme2 = ColumnScheme2;

    fn oracle_count(n: u64, r: &Pi2Predicate, stages: u64) -> u64 {
        (0..stages)
            .filter(|&t| stage_code(n, t) < stages && r.holds(n, t))
            .count() as u64
    }

    #[test]
    fn first_column_zero_stage_pairs_two_least() {
        let mut c = Construction::new(S, Pi2Predicate::Always);
        let rec = c.step();
        assert_eq!((rec.column, rec.t, rec.stage), (0, 0, 1));
        let expect: Vec<u64> = (0..3).map(|k| S.encode(0, Part::Right, k)).collect();
        assert_eq!(rec.triple.to_vec(), expect);
        assert_eq!(c.image(expect[0]), Some(expect[1]));
        assert_eq!(c.image(expect[2]), Some(expect[2]));
    }

    #[test]
    fn never_gives_identity() {
        let b = build_b(S, &Pi2Predicate::Never, 200);
        let c = Construction::run(S, Pi2Predicate::Never, 200);
        for x in 0..2000 {
            if c.in_domain(x) || S.decode(x).1 == Part::Left {
                assert_eq!(b.eval(x).unwrap(), x);
            }
        }
    }

    #[test]
    fn counts_match_oracle() {
        // stage codes with t < 10 for n = 0 are π(0, t) = t(t+3)/2 ≤ 54
        assert_eq!(two_cycle_count(0, &Pi2Predicate::Always, 55), 10);
        assert_eq!(oracle_count(0, &Pi2Predicate::Always, 55), 10);
        assert_eq!(two_cycle_count(0, &Pi2Predicate::Always, stage_code(0, 6) + 1), 7);
        assert_eq!(two_cycle_count(3, &Pi2Predicate::Lt, stage_code(3, 2) + 1), 3);
        assert_eq!(two_cycle_count(3, &Pi2Predicate::Lt, 500), 3);
        for n in 0..6 {
            assert_eq!(two_cycle_count(n, &Pi2Predicate::Never, 300), 0);
        }
    }

    #[test]
    fn budget_error_names_the_stage() {
        let b = build_b(S, &Pi2Predicate::Always, 10);
        let x = S.encode(5, Part::Right, 7);
        assert_eq!(
            b.eval(x),
            Err(PermError::StageBudget {
                needed: stage_code(5, 2) + 1,
                available: 10
            })
        );
        // and the named stage does decide it
        let c = Construction::run(S, Pi2Predicate::Always, stage_code(5, 2) + 1);
        assert!(c.in_domain(x));
        let c = Construction::run(S, Pi2Predicate::Always, stage_code(5, 2));
        assert!(!c.in_domain(x));
    }

    #[test]
    fn doubling_on_column() {
        let c = Arc::new(Construction::run(S, Pi2Predicate::Always, 100));
        let w = sufficient_column_window(&c, 0);
        let prof = product_on_column(&c, 0, w).unwrap();
        assert_eq!(prof.two_cycles() as u64, 2 * c.case1_count(0));
        assert_eq!(prof.escapes, 0);

        let c = Arc::new(Construction::run(S, Pi2Predicate::Never, 100));
        let prof = product_on_column(&c, 1, sufficient_column_window(&c, 1)).unwrap();
        assert_eq!(prof.two_cycles(), 0);
        assert_eq!(prof.count(1), 2 * c.consumed(1) as usize);
    }

    #[test]
    fn horizon_verdicts() {
        let c = Construction::run(S, Pi2Predicate::Always, 1600);
        assert!(matches!(decode_at_horizon(&c, 3, 10), ClassVerdict::InfEvidence { .. }));
        let c = Construction::run(S, Pi2Predicate::Lt, 1600);
        assert_eq!(decode_at_horizon(&c, 5, 10), ClassVerdict::FinTwoCycles(5));
        let c = Construction::run(S, Pi2Predicate::Even, 1600);
        assert_eq!(decode_at_horizon(&c, 3, 10), ClassVerdict::FinTwoCycles(0));
        // before the stages pass the certificate bound the answer is open
        let c = Construction::run(S, Pi2Predicate::Lt, stage_code(5, 3));
        assert_eq!(decode_at_horizon(&c, 5, 10), ClassVerdict::Unknown);
    }
}
