//! The interval algebra `B_η` over ℚ and the action of `Sym(ω)` on it.
//!
//! A permutation `p` of ω lifts to `p̃` on ℚ by `p̃(x) = x` for `x < 0` and
//! `p̃(x) = p(⌊x⌋) + {x}` otherwise; `H(p)` is the induced automorphism of
//! `B_η`.

mod belem;
mod phi;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::perm::{FinPerm, PermError, PermExpr};

pub use belem::{BElem, Bound};
pub use phi::{
    is_upper_bound, moved_region, phi_holds, psi_check, psi_conjugation_invariance, refute_candidate,
    verify_refutation, MovedRegion, PhiClass, PsiVerdict, Refutation,
};

/// Unit pieces `apply_h` may visit when no budget is given.
pub const DEFAULT_BUDGET: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntalgError {
    #[error("cannot parse element `{0}` (expected 0, 1 or [a,b);[c,d) with rational or -inf/+inf ends)")]
    BadElement(String),
    #[error("an interval unbounded above needs a finitary permutation")]
    Unbounded,
    #[error("element spans {needed} unit intervals, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("window {window} shows fewer than two moved blocks")]
    WindowTooSmall { window: u64 },
    #[error("permutation is the identity")]
    TrivialPermutation,
    #[error("expression is neither finitary nor certified with infinitely many swaps")]
    NotClassifiable,
    #[error("certificate disagrees with evaluation")]
    InconsistentCertificate,
    #[error("{0} is the supremum and has no refutation")]
    NotRefutable(BElem),
    #[error(transparent)]
    Perm(#[from] PermError),
}

pub(crate) fn floor_i64(q: &BigRational) -> i64 {
    q.floor().to_integer().to_i64().expect("endpoint fits in i64")
}

pub(crate) fn ceil_i64(q: &BigRational) -> i64 {
    q.ceil().to_integer().to_i64().expect("endpoint fits in i64")
}

/// `H(p)`: the automorphism of `B_η` induced by `p̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedAut {
    p: PermExpr,
}

impl InducedAut {
    pub fn new(p: PermExpr) -> Self {
        InducedAut { p }
    }

    pub fn perm(&self) -> &PermExpr {
        &self.p
    }

    /// `self` first, then `o`.
    pub fn then(&self, o: &InducedAut) -> InducedAut {
        InducedAut::new(PermExpr::Prod(vec![self.p.clone(), o.p.clone()]))
    }

    pub fn inverse(&self) -> InducedAut {
        InducedAut::new(self.p.clone().inv())
    }

    /// `self⁻¹ · o⁻¹ · self · o`.
    pub fn commutator(&self, o: &InducedAut) -> InducedAut {
        self.inverse().then(&o.inverse()).then(self).then(o)
    }

    /// `p̃(x)`.
    pub fn apply_point(&self, x: &BigRational) -> Result<BigRational, IntalgError> {
        if *x < BigRational::zero() {
            return Ok(x.clone());
        }
        let n = x.floor();
        let k = n.to_integer().to_u64().expect("point fits in u64");
        Ok(BigRational::from_integer(BigInt::from(self.p.eval(k)?)) + (x - n))
    }

    pub fn apply(&self, x: &BElem) -> Result<BElem, IntalgError> {
        self.apply_with_budget(x, DEFAULT_BUDGET)
    }

    /// Cuts every interval at the integers; the negative part stays, each
    /// piece of `[n, n + 1)` moves to the same offsets in `[p(n), p(n) + 1)`.
    /// A tail `[a, +∞)` is fixed past the support of a finitary `p`.
    pub fn apply_with_budget(&self, x: &BElem, budget: u64) -> Result<BElem, IntalgError> {
        let zero = Bound::int(0);
        let mut tail_from: Option<i64> = None;
        let mut bounded: Vec<(BigRational, BigRational)> = Vec::new();
        let mut out: Vec<(Bound, Bound)> = Vec::new();
        for (a, b) in x.intervals() {
            if *a < zero {
                out.push((a.clone(), b.clone().min(zero.clone())));
            }
            if *b <= zero {
                continue;
            }
            let lo = a.clone().max(zero.clone());
            let lo = lo.finite().unwrap().clone();
            match b {
                Bound::PosInf => {
                    let support_end = match tail_from {
                        Some(m) => m,
                        None => {
                            let f = self.p.finitary()?.ok_or(IntalgError::Unbounded)?;
                            let m = f.max_point().map_or(0, |m| m as i64 + 1);
                            tail_from = Some(m);
                            m
                        }
                    };
                    let cut = BigRational::from_integer(support_end.into()).max(lo.clone());
                    if lo < cut {
                        bounded.push((lo, cut.clone()));
                    }
                    out.push((Bound::Finite(cut), Bound::PosInf));
                }
                Bound::Finite(hi) => bounded.push((lo, hi.clone())),
                Bound::NegInf => unreachable!(),
            }
        }
        let needed: u64 = bounded
            .iter()
            .map(|(lo, hi)| (ceil_i64(hi) - floor_i64(lo)) as u64)
            .sum();
        if needed > budget {
            return Err(IntalgError::BudgetExceeded { needed, budget });
        }
        for (lo, hi) in bounded {
            for n in floor_i64(&lo)..ceil_i64(&hi) {
                let base = BigRational::from_integer(n.into());
                let top = &base + BigRational::from_integer(1.into());
                let s = lo.clone().max(base.clone());
                let e = hi.clone().min(top);
                let target = BigRational::from_integer(self.p.eval(n as u64)?.into());
                out.push((
                    Bound::Finite(&target + (s - &base)),
                    Bound::Finite(&target + (e - &base)),
                ));
            }
        }
        Ok(BElem::from_intervals(out))
    }
}

/// `H(p)(x)`.
pub fn apply_h(p: &PermExpr, x: &BElem) -> Result<BElem, IntalgError> {
    InducedAut::new(p.clone()).apply(x)
}

/// A four-element subalgebra `{0, a, ā, 1}` that `H(p)` does not preserve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelWitness {
    pub a: BElem,
    pub original: [BElem; 4],
    pub image: [BElem; 4],
}

/// For nontrivial finitary `p`, `a = [n, n + 1)` at the least moved `n`:
/// `H(p)(a) = [p(n), p(n) + 1)` is disjoint from `a` and differs from `ā`,
/// so the subalgebra generated by `a` is not mapped onto itself.
pub fn kernel_witness(p: &FinPerm) -> Result<KernelWitness, IntalgError> {
    let n = p.support().next().ok_or(IntalgError::TrivialPermutation)?;
    let h = InducedAut::new(PermExpr::fin(p.clone()));
    let a = BElem::unit(n as i64);
    let abar = a.complement();
    let original = [BElem::zero(), a.clone(), abar.clone(), BElem::one()];
    let image = [BElem::zero(), h.apply(&a)?, h.apply(&abar)?, BElem::one()];
    Ok(KernelWitness { a, original, image })
}

impl KernelWitness {
    /// The two subalgebras differ as sets.
    pub fn verified(&self) -> bool {
        let mut x = self.original.to_vec();
        let mut y = self.image.to_vec();
        x.sort();
        y.sort();
        x != y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::atoms::swapadj;

    fn b(s: &str) -> BElem {
        s.parse().unwrap()
    }

    fn t(a: u64, c: u64) -> PermExpr {
        PermExpr::fin(FinPerm::transposition(a, c).unwrap())
    }

    #[test]
    fn lift_of_a_transposition() {
        assert_eq!(apply_h(&t(0, 1), &b("[0,1)")).unwrap(), b("[1,2)"));
        assert_eq!(apply_h(&t(0, 1), &b("[-1,1/2)")).unwrap(), b("[-1,0);[1,3/2)"));
        assert_eq!(apply_h(&t(0, 1), &b("[1/3,+inf)")).unwrap(), b("[0,1);[4/3,+inf)"));
        let x = b("[-5/2,7/3);[9,+inf)");
        assert_eq!(apply_h(&PermExpr::identity(), &x).unwrap(), x);
        let h = InducedAut::new(t(2, 5));
        let q = BigRational::new(11.into(), 4.into());
        assert_eq!(h.apply_point(&q).unwrap(), BigRational::new(23.into(), 4.into()));
    }

    #[test]
    fn unbounded_needs_finitary() {
        let s = PermExpr::Atom(swapadj());
        assert_eq!(apply_h(&s, &b("[3,+inf)")), Err(IntalgError::Unbounded));
        assert_eq!(apply_h(&s, &b("[0,3/2)")).unwrap(), b("[0,1/2);[1,2)"));
        let h = InducedAut::new(s);
        assert!(matches!(
            h.apply_with_budget(&b("[0,100)"), 10),
            Err(IntalgError::BudgetExceeded {
                needed: 100,
                budget: 10
            })
        ));
    }

    #[test]
    fn kernel_witnesses() {
        let w = kernel_witness(&FinPerm::transposition(0, 1).unwrap()).unwrap();
        assert_eq!(w.a, b("[0,1)"));
        assert!(w.image.contains(&b("[1,2)")));
        assert!(!w.original.contains(&b("[1,2)")));
        assert!(w.verified());
        let w = kernel_witness(&FinPerm::transposition(2, 5).unwrap()).unwrap();
        assert_eq!(w.a, b("[2,3)"));
        assert!(w.verified());
        assert_eq!(
            kernel_witness(&FinPerm::identity()),
            Err(IntalgError::TrivialPermutation)
        );
    }
}
