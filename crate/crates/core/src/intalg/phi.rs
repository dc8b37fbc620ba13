use super::{apply_h, ceil_i64, floor_i64, BElem, Bound, IntalgError};
use crate::perm::{FinPerm, PermExpr, SwapCertificate, Window};

/// Points checked against a certificate when a class is built.
const CERT_CHECK: u64 = 256;

/// A permutation whose moved integers are known exactly: finitely many, or
/// given by an infinite-swap certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiClass {
    Finitary(FinPerm),
    Certified { expr: PermExpr, cert: SwapCertificate },
}

impl PhiClass {
    pub fn of(e: &PermExpr) -> Result<Self, IntalgError> {
        if let Some(f) = e.finitary()? {
            return Ok(PhiClass::Finitary(f));
        }
        let cert = e.swap_certificate()?.ok_or(IntalgError::NotClassifiable)?;
        if !cert.verify_on(e, Window::new(CERT_CHECK).unwrap())? {
            return Err(IntalgError::InconsistentCertificate);
        }
        Ok(PhiClass::Certified { expr: e.clone(), cert })
    }

    pub fn expr(&self) -> PermExpr {
        match self {
            PhiClass::Finitary(f) => PermExpr::fin(f.clone()),
            PhiClass::Certified { expr, .. } => expr.clone(),
        }
    }

    pub fn is_moved(&self, n: u64) -> bool {
        match self {
            PhiClass::Finitary(f) => f.apply(n) != n,
            PhiClass::Certified { cert, .. } => cert.is_moved(n),
        }
    }

    /// A certified involution without fixed points moves all of `[0, +∞)`.
    fn moves_everything(&self) -> bool {
        matches!(self, PhiClass::Certified { cert, .. } if !cert.has_fixed_points())
    }

    fn fixed_unit(&self, k: u64) -> Option<u64> {
        match self {
            PhiClass::Finitary(_) => None,
            PhiClass::Certified { cert, .. } => cert.fixed_point(k),
        }
    }
}

/// `{x ∈ ℚ : p̃(x) ≠ x}` as a union of unit intervals, cut at the window for
/// certified classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovedRegion {
    pub region: BElem,
    pub partial: bool,
}

fn units(ns: impl IntoIterator<Item = u64>) -> BElem {
    BElem::from_intervals(
        ns.into_iter()
            .map(|n| (Bound::int(n as i64), Bound::int(n as i64 + 1)))
            .collect(),
    )
}

pub fn moved_region(c: &PhiClass, w: Window) -> MovedRegion {
    match c {
        PhiClass::Finitary(f) => MovedRegion {
            region: units(f.support()),
            partial: false,
        },
        PhiClass::Certified { .. } => MovedRegion {
            region: units(w.points().filter(|&n| c.is_moved(n))),
            partial: true,
        },
    }
}

/// `Φ(u, φ)`: every nonzero `y ≤ u` has some nonzero `z ≤ y` moved off
/// itself, i.e. `u` lies inside the moved region.
pub fn phi_holds(u: &BElem, c: &PhiClass) -> bool {
    let zero = Bound::int(0);
    u.intervals().iter().all(|(a, b)| {
        if *a < zero {
            return false;
        }
        let lo = floor_i64(a.finite().unwrap());
        match b {
            Bound::PosInf => c.moves_everything(),
            Bound::Finite(hi) => (lo..ceil_i64(hi)).all(|n| c.is_moved(n as u64)),
            Bound::NegInf => unreachable!(),
        }
    })
}

/// Whether every `Φ`-element is below `z`, i.e. the moved region is.
pub fn is_upper_bound(z: &BElem, c: &PhiClass) -> bool {
    match c {
        PhiClass::Finitary(f) => units(f.support()).leq(z),
        PhiClass::Certified { .. } => {
            let Some((Bound::Finite(t), Bound::PosInf)) = z.intervals().last() else {
                return z
                    .intervals()
                    .last()
                    .is_some_and(|(a, b)| *a == Bound::NegInf && *b == Bound::PosInf);
            };
            let t = ceil_i64(t).max(0) as u64;
            (0..t).filter(|&n| c.is_moved(n)).all(|n| units([n]).leq(z))
        }
    }
}

/// Why a candidate is not the supremum of the `Φ`-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// An upper bound strictly below the candidate.
    SmallerUpperBound(BElem),
    /// A `Φ`-element the candidate does not bound.
    PhiElementNotBelow(BElem),
}

/// Refutes `z` as the supremum. An upper bound loses a fixed unit it
/// contains (or, for a finitary class, shrinks to the moved region); a
/// non-bound misses some moved unit.
pub fn refute_candidate(c: &PhiClass, z: &BElem) -> Result<Refutation, IntalgError> {
    if is_upper_bound(z, c) {
        if let PhiClass::Finitary(f) = c {
            let sup = units(f.support());
            return if sup == *z {
                Err(IntalgError::NotRefutable(sup))
            } else {
                Ok(Refutation::SmallerUpperBound(sup))
            };
        }
        if c.moves_everything() {
            let sup = BElem::interval(Bound::int(0), Bound::PosInf);
            return if sup == *z {
                Err(IntalgError::NotRefutable(sup))
            } else {
                Ok(Refutation::SmallerUpperBound(sup))
            };
        }
        // z contains a tail [t, +∞), which holds infinitely many fixed units
        let f = (0..)
            .filter_map(|k| c.fixed_unit(k))
            .find(|&f| units([f]).leq(z))
            .unwrap();
        return Ok(Refutation::SmallerUpperBound(z.minus(&units([f]))));
    }
    let n = (0..).find(|&n| c.is_moved(n) && !units([n]).leq(z)).unwrap();
    Ok(Refutation::PhiElementNotBelow(units([n])))
}

pub fn verify_refutation(c: &PhiClass, z: &BElem, r: &Refutation) -> bool {
    match r {
        Refutation::SmallerUpperBound(s) => s.leq(z) && s != z && is_upper_bound(s, c),
        Refutation::PhiElementNotBelow(e) => phi_holds(e, c) && !e.leq(z),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsiVerdict {
    SupExists(BElem),
    /// Every candidate expressible in the window, each with a verified
    /// refutation.
    NoSupEvidence {
        candidates: Vec<(BElem, Refutation)>,
    },
}

impl PsiVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            PsiVerdict::SupExists(_) => "SupExists",
            PsiVerdict::NoSupEvidence { .. } => "NoSupEvidence",
        }
    }
}

/// `Ψ(φ)`: whether the `Φ`-set has a supremum.
///
/// A finitary class has its moved region as the largest `Φ`-element. With
/// infinitely many moved and infinitely many fixed units there is none; the
/// evidence refutes `1` and, for each cut `m ≤ N`, both the moved units
/// below `m` and that set joined with `[m, +∞)`.
pub fn psi_check(c: &PhiClass, w: Window) -> Result<PsiVerdict, IntalgError> {
    match c {
        PhiClass::Finitary(f) => return Ok(PsiVerdict::SupExists(units(f.support()))),
        _ if c.moves_everything() => return Ok(PsiVerdict::SupExists(BElem::interval(Bound::int(0), Bound::PosInf))),
        PhiClass::Certified { cert, .. } => {
            let blocks = (0..w.bound())
                .map(|k| cert.pair(k))
                .filter(|&(a, b)| a.max(b) < w.bound())
                .count();
            if blocks < 2 {
                return Err(IntalgError::WindowTooSmall { window: w.bound() });
            }
        }
    }
    let mut zs = vec![BElem::one()];
    for m in 0..=w.bound() {
        let below = units((0..m).filter(|&n| c.is_moved(n)));
        zs.push(below.join(&BElem::interval(Bound::int(m as i64), Bound::PosInf)));
        zs.push(below);
    }
    let mut candidates = Vec::with_capacity(zs.len());
    for z in zs {
        let r = refute_candidate(c, &z)?;
        if !verify_refutation(c, &z, &r) {
            return Err(IntalgError::InconsistentCertificate);
        }
        candidates.push((z, r));
    }
    Ok(PsiVerdict::NoSupEvidence { candidates })
}

/// `Ψ` gives the same kind of answer for `p` and `q⁻¹pq`, and a supremum
/// moves by `H(q)`.
pub fn psi_conjugation_invariance(e: &PermExpr, q: &FinPerm, w: Window) -> Result<bool, IntalgError> {
    let qe = PermExpr::fin(q.clone());
    let before = psi_check(&PhiClass::of(e)?, w)?;
    let after = psi_check(&PhiClass::of(&e.clone().conj(qe.clone()))?, w)?;
    Ok(match (&before, &after) {
        (PsiVerdict::SupExists(s), PsiVerdict::SupExists(t)) => apply_h(&qe, s)? == *t,
        _ => before.kind() == after.kind(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::atoms::{blk, swapadj};

    fn b(s: &str) -> BElem {
        s.parse().unwrap()
    }

    fn w(n: u64) -> Window {
        Window::new(n).unwrap()
    }

    fn fin_class(a: u64, c: u64) -> PhiClass {
        PhiClass::of(&PermExpr::fin(FinPerm::transposition(a, c).unwrap())).unwrap()
    }

    fn blk_class() -> PhiClass {
        PhiClass::of(&PermExpr::Atom(blk())).unwrap()
    }

    #[test]
    fn moved_regions() {
        assert_eq!(moved_region(&fin_class(0, 1), w(8)).region, b("[0,2)"));
        let id = PhiClass::of(&PermExpr::identity()).unwrap();
        assert_eq!(moved_region(&id, w(8)).region, BElem::zero());
        let m = moved_region(&blk_class(), w(8));
        assert_eq!(m.region, b("[0,2);[4,6)"));
        assert!(m.partial);
    }

    #[test]
    fn phi_membership() {
        let c = fin_class(0, 1);
        assert!(phi_holds(&b("[0,1)"), &c));
        assert!(!phi_holds(&b("[0,3)"), &c));
        assert!(phi_holds(&BElem::zero(), &c));
        assert!(!phi_holds(&b("[-1/2,1/2)"), &c));
        let k = blk_class();
        assert!(phi_holds(&b("[4,9/2);[8,10)"), &k));
        assert!(!phi_holds(&b("[4,+inf)"), &k));
        let s = PhiClass::of(&PermExpr::Atom(swapadj())).unwrap();
        assert!(phi_holds(&b("[4,+inf)"), &s));
    }

    #[test]
    fn psi_cases() {
        assert_eq!(
            psi_check(&fin_class(0, 1), w(16)).unwrap(),
            PsiVerdict::SupExists(b("[0,2)"))
        );
        let id = PhiClass::of(&PermExpr::identity()).unwrap();
        assert_eq!(psi_check(&id, w(16)).unwrap(), PsiVerdict::SupExists(BElem::zero()));
        let k = blk_class();
        assert_eq!(
            refute_candidate(&k, &BElem::one()).unwrap(),
            Refutation::SmallerUpperBound(BElem::one().minus(&b("[2,3)")))
        );
        let PsiVerdict::NoSupEvidence { candidates } = psi_check(&k, w(64)).unwrap() else {
            panic!("blk has no supremum")
        };
        assert_eq!(candidates.len(), 1 + 2 * 65);
        assert!(candidates.iter().all(|(z, r)| verify_refutation(&k, z, r)));
        assert!(matches!(psi_check(&k, w(4)), Err(IntalgError::WindowTooSmall { .. })));
        let fc = fin_class(0, 1);
        assert!(matches!(
            refute_candidate(&fc, &b("[0,2)")),
            Err(IntalgError::NotRefutable(_))
        ));
    }

    #[test]
    fn conjugation_invariance() {
        let t = |a, c| FinPerm::transposition(a, c).unwrap();
        assert!(psi_conjugation_invariance(&PermExpr::fin(t(0, 1)), &t(1, 2), w(16)).unwrap());
        assert!(psi_conjugation_invariance(&PermExpr::Atom(blk()), &t(0, 4), w(64)).unwrap());
        assert!(psi_conjugation_invariance(&PermExpr::identity(), &t(3, 9), w(16)).unwrap());
    }
}
