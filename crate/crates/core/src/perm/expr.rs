use std::fmt;
use std::sync::Arc;

use super::cert::SwapCertificate;
use super::{FinPerm, PermError};

/// Evaluation rule behind a named generator.
///
/// Both directions must be total on ω (modulo budget errors from
/// stage-built generators).
pub trait AtomRule: Send + Sync {
    fn forward(&self, x: u64) -> Result<u64, PermError>;
    fn inverse(&self, y: u64) -> Result<u64, PermError>;

    /// Exact finite-support description, when the generator has one.
    fn finitary(&self) -> Option<FinPerm> {
        None
    }

    /// Certificate for generators that are involutions with infinitely
    /// many 2-cycles.
    fn swaps(&self) -> Option<SwapCertificate> {
        None
    }
}

/// A named generator with an optional natural parameter (`p[3]`).
///
/// Two atoms compare equal when their names and parameters agree; the rule
/// is whatever the registry that produced them bound to that name.
#[derive(Clone)]
pub struct Atom {
    name: String,
    param: Option<u64>,
    rule: Arc<dyn AtomRule>,
}

impl Atom {
    pub fn new(name: impl Into<String>, param: Option<u64>, rule: Arc<dyn AtomRule>) -> Self {
        Atom {
            name: name.into(),
            param,
            rule,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn param(&self) -> Option<u64> {
        self.param
    }

    pub fn rule(&self) -> &dyn AtomRule {
        self.rule.as_ref()
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.param == other.param
    }
}

impl Eq for Atom {}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param {
            Some(n) => write!(f, "{}[{}]", self.name, n),
            None => write!(f, "{}", self.name),
        }
    }
}

/// Expression denoting a permutation of ω.
///
/// Action is on the left-to-right convention: `Prod([a, b])` applies `a`
/// first. Accordingly `Conj(x, y)` is `y⁻¹ x y` read left to right and
/// `Comm(x, y)` is `x⁻¹ y⁻¹ x y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PermExpr {
    Atom(Atom),
    Fin(FinPerm),
    Inv(Box<PermExpr>),
    Pow(Box<PermExpr>, i64),
    Prod(Vec<PermExpr>),
    Conj(Box<PermExpr>, Box<PermExpr>),
    Comm(Box<PermExpr>, Box<PermExpr>),
}

impl PermExpr {
    pub fn identity() -> Self {
        PermExpr::Prod(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        PermExpr::Atom(a)
    }

    pub fn fin(f: FinPerm) -> Self {
        PermExpr::Fin(f)
    }

    pub fn inv(self) -> Self {
        PermExpr::Inv(Box::new(self))
    }

    pub fn pow(self, k: i64) -> Self {
        PermExpr::Pow(Box::new(self), k)
    }

    /// `self^by`, i.e. `by⁻¹ · self · by`.
    pub fn conj(self, by: PermExpr) -> Self {
        PermExpr::Conj(Box::new(self), Box::new(by))
    }

    pub fn comm(self, other: PermExpr) -> Self {
        PermExpr::Comm(Box::new(self), Box::new(other))
    }

    /// Product collapsing a single factor to itself.
    pub fn product(mut factors: Vec<PermExpr>) -> Self {
        if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            PermExpr::Prod(factors)
        }
    }

    pub fn eval(&self, x: u64) -> Result<u64, PermError> {
        match self {
            PermExpr::Atom(a) => a.rule.forward(x),
            PermExpr::Fin(f) => Ok(f.apply(x)),
            PermExpr::Inv(e) => e.eval_inverse(x),
            PermExpr::Pow(e, k) => {
                let mut y = x;
                for _ in 0..k.unsigned_abs() {
                    y = if *k >= 0 { e.eval(y)? } else { e.eval_inverse(y)? };
                }
                Ok(y)
            }
            PermExpr::Prod(fs) => fs.iter().try_fold(x, |y, f| f.eval(y)),
            PermExpr::Conj(a, b) => b.eval(a.eval(b.eval_inverse(x)?)?),
            PermExpr::Comm(a, b) => {
                let y = a.eval_inverse(x)?;
                let y = b.eval_inverse(y)?;
                b.eval(a.eval(y)?)
            }
        }
    }

    pub fn eval_inverse(&self, y: u64) -> Result<u64, PermError> {
        match self {
            PermExpr::Atom(a) => a.rule.inverse(y),
            PermExpr::Fin(f) => Ok(f.apply_inverse(y)),
            PermExpr::Inv(e) => e.eval(y),
            PermExpr::Pow(e, k) => {
                let mut x = y;
                for _ in 0..k.unsigned_abs() {
                    x = if *k >= 0 { e.eval_inverse(x)? } else { e.eval(x)? };
                }
                Ok(x)
            }
            PermExpr::Prod(fs) => fs.iter().rev().try_fold(y, |x, f| f.eval_inverse(x)),
            PermExpr::Conj(a, b) => b.eval(a.eval_inverse(b.eval_inverse(y)?)?),
            PermExpr::Comm(a, b) => {
                // (a⁻¹ b⁻¹ a b)⁻¹ = b⁻¹ a⁻¹ b a
                let x = b.eval_inverse(y)?;
                let x = a.eval_inverse(x)?;
                a.eval(b.eval(x)?)
            }
        }
    }

    /// Exact finite-support form when finiteness follows from the shape of
    /// the expression: finitary atoms and literals closed under inverse,
    /// powers, products, conjugation of a finitary base and commutators
    /// with a finitary side.
    pub fn finitary(&self) -> Result<Option<FinPerm>, PermError> {
        Ok(match self {
            PermExpr::Atom(a) => a.rule.finitary(),
            PermExpr::Fin(f) => Some(f.clone()),
            PermExpr::Inv(e) => e.finitary()?.map(|f| f.inverse()),
            PermExpr::Pow(e, k) => e.finitary()?.map(|f| f.pow(*k)),
            PermExpr::Prod(fs) => {
                let mut acc = FinPerm::identity();
                for f in fs {
                    match f.finitary()? {
                        Some(g) => acc = acc.then(&g),
                        None => return Ok(None),
                    }
                }
                Some(acc)
            }
            PermExpr::Conj(a, b) => match a.finitary()? {
                Some(fa) => Some(conjugate_by(&fa, b)?),
                None => None,
            },
            PermExpr::Comm(a, b) => {
                if let Some(fa) = a.finitary()? {
                    Some(fa.inverse().then(&conjugate_by(&fa, b)?))
                } else if let Some(fb) = b.finitary()? {
                    Some(conjugate_by(&fb.inverse(), a)?.then(&fb))
                } else {
                    None
                }
            }
        })
    }

    /// Swap certificate for certified infinite involutions, carried through
    /// conjugation by finitary expressions.
    pub fn swap_certificate(&self) -> Result<Option<SwapCertificate>, PermError> {
        Ok(match self {
            PermExpr::Atom(a) => a.rule.swaps(),
            PermExpr::Inv(e) => e.swap_certificate()?,
            PermExpr::Conj(a, b) => match (a.swap_certificate()?, b.finitary()?) {
                (Some(c), Some(q)) => Some(c.conjugated(&q)),
                _ => None,
            },
            _ => None,
        })
    }

    /// Visits every atom in the expression.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            PermExpr::Atom(a) => out.push(a),
            PermExpr::Fin(_) => {}
            PermExpr::Inv(e) | PermExpr::Pow(e, _) => e.collect_atoms(out),
            PermExpr::Prod(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            PermExpr::Conj(a, b) | PermExpr::Comm(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

/// `by⁻¹ f by` as a finite permutation: `by(s) ↦ by(f(s))` on the support.
fn conjugate_by(f: &FinPerm, by: &PermExpr) -> Result<FinPerm, PermError> {
    let mut map = std::collections::BTreeMap::new();
    for s in f.support() {
        map.insert(by.eval(s)?, by.eval(f.apply(s))?);
    }
    FinPerm::from_map(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u64, b: u64) -> PermExpr {
        PermExpr::fin(FinPerm::transposition(a, b).unwrap())
    }

    #[test]
    fn eval_basics() {
        assert_eq!(t(0, 1).eval(0).unwrap(), 1);
        let c3 = PermExpr::fin(FinPerm::cycle(&[0, 1, 2]).unwrap());
        assert_eq!(c3.clone().inv().eval(0).unwrap(), 2);
        assert_eq!(PermExpr::identity().eval_inverse(7).unwrap(), 7);
        assert_eq!(t(0, 1).eval_inverse(1).unwrap(), 0);
    }

    #[test]
    fn commutator_of_disjoint_transpositions_fixes_5() {
        // Brute-force: compose the four factors a⁻¹, b⁻¹, a, b on window 8.
        let a = FinPerm::transposition(0, 1).unwrap();
        let b = FinPerm::transposition(2, 3).unwrap();
        let brute: Vec<u64> = (0..8)
            .map(|x| b.apply(a.apply(b.apply_inverse(a.apply_inverse(x)))))
            .collect();
        assert_eq!(brute[5], 5);
        let e = t(0, 1).comm(t(2, 3));
        for x in 0..8 {
            assert_eq!(e.eval(x).unwrap(), brute[x as usize]);
        }
    }

    #[test]
    fn inverse_of_square() {
        // (0 1 2)^2 = (0 2 1); brute-force the preimage of 0 on window 4.
        let c3 = FinPerm::cycle(&[0, 1, 2]).unwrap();
        let sq = PermExpr::fin(c3.clone()).pow(2);
        let pre = (0..4).find(|&x| c3.apply(c3.apply(x)) == 0).unwrap();
        assert_eq!(pre, 1);
        assert_eq!(sq.eval_inverse(0).unwrap(), pre);
    }

    #[test]
    fn finitary_conjugates_and_commutators() {
        let e = t(0, 1).conj(t(1, 2));
        assert_eq!(e.finitary().unwrap(), Some(FinPerm::transposition(0, 2).unwrap()));
        let c = t(0, 1).comm(t(1, 2));
        let f = c.finitary().unwrap().unwrap();
        for x in 0..6 {
            assert_eq!(f.apply(x), c.eval(x).unwrap());
        }
    }
}
