//! Coding a Π⁰₂ set into the cycle type of `b·b^{p_n}`.
//!
//! ω is split into columns `S_i = S_{i,1} ∪ S_{i,2}` (`i ∈ ℤ`), each part
//! listed increasingly. `w` shifts columns left, `p0` swaps the two parts of
//! column 0 and `p_n` does the same on column `n`. The stage construction of
//! `b` adds a 2-cycle in `S_{n,2}` each time `R(n, t)` holds, so
//! `b·b^{p_n}` has infinitely many 2-cycles exactly when `n ∈ A`.
//!
//! `tau = (0 1)` and `z` generate every finitary involution; see
//! [`transposition_word`].

mod predicate;
mod stages;

use std::sync::Arc;

use thiserror::Error;

use crate::pairing::{fold, pair, unfold, unpair};
use crate::perm::atoms::{tau, z};
use crate::perm::{Atom, AtomRegistry, AtomRule, FinPerm, PermError, PermExpr};

pub use predicate::Pi2Predicate;
pub use stages::{
    build_b, decode_at_horizon, product_on_column, stage_code, sufficient_column_window, two_cycle_count, Construction,
    StageRecord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Pi2Error {
    #[error("a transposition needs two distinct points, got ({0}, {0})")]
    SamePoint(u64),
    #[error("expected an involution")]
    NotInvolution,
    #[error("unknown predicate `{0}` (expected always, never, lt, even or @file)")]
    UnknownPredicate(String),
    #[error("line {line}: expected `n t 0|1`")]
    BadTableLine { line: usize },
    #[error("b·b^p_n moves point {0} outside its column")]
    OffColumnMotion(u64),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Left,
    Right,
}

impl Part {
    fn index(self) -> u64 {
        match self {
            Part::Left => 0,
            Part::Right => 1,
        }
    }

    pub fn other(self) -> Part {
        match self {
            Part::Left => Part::Right,
            Part::Right => Part::Left,
        }
    }
}

/// Bijection `ℤ × {left, right} × ω → ω`, `(i, j, k) ↦ π(2·fold(i) + j, k)`
/// with `j = 0` for the left part; increasing in `k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColumnScheme2;

impl ColumnScheme2 {
    pub fn encode(self, column: i64, part: Part, k: u64) -> u64 {
        pair(2 * fold(column) + part.index(), k)
    }

    pub fn decode(self, x: u64) -> (i64, Part, u64) {
        let (a, k) = unpair(x);
        let part = if a % 2 == 0 { Part::Left } else { Part::Right };
        (unfold(a / 2), part, k)
    }
}

pub fn default_scheme_2() -> ColumnScheme2 {
    ColumnScheme2
}

struct ShiftLeft(ColumnScheme2);

impl AtomRule for ShiftLeft {
    fn forward(&self, x: u64) -> Result<u64, PermError> {
        let (i, j, k) = self.0.decode(x);
        Ok(self.0.encode(i - 1, j, k))
    }

    fn inverse(&self, y: u64) -> Result<u64, PermError> {
        let (i, j, k) = self.0.decode(y);
        Ok(self.0.encode(i + 1, j, k))
    }
}

/// Swaps the two parts of one column pointwise.
struct PartSwap {
    scheme: ColumnScheme2,
    column: i64,
}

impl PartSwap {
    fn image(&self, x: u64) -> u64 {
        match self.scheme.decode(x) {
            (i, j, k) if i == self.column => self.scheme.encode(i, j.other(), k),
            _ => x,
        }
    }
}

impl AtomRule for PartSwap {
    fn forward(&self, x: u64) -> Result<u64, PermError> {
        Ok(self.image(x))
    }

    fn inverse(&self, y: u64) -> Result<u64, PermError> {
        Ok(self.image(y))
    }
}

/// `w(c_{i+1,j}^k) = c_{i,j}^k`.
pub fn gen_w3(s: ColumnScheme2) -> PermExpr {
    PermExpr::Atom(Atom::new("w", None, Arc::new(ShiftLeft(s))))
}

pub fn gen_p0(s: ColumnScheme2) -> PermExpr {
    PermExpr::Atom(Atom::new("p0", None, Arc::new(PartSwap { scheme: s, column: 0 })))
}

/// `p_n` as the conjugate of `p0` carrying column `n` onto column 0 and
/// back: `p0^{w^{-n}}` under left-to-right action.
pub fn gen_pn(s: ColumnScheme2, n: u64) -> PermExpr {
    gen_p0(s).conj(gen_w3(s).pow(-(n as i64)))
}

/// Direct rule for the `p[n]` atom; agrees with [`gen_pn`].
pub fn p_atom(s: ColumnScheme2, n: u64) -> Atom {
    Atom::new(
        "p",
        Some(n),
        Arc::new(PartSwap {
            scheme: s,
            column: n as i64,
        }),
    )
}

pub fn gen_z() -> PermExpr {
    PermExpr::Atom(z())
}

/// Standard atoms plus `w`, `p0`, `p[n]` and the stage-built `b`.
pub fn registry(s: ColumnScheme2, b: PermExpr) -> AtomRegistry {
    let mut r = AtomRegistry::standard();
    for g in [gen_w3(s), gen_p0(s), b] {
        if let PermExpr::Atom(a) = g {
            r.insert(a);
        }
    }
    r.insert_family("p", move |n| p_atom(s, n));
    r
}

/// Word over `tau` and `z` for `(0 k)`, `k ≥ 1`.
///
/// Under left-to-right action `tau^{z^e} = (z^e(0) z^e(1)) = (0 z^e(1))`, and
/// `z^e(1)` runs through the odd numbers for `e ≥ 0` and the even ones for
/// `e < 0`.
fn zero_swap_word(k: u64) -> PermExpr {
    let e = if k % 2 == 1 {
        ((k - 1) / 2) as i64
    } else {
        -((k / 2) as i64)
    };
    if e == 0 {
        PermExpr::Atom(tau())
    } else {
        PermExpr::Atom(tau()).conj(gen_z().pow(e))
    }
}

/// Expression over `tau` and `z` equal to the transposition `(n m)`.
///
/// `(0 a)` conjugated by `(0 b)` is `(a b)` for distinct nonzero `a, b`;
/// conjugation by an involution does not depend on handedness.
pub fn transposition_word(n: u64, m: u64) -> Result<PermExpr, Pi2Error> {
    if n == m {
        return Err(Pi2Error::SamePoint(n));
    }
    let (lo, hi) = (n.min(m), n.max(m));
    Ok(if lo == 0 {
        zero_swap_word(hi)
    } else {
        zero_swap_word(lo).conj(zero_swap_word(hi))
    })
}

/// Product of transposition words for each 2-cycle of an involution.
pub fn finword_for(f: &FinPerm) -> Result<PermExpr, Pi2Error> {
    if !f.is_involution() {
        return Err(Pi2Error::NotInvolution);
    }
    let words = f
        .cycles()
        .into_iter()
        .map(|c| transposition_word(c[0], c[1]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PermExpr::product(words))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::print;
    use crate::perm::{equal_on, Window};

    const S: ColumnScheme2 = ColumnScheme2;

    #[test]
    fn scheme_values() {
        assert_eq!(S.encode(0, Part::Left, 0), 0);
        assert_eq!(S.encode(0, Part::Right, 0), 1);
        assert_eq!(S.decode(S.encode(-1, Part::Right, 5)), (-1, Part::Right, 5));
        for x in 0..5000 {
            let (i, j, k) = S.decode(x);
            assert_eq!(S.encode(i, j, k), x);
        }
    }

    #[test]
    fn w_and_p() {
        let w = gen_w3(S);
        assert_eq!(w.eval(S.encode(1, Part::Left, 4)).unwrap(), S.encode(0, Part::Left, 4));
        assert_eq!(
            w.eval(S.encode(0, Part::Right, 0)).unwrap(),
            S.encode(-1, Part::Right, 0)
        );
        let p0 = gen_p0(S);
        assert_eq!(
            p0.eval(S.encode(0, Part::Left, 7)).unwrap(),
            S.encode(0, Part::Right, 7)
        );
        let p2 = gen_pn(S, 2);
        assert_eq!(
            p2.eval(S.encode(2, Part::Left, 3)).unwrap(),
            S.encode(2, Part::Right, 3)
        );
        assert_eq!(p2.eval(S.encode(0, Part::Left, 3)).unwrap(), S.encode(0, Part::Left, 3));
        let direct = PermExpr::Atom(p_atom(S, 2));
        assert!(equal_on(&p2, &direct, Window::new(500).unwrap()).unwrap());
    }

    #[test]
    fn literal_pn_acts_on_the_mirror_column() {
        // p0^{w^2} read left to right acts on column -2, not 2.
        let lit = gen_p0(S).conj(gen_w3(S).pow(2));
        let x = S.encode(-2, Part::Left, 1);
        assert_eq!(lit.eval(x).unwrap(), S.encode(-2, Part::Right, 1));
        let y = S.encode(2, Part::Left, 1);
        assert_eq!(lit.eval(y).unwrap(), y);
    }

    #[test]
    fn words_for_small_transpositions() {
        let w8 = Window::new(8).unwrap();
        let fin = |a, b| PermExpr::fin(FinPerm::transposition(a, b).unwrap());
        assert_eq!(print(&transposition_word(0, 2).unwrap()), "tau^{z^{-1}}");
        assert_eq!(print(&transposition_word(0, 3).unwrap()), "tau^{z^1}");
        assert_eq!(print(&transposition_word(0, 1).unwrap()), "tau");
        let w23 = transposition_word(2, 3).unwrap();
        assert_eq!(print(&w23), "(tau^{z^{-1}})^{tau^{z^1}}");
        assert!(equal_on(&w23, &fin(2, 3), w8).unwrap());
        assert!(equal_on(&transposition_word(0, 2).unwrap(), &fin(0, 2), w8).unwrap());
        assert_eq!(transposition_word(4, 4), Err(Pi2Error::SamePoint(4)));
    }

    #[test]
    fn finwords() {
        let t01 = FinPerm::transposition(0, 1).unwrap();
        assert_eq!(print(&finword_for(&t01).unwrap()), "tau");
        let f = FinPerm::from_cycles(&[vec![2, 3], vec![4, 6]]).unwrap();
        let word = finword_for(&f).unwrap();
        assert!(equal_on(&word, &PermExpr::fin(f), Window::new(16).unwrap()).unwrap());
        assert_eq!(finword_for(&FinPerm::identity()).unwrap(), PermExpr::identity());
        let c3 = FinPerm::cycle(&[0, 1, 2]).unwrap();
        assert_eq!(finword_for(&c3), Err(Pi2Error::NotInvolution));
    }
}
