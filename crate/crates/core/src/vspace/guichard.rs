use std::fmt;

use super::{Field, SemilinearMap, Subspace, Vector, VspaceError};
use crate::perm::{FinPerm, PermExpr};

/// The five subspaces built on the pairs `(v_{2j}, v_{2j+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GuichardSpace {
    /// `span{v_0, v_2, v_4, …}`
    V1,
    /// `span{v_1, v_3, v_5, …}`
    V2,
    /// `span{v_0 + v_1, v_2 + v_3, …}`
    V3,
    /// `span{v_1 + v_2, v_3 + v_4, …}`
    V4,
    /// `span{v_0 + α_0 v_1, v_2 + α_1 v_3, …}`
    V5,
}

impl GuichardSpace {
    pub fn from_index(k: u8) -> Result<Self, VspaceError> {
        match k {
            1 => Ok(GuichardSpace::V1),
            2 => Ok(GuichardSpace::V2),
            3 => Ok(GuichardSpace::V3),
            4 => Ok(GuichardSpace::V4),
            5 => Ok(GuichardSpace::V5),
            _ => Err(VspaceError::NoSuchSpace(k)),
        }
    }

    pub const ALL: [GuichardSpace; 5] = [
        GuichardSpace::V1,
        GuichardSpace::V2,
        GuichardSpace::V3,
        GuichardSpace::V4,
        GuichardSpace::V5,
    ];

    /// The `j`-th generator.
    pub fn generator(self, field: Field, j: u64) -> Vector {
        let e = |i| Vector::basis(field, i);
        match self {
            GuichardSpace::V1 => e(2 * j),
            GuichardSpace::V2 => e(2 * j + 1),
            GuichardSpace::V3 => e(2 * j).add(&e(2 * j + 1)),
            GuichardSpace::V4 => e(2 * j + 1).add(&e(2 * j + 2)),
            GuichardSpace::V5 => e(2 * j).axpy(&field.alpha(j as usize), &e(2 * j + 1)),
        }
    }

    /// Membership of `v`. V1, V2, V3 and V5 are read off the coordinate
    /// pairs; V4 is decided by reduction against the generators that meet
    /// the support of `v`.
    pub fn contains(self, v: &Vector) -> bool {
        let f = v.field();
        let top = v.max_index().unwrap_or(0);
        let pairs = top / 2 + 1;
        let x = |i| v.get(i);
        match self {
            GuichardSpace::V1 => v.support().all(|i| i % 2 == 0),
            GuichardSpace::V2 => v.support().all(|i| i % 2 == 1),
            GuichardSpace::V3 => (0..pairs).all(|j| x(2 * j) == x(2 * j + 1)),
            GuichardSpace::V4 => Subspace::span(f, (0..pairs).map(|j| self.generator(f, j))).member(v),
            GuichardSpace::V5 => {
                let mut alphas = f.enumeration();
                (0..pairs).all(|j| x(2 * j + 1) == alphas.next().unwrap().mul(&x(2 * j)))
            }
        }
    }
}

impl fmt::Display for GuichardSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = GuichardSpace::ALL.iter().position(|s| s == self).unwrap() + 1;
        write!(f, "V{k}")
    }
}

pub fn guichard_membership(which: u8, v: &Vector) -> Result<bool, VspaceError> {
    Ok(GuichardSpace::from_index(which)?.contains(v))
}

/// For the image of a finitary `p`: every `v − μ(v)` lies in `W`, the span
/// of the basis vectors `p` moves.
pub fn property_d_holds(field: Field, p: &FinPerm, samples: &[Vector]) -> Result<bool, VspaceError> {
    let m = SemilinearMap::perm_induced(field, PermExpr::fin(p.clone()));
    let w = Subspace::coordinate(field, p.support());
    for v in samples {
        if !w.member(&v.sub(&m.apply(v)?)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A vector `x` with `x − μ(x) ∉ W`, where `μ` is induced by an involution
/// certified to have infinitely many 2-cycles.
///
/// `W` only touches finitely many basis indices, so some swapped pair
/// `(u, v)` avoids them; then `e_u − μ(e_u) = e_u − e_v` has a coordinate
/// outside that support.
pub fn refute_property_d(field: Field, e: &PermExpr, w: &Subspace) -> Result<Vector, VspaceError> {
    let cert = e.swap_certificate()?.ok_or(VspaceError::CertificateMissing)?;
    let used = w.support();
    let m = SemilinearMap::perm_induced(field, e.clone());
    let mut k = 0;
    loop {
        let (u, v) = cert.pair(k);
        if !used.contains(&u) && !used.contains(&v) {
            let x = Vector::basis(field, u.min(v));
            let d = x.sub(&m.apply(&x)?);
            if w.member(&d) {
                return Err(VspaceError::WitnessRejected(x));
            }
            return Ok(x);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::atoms::{blk, swapadj, tau};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rationals;

    #[test]
    fn generators_are_members() {
        for f in [Q, Field::Prime(5), Field::Gf4] {
            for s in GuichardSpace::ALL {
                for j in 0..6 {
                    assert!(s.contains(&s.generator(f, j)), "{s} generator {j} over {f}");
                }
            }
        }
        let e = |i| Vector::basis(Q, i);
        assert!(guichard_membership(1, &e(0)).unwrap());
        assert!(guichard_membership(3, &e(0).add(&e(1))).unwrap());
        assert!(!guichard_membership(1, &e(1)).unwrap());
        assert!(!guichard_membership(4, &e(0)).unwrap());
        assert!(guichard_membership(6, &e(0)).is_err());
    }

    #[test]
    fn closed_forms_agree_with_spans() {
        let f = Field::Prime(3);
        // all vectors of GF(3)^6
        for code in 0..729u64 {
            let mut c = code;
            let v = Vector::from_pairs(
                f,
                (0..6).map(|i| {
                    let a = f.from_i64((c % 3) as i64);
                    c /= 3;
                    (i, a)
                }),
            );
            for s in GuichardSpace::ALL {
                let span = Subspace::span(f, (0..4).map(|j| s.generator(f, j)));
                let restricted = span.intersect(&Subspace::coordinate(f, 0..6));
                assert_eq!(s.contains(&v), restricted.member(&v), "{s} {v}");
            }
        }
    }

    #[test]
    fn property_d_for_finitary() {
        let p = FinPerm::transposition(0, 1).unwrap();
        let v = Vector::from_ints(Q, &[(0, 3), (2, 1)]);
        let m = SemilinearMap::perm_induced(Q, PermExpr::fin(p.clone()));
        assert_eq!(v.sub(&m.apply(&v).unwrap()), Vector::from_ints(Q, &[(0, 3), (1, -3)]));
        assert!(property_d_holds(Q, &p, &[v]).unwrap());

        let f = Field::Prime(5);
        let p2 = FinPerm::from_cycles(&[vec![1, 4], vec![2, 7]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let samples: Vec<Vector> = (0..100).map(|_| Vector::random(f, 10, 0.5, &mut rng)).collect();
        assert!(property_d_holds(f, &p2, &samples).unwrap());
        assert!(property_d_holds(f, &FinPerm::identity(), &samples).unwrap());
    }

    #[test]
    fn refutations() {
        let sw = PermExpr::Atom(swapadj());
        let w = Subspace::span(Q, [Vector::from_ints(Q, &[(0, 1), (1, -1)])]);
        assert_eq!(refute_property_d(Q, &sw, &w).unwrap(), Vector::basis(Q, 2));
        assert_eq!(
            refute_property_d(Q, &sw, &Subspace::zero(Q)).unwrap(),
            Vector::basis(Q, 0)
        );
        let b = PermExpr::Atom(blk());
        let w = Subspace::coordinate(Q, 0..6);
        assert_eq!(refute_property_d(Q, &b, &w).unwrap(), Vector::basis(Q, 8));
        assert_eq!(
            refute_property_d(Q, &PermExpr::Atom(tau()), &w),
            Err(VspaceError::CertificateMissing)
        );
    }
}
