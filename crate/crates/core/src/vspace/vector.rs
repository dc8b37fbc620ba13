use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use super::{Field, Scalar, VspaceError};

/// Finitely supported vector over the basis `e_0, e_1, …`; zero coordinates
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    coords: BTreeMap<u64, Scalar>,
}

impl Vector {
    pub fn zero(field: Field) -> Self {
        Vector {
            field,
            coords: BTreeMap::new(),
        }
    }

    pub fn basis(field: Field, i: u64) -> Self {
        Vector::zero(field).with(i, field.one())
    }

    pub fn from_pairs(field: Field, pairs: impl IntoIterator<Item = (u64, Scalar)>) -> Self {
        let mut v = Vector::zero(field);
        for (i, a) in pairs {
            let sum = v.get(i).add(&a);
            v.set(i, sum);
        }
        v
    }

    /// Integer coordinates, convenient in tests and examples.
    pub fn from_ints(field: Field, pairs: &[(u64, i64)]) -> Self {
        Vector::from_pairs(field, pairs.iter().map(|&(i, a)| (i, field.from_i64(a))))
    }

    fn with(mut self, i: u64, a: Scalar) -> Self {
        self.set(i, a);
        self
    }

    fn set(&mut self, i: u64, a: Scalar) {
        if a.is_zero() {
            self.coords.remove(&i);
        } else {
            self.coords.insert(i, a);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: u64) -> Scalar {
        self.coords.get(&i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coords.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.coords.iter().map(|(&i, a)| (i, a))
    }

    /// Least index with a nonzero coordinate, and that coordinate.
    pub fn leading(&self) -> Option<(u64, &Scalar)> {
        self.coords.iter().next().map(|(&i, a)| (i, a))
    }

    pub fn max_index(&self) -> Option<u64> {
        self.coords.keys().next_back().copied()
    }

    pub fn add(&self, o: &Vector) -> Vector {
        self.axpy(&self.field.one(), o)
    }

    pub fn sub(&self, o: &Vector) -> Vector {
        self.axpy(&self.field.one().neg(), o)
    }

    /// `self + a·o`.
    pub fn axpy(&self, a: &Scalar, o: &Vector) -> Vector {
        let mut r = self.clone();
        for (i, b) in &o.coords {
            let c = r.get(*i).add(&a.mul(b));
            r.set(*i, c);
        }
        r
    }

    pub fn scale(&self, a: &Scalar) -> Vector {
        if a.is_zero() {
            return Vector::zero(self.field);
        }
        Vector {
            field: self.field,
            coords: self.coords.iter().map(|(&i, b)| (i, a.mul(b))).collect(),
        }
    }

    /// Coordinates moved by `shift` positions to the right.
    pub(crate) fn shifted(&self, shift: u64) -> Vector {
        Vector {
            field: self.field,
            coords: self.coords.iter().map(|(&i, a)| (i + shift, a.clone())).collect(),
        }
    }

    /// Splits at `cut`: coordinates below it and the rest shifted down.
    pub(crate) fn split_at(&self, cut: u64) -> (Vector, Vector) {
        let lo = self.coords.range(..cut).map(|(&i, a)| (i, a.clone())).collect();
        let hi = self.coords.range(cut..).map(|(&i, a)| (i - cut, a.clone())).collect();
        (
            Vector {
                field: self.field,
                coords: lo,
            },
            Vector {
                field: self.field,
                coords: hi,
            },
        )
    }

    /// Each index below `dim` independently nonzero with probability `density`.
    pub fn random<R: Rng + ?Sized>(field: Field, dim: u64, density: f64, rng: &mut R) -> Vector {
        let mut v = Vector::zero(field);
        for i in 0..dim {
            if rng.gen_bool(density) {
                v.set(i, field.random_nonzero(rng));
            }
        }
        v
    }

    /// `FIELD[i:a,j:b,…]`, e.g. `Q[0:3,2:-1/2]`; the zero vector is `Q[]`.
    pub fn parse(s: &str) -> Result<Vector, VspaceError> {
        let bad = || VspaceError::BadVector(s.to_string());
        let s = s.trim();
        let (tag, rest) = s.split_once('[').ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let field: Field = tag.parse()?;
        let mut v = Vector::zero(field);
        for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (i, a) = item.split_once(':').ok_or_else(bad)?;
            let i: u64 = i.trim().parse().map_err(|_| bad())?;
            if v.coords.contains_key(&i) {
                return Err(bad());
            }
            v.set(i, field.parse_scalar(a)?);
        }
        Ok(v)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (k, (i, a)) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}:{a}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finitely generated subspace held as a reduced row echelon basis: sorted
/// by leading index, each leading coefficient 1, and every pivot column zero
/// in the other rows. Equal subspaces have identical bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(field: Field) -> Self {
        Subspace {
            field,
            basis: Vec::new(),
        }
    }

    pub fn span(field: Field, vs: impl IntoIterator<Item = Vector>) -> Self {
        let mut s = Subspace::zero(field);
        for v in vs {
            s.insert(v);
        }
        s
    }

    /// Span of `e_i` for `i` in `indices`.
    pub fn coordinate(field: Field, indices: impl IntoIterator<Item = u64>) -> Self {
        Subspace::span(field, indices.into_iter().map(|i| Vector::basis(field, i)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Indices touched by some basis vector.
    pub fn support(&self) -> BTreeSet<u64> {
        self.basis
            .iter()
            .flat_map(|b| b.support().collect::<Vec<_>>())
            .collect()
    }

    /// `v` minus its projection along the pivots; zero iff `v` is a member.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for b in &self.basis {
            let (p, _) = b.leading().unwrap();
            let c = r.get(p);
            if !c.is_zero() {
                r = r.axpy(&c.neg(), b);
            }
        }
        r
    }

    pub fn member(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    fn insert(&mut self, v: Vector) {
        assert_eq!(v.field(), self.field, "vector from another field");
        let r = self.reduce(&v);
        let Some((q, lead)) = r.leading() else {
            return;
        };
        let r = r.scale(&lead.inv().unwrap());
        for b in &mut self.basis {
            let c = b.get(q);
            if !c.is_zero() {
                *b = b.axpy(&c.neg(), &r);
            }
        }
        let at = self.basis.partition_point(|b| b.leading().unwrap().0 < q);
        self.basis.insert(at, r);
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut s = self.clone();
        for b in &o.basis {
            s.insert(b.clone());
        }
        s
    }

    /// Zassenhaus: reduce the rows `(u | u)` for `u ∈ S` and `(w | 0)` for
    /// `w ∈ T`, the second block shifted past every index in use. Rows whose
    /// first block vanishes span `S ∩ T`.
    pub fn intersect(&self, o: &Subspace) -> Subspace {
        let cut = self
            .basis
            .iter()
            .chain(&o.basis)
            .filter_map(Vector::max_index)
            .max()
            .map_or(0, |m| m + 1);
        let rows = self
            .basis
            .iter()
            .map(|u| u.add(&u.shifted(cut)))
            .chain(o.basis.iter().cloned());
        let big = Subspace::span(self.field, rows);
        Subspace::span(
            self.field,
            big.basis
                .iter()
                .filter(|b| b.leading().unwrap().0 >= cut)
                .map(|b| b.split_at(cut).1),
        )
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.basis.iter().all(|b| o.member(b))
    }

    /// Random span of up to `max_dim` vectors supported below `dim`.
    pub fn random<R: Rng + ?Sized>(field: Field, max_dim: usize, dim: u64, rng: &mut R) -> Subspace {
        let k = rng.gen_range(0..=max_dim);
        Subspace::span(field, (0..k).map(|_| Vector::random(field, dim, 0.5, rng)))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (k, b) in self.basis.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Inverse of a square matrix by Gauss-Jordan elimination. Rows are
/// `m[row][col]`.
pub(crate) fn invert_matrix(field: Field, m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, VspaceError> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(VspaceError::NotInvertible)?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for x in &mut a[col] {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let c = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&c.mul(p));
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn e(i: u64) -> Vector {
        Vector::basis(Q, i)
    }

    #[test]
    fn vector_text_round_trip() {
        let v = Vector::from_pairs(Q, [(0, Q.from_i64(3)), (2, Q.rational(-1, 2).unwrap())]);
        assert_eq!(v.to_string(), "Q[0:3,2:-1/2]");
        assert_eq!(Vector::parse("Q[0:3,2:-1/2]").unwrap(), v);
        assert_eq!(Vector::parse("GF5[]").unwrap(), Vector::zero(Field::Prime(5)));
        assert!(Vector::parse("Q[0:1,0:2]").is_err());
        assert!(Vector::parse("Q 0:1").is_err());
        let cancel = Vector::from_ints(Q, &[(1, 2), (1, -2)]);
        assert!(cancel.is_zero());
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(Q, [e(0), e(0).add(&e(1))]);
        let b = Subspace::span(Q, [e(0), e(1)]);
        assert_eq!(a, b);
        assert_eq!(a.sum(&a), a);
        assert_eq!(a.dim(), 2);
        assert!(a.member(&Vector::from_ints(Q, &[(0, 5), (1, -7)])));
        assert!(!a.member(&e(2)));
    }

    #[test]
    fn intersection_over_gf2_matches_brute_force() {
        let f = Field::Prime(2);
        let eb = |i| Vector::basis(f, i);
        let s = Subspace::span(f, [eb(0), eb(1)]);
        let t = Subspace::span(f, [eb(1), eb(2)]);
        assert_eq!(s.intersect(&t), Subspace::span(f, [eb(1)]));
        // every vector of GF(2)^3 in both spans
        let common: Vec<Vector> = (0..8i64)
            .map(|m| Vector::from_ints(f, &[(0, m & 1), (1, (m >> 1) & 1), (2, (m >> 2) & 1)]))
            .filter(|v| s.member(v) && t.member(v))
            .collect();
        assert_eq!(Subspace::span(f, common), s.intersect(&t));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn matrix_inverse() {
        let f = Field::Prime(5);
        let m = vec![vec![f.from_i64(1), f.from_i64(2)], vec![f.from_i64(3), f.from_i64(4)]];
        let inv = invert_matrix(f, &m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let s = (0..2).fold(f.zero(), |acc, k| acc.add(&m[i][k].mul(&inv[k][j])));
                assert_eq!(s, if i == j { f.one() } else { f.zero() });
            }
        }
        let singular = vec![vec![f.one(), f.one()], vec![f.one(), f.one()]];
        assert_eq!(invert_matrix(f, &singular), Err(VspaceError::NotInvertible));
    }
}
