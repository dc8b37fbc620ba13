use std::collections::BTreeMap;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::perm::atoms::{blk, swapadj, swapadj_fixed, tau, z};
use crate::perm::{FinPerm, PermExpr};
use crate::vspace::{Field, GslElement, Scalar, SemilinearMap, Sigma, Vector};

/// Random permutation of up to `max_moved` points drawn from `0..points`.
pub fn random_finperm<R: Rng + ?Sized>(rng: &mut R, points: u64, max_moved: usize) -> FinPerm {
    let k = rng.gen_range(0..=max_moved.min(points as usize));
    let chosen: Vec<u64> = index::sample(rng, points as usize, k)
        .into_iter()
        .map(|i| i as u64)
        .collect();
    let mut image = chosen.clone();
    image.shuffle(rng);
    FinPerm::from_map(chosen.into_iter().zip(image).collect::<BTreeMap<_, _>>()).unwrap()
}

/// A nonidentity product of 1 to 3 transpositions on `0..points`.
pub fn random_nontrivial<R: Rng + ?Sized>(rng: &mut R, points: u64) -> FinPerm {
    loop {
        let mut f = FinPerm::identity();
        for _ in 0..rng.gen_range(1..=3) {
            let a = rng.gen_range(0..points);
            let b = (a + rng.gen_range(1..points)) % points;
            f = f.then(&FinPerm::transposition(a, b).unwrap());
        }
        if !f.is_identity() {
            return f;
        }
    }
}

/// Random expression over the standard atoms in canonical form: products
/// have at least two factors and cycle literals are never the identity.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> PermExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..8) {
            0 => PermExpr::identity(),
            1 | 2 => loop {
                let f = random_finperm(rng, 9, 5);
                if !f.is_identity() {
                    break PermExpr::fin(f);
                }
            },
            k => PermExpr::Atom([tau(), z(), swapadj(), blk(), swapadj_fixed()][k - 3].clone()),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..5) {
        0 => random_expr(rng, d).inv(),
        1 => random_expr(rng, d).pow(rng.gen_range(-3..=3)),
        2 => PermExpr::Prod((0..rng.gen_range(2..=3)).map(|_| random_expr(rng, d)).collect()),
        3 => random_expr(rng, d).conj(random_expr(rng, d)),
        _ => random_expr(rng, d).comm(random_expr(rng, d)),
    }
}

/// `δ(p)` followed by an invertible triangular modification: the listed
/// `e_i` go to `a_i e_i + c_i e_{i+1}` with `a_i ≠ 0`.
pub(crate) fn random_gsl<R: Rng + ?Sized>(field: Field, g: &mut R) -> GslElement {
    let delta = SemilinearMap::perm_induced(field, PermExpr::fin(random_finperm(g, 10, 6)));
    let mut table = BTreeMap::new();
    for i in 0..10 {
        if g.gen_bool(0.4) {
            let v = Vector::basis(field, i)
                .scale(&field.random_nonzero(g))
                .add(&Vector::basis(field, i + 1).scale(&field.random(g)));
            table.insert(i, v);
        }
    }
    let fm = SemilinearMap::finite_modification(field, Sigma::Identity, table).unwrap();
    GslElement::normalize(SemilinearMap::compose(delta, fm).unwrap()).unwrap()
}

/// Rank by dense elimination over the coordinates `0..dim`.
pub(crate) fn dense_rank(vs: &[Vector], dim: u64) -> usize {
    let mut rows: Vec<Vec<Scalar>> = vs.iter().map(|v| (0..dim).map(|i| v.get(i)).collect()).collect();
    let mut rank = 0;
    for col in 0..dim as usize {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x.mul(&inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = x.sub(&c.mul(p));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Whether two lists span the same space, by ranks alone.
pub(crate) fn same_span(a: &[Vector], b: &[Vector], dim: u64) -> bool {
    let both: Vec<Vector> = a.iter().chain(b).cloned().collect();
    let r = dense_rank(&both, dim);
    dense_rank(a, dim) == r && dense_rank(b, dim) == r
}

/// Smallest coordinate bound covering every vector.
pub(crate) fn coord_bound<'a>(vs: impl IntoIterator<Item = &'a Vector>) -> u64 {
    vs.into_iter().filter_map(Vector::max_index).max().map_or(1, |m| m + 1)
}
