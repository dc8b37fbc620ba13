use std::collections::BTreeSet;

use super::gen::{coord_bound, dense_rank, random_expr, random_finperm, random_gsl, random_nontrivial};
use super::{rng, Report, Tally};
use crate::intalg::{kernel_witness, psi_conjugation_invariance, BElem, InducedAut};
use crate::pairing::{fold, pair, unfold, unpair};
use crate::perm::atoms::blk;
use crate::perm::{PermExpr, Window};
use crate::pi2::{ColumnScheme2, Construction, Pi2Predicate};
use crate::vspace::{Field, GuichardSpace, Subspace, Vector};
use rand::Rng;

type Property = fn(u64) -> Tally;

/// Seeded invariant checks across the library, one record per property.
pub fn properties(seed: u64) -> Report {
    let mut r = Report::new(format!("suite properties --seed {seed}"));
    let props: [(&str, Property); 12] = [
        ("prop_pairing_round_trip", pairing),
        ("prop_expr_inverse", expr_inverse),
        ("prop_finitary_matches_eval", finitary_matches_eval),
        ("prop_belem_boolean_laws", belem_laws),
        ("prop_h_inverse", h_inverse),
        ("prop_kernel_witness", kernel),
        ("prop_psi_conjugation", psi_conjugation),
        ("prop_field_axioms", field_axioms),
        ("prop_subspace_dimensions", subspace_dims),
        ("prop_gsl_inverse", gsl_inverse),
        ("prop_guichard_generators", guichard),
        ("prop_stage_involution", stage_involution),
    ];
    for (name, f) in props {
        r.push(f(seed).record(name, format!("seed={seed}")));
    }
    r
}

fn pairing(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for _ in 0..500 {
        let (a, b) = (g.gen_range(0..1u64 << 20), g.gen_range(0..1u64 << 20));
        t.equal(unpair(pair(a, b)), (a, b), || format!("pair({a}, {b})"));
        let i = g.gen_range(-(1i64 << 30)..1 << 30);
        t.equal(unfold(fold(i)), i, || format!("fold({i})"));
    }
    t
}

fn expr_inverse(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for k in 0..100 {
        let e = random_expr(&mut g, 3);
        let inv = e.clone().inv();
        let ok = (0..48u64).all(|x| {
            let y = e.eval(x).unwrap();
            e.eval_inverse(y).unwrap() == x && inv.eval(y).unwrap() == x
        });
        t.check(ok, || format!("expression {k}"));
    }
    t
}

fn finitary_matches_eval(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for k in 0..100 {
        let e = random_expr(&mut g, 3);
        if let Ok(Some(f)) = e.finitary() {
            let ok = (0..64u64).all(|x| e.eval(x).ok() == Some(f.apply(x)));
            t.check(ok, || format!("expression {k}"));
        }
    }
    t
}

fn belem_laws(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for k in 0..300 {
        let x = BElem::random(&mut g, -5, 5, 3);
        let y = BElem::random(&mut g, -5, 5, 3);
        t.equal(x.join(&y).complement(), x.complement().meet(&y.complement()), || {
            format!("de Morgan {k}")
        });
        t.equal(x.complement().complement(), x.clone(), || {
            format!("double complement {k}")
        });
        t.equal(x.join(&x.meet(&y)), x.clone(), || format!("absorption {k}"));
        t.equal(x.leq(&y), x.meet(&y) == x, || format!("order {k}"));
        t.check(x.meet(&x.complement()).is_zero(), || format!("disjoint complement {k}"));
    }
    t
}

fn h_inverse(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for k in 0..200 {
        let h = InducedAut::new(PermExpr::fin(random_finperm(&mut g, 10, 6)));
        let x = BElem::random(&mut g, -2, 12, 3);
        let back = h.apply(&x).and_then(|y| h.inverse().apply(&y));
        t.equal(back.ok(), Some(x), || format!("sample {k}"));
    }
    t
}

fn kernel(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for k in 0..100 {
        let p = random_nontrivial(&mut g, 8);
        t.check(kernel_witness(&p).is_ok_and(|w| w.verified()), || format!("perm {k}"));
    }
    t
}

fn psi_conjugation(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    let w = Window::new(64).unwrap();
    for k in 0..40 {
        let q = random_finperm(&mut g, 10, 5);
        let e = if k % 2 == 0 {
            PermExpr::fin(random_nontrivial(&mut g, 8))
        } else {
            PermExpr::Atom(blk())
        };
        t.equal(psi_conjugation_invariance(&e, &q, w).ok(), Some(true), || {
            format!("sample {k}")
        });
    }
    t
}

fn field_axioms(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for f in [Field::Rationals, Field::Prime(5), Field::Prime(7), Field::Gf4] {
        for k in 0..200 {
            let (a, b, c) = (f.random(&mut g), f.random(&mut g), f.random(&mut g));
            t.equal(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)), || {
                format!("{f} distributive {k}")
            });
            t.equal(a.add(&b).sub(&b), a.clone(), || format!("{f} subtraction {k}"));
            if !a.is_zero() {
                t.check(a.mul(&a.inv().unwrap()).is_one(), || format!("{f} inverse {k}"));
            }
        }
    }
    t
}

fn subspace_dims(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for f in [Field::Rationals, Field::Prime(5)] {
        for k in 0..100 {
            let s = Subspace::random(f, 5, 8, &mut g);
            let u = Subspace::random(f, 5, 8, &mut g);
            let (sum, meet) = (s.sum(&u), s.intersect(&u));
            t.equal(sum.dim() + meet.dim(), s.dim() + u.dim(), || format!("{f} pair {k}"));
            t.check(meet.is_subspace_of(&s) && s.is_subspace_of(&sum), || {
                format!("{f} order {k}")
            });
            let dim = coord_bound(s.basis());
            t.equal(dense_rank(s.basis(), dim), s.dim(), || format!("{f} rank {k}"));
        }
    }
    t
}

fn gsl_inverse(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for f in [Field::Rationals, Field::Prime(5), Field::Gf4] {
        for k in 0..50 {
            let m = random_gsl(f, &mut g);
            let round = m.then(&m.inverse().unwrap()).unwrap();
            let ok = (0..14u64).all(|i| round.rep().apply_basis(i).ok() == Some(Vector::basis(f, i)));
            t.check(ok, || format!("{f} map {k}"));
            let inv = m.rep().invert().unwrap();
            let v = Vector::random(f, 12, 0.5, &mut g);
            let back = m.rep().apply(&v).and_then(|y| inv.apply(&y));
            t.equal(back.ok(), Some(v), || format!("{f} vector {k}"));
        }
    }
    t
}

fn guichard(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for f in [Field::Rationals, Field::Prime(5), Field::Gf4] {
        for s in GuichardSpace::ALL {
            let gens: Vec<Vector> = (0..6).map(|j| s.generator(f, j)).collect();
            let combo = gens
                .iter()
                .fold(Vector::zero(f), |acc, v| acc.axpy(&f.random(&mut g), v));
            t.check(gens.iter().all(|v| s.contains(v)), || format!("{s} over {f}"));
            t.check(s.contains(&combo), || format!("{s} over {f}: combination {combo}"));
        }
    }
    t
}

fn stage_involution(seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for name in ["always", "never", "lt", "even"] {
        let stages = g.gen_range(50..400);
        let c = Construction::run(ColumnScheme2, Pi2Predicate::named(name).unwrap(), stages);
        let points: BTreeSet<u64> = c.consumed_points();
        let ok = points.iter().all(|&x| {
            let y = c.image(x).unwrap();
            points.contains(&y) && c.image(y) == Some(x)
        });
        t.check(ok, || format!("{name} at {stages} stages"));
    }
    t
}
