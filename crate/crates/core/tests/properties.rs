use proptest::prelude::*;
use symcode::intalg::{apply_h, BElem, Bound};
use symcode::lang::{parse, print};
use symcode::pairing::{fold, pair, unfold, unpair};
use symcode::perm::{AtomRegistry, FinPerm, PermExpr};
use symcode::pi2::{two_cycle_count, Pi2Predicate};
use symcode::verify::{properties, random_expr};
use symcode::vspace::{Field, Subspace, Vector};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn finperm() -> impl Strategy<Value = FinPerm> {
    Just((0u64..10).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|img| FinPerm::from_map((0..10).zip(img).collect()).unwrap())
}

fn belem() -> impl Strategy<Value = BElem> {
    prop::collection::vec((-8i64..40, 1i64..4), 0..6).prop_map(|mut pts| {
        pts.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
        let bounds: Vec<Bound> = pts.iter().map(|&(n, d)| Bound::ratio(n, d)).collect();
        BElem::from_intervals(bounds.chunks_exact(2).map(|c| (c[0].clone(), c[1].clone())).collect())
    })
}

fn gf5_vector() -> impl Strategy<Value = Vector> {
    prop::collection::vec((0u64..8, 1i64..5), 0..5).prop_map(|ps| Vector::from_ints(Field::Prime(5), &ps))
}

proptest! {
    #[test]
    fn pairing_inverts(a in 0u64..1 << 24, b in 0u64..1 << 24, i in -(1i64 << 40)..1 << 40) {
        prop_assert_eq!(unpair(pair(a, b)), (a, b));
        prop_assert_eq!(unfold(fold(i)), i);
    }

    #[test]
    fn random_expressions_round_trip(seed in any::<u64>()) {
        let e = random_expr(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        prop_assert_eq!(parse(&print(&e), &AtomRegistry::standard()).unwrap(), e);
    }

    #[test]
    fn inverse_undoes_eval(seed in any::<u64>(), x in 0u64..200) {
        let e = random_expr(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        prop_assert_eq!(e.eval_inverse(e.eval(x).unwrap()).unwrap(), x);
    }

    #[test]
    fn h_is_a_homomorphism(p in finperm(), q in finperm(), x in belem(), y in belem()) {
        let (pe, qe) = (PermExpr::fin(p), PermExpr::fin(q));
        let pq = PermExpr::Prod(vec![pe.clone(), qe.clone()]);
        prop_assert_eq!(apply_h(&pq, &x).unwrap(), apply_h(&qe, &apply_h(&pe, &x).unwrap()).unwrap());
        prop_assert_eq!(
            apply_h(&pe, &x.meet(&y)).unwrap(),
            apply_h(&pe, &x).unwrap().meet(&apply_h(&pe, &y).unwrap())
        );
        prop_assert_eq!(apply_h(&pe, &x.complement()).unwrap(), apply_h(&pe, &x).unwrap().complement());
    }

    #[test]
    fn belem_text_round_trips(x in belem()) {
        prop_assert_eq!(x.to_string().parse::<BElem>().unwrap(), x);
    }

    #[test]
    fn vector_text_round_trips(v in gf5_vector()) {
        prop_assert_eq!(Vector::parse(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn modular_dimension_law(a in prop::collection::vec(gf5_vector(), 0..4), b in prop::collection::vec(gf5_vector(), 0..4)) {
        let f = Field::Prime(5);
        let (s, t) = (Subspace::span(f, a), Subspace::span(f, b));
        prop_assert_eq!(s.sum(&t).dim() + s.intersect(&t).dim(), s.dim() + t.dim());
    }

    #[test]
    fn stage_counts_grow(n in 0u64..12, s in 1u64..600) {
        for name in ["always", "never", "lt", "even"] {
            let r = Pi2Predicate::named(name).unwrap();
            prop_assert!(two_cycle_count(n, &r, s) <= two_cycle_count(n, &r, s + 50));
        }
    }
}

#[test]
fn properties_suite_passes_and_is_deterministic() {
    let a = properties(7);
    assert!(a.all_passed(), "{}", a.render_text());
    assert_eq!(a.render_machine(), properties(7).render_machine());
}
