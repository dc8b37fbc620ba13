use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use super::gen::{coord_bound, dense_rank, random_expr, random_finperm, random_gsl, random_nontrivial, same_span};
use super::{rng, Record, Report, Tally};
use crate::ce::{column_zero_window, decode_membership, probe_membership, ColumnSchemeZ, DecodeVerdict, Enumerator};
use crate::intalg::{apply_h, moved_region, phi_holds, psi_check, BElem, Bound, PhiClass, PsiVerdict, Refutation};
use crate::lang::{parse, print};
use crate::perm::atoms::{blk, swapadj_fixed};
use crate::perm::{AtomRegistry, ClassVerdict, FinPerm, PermExpr, Window};
use crate::pi2::{
    decode_at_horizon, product_on_column, sufficient_column_window, transposition_word, two_cycle_count, ColumnScheme2,
    Construction, Pi2Predicate,
};
use crate::pipeline::{lifted_probe_membership, Target};
use crate::vspace::{
    delta_embed, equivalent_mod_scalar, induced, property_d_holds, refute_property_d, Field, GslElement, Scalar,
    SemilinearMap, Sigma, Subspace, Vector,
};

/// One acceptance criterion; `run` takes the suite seed.
#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub run: fn(u64) -> Record,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "c01_decode_exactness",
            run: c01,
        },
        Criterion {
            id: 2,
            name: "c02_parity_law",
            run: c02,
        },
        Criterion {
            id: 3,
            name: "c03_transposition_words",
            run: c03,
        },
        Criterion {
            id: 4,
            name: "c04_stage_bookkeeping",
            run: c04,
        },
        Criterion {
            id: 5,
            name: "c05_pi2_classification",
            run: c05,
        },
        Criterion {
            id: 6,
            name: "c06_h_homomorphism",
            run: c06,
        },
        Criterion {
            id: 7,
            name: "c07_psi_discrimination",
            run: c07,
        },
        Criterion {
            id: 8,
            name: "c08_property_d",
            run: c08,
        },
        Criterion {
            id: 9,
            name: "c09_gsl_laws",
            run: c09,
        },
        Criterion {
            id: 10,
            name: "c10_lattice_preservation",
            run: c10,
        },
        Criterion {
            id: 11,
            name: "c11_pipeline_coherence",
            run: c11,
        },
        Criterion {
            id: 12,
            name: "c12_permlang_round_trip",
            run: c12,
        },
    ]
}

/// Runs every criterion, one record each.
pub fn acceptance(seed: u64) -> Report {
    let mut r = Report::new(format!("suite acceptance --seed {seed}"));
    r.extend(criteria().into_iter().map(|c| (c.run)(seed)));
    r
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Ground truth for the built-in sets: the stage enumerating `n`, if any.
fn ce_truth(set: &str, n: u64) -> Option<u64> {
    match set {
        "evens" => n.is_multiple_of(2).then_some(n / 2),
        "primes25" => (n < 100 && is_prime(n)).then(|| (0..n).filter(|&k| is_prime(k)).count() as u64),
        _ => None,
    }
}

const CE_SETS: [&str; 3] = ["evens", "empty", "primes25"];
const CE_HORIZON: u64 = 200;
const CE_N: u64 = 32;

fn c01(_seed: u64) -> Record {
    let mut t = Tally::default();
    let start = Instant::now();
    let s = ColumnSchemeZ;
    for name in CE_SETS {
        let e = Enumerator::named(name, CE_HORIZON).unwrap();
        let w = column_zero_window(s, CE_HORIZON);
        for n in 0..CE_N {
            let want = match ce_truth(name, n) {
                Some(stage) => DecodeVerdict::In { stage },
                None => DecodeVerdict::NotByHorizon { horizon: CE_HORIZON },
            };
            if let Some(got) = t.ok(decode_membership(n, s, &e, w), || format!("{name} n={n}")) {
                t.equal(got, want, || format!("{name} n={n}"));
            }
        }
    }
    t.within(start, Duration::from_secs(10));
    t.record("c01_decode_exactness", "sets=evens,empty,primes25 n<32 horizon=200")
}

fn c02(_seed: u64) -> Record {
    let mut t = Tally::default();
    let s = ColumnSchemeZ;
    for name in CE_SETS {
        let e = Enumerator::named(name, CE_HORIZON).unwrap();
        let w = column_zero_window(s, CE_HORIZON);
        for n in 0..CE_N {
            let Some(stage) = ce_truth(name, n) else { continue };
            if let Some(r) = t.ok(probe_membership(n, s, &e, w), || format!("{name} n={n}")) {
                let want = (stage % 2 == 1, stage % 2 == 0);
                t.equal((r.g0_nontrivial, r.g1_nontrivial), want, || {
                    format!("{name} n={n} t={stage}")
                });
            }
        }
    }
    t.record("c02_parity_law", "every In(t) case of c01")
}

fn c03(_seed: u64) -> Record {
    let mut t = Tally::default();
    let start = Instant::now();
    for n in 0..32u64 {
        for m in n + 1..32 {
            let Some(word) = t.ok(transposition_word(n, m), || format!("({n} {m})")) else {
                continue;
            };
            let mut ok = true;
            for x in 0..128u64 {
                let want = if x == n {
                    m
                } else if x == m {
                    n
                } else {
                    x
                };
                ok &= word.eval(x).ok() == Some(want);
            }
            t.check(ok, || format!("word for ({n} {m}) is not the transposition on 0..128"));
        }
    }
    t.within(start, Duration::from_secs(5));
    t.record("c03_transposition_words", "0<=n<m<32 window=128")
}

const PI2_PREDS: [&str; 4] = ["always", "never", "lt", "even"];
const MILESTONES: [u64; 3] = [100, 400, 1600];

fn pred_oracle(name: &str, n: u64, t: u64) -> bool {
    match name {
        "always" => true,
        "never" => false,
        "lt" => t < n,
        _ => n.is_multiple_of(2),
    }
}

/// `|{t : π(n, t) < S ∧ R(n, t)}|` with the pairing written out.
fn count_oracle(name: &str, n: u64, stages: u64) -> u64 {
    (0..)
        .map(|t| (t, (n + t) * (n + t + 1) / 2 + t))
        .take_while(|&(_, code)| code < stages)
        .filter(|&(t, _)| pred_oracle(name, n, t))
        .count() as u64
}

fn c04(_seed: u64) -> Record {
    let mut t = Tally::default();
    for name in PI2_PREDS {
        let r = Pi2Predicate::named(name).unwrap();
        let mut c = Construction::new(ColumnScheme2, r.clone());
        let mut last = [0u64; 16];
        for stages in MILESTONES {
            c.run_to(stages);
            let snap = Arc::new(c.clone());
            for n in 0..16u64 {
                let count = two_cycle_count(n, &r, stages);
                let want = count_oracle(name, n, stages);
                t.equal(count, want, || format!("{name} n={n} S={stages} count"));
                t.equal(snap.case1_count(n), want, || {
                    format!("{name} n={n} S={stages} snapshot count")
                });
                t.check(count >= last[n as usize], || {
                    format!("{name} n={n} count drops at S={stages}")
                });
                last[n as usize] = count;
                let w = sufficient_column_window(&snap, n);
                if let Some(p) = t.ok(product_on_column(&snap, n, w), || {
                    format!("{name} n={n} S={stages} product")
                }) {
                    let only_short = p.counts.keys().all(|&l| l == 1 || l == 2);
                    t.check(p.escapes == 0 && only_short, || {
                        format!("{name} n={n} S={stages} profile {p:?}")
                    });
                    t.equal(p.two_cycles() as u64, 2 * want, || {
                        format!("{name} n={n} S={stages} doubling")
                    });
                }
            }
        }
    }
    t.record("c04_stage_bookkeeping", "R=always,never,lt,even n<16 S=100,400,1600")
}

fn c05(_seed: u64) -> Record {
    let mut t = Tally::default();
    for name in PI2_PREDS {
        let r = Pi2Predicate::named(name).unwrap();
        let c = Construction::run(ColumnScheme2, r, 1600);
        for n in 0..16u64 {
            let truth = match name {
                "always" => true,
                "even" => n % 2 == 0,
                _ => false,
            };
            let v = decode_at_horizon(&c, n, 10);
            let got = match v {
                ClassVerdict::InfEvidence { .. } => Some(true),
                ClassVerdict::FinTwoCycles(k) => {
                    t.equal(k as u64, count_oracle(name, n, 1600), || {
                        format!("{name} n={n} final count")
                    });
                    Some(false)
                }
                ClassVerdict::Unknown => None,
            };
            t.equal(got, Some(truth), || format!("{name} n={n} verdict {v:?}"));
        }
    }
    t.record(
        "c05_pi2_classification",
        "R=always,never,lt,even n<16 S=1600 threshold=10",
    )
}

/// `p̃⁻¹` at a point, with the preimage found by search.
fn tilde_inverse(p: &FinPerm, x: &num_rational::BigRational) -> num_rational::BigRational {
    use num_traits::{ToPrimitive, Zero};
    if *x < num_rational::BigRational::zero() {
        return x.clone();
    }
    let n = x.floor();
    let k = n.to_integer().to_u64().unwrap();
    let pre = (0..).find(|&j| p.apply(j) == k).unwrap();
    num_rational::BigRational::from_integer(pre.into()) + (x - n)
}

fn c06(seed: u64) -> Record {
    let mut t = Tally::default();
    let mut g = rng(seed);
    let probes: Vec<num_rational::BigRational> = (-12..=72)
        .map(|k| num_rational::BigRational::new(k.into(), 4.into()))
        .collect();
    for i in 0..200 {
        let p = random_finperm(&mut g, 12, 6);
        let q = random_finperm(&mut g, 12, 6);
        let x = BElem::random(&mut g, -3, 14, 3);
        let y = BElem::random(&mut g, -3, 14, 3);
        let (pe, qe) = (PermExpr::fin(p.clone()), PermExpr::fin(q.clone()));
        let h = |e: &PermExpr, b: &BElem| apply_h(e, b).unwrap();
        let pq = PermExpr::Prod(vec![pe.clone(), qe.clone()]);
        t.equal(h(&pq, &x), h(&qe, &h(&pe, &x)), || format!("pair {i} composition"));
        t.equal(h(&pe, &x.join(&y)), h(&pe, &x).join(&h(&pe, &y)), || {
            format!("pair {i} join")
        });
        t.equal(h(&pe, &x.meet(&y)), h(&pe, &x).meet(&h(&pe, &y)), || {
            format!("pair {i} meet")
        });
        t.equal(h(&pe, &x.complement()), h(&pe, &x).complement(), || {
            format!("pair {i} complement")
        });
        let hx = h(&pe, &x);
        let pointwise = probes
            .iter()
            .all(|r| hx.contains(r) == x.contains(&tilde_inverse(&p, r)));
        t.check(pointwise, || format!("pair {i} pointwise image of {x}"));
    }
    t.record("c06_h_homomorphism", format!("pairs=200 seed={seed}"))
}

fn unit_union(ns: impl IntoIterator<Item = u64>) -> BElem {
    BElem::from_intervals(
        ns.into_iter()
            .map(|n| (Bound::int(n as i64), Bound::int(n as i64 + 1)))
            .collect(),
    )
}

fn c07(seed: u64) -> Record {
    let mut t = Tally::default();
    let mut g = rng(seed);
    let w64 = Window::new(64).unwrap();
    for i in 0..20 {
        let p = random_nontrivial(&mut g, 6);
        let moved: Vec<u64> = (0..6).filter(|&n| p.apply(n) != n).collect();
        let sup = unit_union(moved.iter().copied());
        let Some(c) = t.ok(PhiClass::of(&PermExpr::fin(p.clone())), || format!("perm {i}")) else {
            continue;
        };
        t.equal(moved_region(&c, w64).region, sup.clone(), || {
            format!("perm {i} moved region")
        });
        match t.ok(psi_check(&c, w64), || format!("perm {i} psi")) {
            Some(PsiVerdict::SupExists(s)) => t.equal(s, sup, || format!("perm {i} sup")),
            Some(v) => t.check(false, || format!("perm {i}: {}", v.kind())),
            None => {}
        }
        for mask in 0u64..64 {
            let subset: Vec<u64> = (0..6).filter(|b| mask >> b & 1 == 1).collect();
            let inside = subset.iter().all(|n| moved.contains(n));
            t.equal(phi_holds(&unit_union(subset), &c), inside, || {
                format!("perm {i} mask {mask}")
            });
        }
    }
    for atom in [blk(), swapadj_fixed()] {
        let e = PermExpr::Atom(atom.clone());
        let label = atom.name().to_string();
        let Some(c) = t.ok(PhiClass::of(&e), || label.clone()) else {
            continue;
        };
        let candidates = match t.ok(psi_check(&c, w64), || label.clone()) {
            Some(PsiVerdict::NoSupEvidence { candidates }) => candidates,
            Some(v) => {
                t.check(false, || format!("{label}: {}", v.kind()));
                continue;
            }
            None => continue,
        };
        let moved: Vec<u64> = (0..4 * 64).filter(|&n| e.eval(n).unwrap() != n).collect();
        let mut smaller = 0;
        for (z, r) in &candidates {
            let ok = match r {
                Refutation::SmallerUpperBound(s) => {
                    smaller += 1;
                    let tail = matches!(s.intervals().last(), Some((_, Bound::PosInf)));
                    s.leq(z) && s != z && tail && moved.iter().all(|&n| unit_union([n]).leq(s))
                }
                Refutation::PhiElementNotBelow(u) => match u.intervals() {
                    [(Bound::Finite(a), Bound::Finite(_))] => {
                        let n = num_traits::ToPrimitive::to_u64(&a.to_integer()).unwrap();
                        *u == unit_union([n]) && moved.contains(&n) && !u.leq(z)
                    }
                    _ => false,
                },
            };
            t.check(ok, || format!("{label}: refutation of {z} is {r:?}"));
        }
        t.check(smaller > 0, || format!("{label}: no smaller upper bound"));
    }
    t.record(
        "c07_psi_discrimination",
        format!("finitary=20 seed={seed}; blk,swapadj_fixed window=64"),
    )
}

/// `v − p̃(v)` with coordinates moved by hand.
fn minus_image(field: Field, p: &PermExpr, v: &Vector) -> Vector {
    let image = Vector::from_pairs(field, v.entries().map(|(i, a)| (p.eval(i).unwrap(), a.clone())));
    v.sub(&image)
}

fn c08(seed: u64) -> Record {
    let mut t = Tally::default();
    let mut g = rng(seed);
    for field in [Field::Rationals, Field::Prime(5)] {
        for i in 0..10 {
            let p = random_finperm(&mut g, 12, 6);
            let samples: Vec<Vector> = (0..100).map(|_| Vector::random(field, 14, 0.4, &mut g)).collect();
            let moved: BTreeSet<u64> = (0..12).filter(|&k| p.apply(k) != k).collect();
            let pe = PermExpr::fin(p.clone());
            let oracle = samples
                .iter()
                .all(|v| minus_image(field, &pe, v).support().all(|k| moved.contains(&k)));
            t.check(oracle, || format!("{field} perm {i}: oracle rejects property D"));
            let got = t.ok(property_d_holds(field, &p, &samples), || format!("{field} perm {i}"));
            t.equal(got, Some(true), || format!("{field} perm {i}"));
        }
    }
    let e = PermExpr::Atom(blk());
    for k in 0..50 {
        let field = if k % 2 == 0 { Field::Rationals } else { Field::Prime(5) };
        let w = Subspace::random(field, 8, 24, &mut g);
        let Some(x) = t.ok(refute_property_d(field, &e, &w), || format!("{field} W {k}")) else {
            continue;
        };
        let d = minus_image(field, &e, &x);
        let mut vs = w.basis().to_vec();
        let dim = coord_bound(vs.iter().chain([&d]));
        let before = dense_rank(&vs, dim);
        vs.push(d);
        t.check(
            !vs.last().unwrap().is_zero() && dense_rank(&vs, dim) == before + 1,
            || format!("{field} W {k}: witness {x} does not escape {w}"),
        );
    }
    t.record("c08_property_d", format!("images=10x100 W=50 fields=Q,GF5 seed={seed}"))
}

fn basis_map_equal(m: &SemilinearMap, f: &FinPerm, bound: u64) -> bool {
    (0..bound).all(|i| m.apply_basis(i).ok() == Some(Vector::basis(m.field(), f.apply(i))))
}

fn c09(seed: u64) -> Record {
    let mut t = Tally::default();
    let mut g = rng(seed);
    let w16 = Window::new(16).unwrap();
    for field in [Field::Rationals, Field::Prime(5), Field::Gf4] {
        let perms: Vec<FinPerm> = (0..100).map(|_| random_finperm(&mut g, 12, 5)).collect();
        for (i, pair) in perms.windows(2).enumerate() {
            let (p, q) = (&pair[0], &pair[1]);
            let d = |f: &FinPerm| delta_embed(field, PermExpr::fin(f.clone())).unwrap();
            let composed = d(p).then(&d(q)).unwrap();
            t.check(basis_map_equal(composed.rep(), &p.then(q), 16), || {
                format!("{field} pair {i}: δ(p)δ(q) differs from δ(pq)")
            });
            let same = (0..16).all(|k| p.apply(k) == q.apply(k));
            let got = equivalent_mod_scalar(d(p).rep(), d(q).rep(), w16).ok();
            t.equal(got, Some(same), || format!("{field} pair {i} injectivity"));
        }
    }
    for field in [Field::Gf4, Field::Prime(5)] {
        let nonzero: Vec<Scalar> = field.elements().unwrap().into_iter().filter(|a| !a.is_zero()).collect();
        let base = SemilinearMap::perm_induced(field, PermExpr::fin(random_finperm(&mut g, 8, 4)));
        let w4 = Window::new(4).unwrap();
        let identity = SemilinearMap::identity(field);
        for a in &nonzero {
            let sa = SemilinearMap::scaled(a.clone(), base.clone()).unwrap();
            let nf = GslElement::normalize(sa.clone()).ok();
            t.equal(nf, GslElement::normalize(base.clone()).ok(), || {
                format!("{field} normal form of {a}·m")
            });
            for b in &nonzero {
                let sb = SemilinearMap::scaled(b.clone(), base.clone()).unwrap();
                t.equal(equivalent_mod_scalar(&sa, &sb, w4).ok(), Some(true), || {
                    format!("{field} {a}·m ∼ {b}·m")
                });
                let diag = |x: &Scalar, y: &Scalar| {
                    let table: BTreeMap<u64, Vector> = (0..4)
                        .map(|i| (i, Vector::basis(field, i).scale(if i == 0 { x } else { y })))
                        .collect();
                    SemilinearMap::finite_modification(field, Sigma::Identity, table).unwrap()
                };
                let got = equivalent_mod_scalar(&diag(a, b), &identity, w4).ok();
                t.equal(got, Some(a == b), || format!("{field} diag({a},{b}) ∼ 1"));
            }
        }
    }
    let f4 = Field::Gf4;
    let w4 = Window::new(4).unwrap();
    let frob = SemilinearMap::perm_induced_twisted(f4, PermExpr::identity(), Sigma::Frobenius).unwrap();
    t.equal(
        equivalent_mod_scalar(&frob, &SemilinearMap::identity(f4), w4).ok(),
        Some(false),
        || "Frobenius ∼ 1".to_string(),
    );
    for k in 0..500 {
        let p = PermExpr::fin(random_finperm(&mut g, 8, 4));
        let twisted = SemilinearMap::perm_induced_twisted(f4, p, Sigma::Frobenius).unwrap();
        let table: BTreeMap<u64, Vector> = (0..3).map(|i| (i, Vector::random(f4, 6, 0.5, &mut g))).collect();
        let fm = SemilinearMap::finite_modification(f4, Sigma::Identity, table).unwrap();
        let m = SemilinearMap::compose(twisted, fm).unwrap();
        let (a, b) = (f4.random(&mut g), f4.random(&mut g));
        let (u, v) = (Vector::random(f4, 8, 0.5, &mut g), Vector::random(f4, 8, 0.5, &mut g));
        let lhs = m.apply(&u.scale(&a).add(&v.scale(&b))).unwrap();
        let rhs = m
            .apply(&u)
            .unwrap()
            .scale(&Sigma::Frobenius.apply(&a))
            .add(&m.apply(&v).unwrap().scale(&Sigma::Frobenius.apply(&b)));
        t.equal(lhs, rhs, || format!("semilinearity sample {k}"));
    }
    t.record(
        "c09_gsl_laws",
        format!("perms=100 fields=Q,GF5,GF4 frobenius=500 seed={seed}"),
    )
}

fn c10(seed: u64) -> Record {
    let mut t = Tally::default();
    let mut g = rng(seed);
    let f = Field::Prime(5);
    for k in 0..100 {
        let m = random_gsl(f, &mut g);
        let s = Subspace::random(f, 6, 10, &mut g);
        let u = Subspace::random(f, 6, 10, &mut g);
        let img = |x: &Subspace| -> Vec<Vector> { x.basis().iter().map(|b| m.apply(b).unwrap()).collect() };
        let (a, b) = (img(&s), img(&u));
        let ab: Vec<Vector> = a.iter().chain(&b).cloned().collect();
        let Some(sum) = t.ok(induced(&m, &s.sum(&u)), || format!("pair {k} sum")) else {
            continue;
        };
        let Some(meet) = t.ok(induced(&m, &s.intersect(&u)), || format!("pair {k} meet")) else {
            continue;
        };
        let dim = coord_bound(ab.iter().chain(sum.basis()).chain(meet.basis()));
        t.check(same_span(sum.basis(), &ab, dim), || format!("pair {k}: image of sum"));
        let (ra, rb, rab) = (dense_rank(&a, dim), dense_rank(&b, dim), dense_rank(&ab, dim));
        let in_both = meet.basis().iter().all(|v| {
            let mut a1 = a.clone();
            let mut b1 = b.clone();
            a1.push(v.clone());
            b1.push(v.clone());
            dense_rank(&a1, dim) == ra && dense_rank(&b1, dim) == rb
        });
        t.check(in_both && meet.dim() + rab == ra + rb, || {
            format!("pair {k}: image of intersection")
        });
        let ms = Subspace::span(f, a.clone());
        let mu = Subspace::span(f, b.clone());
        t.check(same_span(ms.intersect(&mu).basis(), meet.basis(), dim), || {
            format!("pair {k}: intersection of images")
        });
        t.equal(ms.is_subspace_of(&mu), rab == rb, || {
            format!("pair {k}: image inclusion")
        });
        t.equal(s.is_subspace_of(&u), ms.is_subspace_of(&mu), || {
            format!("pair {k}: inclusion preserved")
        });
        t.check(ms.is_subspace_of(&sum), || {
            format!("pair {k}: image below image of sum")
        });
    }
    t.record(
        "c10_lattice_preservation",
        format!("subspaces=100 dim<=6 field=GF5 seed={seed}"),
    )
}

fn c11(_seed: u64) -> Record {
    let mut t = Tally::default();
    let s = ColumnSchemeZ;
    for name in CE_SETS {
        let e = Enumerator::named(name, CE_HORIZON).unwrap();
        let w = column_zero_window(s, CE_HORIZON);
        for n in 0..CE_N {
            let Some(direct) = t.ok(decode_membership(n, s, &e, w), || format!("{name} n={n}")) else {
                continue;
            };
            for target in [Target::Gsl(Field::Rationals), Target::Ba] {
                if let Some(r) = t.ok(lifted_probe_membership(target, n, s, &e, w), || {
                    format!("{name} n={n} {target:?}")
                }) {
                    t.equal(r.verdict, direct, || format!("{name} n={n} {target:?}"));
                }
            }
        }
    }
    t.record("c11_pipeline_coherence", "c01 cases through GSL(Q) and B_eta")
}

fn c12(seed: u64) -> Record {
    let mut t = Tally::default();
    let mut g = rng(seed);
    let reg = AtomRegistry::standard();
    for i in 0..500 {
        let e = random_expr(&mut g, 4);
        let text = print(&e);
        match parse(&text, &reg) {
            Ok(back) => t.check(back == e, || format!("expression {i}: {text}")),
            Err(err) => t.check(false, || format!("expression {i}: {text}: {err}")),
        }
    }
    t.record("c12_permlang_round_trip", format!("expressions=500 seed={seed}"))
}
