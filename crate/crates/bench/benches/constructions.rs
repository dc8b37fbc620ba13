use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use symcode::ce::{column_zero_window, decode_membership, ColumnSchemeZ, Enumerator};
use symcode::intalg::{apply_h, BElem};
use symcode::lang::{parse, print};
use symcode::perm::{AtomRegistry, PermExpr};
use symcode::pi2::{
    product_on_column, sufficient_column_window, transposition_word, ColumnScheme2, Construction, Pi2Predicate,
};
use symcode::pipeline::{lifted_probe_membership, Target};
use symcode::vspace::{Field, Subspace, Vector};

fn decode(c: &mut Criterion) {
    let mut g = c.benchmark_group("decode_membership");
    for horizon in [50u64, 200] {
        let e = Enumerator::primes25(horizon);
        let w = column_zero_window(ColumnSchemeZ, horizon);
        g.bench_with_input(BenchmarkId::from_parameter(horizon), &horizon, |b, _| {
            b.iter(|| decode_membership(black_box(23), ColumnSchemeZ, &e, w).unwrap())
        });
    }
    g.finish();
}

fn lifted(c: &mut Criterion) {
    let e = Enumerator::evens(50);
    let w = column_zero_window(ColumnSchemeZ, 50);
    c.bench_function("lifted_probe_gsl_q", |b| {
        b.iter(|| lifted_probe_membership(Target::Gsl(Field::Rationals), black_box(9), ColumnSchemeZ, &e, w).unwrap())
    });
    c.bench_function("lifted_probe_ba", |b| {
        b.iter(|| lifted_probe_membership(Target::Ba, black_box(9), ColumnSchemeZ, &e, w).unwrap())
    });
}

fn stages(c: &mut Criterion) {
    c.bench_function("construction_1600_stages", |b| {
        b.iter(|| Construction::run(ColumnScheme2, Pi2Predicate::Even, black_box(1600)))
    });
    let con = Arc::new(Construction::run(ColumnScheme2, Pi2Predicate::Always, 400));
    let w = sufficient_column_window(&con, 3);
    c.bench_function("product_on_column_400", |b| {
        b.iter(|| product_on_column(&con, black_box(3), w).unwrap())
    });
}

fn words(c: &mut Criterion) {
    c.bench_function("transposition_word_eval", |b| {
        let word = transposition_word(7, 29).unwrap();
        b.iter(|| (0..128).map(|x| word.eval(x).unwrap()).sum::<u64>())
    });
    let reg = AtomRegistry::standard();
    let text = "([tau^{z^{-3}}, (0 5 2)^2 * swapadj'])^{blk}";
    let e: PermExpr = parse(text, &reg).unwrap();
    c.bench_function("permlang_round_trip", |b| {
        b.iter(|| parse(&print(black_box(&e)), &reg).unwrap())
    });
}

fn algebra(c: &mut Criterion) {
    let x: BElem = "[-1,3/2);[2,7);[9,+inf)".parse().unwrap();
    let p = parse("(0 4 8)(1 9)", &AtomRegistry::standard()).unwrap();
    c.bench_function("apply_h", |b| b.iter(|| apply_h(&p, black_box(&x)).unwrap()));
    let f = Field::Prime(5);
    let s = Subspace::span(
        f,
        (0..6).map(|i| Vector::from_ints(f, &[(i, 1), (i + 3, 2), (11 - i, 3)])),
    );
    let t = Subspace::span(f, (0..6).map(|i| Vector::from_ints(f, &[(i + 1, 4), (2 * i, 1)])));
    c.bench_function("subspace_intersect_gf5", |b| b.iter(|| black_box(&s).intersect(&t)));
}

criterion_group!(benches, decode, lifted, stages, words, algebra);
criterion_main!(benches);
