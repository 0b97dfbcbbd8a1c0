use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gwzero_bench::table;
use gwzero_core::reconstruct::Reconstructor;
use gwzero_core::{build_potential, bundled, Cutoff};

fn reconstruct(c: &mut Criterion) {
    let mut g = c.benchmark_group("reconstruct");
    g.sample_size(10);
    let p2 = bundled::p2();
    for d in [4i64, 5, 6] {
        g.bench_with_input(BenchmarkId::new("p2", d), &d, |b, &d| {
            b.iter(|| table(&p2, 3 * d, (3 * d - 1) as usize))
        });
    }
    let q = bundled::p1xp1();
    g.bench_function("p1xp1/c1<=12", |b| b.iter(|| table(&q, 12, 11)));
    let p3 = bundled::p3();
    g.bench_function("p3/c1<=12", |b| b.iter(|| table(&p3, 12, 10)));
    g.bench_function("p2/demand N_6", |b| {
        b.iter(|| Reconstructor::new(&p2).unwrap().value(&[2; 17], &[6]).unwrap())
    });
    g.finish();
}

fn wdvv(c: &mut Criterion) {
    let mut g = c.benchmark_group("wdvv");
    g.sample_size(10);
    for t in [bundled::p2(), bundled::p1xp1()] {
        let tab = table(&t, 12, 10);
        g.bench_function(format!("{}/c1<=12,n<=10", t.name), |b| {
            b.iter(|| {
                let pot = build_potential(&t, &tab, &Cutoff::by_count(10, 12)).unwrap();
                assert!(pot.wdvv_check().unwrap().passed());
            })
        });
    }
    g.finish();
}

criterion_group!(benches, reconstruct, wdvv);
criterion_main!(benches);
