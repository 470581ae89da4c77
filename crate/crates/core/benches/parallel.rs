//! Rayon pool with one thread against the default pool on the batch
//! operations. Build with `--no-default-features` to time the sequential
//! fallback instead.

use criterion::{criterion_group, criterion_main, Criterion};
use staircase::algebra::parse::parse_germ;
use staircase::determinacy::{jet_sweep, perturbation_test, Property, Settings};
use staircase::jet_oracle::cross_check_batch;
use staircase::{random, Germ, OrderSpec, Poly, RingSpec, SbOptions};

fn instances() -> Vec<Vec<Poly>> {
    let r = RingSpec::new(["x", "y", "z"]).unwrap();
    (0..48)
        .map(|i| {
            let mut rng = random::rng(11, i);
            (0..3)
                .map(|_| random::nonzero_poly(&mut rng, &r, 1..=3, 1..=4, 5))
                .collect()
        })
        .collect()
}

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    let n = all.current_num_threads();
    vec![("1 thread".into(), single), (format!("{n} threads"), all)]
}

fn bench(c: &mut Criterion) {
    let batch = instances();
    let ord = OrderSpec::standard(3);
    let opts = SbOptions::default();

    let r = RingSpec::new(["x", "y"]).unwrap();
    let series: Vec<Germ> = [
        "(x^3*y + x*y^4 - x^3*y^2)/(1 - y)",
        "(x^2*y^3 + y^6 - x^2*y^4)/(1 - y)",
    ]
    .iter()
    .map(|s| parse_germ(&r, s).unwrap())
    .collect();
    let finite: Vec<Germ> = ["x^2 + y^3", "x*y"]
        .iter()
        .map(|s| parse_germ(&r, s).unwrap())
        .collect();
    let cfg = Settings::default();

    let mut group = c.benchmark_group("parallel");
    group.sample_size(10);
    for (label, pool) in pools() {
        group.bench_function(format!("cross_check_batch/{label}"), |b| {
            b.iter(|| pool.install(|| cross_check_batch(&batch, 8, &ord, &opts)))
        });
        group.bench_function(format!("jet_sweep/{label}"), |b| {
            b.iter(|| pool.install(|| jet_sweep(&series, 5, 12, 14, &cfg).unwrap()))
        });
        group.bench_function(format!("perturbation_test/{label}"), |b| {
            b.iter(|| {
                pool.install(|| {
                    perturbation_test(&finite, 5, 64, 0, &Property::RegularSequence, &cfg).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
