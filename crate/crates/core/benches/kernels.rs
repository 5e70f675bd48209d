//! Chunked scans on one worker (the sequential path) against the rayon pool.
//! Build with `--no-default-features` to bench the fallback without rayon.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ssp_core::census::hyper4::census_hyper;
use ssp_core::frobenius::cm_vanishes;
use ssp_core::algebra::{Field, UniPoly};
use ssp_core::par::{map_ordered, NoLog, ScanConfig};

fn workers() -> Vec<usize> {
    let n = std::thread::available_parallelism().map_or(1, |n| n.get()).max(2);
    vec![1, n]
}

fn hyper_scans(c: &mut Criterion) {
    let mut g = c.benchmark_group("hyper_scan");
    g.sample_size(10);
    for (genus, p) in [(2, 13), (4, 11)] {
        for jobs in workers() {
            let cfg = ScanConfig { jobs, chunk_size: 1 << 12 };
            g.bench_with_input(BenchmarkId::new(format!("g{genus}_p{p}"), jobs), &cfg, |b, cfg| {
                b.iter(|| census_hyper(genus, p, cfg, &mut NoLog).unwrap())
            });
        }
    }
    g.finish();
}

fn cartier_manin_batch(c: &mut Criterion) {
    let k = Field::prime(31).unwrap();
    let polys: Vec<UniPoly> = (0..2000u64).map(|i| UniPoly::from_u64s(&k, &[i % 31, i / 31 % 31, 3, i % 7, 1, 0, 1])).collect();
    let mut g = c.benchmark_group("cartier_manin_batch");
    for jobs in workers() {
        g.bench_with_input(BenchmarkId::from_parameter(jobs), &jobs, |b, &jobs| {
            b.iter(|| map_ordered(&polys, jobs, |f| cm_vanishes(f, 2, &k).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, hyper_scans, cartier_manin_batch);
criterion_main!(benches);
