//! Compares the rayon-parallel verification path against the sequential
//! fallback on the heaviest workloads: full Jacobi sweeps and a family scan.
//! Both paths must produce identical reports — the parallel feature may only
//! change speed, never output — so each group also asserts agreement once
//! before sampling.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use twistlab_core::par;
use twistlab_core::superlie::{build_susy_10d, build_susy_4d, RSymmetry, SuperLieAlgebra};
use twistlab_core::twist::{classify, named_family, Family};
use twistlab_core::Scalar;

fn alg_4d() -> SuperLieAlgebra {
    build_susy_4d(4, RSymmetry::SlW).unwrap()
}

fn alg_10d() -> SuperLieAlgebra {
    build_susy_10d(&twistlab_core::clifford::build_gamma(10).unwrap()).unwrap()
}

fn bench_jacobi(c: &mut Criterion) {
    for (alg, name) in [(alg_4d(), "jacobi_4d_n4"), (alg_10d(), "jacobi_10d_split")] {
        let parallel = alg.jacobi_check();
        let sequential = alg.jacobi_check_seq();
        assert_eq!(parallel.triples_checked, sequential.triples_checked);
        assert_eq!(parallel.failures, sequential.failures);

        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        group.bench_function("parallel", |b| b.iter(|| black_box(alg.jacobi_check().pass())));
        group.bench_function("sequential", |b| {
            b.iter(|| black_box(alg.jacobi_check_seq().pass()))
        });
        group.finish();
    }
}

fn bench_family_scan(c: &mut Criterion) {
    let alg = alg_4d();
    let grid: Vec<(Scalar, Scalar)> = (-3i64..=3)
        .flat_map(|a| (-3i64..=3).map(move |b| (a, b)))
        .filter(|&(a, b)| a != 0 || b != 0)
        .map(|(a, b)| (Scalar::from_int(a), Scalar::from_int(b)))
        .collect();
    let verdict_row = |(mu, nu): &(Scalar, Scalar)| -> usize {
        let kw = named_family(
            &alg,
            &Family::Kw { mu: mu.clone(), nu: nu.clone() },
        )
        .unwrap();
        classify(&alg, &kw).unwrap().image_dim
    };
    assert_eq!(
        par::map_collect(grid.clone(), verdict_row),
        par::map_collect_seq(grid.clone(), verdict_row)
    );

    let mut group = c.benchmark_group("kw_scan_48_points");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(par::map_collect(grid.clone(), verdict_row).len()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(par::map_collect_seq(grid.clone(), verdict_row).len()))
    });
    group.finish();
}

criterion_group!(benches, bench_jacobi, bench_family_scan);
criterion_main!(benches);
