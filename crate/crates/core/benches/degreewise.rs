//! Degree-parallel core against the sequential fallback on the two hot
//! windowed computations. With the `parallel` feature disabled both modes
//! compile to the sequential path, so the comparison is only meaningful on
//! the default feature set.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use stabcoh_core::verify::{generate_instance, InstanceSpec, Recipe};
use stabcoh_core::{Exec, FieldSpec, MatrixFactorization};

fn bench_instance(nvars: usize, arity: usize) -> MatrixFactorization {
    let spec = InstanceSpec {
        recipe: Recipe::Tensor { nvars, arity, degree: 3 },
        field: FieldSpec::prime(101).unwrap(),
        seed: 11,
    };
    generate_instance(&spec).expect("seeded instance")
}

fn modes() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    v.insert(0, ("parallel", Exec::Parallel));
    v
}

fn bench_cokernel_hilbert(c: &mut Criterion) {
    let mf = bench_instance(2, 3);
    let mut group = c.benchmark_group("cokernel_hilbert");
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |bench, &exec| {
            bench.iter(|| mf.cokernel_hilbert_with(-30, 30, exec).unwrap());
        });
    }
    group.finish();
}

fn bench_gamma_window(c: &mut Criterion) {
    let mf = bench_instance(3, 2);
    let mut group = c.benchmark_group("gamma_stab_max");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |bench, &exec| {
            bench.iter(|| {
                stabcoh_core::cohomology::gamma_stab_max_with(
                    &mf,
                    -24,
                    0,
                    stabcoh_core::cohomology::ViewOpts { with_bases: false, exec },
                )
                .unwrap()
            });
        });
    }
    group.finish();
}

criterion_group!(benches, bench_cokernel_hilbert, bench_gamma_window);
criterion_main!(benches);
