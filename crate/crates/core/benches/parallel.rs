use cantor_core::dimension::box_count_oracle;
use cantor_core::exactnum::pow2_neg;
use cantor_core::exec::Exec;
use cantor_core::expansions::{sum_neg_alpha, BaseSystem};
use cantor_core::verify::cubic_alpha;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn box_counts(c: &mut Criterion) {
    let sys = BaseSystem::signed(cubic_alpha()).unwrap();
    let t = sum_neg_alpha(&sys).unwrap();
    let (lo, hi) = t.enclose(&pow2_neg(220));
    let mut group = c.benchmark_group("box_count_cubic_base");
    group.sample_size(10);
    for depth in [8usize, 12] {
        for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            group.bench_with_input(BenchmarkId::new(name, depth), &depth, |b, &d| {
                b.iter(|| box_count_oracle(sys.alpha(), (&lo, &hi), d, 20, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, box_counts);
criterion_main!(benches);
