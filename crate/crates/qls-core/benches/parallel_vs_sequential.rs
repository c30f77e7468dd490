use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qls_core::sample::{random_form, random_valid_algebra};
use qls_core::Exec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn poisson(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("poisson_self_bracket");
    for (dim0, dim1) in [(4, 4), (6, 6)] {
        let g = random_valid_algebra(&mut rng, dim0, dim1).expect("valid sample");
        let mut form = g.invariant_form().expect("quadratic sample");
        form = form.add(&random_form(&mut rng, g.space(), 3, 0, 6)).expect("same space");
        for (label, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(label, format!("{dim0}|{dim1}")), &form, |b, f| {
                b.iter(|| black_box(f.poisson_with(f, exec).expect("nondegenerate")))
            });
        }
    }
    group.finish();
}

fn structure_check(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut group = c.benchmark_group("check_quadratic");
    for (dim0, dim1) in [(4, 4), (6, 6)] {
        let g = random_valid_algebra(&mut rng, dim0, dim1).expect("valid sample");
        for (label, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(label, format!("{dim0}|{dim1}")), &g, |b, g| {
                b.iter(|| black_box(g.check_quadratic_with(exec).expect("checkable")))
            });
        }
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = poisson, structure_check
}
criterion_main!(benches);
