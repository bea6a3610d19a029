use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pathmeter_core::{
    amplitude_distribution, slit_number_observable, spin_system, PureState, TimeGrid,
    WeightFunction,
};

fn bench_enumeration(c: &mut Criterion) {
    let system = spin_system(1.0).unwrap();
    let observable = slit_number_observable();
    let one = PureState::basis_state(2, 1).unwrap();
    let t = (1.0f64 / 203.0).acos();

    let mut group = c.benchmark_group("amplitude_distribution");
    for n in [8usize, 12, 16, 20] {
        group.bench_with_input(BenchmarkId::new("spin", n), &n, |b, &n| {
            let grid = TimeGrid::new(t, n).unwrap();
            let beta = WeightFunction::Impulse(t / 2.0);
            b.iter(|| {
                amplitude_distribution(&system, &observable, &one, &one, &grid, &beta).unwrap()
            });
        });
    }
    group.finish();
}

criterion_group!(benches, bench_enumeration);
criterion_main!(benches);
