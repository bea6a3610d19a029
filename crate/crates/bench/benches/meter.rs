use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use pathmeter_core::{accuracy_sweep, simulate_trials, AmplitudeDistribution, ClassicalRouteModel, GaussianWindow};

fn dark_fringe() -> AmplitudeDistribution {
    AmplitudeDistribution::from_entries([
        (1.0, Complex64::new(102.0 / 203.0, 0.0)),
        (2.0, Complex64::new(-101.0 / 203.0, 0.0)),
    ])
    .unwrap()
}

fn bench_sweep(c: &mut Criterion) {
    let phi = dark_fringe();
    let grid: Vec<f64> = (0..=96).map(|i| 1e-2 * 10f64.powf(i as f64 / 16.0)).collect();
    c.bench_function("accuracy_sweep_97_points", |b| {
        b.iter(|| accuracy_sweep(&phi, &grid).unwrap())
    });
}

fn bench_trials(c: &mut Criterion) {
    let model = ClassicalRouteModel::new(vec![(1.0, 0.5), (2.0, 0.5)]).unwrap();
    let window = GaussianWindow::new(10.0).unwrap();
    c.bench_function("classical_trials_100k", |b| {
        b.iter(|| simulate_trials(&model, &window, 100_000, 7).unwrap())
    });
}

criterion_group!(benches, bench_sweep, bench_trials);
criterion_main!(benches);
