use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qtradeoff::constructions::{appendix_c_default, mub_set};
use qtradeoff::measures::{disturbance, DistanceKind};
use qtradeoff::optimizer::sampling::random_hermitian;
use qtradeoff::optimizer::{bloch_scan, minimize_average_disturbance, random_pure_state, stream, AverageDisturbance};
use qtradeoff::qcore::linalg::{sigma_x, sigma_z};
use qtradeoff::qcore::{spectral_decompose, DEFAULT_CLUSTER_TOL};
use qtradeoff::tradeoffs::{common_eigenvector, DEFAULT_EIGEN_TOL};
use qtradeoff::{Instrument, OptimizerConfig};

fn pauli_pair() -> Vec<Instrument> {
    [sigma_x(), sigma_z()].iter().map(|h| spectral_decompose(h, DEFAULT_CLUSTER_TOL).unwrap().instrument()).collect()
}

fn disturbance_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("disturbance");
    for d in [2, 3, 5] {
        let inst = mub_set(d, 2).unwrap().instruments();
        let psi = random_pure_state(&mut stream(1, 0), d);
        for kind in DistanceKind::ALL {
            group.bench_with_input(BenchmarkId::new(kind.label(), d), &d, |b, _| {
                b.iter(|| disturbance(kind, black_box(&inst[1]), black_box(&psi)).unwrap())
            });
        }
    }
    group.finish();
}

fn bloch_grid(c: &mut Criterion) {
    let inst = pauli_pair();
    let objective = AverageDisturbance::new(DistanceKind::Fidelity, &inst).unwrap();
    c.bench_function("bloch_scan 181x361", |b| b.iter(|| bloch_scan(&objective, (181, 361)).unwrap()));
}

fn optimizer(c: &mut Criterion) {
    let (a, b, _) = appendix_c_default();
    let inst = [qtradeoff::qcore::luders_instrument(&a).unwrap(), qtradeoff::qcore::luders_instrument(&b).unwrap()];
    let cfg = OptimizerConfig { restarts: Some(8), ..OptimizerConfig::default() };
    let mut group = c.benchmark_group("minimize");
    group.sample_size(10);
    group.bench_function("qutrit luders pair, 8 restarts", |bch| {
        bch.iter(|| minimize_average_disturbance(DistanceKind::Fidelity, &inst, &cfg).unwrap())
    });
    group.finish();
}

fn joint_eigenvectors(c: &mut Criterion) {
    let mut rng = stream(2, 0);
    let ops = vec![random_hermitian(&mut rng, 4), random_hermitian(&mut rng, 4)];
    c.bench_function("common_eigenvector d=4 generic", |b| {
        b.iter(|| common_eigenvector(black_box(&ops), DEFAULT_EIGEN_TOL).unwrap())
    });
}

criterion_group!(benches, disturbance_kernels, bloch_grid, optimizer, joint_eigenvectors);
criterion_main!(benches);
