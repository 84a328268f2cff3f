use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use vqelab_core::bundled;
use vqelab_core::harness::{run_vqe, Reference, VqeConfig};
use vqelab_core::measure::{estimate_energy, EstimatorMode, RotationError};
use vqelab_core::optimize::{minimize, OptimizerConfig};
use vqelab_core::pulse::{build_ansatz, propagate, AnsatzSpec, ParamVector};

fn kernels(c: &mut Criterion) {
    let h = bundled::h2().unwrap();
    let spec = AnsatzSpec::linear_chain(2);
    let theta = ParamVector::uniform(&spec, 0.05);
    let sched = build_ansatz(&spec, &theta).unwrap();
    let reference = Reference::LowestDiagonal.state(&h).unwrap();
    let psi = propagate(&reference, &sched).unwrap();
    let err = RotationError::new(5.0).unwrap();

    c.bench_function("propagate_ansatz_2q", |b| {
        b.iter(|| propagate(black_box(&reference), black_box(&sched)).unwrap())
    });
    c.bench_function("estimate_energy_analytic", |b| {
        b.iter(|| estimate_energy(black_box(&psi), &h, &err, EstimatorMode::Analytic, 0).unwrap())
    });
    c.bench_function("estimate_energy_1024_shots", |b| {
        b.iter(|| {
            estimate_energy(
                black_box(&psi),
                &h,
                &err,
                EstimatorMode::Sampled { shots: 1024 },
                7,
            )
            .unwrap()
        })
    });
    let cfg = OptimizerConfig::default();
    c.bench_function("minimize_quadratic_6d", |b| {
        b.iter(|| {
            minimize(
                |x| {
                    x.iter()
                        .enumerate()
                        .map(|(i, v)| (v - i as f64 * 0.1).powi(2))
                        .sum()
                },
                black_box(&[0.0; 6]),
                &cfg,
            )
            .unwrap()
        })
    });
    let vqe = VqeConfig::default();
    c.bench_function("run_vqe_h2_sampled", |b| {
        b.iter(|| run_vqe(&h, &spec, &err, &vqe, black_box(3)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = kernels
}
criterion_main!(benches);
