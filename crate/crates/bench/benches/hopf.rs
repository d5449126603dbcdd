use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use hopfq::hopf_s7::base_coordinates;
use hopfq::oracle::schmidt_via_oracle;
use hopfq::sampling::{random_two_qubit_state, random_unit_quaternion, seeded_rng};
use hopfq::viz::{fiber_cloud, foliation_sweep, Sweep};
use hopfq::{ComplexOrInfinity, FibrationChart, C64};

fn quaternion(c: &mut Criterion) {
    let mut rng = seeded_rng(1);
    let (p, q) = (
        random_unit_quaternion(&mut rng),
        random_unit_quaternion(&mut rng),
    );
    c.bench_function("quaternion mul", |b| b.iter(|| black_box(p) * black_box(q)));
}

fn two_qubit(c: &mut Criterion) {
    let mut rng = seeded_rng(2);
    let states: Vec<_> = (0..256).map(|_| random_two_qubit_state(&mut rng)).collect();
    c.bench_function("base_coordinates x256", |b| {
        b.iter(|| {
            for s in &states {
                black_box(base_coordinates(s, FibrationChart::Standard));
            }
        })
    });
    let mut group = c.benchmark_group("schmidt x256");
    group.bench_function("closed form", |b| {
        b.iter(|| {
            for s in &states {
                black_box(s.schmidt());
            }
        })
    });
    group.bench_function("oracle", |b| {
        b.iter(|| {
            for s in &states {
                black_box(schmidt_via_oracle(s).unwrap());
            }
        })
    });
    group.finish();
}

fn clouds(c: &mut Criterion) {
    c.bench_function("fiber cloud 256", |b| {
        b.iter(|| {
            fiber_cloud(
                black_box(ComplexOrInfinity::Finite(C64::new(0.3, -1.2))),
                256,
            )
            .unwrap()
        })
    });
    let sweep = Sweep::Concurrence((0..16).map(|k| k as f64 / 15.0).collect());
    c.bench_function("foliation 16x100", |b| {
        b.iter_batched(
            || sweep.clone(),
            |s| foliation_sweep(&s, 100, 7).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, quaternion, two_qubit, clouds);
criterion_main!(benches);
