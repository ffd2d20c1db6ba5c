use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use htclag::hybrid::{self, NodeOptions};
use htclag::timeloop::BlendPolicy;
use htclag::verification::RiemannProblem;
use htclag::CornerGeometry;
use htclag_bench::vortex;
use std::hint::black_box;

fn rates(c: &mut Criterion) {
    let sim = vortex(0.1283, BlendPolicy::Fixed(0.0));
    let geom = CornerGeometry::compute(&sim.mesh, &sim.x);
    let n = sim.mesh.num_nodes();
    let mut group = c.benchmark_group("rates");
    for (name, b) in [("ecl", 0.0), ("esl", 1.0), ("blend", 0.5)] {
        let beta = vec![b; n];
        group.bench_function(BenchmarkId::new(name, sim.mesh.num_cells()), |bench| {
            bench.iter(|| {
                hybrid::evaluate(
                    &sim.mesh,
                    &sim.eos,
                    &sim.x,
                    &geom,
                    &sim.state,
                    &sim.mass,
                    black_box(&beta),
                    &NodeOptions::default(),
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn rk4_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("rk4_step");
    group.sample_size(20);
    for (name, policy) in [
        ("ecl", BlendPolicy::Fixed(0.0)),
        ("mood", BlendPolicy::Mood { delta: 0.05 }),
    ] {
        let base = vortex(0.249, policy);
        group.bench_function(name, |bench| {
            bench.iter_batched(
                || base.clone(),
                |mut sim| sim.step(f64::MAX).unwrap(),
                criterion::BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

fn exact_riemann(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_riemann");
    for rp in [RiemannProblem::Rp1, RiemannProblem::Rp2, RiemannProblem::Rp3] {
        group.bench_function(rp.name(), |bench| bench.iter(|| black_box(rp).exact(1.4).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, rates, rk4_step, exact_riemann);
criterion_main!(benches);
