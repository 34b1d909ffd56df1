use broucke::sweep::{run_sweep, Execution, SweepConfig};
use criterion::{criterion_group, criterion_main, Criterion};

fn small_grid() -> SweepConfig {
    SweepConfig {
        m1_min: 0.4,
        m1_max: 1.0,
        step: 0.05,
        ..SweepConfig::default()
    }
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_13_masses");
    group.sample_size(10);
    let seq = SweepConfig {
        execution: Execution::Sequential,
        ..small_grid()
    };
    group.bench_function("sequential", |b| b.iter(|| run_sweep(&seq).unwrap()));
    #[cfg(feature = "parallel")]
    {
        let par = SweepConfig {
            execution: Execution::Parallel(None),
            ..small_grid()
        };
        group.bench_function("parallel", |b| b.iter(|| run_sweep(&par).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
