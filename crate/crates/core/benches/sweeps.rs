use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use krpoly::affine_kr::build_kr;
use krpoly::exec::Mode;
use krpoly::path_statistic::eps_star_paths_batch;
use krpoly::suites::random_data;
use krpoly::trail_oracle::TrailSystem;
use krpoly::Model;

const MODES: [(&str, Mode); 2] = [
    ("parallel", Mode::Parallel),
    ("sequential", Mode::Sequential),
];

fn statistic(c: &mut Criterion) {
    let mut g = c.benchmark_group("eps_star");
    g.sample_size(10);
    for m in [Model::E6R6, Model::E7R7] {
        let data = random_data(m, 20_000, 4, 1);
        let ts = TrailSystem::get(m);
        for (name, mode) in MODES {
            g.bench_with_input(
                BenchmarkId::new(format!("paths/{name}"), m),
                &data,
                |b, d| b.iter(|| eps_star_paths_batch(m, d, mode)),
            );
            g.bench_with_input(
                BenchmarkId::new(format!("trails/{name}"), m),
                &data,
                |b, d| b.iter(|| ts.eps_star_batch(d, mode)),
            );
        }
    }
    g.finish();
}

fn regularity(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_regular");
    g.sample_size(10);
    for (m, s) in [(Model::E6R6, 3), (Model::E7R7, 2)] {
        let kr = build_kr(m, s).unwrap();
        for (name, mode) in MODES {
            g.bench_function(BenchmarkId::new(name, format!("{m} s={s}")), |b| {
                b.iter(|| kr.verify_regular(mode))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, statistic, regularity);
criterion_main!(benches);
