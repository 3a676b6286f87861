use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use khtor::diagram::{kt_tangle, parse_pd, tangle_replace, LinkDiagram};
use khtor::khovanov::{kh, Coefficients};

fn knot(name: &str) -> LinkDiagram {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/knots").join(format!("{name}.pd"));
    parse_pd(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn inputs() -> Vec<(String, LinkDiagram)> {
    let t = knot("3_1_left");
    let join = tangle_replace(&t, 1, 4, &kt_tangle()).unwrap();
    vec![("6_1".into(), knot("6_1")), ("8_19".into(), knot("8_19")), ("3_1_kt".into(), join)]
}

fn bench(c: &mut Criterion) {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut g = c.benchmark_group("kh");
    g.sample_size(10);
    for (name, d) in inputs() {
        g.bench_with_input(BenchmarkId::new("sequential", &name), &d, |b, d| {
            b.iter(|| khtor::par::with_threads(1, || kh(d, Coefficients::Z).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new(format!("parallel_{threads}"), &name), &d, |b, d| {
            b.iter(|| khtor::par::with_threads(threads, || kh(d, Coefficients::Z).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
