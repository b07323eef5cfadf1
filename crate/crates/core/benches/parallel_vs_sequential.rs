use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use foxcolor::codec::corpus;
use foxcolor::coloring::min_palette_over_colorings;
use foxcolor::reducer::{classify_occurrences, local_search, SearchLimits, SCHEDULE};
use foxcolor::{Execution, SemiArcId};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn min_palette(c: &mut Criterion) {
    // Four copies of 7_5: a five-dimensional coloring space mod 17.
    let knot = corpus::entry("7_5").unwrap().diagram();
    let mut d = knot.clone();
    for _ in 0..3 {
        d = d.connected_sum(SemiArcId(0), &knot, SemiArcId(0)).unwrap().0;
    }
    let mut g = c.benchmark_group("min_palette");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| min_palette_over_colorings(&d, 17, 5, exec).unwrap())
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let cd = corpus::entry("T(2,17)").unwrap().colored17().unwrap();
    let color = SCHEDULE[0];
    let occ = classify_occurrences(&cd, color).into_iter().next().expect("color present");
    let limits = SearchLimits { depth: 3, nodes: 3000 };
    let mut g = c.benchmark_group("local_search");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| local_search(&cd, &occ, &[], limits, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, min_palette, search);
criterion_main!(benches);
