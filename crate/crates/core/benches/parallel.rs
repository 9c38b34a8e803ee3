//! Sequential versus data-parallel evaluation of the main batch workloads.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use plustrace::geodesics::{asymptotic_scan, odd_fundamental_discriminants, DSelector, TraceMethod, TraceSettings};
use plustrace::kloosterman::{partial_sums, KloostermanMethod, StreamConfig, SumFamily, WeightMode};
use plustrace::quadforms::GenusCharacterSpec;
use plustrace::{Execution, Weight};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn kloosterman_partial_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("kloosterman_partial_sums");
    g.sample_size(10);
    let fam = SumFamily::Kloosterman { weight: Weight::Half, m: 1, n: 5 };
    for (name, exec) in MODES {
        for method in [KloostermanMethod::Naive, KloostermanMethod::Factored] {
            let cfg = StreamConfig::default().with_method(method).with_exec(exec);
            g.bench_with_input(BenchmarkId::new(name, format!("{method:?}")), &cfg, |b, cfg| {
                b.iter(|| partial_sums(fam, black_box(2e4), WeightMode::InvC, *cfg).unwrap())
            });
        }
    }
    g.finish();
}

fn weyl_partial_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl_partial_sums");
    g.sample_size(10);
    let fam = SumFamily::Weyl { m: 1, spec: GenusCharacterSpec::new(21, -3).unwrap() };
    for (name, exec) in MODES {
        let cfg = StreamConfig::default().with_exec(exec);
        g.bench_function(name, |b| b.iter(|| partial_sums(fam, black_box(2e4), WeightMode::InvSqrtC, cfg).unwrap()));
    }
    g.finish();
}

fn trace_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("trace_scan");
    g.sample_size(10);
    let discs = odd_fundamental_discriminants(5, 120);
    for (name, exec) in MODES {
        let settings = TraceSettings { cutoff: 1e4, exec, ..TraceSettings::default() };
        g.bench_function(name, |b| {
            b.iter(|| asymptotic_scan(black_box(&discs), DSelector::Trivial, 1, TraceMethod::Series, &settings))
        });
    }
    g.finish();
}

criterion_group!(benches, kloosterman_partial_sums, weyl_partial_sums, trace_scan);
criterion_main!(benches);
