use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use subdiv_bench::{bipartite_host, host};
use subdiv_core::drc::embed_auto;
use subdiv_core::extremal::{classify_subdivision_homs, deletion_lower_bound, extremal_exact};
use subdiv_core::hom::{count_kst_labelled, hom_c4_oriented, hom_generic};
use subdiv_core::structure::enumerate_good_tuples;
use subdiv_core::subdivision::h_t;
use subdiv_core::{BipartiteGraph, HomOptions, Pattern};

fn counting(c: &mut Criterion) {
    let g = bipartite_host(400, 0.1);
    c.bench_function("hom_c4_oriented 400+400", |b| b.iter(|| hom_c4_oriented(black_box(&g))));
    let h = host(120, 0.2);
    c.bench_function("count_kst_labelled K2,3 n=120", |b| b.iter(|| count_kst_labelled(black_box(&h), 2, 3)));
    let c6 = Pattern::cycle(6).unwrap();
    let small = host(40, 0.15);
    c.bench_function("injective C6 homs n=40", |b| {
        b.iter(|| hom_generic(&c6, black_box(&small), &HomOptions::injective()))
    });
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    let c6 = Pattern::cycle(6).unwrap();
    group.bench_function("extremal_exact C6 n=8", |b| b.iter(|| extremal_exact(black_box(8), &c6)));
    group.bench_function("deletion_lower_bound C6 n=1024", |b| {
        b.iter(|| deletion_lower_bound(black_box(1024), &c6, None, 0))
    });
    let k = BipartiteGraph::complete(36, 36);
    let h4 = h_t(4).unwrap();
    group.bench_function("embed_auto H4 into K36,36", |b| b.iter(|| embed_auto(black_box(&k), &h4)));
    let g = bipartite_host(30, 0.4);
    group.bench_function("good 2-tuples 30+30", |b| {
        b.iter(|| enumerate_good_tuples(black_box(&g), &[8, 8], 1, 2, 100_000))
    });
    let k66 = BipartiteGraph::complete(6, 6);
    group.bench_function("classify H4 into K6,6", |b| b.iter(|| classify_subdivision_homs(black_box(&k66), 4)));
    group.finish();
}

criterion_group!(benches, counting, searches);
criterion_main!(benches);
