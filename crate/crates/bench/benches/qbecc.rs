use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qbecc::channel::{build_decoder, entanglement_fidelity, ChannelModel, DecoderMode, Strategy};
use qbecc::classical::{cyclic_from_poly, rs_mds};
use qbecc::ext::ExtField;
use qbecc::poly::Poly;
use qbecc::qtpc::{dispersal_report, qtpc_construct, InterleaverMap};
use qbecc::search::{search, SearchPlan};
use qbecc::{quantum_burst_capability, Gf4};
use qbecc_bench::registry_code;

fn analyzer(c: &mut Criterion) {
    let mut g = c.benchmark_group("analyzer");
    g.sample_size(10);
    for id in ["13_1", "21_9", "29_1"] {
        let code = registry_code(id);
        g.bench_function(id, |b| b.iter(|| quantum_burst_capability(black_box(&code)).unwrap()));
    }
    g.finish();
}

fn code_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("n13..17", |b| b.iter(|| search(black_box(&SearchPlan::new(vec![13, 15, 17]))).unwrap()));
    g.finish();
}

fn fidelity(c: &mut Criterion) {
    let mut g = c.benchmark_group("fidelity");
    g.sample_size(10);
    let model = ChannelModel::new(0.03, 0.5).unwrap();
    let c13 = build_decoder(&registry_code("13_1"), DecoderMode::Combined { t: 2, l: 3 }).unwrap();
    g.bench_function("13_1 exact", |b| b.iter(|| entanglement_fidelity(&c13, &model, Strategy::Exact).unwrap()));
    g.bench_function("13_1 transfer", |b| {
        b.iter(|| entanglement_fidelity(&c13, &model, Strategy::Transfer).unwrap())
    });
    let c17 = build_decoder(&registry_code("17_1a"), DecoderMode::Combined { t: 3, l: 4 }).unwrap();
    g.bench_function("17_1a truncated", |b| {
        b.iter(|| entanglement_fidelity(&c17, &model, Strategy::Truncated { w_max: 4 }).unwrap())
    });
    g.finish();
}

fn tensor(c: &mut Criterion) {
    let c1 = cyclic_from_poly(&Poly::parse("1^6 2^3 1^0").unwrap(), 15, Gf4).unwrap().base;
    let ext = ExtField::build(6).unwrap();
    let c2 = rs_mds(6, 2, &ext).unwrap();
    c.bench_function("tensor 90_42", |b| b.iter(|| qtpc_construct(black_box(&c1), black_box(&c2)).unwrap()));
    let map = InterleaverMap::new(15, 6, 3).unwrap();
    c.bench_function("dispersal L=6", |b| b.iter(|| dispersal_report(&map, 6, false).unwrap()));
}

criterion_group!(benches, analyzer, code_search, fidelity, tensor);
criterion_main!(benches);
