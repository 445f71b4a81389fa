use criterion::{black_box, criterion_group, criterion_main, Criterion};

use k3lat_bench::dense_matrix;
use k3lat_core::catalog::{
    build_todorov_lattice, double_point_lattice, e8_minus, k3_lattice, kummer_code, TodorovSpec,
};
use k3lat_core::embed::{find_primitive_embedding, EmbeddingOptions};
use k3lat_core::isometry::{automorphism_group, AutomorphismOptions};
use k3lat_core::linalg::smith_normal_form;
use k3lat_core::short_vectors;

fn snf(c: &mut Criterion) {
    let m = dense_matrix(10);
    c.bench_function("snf 10x10", |b| b.iter(|| smith_normal_form(black_box(&m))));
    let kummer = double_point_lattice(&kummer_code()).unwrap().lattice;
    c.bench_function("snf kummer gram", |b| {
        b.iter(|| smith_normal_form(black_box(kummer.gram())))
    });
}

fn short(c: &mut Criterion) {
    let e8 = e8_minus();
    c.bench_function("short vectors e8 norm 4", |b| {
        b.iter(|| short_vectors(black_box(&e8), 4).unwrap())
    });
    let kummer = double_point_lattice(&kummer_code()).unwrap().lattice;
    c.bench_function("short vectors kummer norm 4", |b| {
        b.iter(|| short_vectors(black_box(&kummer), 4).unwrap())
    });
}

fn aut(c: &mut Criterion) {
    let mut g = c.benchmark_group("automorphisms");
    g.sample_size(10);
    let e8 = e8_minus();
    g.bench_function("e8", |b| {
        b.iter(|| automorphism_group(black_box(&e8), &AutomorphismOptions::default()).unwrap())
    });
    g.finish();
}

fn embed(c: &mut Criterion) {
    let mut g = c.benchmark_group("embedding");
    g.sample_size(10);
    let k3 = k3_lattice();
    for k in [9, 10] {
        let m = build_todorov_lattice(&TodorovSpec::reference(0, k).unwrap())
            .unwrap()
            .lattice;
        g.bench_function(format!("todorov(0,{k}) into K3"), |b| {
            b.iter(|| find_primitive_embedding(black_box(&m), &k3, &EmbeddingOptions::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, snf, short, aut, embed);
criterion_main!(benches);
