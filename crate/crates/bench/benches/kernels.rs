use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qdouble::double::{fusion_row, fusion_tensor, QuantumDouble};
use qdouble::trivalg::{affine_u_and_phi, decompose_over_double, theorem34_permutation, AlgebraCharacter};
use qdouble::{character_table, parse_group_spec, FiniteGroup};

fn group(spec: &str) -> FiniteGroup {
    parse_group_spec(spec).unwrap().build(10_000).unwrap()
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("character_table");
    for spec in ["S:4", "AGL1:8", "A:6"] {
        let grp = group(spec);
        g.bench_with_input(BenchmarkId::from_parameter(spec), &grp, |b, grp| b.iter(|| character_table(grp)));
    }
    g.finish();
}

fn s_matrix(c: &mut Criterion) {
    let mut g = c.benchmark_group("s_matrix");
    g.sample_size(10);
    for spec in ["D:4", "AGL1:7", "A:6"] {
        let grp = group(spec);
        g.bench_with_input(BenchmarkId::from_parameter(spec), &grp, |b, grp| {
            b.iter(|| QuantumDouble::new(grp.clone()).s_matrix())
        });
    }
    g.finish();
}

fn verlinde(c: &mut Criterion) {
    let mut g = c.benchmark_group("verlinde");
    g.sample_size(10);
    for spec in ["S:3", "AGL1:5"] {
        let qd = QuantumDouble::new(group(spec));
        let s = qd.s_matrix();
        g.bench_function(BenchmarkId::new("tensor", spec), |b| b.iter(|| fusion_tensor(&qd, &s).unwrap()));
    }
    let qd = QuantumDouble::new(group("A:6"));
    let s = qd.s_matrix();
    g.bench_function("row/A:6", |b| b.iter(|| fusion_row(&qd, &s, 5, 9).unwrap()));
    g.bench_function("oracle/A:6", |b| b.iter(|| qd.fusion_oracle(5, 9).unwrap()));
    g.finish();
}

fn algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("algebra_character");
    g.sample_size(10);
    let data = affine_u_and_phi(5).unwrap();
    let qd = QuantumDouble::new(data.group.clone());
    let prod = data.product();
    let chi = AlgebraCharacter::new(&prod, &data.phi, qd.modulus()).unwrap();
    g.bench_function("eval/AGL1:5", |b| b.iter(|| chi.eval(7, 11)));
    g.bench_function("decompose/AGL1:5", |b| {
        b.iter(|| decompose_over_double(&qd, &qd, |x, y| chi.eval(x, y)).unwrap())
    });
    g.bench_function("theorem/q=5", |b| b.iter(|| theorem34_permutation(5).unwrap()));
    g.finish();
}

criterion_group!(benches, tables, s_matrix, verlinde, algebra);
criterion_main!(benches);
