//! Criterion benchmarks for the hot paths: table-level braid checking,
//! operator enumeration, symbolic normal-form arithmetic, and the two
//! classification sweeps.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use rbforge_core::braces::{nilpotent_postgroup, postgroup_to_brace};
use rbforge_core::group::{automorphism_group, build_group};
use rbforge_core::nilfree::NilWord;
use rbforge_core::operators::{enumerate_rb, Weight};
use rbforge_core::ybe::matrix::classify_matrices_mod;
use rbforge_core::ybe::verbal::{check_verbal, classify_verbal, VerbalSolution};
use rbforge_core::ybe::{check_braid_finite, solution_from_brace};

fn braid_check_heis3(c: &mut Criterion) {
    let g = build_group("Heis3").unwrap();
    let brace = postgroup_to_brace(&nilpotent_postgroup(&g, 1).unwrap()).unwrap();
    let s = solution_from_brace(&brace);
    c.bench_function("braid_check_heis3", |b| b.iter(|| check_braid_finite(black_box(&s))));
}

fn enumerate_rb_s3(c: &mut Criterion) {
    let g = build_group("S3").unwrap();
    c.bench_function("enumerate_rb_s3", |b| {
        b.iter(|| enumerate_rb(black_box(&g), Weight::Plus, 1).unwrap().len())
    });
}

fn nil_word_arithmetic(c: &mut Criterion) {
    let u = NilWord::new(3, vec![3, -2, 5], vec![1, -4, 2]).unwrap();
    let v = NilWord::new(3, vec![-1, 7, -3], vec![0, 2, -6]).unwrap();
    c.bench_function("nil_word_arithmetic", |b| {
        b.iter(|| {
            let p = black_box(&u).mul(black_box(&v)).unwrap();
            let q = p.pow(5).unwrap().mul(&p.inv().unwrap()).unwrap();
            q.comm(&u).unwrap()
        })
    });
}

fn verbal_braid_residue(c: &mut Criterion) {
    let s = VerbalSolution::from_tuple([2, 1, -1, -1, 0, 2]);
    c.bench_function("verbal_braid_residue", |b| b.iter(|| check_verbal(black_box(&s)).unwrap()));
}

fn classify_matrices_z7(c: &mut Criterion) {
    c.bench_function("classify_matrices_z7", |b| {
        b.iter(|| classify_matrices_mod(black_box(7), 1).passing_count())
    });
}

fn classify_verbal_box1(c: &mut Criterion) {
    c.bench_function("classify_verbal_box1", |b| {
        b.iter(|| classify_verbal(black_box(1), 1, 1).unwrap().passing_count)
    });
}

fn automorphisms_heis3(c: &mut Criterion) {
    let g = build_group("Heis3").unwrap();
    c.bench_function("automorphisms_heis3", |b| {
        b.iter(|| automorphism_group(black_box(&g)).unwrap().len())
    });
}

criterion_group!(
    benches,
    braid_check_heis3,
    enumerate_rb_s3,
    nil_word_arithmetic,
    verbal_braid_residue,
    classify_matrices_z7,
    classify_verbal_box1,
    automorphisms_heis3
);
criterion_main!(benches);
