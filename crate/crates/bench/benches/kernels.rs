use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyprism::closed_forms::{kfstar_closed, ratio_gap_below, tau_closed};
use polyprism::exact::rat;
use polyprism::graph::strong_prism_polyomino;
use polyprism::invariants::{degree_kirchhoff_index, matrix_tree_count};
use polyprism::numeric::{normalized_laplacian, sym_eigenvalues};

fn eigensolve(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi-normalized-laplacian");
    for n in [4, 8, 12] {
        let l = normalized_laplacian(&strong_prism_polyomino(n).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(n), &l, |b, l| {
            b.iter(|| sym_eigenvalues(black_box(l)).unwrap())
        });
    }
    group.finish();
}

fn spanning_trees(c: &mut Criterion) {
    let mut group = c.benchmark_group("spanning-trees");
    for n in [4, 8, 12] {
        let g = strong_prism_polyomino(n).unwrap();
        group.bench_with_input(BenchmarkId::new("matrix-tree", n), &g, |b, g| {
            b.iter(|| matrix_tree_count(black_box(g)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("closed-form", n), &n, |b, &n| {
            b.iter(|| tau_closed(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn degree_kirchhoff(c: &mut Criterion) {
    let mut group = c.benchmark_group("degree-kirchhoff");
    for n in [4, 12] {
        let g = strong_prism_polyomino(n).unwrap();
        group.bench_with_input(BenchmarkId::new("resistance+spectral", n), &g, |b, g| {
            b.iter(|| degree_kirchhoff_index(black_box(g)).unwrap())
        });
    }
    for n in [12, 100, 1000] {
        group.bench_with_input(BenchmarkId::new("closed-form", n), &n, |b, &n| {
            b.iter(|| kfstar_closed(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn ratio(c: &mut Criterion) {
    c.bench_function("ratio-gap-8-to-1000", |b| {
        b.iter(|| (8..=1000usize).all(|n| ratio_gap_below(n, &rat(1, n as i64)).unwrap()))
    });
}

criterion_group!(benches, eigensolve, spanning_trees, degree_kirchhoff, ratio);
criterion_main!(benches);
