use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use std::sync::Arc;

use orbilat_core::codes::named::{e8_cartan, named_lattice};
use orbilat_core::exact::cyclotomic::cyclotomic;
use orbilat_core::isometry::search::simple_reflections;
use orbilat_core::lattice::GramLattice;
use orbilat_core::permgrp::schreier::Bsgs;
use orbilat_core::permgrp::ShellAction;

fn bench_snf(c: &mut Criterion) {
    let gram = e8_cartan().scale(&orbilat_core::int(2));
    c.bench_function("snf sqrt2E8 gram", |b| {
        b.iter(|| black_box(&gram).snf())
    });
}

fn bench_charpoly(c: &mut Criterion) {
    let m = e8_cartan();
    c.bench_function("charpoly 8x8", |b| {
        b.iter(|| black_box(&m).char_poly().unwrap())
    });
}

fn bench_cyclotomic(c: &mut Criterion) {
    c.bench_function("cyclotomic 105 uncached shape", |b| {
        // The cache makes repeat calls trivial; exercise a spread of
        // indices so the division path stays warm.
        b.iter(|| {
            for n in [30u64, 60, 105, 120, 210] {
                black_box(cyclotomic(n));
            }
        })
    });
}

fn bench_e8_roots(c: &mut Criterion) {
    let e8 = named_lattice("E8").unwrap();
    c.bench_function("enumerate E8 roots", |b| {
        b.iter(|| black_box(&e8).shell(2).unwrap())
    });
}

fn bench_weyl_order(c: &mut Criterion) {
    let e8 = Arc::new(GramLattice::named(e8_cartan(), "E8").unwrap());
    let shell = e8.shell(2).unwrap();
    let action = ShellAction::new(&shell, 8).unwrap();
    let gens: Vec<_> = simple_reflections(&e8)
        .unwrap()
        .iter()
        .map(|g| action.permutation_of(g).unwrap())
        .collect();
    c.bench_function("weyl(E8) order via BSGS", |b| {
        b.iter(|| Bsgs::new(black_box(&gens), &[]).order())
    });
}

fn bench_det(c: &mut Criterion) {
    let leech = orbilat_core::codes::named::leech();
    let gram = leech.gram().clone();
    c.bench_function("det 24x24 Leech gram", |b| {
        b.iter(|| black_box(&gram).det().unwrap())
    });
}

criterion_group!(
    benches,
    bench_snf,
    bench_charpoly,
    bench_cyclotomic,
    bench_e8_roots,
    bench_weyl_order,
    bench_det
);
criterion_main!(benches);
