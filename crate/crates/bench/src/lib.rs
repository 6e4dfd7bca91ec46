//! Criterion benchmarks for the exact pipelines, grouped so the bench
//! targets stay one-liners.

use criterion::{black_box, Criterion};
use ibeta::constructions::{family_beta, family_params, FamilyIndex};
use ibeta::exactnum::{isolate_roots, Field, IntPoly, RationalInterval};
use ibeta::scan::{scan, Grid};
use ibeta::shifts::{classify, language};
use ibeta::spectra::{pisot_check, pm1_witness_search};
use ibeta::transitivity::transitivity_verdict;
use ibeta::{kneading_pair, KneadingSpec, Params};
use num_rational::BigRational;

fn golden() -> Field {
    Field::new(isolate_roots(&IntPoly::from_i64s(&[-1, -1, 1]), &RationalInterval::from_ints(1, 2))[0].clone())
}

fn family(n: u32, k: u32) -> Params {
    family_params(FamilyIndex::new(n, k).expect("n ≥ 2"))
}

pub fn kneading(c: &mut Criterion) {
    let g = golden();
    let worked = Params::new(&g, g.beta().pow(-4).unwrap()).unwrap();
    c.bench_function("kneading/golden_worked_example", |b| b.iter(|| kneading_pair(black_box(&worked), 4096)));
    let f32 = family(3, 2);
    c.bench_function("kneading/family_3_2", |b| b.iter(|| kneading_pair(black_box(&f32), 4096)));
    let rational = Params::from_rationals(&BigRational::new(9.into(), 5.into()), &BigRational::new(1.into(), 7.into())).unwrap();
    c.bench_function("kneading/nine_fifths_depth_10000", |b| b.iter(|| kneading_pair(black_box(&rational), 10_000)));
}

pub fn shifts(c: &mut Criterion) {
    let p = family(2, 2);
    c.bench_function("classify/family_2_2", |b| b.iter(|| classify(black_box(&p), 4096)));
    let spec = KneadingSpec::from_params(&family(3, 1), 4096).unwrap();
    c.bench_function("language/family_3_1_len_16", |b| b.iter(|| language(black_box(&spec), 16)));
}

pub fn regions(c: &mut Criterion) {
    let p = family(2, 1);
    c.bench_function("transitivity/family_2_1", |b| b.iter(|| transitivity_verdict(black_box(&p))));
    let grid = Grid::full(40, 40);
    c.bench_function("scan/40x40", |b| b.iter(|| scan(black_box(&grid))));
}

pub fn spectra(c: &mut Criterion) {
    let quartic = IntPoly::from_i64s(&[-1, 0, -1, 0, 1]);
    c.bench_function("pisot/quartic", |b| b.iter(|| pisot_check(black_box(&quartic))));
    let beta = family_beta(FamilyIndex::new(2, 1).unwrap());
    c.bench_function("pm1/beta_2_1_degree_8", |b| b.iter(|| pm1_witness_search(black_box(&beta), 8)));
}

pub fn benchmarks(c: &mut Criterion) {
    kneading(c);
    shifts(c);
    regions(c);
    spectra(c);
}
