use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tycat_core::abelian::enumerate_subgroups;
use tycat_core::cohomology::{cohomology_bar, GModule, SmallGroup};
use tycat_core::extension::{enumerate_bimodule_forms, filter_order_two, filter_viable};
use tycat_core::witt::presets::{semion_a, semion_b};
use tycat_core::witt::{group_structure, reduce_mod_witt, SyllepticContext};
use tycat_core::{Caps, FinAbGroup};

fn subgroups(c: &mut Criterion) {
    let caps = Caps::default();
    let g: FinAbGroup = "Z2+Z2+Z2+Z4".parse().unwrap();
    c.bench_function("subgroup lattice Z2+Z2+Z2+Z4", |b| {
        b.iter(|| enumerate_subgroups(black_box(&g), None, &caps).unwrap().len())
    });
}

fn forms(c: &mut Criterion) {
    let caps = Caps::default();
    let a: FinAbGroup = "Z2".parse().unwrap();
    c.bench_function("bimodule forms over Z2", |b| {
        b.iter(|| {
            let all = enumerate_bimodule_forms(black_box(&a), &caps).unwrap();
            filter_order_two(&filter_viable(&all)).len()
        })
    });
}

fn bar(c: &mut Criterion) {
    let caps = Caps::default();
    let m = GModule::parse(&SmallGroup::cyclic(2), "Z2+Z2:swap").unwrap();
    c.bench_function("bar cohomology Z2 swap, degree 4", |b| {
        b.iter(|| cohomology_bar(black_box(&m), 4, &caps).unwrap())
    });
    let s3: SmallGroup = "S3".parse().unwrap();
    let t = GModule::parse(&s3, "Z3").unwrap();
    c.bench_function("bar cohomology S3 on Z3, degree 3", |b| {
        b.iter(|| cohomology_bar(black_box(&t), 3, &caps).unwrap())
    });
}

fn witt(c: &mut Criterion) {
    let caps = Caps::default();
    let a4 = semion_a(false).power(4).unwrap();
    c.bench_function("mod-Witt reduction of a^4", |b| {
        b.iter(|| reduce_mod_witt(black_box(&a4), &caps).unwrap())
    });
    let gens = [semion_a(false), semion_b(false)];
    let ctx = SyllepticContext::klein();
    let mut g = c.benchmark_group("closure");
    g.sample_size(10);
    g.bench_function("S4 closure of {a, b}", |b| {
        b.iter(|| group_structure(&ctx, black_box(&gens), &caps).unwrap())
    });
    g.finish();
}

criterion_group!(kernels, subgroups, forms, bar, witt);
criterion_main!(kernels);
