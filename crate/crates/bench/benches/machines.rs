use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use soa_topos::fixtures;
use soa_topos::modulators::topology_to_family;
use soa_topos::presheaf::PresheafMap;
use soa_topos::soa::{compare, iterate, localized_hom, MapFamily, DEFAULT_MAX_ITER};
use soa_topos::verify::sheafify;
use soa_topos::Machine;

fn image(c: &mut Criterion) {
    let p = fixtures::point();
    let f = fixtures::epi_fixture(&p);
    let w = MapFamily::discrete(p.clone(), vec![("fold".into(), fixtures::fold_map(&p))]).unwrap();
    let mut g = c.benchmark_group("image");
    for m in [Machine::Quillen, Machine::GabrielUlmer, Machine::Kelly] {
        g.bench_with_input(BenchmarkId::from_parameter(m.name()), &m, |b, &m| {
            b.iter(|| iterate(m, &f, &w, DEFAULT_MAX_ITER).unwrap())
        });
    }
    g.finish();
}

fn sierpinski(c: &mut Criterion) {
    let j = fixtures::sier_topology();
    let w = topology_to_family(&j).unwrap();
    let f = Arc::new(fixtures::sier_presheaf());
    let to_one = PresheafMap::to_terminal(f.clone());
    let mut g = c.benchmark_group("sierpinski");
    for m in [Machine::Kelly, Machine::Plus] {
        g.bench_with_input(BenchmarkId::new("reflect", m.name()), &m, |b, &m| {
            b.iter(|| iterate(m, &to_one, &w, DEFAULT_MAX_ITER).unwrap())
        });
    }
    g.bench_function("sheafify", |b| b.iter(|| sheafify(&f, &j).unwrap()));
    g.bench_function("compare", |b| b.iter(|| compare(&to_one, &w).unwrap()));
    g.finish();
}

fn localization(c: &mut Criterion) {
    let a = fixtures::walking_arrow();
    let chain = fixtures::chain3();
    let mut g = c.benchmark_group("localize");
    g.bench_function("walking-arrow", |b| b.iter(|| localized_hom(&a, &["w"], "b", "a", DEFAULT_MAX_ITER).unwrap()));
    g.bench_function("chain3", |b| b.iter(|| localized_hom(&chain, &["a", "b"], "2", "0", DEFAULT_MAX_ITER).unwrap()));
    g.finish();
}

criterion_group!(benches, image, sierpinski, localization);
criterion_main!(benches);
