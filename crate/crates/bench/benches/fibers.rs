use std::hint::black_box;

use convpave::hecke::{convolution_value, hecke_product, HeckeElement};
use convpave::notation::{parse_subset, parse_tuple};
use convpave::paving::{parahoric_count, parahoric_fiber, PavingPolynomial, Strategy};
use convpave::{AffineWeylGroup, GroupSpec};
use criterion::{criterion_group, criterion_main, Criterion};

fn group(spec: &str) -> AffineWeylGroup {
    AffineWeylGroup::new(spec.parse::<GroupSpec>().unwrap().build().unwrap()).unwrap()
}

fn klm(c: &mut Criterion) {
    let g = group("B2:adjoint");
    let p = g.parabolic_data(&parse_subset(&g, "spherical").unwrap()).unwrap();
    let tuple = parse_tuple(&g, "t[1,1],t[1,1],t[1,1]").unwrap();
    let e = g.identity();
    let closed = [false; 3];
    c.bench_function("klm/hecke", |b| {
        b.iter(|| convolution_value(&g, black_box(&tuple), &p, &closed, &e).unwrap())
    });
    c.bench_function("klm/paving", |b| {
        b.iter(|| parahoric_fiber::<PavingPolynomial>(&g, black_box(&tuple), &p, &e, &closed).unwrap())
    });
    for (name, s) in [("right", Strategy::RightPeel), ("left", Strategy::LeftPeel)] {
        c.bench_function(&format!("klm/count-{name}"), |b| {
            b.iter(|| parahoric_count(&g, black_box(&tuple), &p, &e, &closed, s).unwrap())
        });
    }
}

fn bruhat(c: &mut Criterion) {
    let g = group("A2:sc");
    let x = g.from_word(&[1, 0, 2, 1]).unwrap();
    let y = g.from_word(&[0, 1, 2, 0, 1, 2, 0, 1, 2, 0]).unwrap();
    c.bench_function("bruhat/A2", |b| b.iter(|| g.bruhat_leq(black_box(&x), black_box(&y))));
    c.bench_function("demazure/A2", |b| b.iter(|| g.demazure(black_box(&y), black_box(&y))));
}

fn hecke(c: &mut Criterion) {
    let g = group("B2:sc");
    let x = HeckeElement::basis(g.from_word(&[0, 1, 2, 1, 0, 2]).unwrap());
    c.bench_function("hecke/product-B2", |b| b.iter(|| hecke_product(&g, black_box(&x), black_box(&x))));
}

criterion_group!(benches, klm, bruhat, hecke);
criterion_main!(benches);
