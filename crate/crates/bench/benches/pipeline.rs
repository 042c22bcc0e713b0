use criterion::{black_box, criterion_group, criterion_main, Criterion};

use assoform::assocform::{associated_form_tuple, differential_rank};
use assoform::catvar::certify;
use assoform::resultant::macaulay_resultant;
use assoform::sample::Sampler;
use assoform::ternary::aronhold_s_form;
use assoform::Side;

fn associated_forms(c: &mut Criterion) {
    let mut s = Sampler::new(1, 9);
    for (n, d) in [(2, 3), (3, 2), (3, 3)] {
        let t = s.good_tuple(n, d).unwrap();
        c.bench_function(&format!("associated_form n={n} d={d}"), |b| {
            b.iter(|| associated_form_tuple(black_box(&t)).unwrap())
        });
    }
}

fn differential_ranks(c: &mut Criterion) {
    let mut s = Sampler::new(2, 9);
    let t = s.good_tuple(3, 2).unwrap();
    c.bench_function("differential_rank n=3 d=2", |b| b.iter(|| differential_rank(black_box(&t)).unwrap()));
}

fn certificates(c: &mut Criterion) {
    let mut s = Sampler::new(3, 9);
    let f = s.form(Side::Y, 3, 3);
    c.bench_function("certify ternary cubic", |b| b.iter(|| certify(black_box(&f)).unwrap()));
    c.bench_function("aronhold S", |b| b.iter(|| aronhold_s_form(black_box(&f)).unwrap()));
}

fn resultants(c: &mut Criterion) {
    let mut s = Sampler::new(4, 9);
    let t = s.tuple(3, 2);
    c.bench_function("macaulay_resultant n=3 d=2", |b| {
        let mut rng = Sampler::new(5, 9);
        b.iter(|| macaulay_resultant(black_box(&t), rng.rng()).unwrap())
    });
}

criterion_group!(benches, associated_forms, differential_ranks, certificates, resultants);
criterion_main!(benches);
