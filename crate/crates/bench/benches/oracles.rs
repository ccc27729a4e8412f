use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qspivey::boson::NormalForm;
use qspivey::identities::{verify_result2, Variant};
use qspivey::sequences::{q_stirling2, qr_whitney};
use qspivey::FockVector;

fn triangles(c: &mut Criterion) {
    let mut g = c.benchmark_group("triangle");
    for n in [10usize, 20, 40] {
        g.bench_with_input(BenchmarkId::new("q-stirling2", n), &n, |b, &n| {
            b.iter(|| q_stirling2(black_box(n)))
        });
        g.bench_with_input(BenchmarkId::new("qr-whitney", n), &n, |b, &n| {
            b.iter(|| qr_whitney(black_box(n), 2, 1).unwrap())
        });
    }
    g.finish();
}

fn normal_ordering(c: &mut Criterion) {
    let mut g = c.benchmark_group("normal-order");
    let number = NormalForm::number();
    for n in [4u32, 8, 12] {
        g.bench_with_input(BenchmarkId::new("N^n", n), &n, |b, &n| {
            b.iter(|| number.pow(black_box(n)))
        });
    }
    let word = NormalForm::annihilator_pow(6) * NormalForm::creator_pow(6);
    g.bench_function("a^6 ad^6", |b| {
        b.iter(|| black_box(&word) * black_box(&word))
    });
    g.finish();
}

fn fock(c: &mut Criterion) {
    let op = NormalForm::annihilator_pow(3) * NormalForm::creator_pow(3);
    let state = FockVector::coherent(24);
    c.bench_function("fock/coherent-24", |b| {
        b.iter(|| state.apply(black_box(&op)).unwrap())
    });
}

fn result2_sweep(c: &mut Criterion) {
    c.bench_function("verify/result2 n+l<=5", |b| {
        b.iter(|| {
            let mut passed = 0;
            for n in 0..=5 {
                for l in 0..=5 - n {
                    for x in 0..=3 {
                        passed += verify_result2(n, l, 2, 1, x, Variant::Corrected)
                            .unwrap()
                            .passed as usize;
                    }
                }
            }
            passed
        })
    });
}

criterion_group!(benches, triangles, normal_ordering, fock, result2_sweep);
criterion_main!(benches);
