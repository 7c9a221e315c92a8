use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qfa_core::constructions::{build_l0m_qfac, build_lzm_dfa, phase_qfac};
use qfa_core::random::{random_dfa, random_qfac};
use qfa_core::{bilinearize, blm_equivalent, minimize_dfa, qfac_equivalent};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alphabet01() -> Vec<String> {
    vec!["0".into(), "1".into()]
}

fn bench_simulation(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let machine = random_qfac(&mut rng, 3, 3, &["a", "r"]);
    let word: Vec<usize> = (0..64).map(|i| i % 2).collect();
    c.bench_function("simulate/random-k3-n3/word-64", |b| {
        b.iter(|| machine.outcome_probs(black_box(&word)).unwrap())
    });

    let ring = build_l0m_qfac(5).unwrap();
    c.bench_function("simulate/ring-m5/word-64", |b| {
        b.iter(|| ring.outcome_probs(black_box(&word)).unwrap())
    });
}

fn bench_bilinearization(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let small = random_qfac(&mut rng, 2, 2, &["a", "r"]);
    c.bench_function("bilinearize/k2-n2", |b| {
        b.iter(|| bilinearize(black_box(&small), "a").unwrap())
    });

    let large = random_qfac(&mut rng, 3, 3, &["a", "r"]);
    c.bench_function("bilinearize/k3-n3", |b| {
        b.iter(|| bilinearize(black_box(&large), "a").unwrap())
    });
}

fn bench_equivalence(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    // Equivalent pair (worst case: the basis must be exhausted).
    let a = random_qfac(&mut rng, 2, 2, &["a", "r"]);
    let b = phase_qfac(&a, 0.37).unwrap();
    c.bench_function("equiv/qfac-equivalent/k2-n2", |bch| {
        bch.iter(|| qfac_equivalent(black_box(&a), black_box(&b), "a", 1e-8).unwrap())
    });

    // Inequivalent pair: terminates at the first separating word.
    let x = random_qfac(&mut rng, 2, 2, &["a", "r"]);
    let y = random_qfac(&mut rng, 2, 2, &["a", "r"]);
    c.bench_function("equiv/qfac-inequivalent/k2-n2", |bch| {
        bch.iter(|| qfac_equivalent(black_box(&x), black_box(&y), "a", 1e-8).unwrap())
    });

    let ba = bilinearize(&a, "a").unwrap();
    let bb = bilinearize(&b, "a").unwrap();
    c.bench_function("equiv/blm-equivalent/dim-16", |bch| {
        bch.iter(|| blm_equivalent(black_box(&ba), black_box(&bb), 1e-8).unwrap())
    });
}

fn bench_minimization(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let random = random_dfa(&mut rng, 200, alphabet01());
    c.bench_function("minimize/random-200-states", |b| {
        b.iter(|| minimize_dfa(black_box(&random)))
    });

    let structured = build_lzm_dfa(&[0, 1, 0], 5, alphabet01()).unwrap();
    c.bench_function("minimize/subword-ring-20-states", |b| {
        b.iter(|| minimize_dfa(black_box(&structured)))
    });
}

criterion_group!(
    benches,
    bench_simulation,
    bench_bilinearization,
    bench_equivalence,
    bench_minimization
);
criterion_main!(benches);
