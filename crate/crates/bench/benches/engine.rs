use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use freyd_core::freyd::Route;
use freyd_core::linalg::{smith_normal_form, ConcreteMatrix, ScalarRing};
use freyd_core::nori::fixtures::{disc_data, klein_bottle};
use freyd_core::nori::{build_nori_diagram, homology_representation, relative_homology, SimplicialPair};
use freyd_core::quiver::samples::{a3, square};
use freyd_core::random;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn smith(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    c.bench_function("smith 6x6", |b| {
        b.iter_batched(
            || {
                let rows: Vec<Vec<i64>> = (0..6).map(|_| (0..6).map(|_| rng.gen_range(-9..=9)).collect()).collect();
                ConcreteMatrix::from_i64(ScalarRing::Integers, &rows)
            },
            |m| smith_normal_form(&m),
            BatchSize::SmallInput,
        )
    });
}

fn implication(c: &mut Criterion) {
    let q = Arc::new(square());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ctx = random::sorts(&mut rng, &q, 2, 2);
    let phi = random::formula(&mut rng, &q, ScalarRing::Rationals, &ctx, 2, 2);
    let psi = random::formula(&mut rng, &q, ScalarRing::Rationals, &ctx, 2, 2);
    c.bench_function("implies_all on the square", |b| b.iter(|| phi.implies_all(&psi).unwrap()));
}

fn routes(c: &mut Criterion) {
    let q = Arc::new(a3());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ring = ScalarRing::Rationals;
    let obj = random::presented_object(&mut rng, &q, ring).unwrap();
    let t = random::representation(&mut rng, &q, ring, 3);
    let mut group = c.benchmark_group("evaluate object on A3");
    group.bench_function("pp", |b| b.iter(|| obj.evaluate(&t, Route::Pp).unwrap()));
    group.bench_function("presentation", |b| b.iter(|| obj.evaluate(&t, Route::Presentation).unwrap()));
    group.finish();
}

fn homology(c: &mut Criterion) {
    let klein = SimplicialPair::absolute("klein", klein_bottle());
    c.bench_function("H1 of the Klein bottle over Z", |b| {
        b.iter(|| relative_homology(&klein, 1, ScalarRing::Integers).unwrap())
    });
    let data = disc_data();
    c.bench_function("disc homology representation", |b| {
        b.iter(|| {
            let d = build_nori_diagram(&data, 2).unwrap();
            homology_representation(&data, &d, ScalarRing::Integers).unwrap()
        })
    });
}

criterion_group!(benches, smith, implication, routes, homology);
criterion_main!(benches);
