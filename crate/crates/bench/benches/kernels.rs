use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use detci::hypergraph::{grid_hypergraph, hypergraph_generators, hypergraph_ideal};
use detci::matroid::realize_grid_matroid;
use detci::polycore::buchberger;
use detci::secrig::generic_rigidity_check;
use detci::{Budget, GridSpec, Matroid, MonomialOrder};

fn minors(c: &mut Criterion) {
    let spec = GridSpec::new(3, 3, 3, 4, 3).unwrap();
    let h = grid_hypergraph(&spec).unwrap();
    c.bench_function("minors 3x12 grid ideal", |b| b.iter(|| hypergraph_generators(&h, 3).unwrap()));
}

fn groebner(c: &mut Criterion) {
    let spec = GridSpec::new(2, 2, 2, 3, 2).unwrap();
    let ideal = hypergraph_ideal(&grid_hypergraph(&spec).unwrap(), 2).unwrap();
    c.bench_function("buchberger 2x6 grid ideal", |b| {
        b.iter(|| buchberger(&ideal, &MonomialOrder::DegRevLex, Budget::default()).unwrap())
    });
}

fn circuits(c: &mut Criterion) {
    let spec = GridSpec::new(3, 3, 3, 3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    c.bench_function("circuits realized 3x3 grid matroid", |b| {
        b.iter_batched(
            || Matroid::from_matrix(realize_grid_matroid(&spec, &mut rng).unwrap()),
            |m| m.circuits().unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn rigidity(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    c.bench_function("rigidity K_6 in R^3", |b| b.iter(|| generic_rigidity_check(6, 3, &mut rng).unwrap()));
}

criterion_group!(kernels, minors, groebner, circuits, rigidity);
criterion_main!(kernels);
