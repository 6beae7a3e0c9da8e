use detci::hypergraph::{fixtures, hypergraph_generators, in_variety, matrix_assignment, GridSpec};
use detci::matroid::{
    algebraic_matroid, grid_circuit_family, grid_label_support, is_circuit_family, realize_grid_matroid,
    sparse_lowrank_ideal, zero_diagonal_component,
};
use detci::polycore::scalar::{frac, int, SHADOW_PRIME};
use detci::{Matrix, Matroid, PolyMap};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(lo..=hi, rows * cols).prop_map(move |v| {
        Matrix::from_rows(v.chunks(cols).map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    })
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_axioms(x in small_matrix(3, 6, -1, 1), a in 0u32..64, b in 0u32..64) {
        let m = Matroid::from_matrix(x);
        let r = |mask: u32| m.rank_of(&members(mask, 6)).unwrap();
        prop_assert!(r(a) <= a.count_ones() as usize);
        prop_assert!(r(a & b) <= r(a));
        prop_assert!(r(a) <= r(a | b));
        prop_assert!(r(a | b) + r(a & b) <= r(a) + r(b));
    }

    #[test]
    fn circuits_satisfy_the_axioms(x in small_matrix(3, 6, -1, 1)) {
        let m = Matroid::from_matrix(x);
        let cs = m.circuits().unwrap();
        prop_assert!(is_circuit_family(6, &cs).unwrap());
        for c in &cs {
            prop_assert!(m.is_dependent(c).unwrap());
            for skip in 0..c.len() {
                let mut rest = c.clone();
                rest.remove(skip);
                prop_assert!(m.is_independent(&rest).unwrap());
            }
        }
    }

    #[test]
    fn shadow_rank_never_exceeds_rational_rank(v in prop::collection::vec(-3i64..=3, 12), hits in prop::collection::vec(any::<bool>(), 12)) {
        let p = SHADOW_PRIME as i64;
        let rows: Vec<Vec<_>> = v
            .chunks(4)
            .zip(hits.chunks(4))
            .map(|(r, h)| r.iter().zip(h).map(|(&x, &hit)| if hit { int(x * p) } else { frac(x, 2) }).collect())
            .collect();
        let m = Matrix::from_rows(rows).unwrap();
        if let Some(rp) = m.rank_mod_p() {
            prop_assert!(rp <= m.rank());
        }
    }

    #[test]
    fn variety_membership_matches_generator_vanishing(x in small_matrix(3, 7, -1, 1)) {
        let h = fixtures::concurrent_triples();
        let gens = hypergraph_generators(&h, 3).unwrap();
        let point = matrix_assignment(&x);
        let vanish = gens.iter().all(|g| g.evaluate(&point).unwrap().is_zero());
        prop_assert_eq!(in_variety(&h, &x).unwrap(), vanish);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn algebraic_matroid_of_a_linear_map_is_the_column_matroid(x in small_matrix(3, 5, -2, 2), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = algebraic_matroid(&PolyMap::linear(&x), &mut rng).unwrap();
        let lin = Matroid::from_matrix(x);
        prop_assert_eq!(alg.rank(), lin.rank());
        prop_assert_eq!(alg.circuits().unwrap(), lin.circuits().unwrap());
    }
}

#[test]
fn realizations_have_the_grid_circuits() {
    for (spec, seed) in [(GridSpec::new(3, 3, 3, 3, 3).unwrap(), 1), (GridSpec::new(3, 4, 3, 4, 4).unwrap(), 2)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = realize_grid_matroid(&spec, &mut rng).unwrap();
        let m = Matroid::from_matrix(x);
        let family = grid_circuit_family(&spec).unwrap();
        assert_eq!(m.rank(), spec.d, "{spec}");
        assert_eq!(m.circuits().unwrap(), family.edges(), "{spec}");
    }
}

#[test]
fn generator_supports_are_dependent_on_the_zero_diagonal_component() {
    let spec = GridSpec::new(3, 3, 3, 3, 3).unwrap();
    let ideal = sparse_lowrank_ideal(&spec).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = algebraic_matroid(&zero_diagonal_component(3).unwrap(), &mut rng).unwrap();
    assert_eq!(m.loops(), vec![1, 5, 9]);
    for g in ideal.generators() {
        let support = grid_label_support(g, spec.k);
        assert!(m.is_dependent(&support).unwrap(), "{g}");
    }
}
