use detci::polycore::scalar::{int, Scalar};
use detci::polycore::{buchberger, normal_form, Assignment, Budget, Ideal, Monomial, MonomialOrder, Polynomial, Var};
use num_traits::Zero;
use proptest::prelude::*;

fn v(i: u32) -> Var {
    Var::new("z", &[i])
}

/// Polynomials in `z_1, z_2, z_3` with small integer coefficients and
/// exponents.
fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(c, a, b, e)| {
            (Monomial::from_powers([(v(1), a), (v(2), b), (v(3), e)]), int(c))
        }))
    })
}

fn point() -> impl Strategy<Value = Assignment> {
    (-7i64..=7, -7i64..=7, -7i64..=7).prop_map(|(a, b, c)| [(v(1), int(a)), (v(2), int(b)), (v(3), int(c))].into_iter().collect())
}

fn eval(p: &Polynomial, at: &Assignment) -> Scalar {
    p.evaluate(at).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), at in point()) {
        prop_assert_eq!(eval(&(&a + &b), &at), eval(&a, &at) + eval(&b, &at));
        prop_assert_eq!(eval(&(&a * &b), &at), eval(&a, &at) * eval(&b, &at));
    }

    #[test]
    fn text_roundtrip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<Polynomial>().unwrap(), a.clone());
        prop_assert_eq!(a.to_text(&MonomialOrder::Lex).parse::<Polynomial>().unwrap(), a);
    }

    #[test]
    fn combinations_of_generators_reduce_to_zero(h1 in poly(), h2 in poly(), h3 in poly()) {
        let gens: Vec<Polynomial> = ["z_1 * z_2 - z_3^2", "z_1^2 - z_2 * z_3", "z_2^2 + z_1 - 1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let ideal = Ideal::new((1..=3).map(v), gens.clone()).unwrap();
        let gb = buchberger(&ideal, &MonomialOrder::DegRevLex, Budget::default()).unwrap();
        let f = &(&(&h1 * &gens[0]) + &(&h2 * &gens[1])) + &(&h3 * &gens[2]);
        prop_assert!(normal_form(&f, &gb).unwrap().is_zero());
    }

    #[test]
    fn reduced_basis_ignores_generator_order(seed in 0u64..1000) {
        let mut gens: Vec<Polynomial> = ["z_1^2 * z_2 - z_3", "z_1 * z_2^2 - z_1", "z_3^2 - z_2", "z_1 - z_2 * z_3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let base = buchberger(&Ideal::new((1..=3).map(v), gens.clone()).unwrap(), &MonomialOrder::DegRevLex, Budget::default()).unwrap();
        // a seed-dependent rotation and swap
        let r = (seed % 4) as usize;
        gens.rotate_left(r);
        if seed % 2 == 1 {
            gens.swap(0, 3);
        }
        let other = buchberger(&Ideal::new((1..=3).map(v), gens).unwrap(), &MonomialOrder::DegRevLex, Budget::default()).unwrap();
        prop_assert_eq!(&base.basis().unwrap().polys, &other.basis().unwrap().polys);
    }
}

#[test]
fn normal_form_of_non_member_is_nonzero() {
    let ideal = Ideal::new((1..=3).map(v), vec!["z_1 * z_2".parse().unwrap()]).unwrap();
    let gb = buchberger(&ideal, &MonomialOrder::Lex, Budget::default()).unwrap();
    let f: Polynomial = "z_1 + z_2".parse().unwrap();
    assert!(!normal_form(&f, &gb).unwrap().is_zero());
    assert!(normal_form(&f, &ideal).is_err());
}

#[test]
fn tiny_budget_is_reported_not_truncated() {
    let gens: Vec<Polynomial> = ["z_1^3 - z_2", "z_2^2 - z_3 * z_1", "z_3^3 - z_1 * z_2"].iter().map(|s| s.parse().unwrap()).collect();
    let ideal = Ideal::new((1..=3).map(v), gens).unwrap();
    let budget = Budget { max_pairs: 1, max_degree: 24 };
    let err = buchberger(&ideal, &MonomialOrder::Lex, budget).unwrap_err();
    assert!(matches!(err, detci::Error::BudgetExhausted(_)));
    assert!(Scalar::zero().is_zero());
}
