use proptest::prelude::*;

use ramsey_pods::color::{Color, ColorSet};
use ramsey_pods::constructions::{balance_coloring, lex_product, product_boost_vectors};
use ramsey_pods::paths::MonotoneDp;
use ramsey_pods::random::{random_coloring, seeded};
use ramsey_pods::reductions::coloring_to_vectors;
use ramsey_pods::vectors::validate_increasing;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn product_is_exact_for_every_color_set(seed in any::<u64>(), n1 in 1usize..=6, n2 in 1usize..=6, q in 1usize..=3) {
        let mut rng = seeded(seed);
        let inner = random_coloring(&mut rng, n1, q);
        let outer = random_coloring(&mut rng, n2, q);
        let prod = lex_product(&inner, &outer).unwrap();
        prop_assert_eq!(prod.n(), n1 * n2);
        for bits in 1u64..(1 << q) {
            let s = ColorSet::from_bits(bits);
            let len = |k| MonotoneDp::new(k, s).best_len();
            prop_assert_eq!(len(&prod), len(&inner) * len(&outer));
        }
    }

    #[test]
    fn boost_of_increasing_is_increasing(seed in any::<u64>(), q in 2usize..=4, n1 in 1usize..=5, n2 in 1usize..=5) {
        let mut rng = seeded(seed);
        let a = coloring_to_vectors(&random_coloring(&mut rng, n1, q)).unwrap();
        let b = coloring_to_vectors(&random_coloring(&mut rng, n2, q)).unwrap();
        let out = product_boost_vectors(&a, &b).unwrap();
        prop_assert_eq!(out.len(), n1 * n2);
        prop_assert!(validate_increasing(&out).is_ok());
    }

    #[test]
    fn balancing_equalizes_avoiding_paths(seed in any::<u64>(), n in 1usize..=4, q in 1usize..=3) {
        let k = random_coloring(&mut seeded(seed), n, q);
        let ell = |k: &_, c: Color| MonotoneDp::new(k, ColorSet::avoiding(q, c)).best_len().max(1);
        let product: usize = (1..=q as Color).map(|c| ell(&k, c)).product();
        let out = balance_coloring(&k).unwrap();
        for c in 1..=q as Color {
            prop_assert_eq!(ell(&out, c), product);
        }
    }
}
