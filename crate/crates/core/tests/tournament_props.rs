use num_rational::Ratio;
use proptest::prelude::*;

use ramsey_pods::random::{random_close_instance, random_tournament, seeded};
use ramsey_pods::tournament::{
    audit_clean_degrees, backward_edge_count, clean_degrees, cyclic_triangle_count_from_scores, cyclic_triangles,
    heuristic_transitive_order, pattern_buckets,
};

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn triangle_identity(seed in any::<u64>(), n in 0usize..=50, q in 1usize..=4) {
        let t = random_tournament(&mut seeded(seed), n, q);
        let transitive_triples: u64 = (0..n).map(|v| choose(t.out_degree(v) as u64, 2)).sum();
        let count = cyclic_triangles(&t).len() as u64;
        prop_assert_eq!(count, choose(n as u64, 3) - transitive_triples);
        prop_assert_eq!(cyclic_triangle_count_from_scores(&t), count);
    }

    #[test]
    fn buckets_partition_triangles(seed in any::<u64>(), n in 3usize..=25, q in 1usize..=4) {
        let t = random_tournament(&mut seeded(seed), n, q);
        let total: usize = pattern_buckets(&t).values().map(Vec::len).sum();
        prop_assert_eq!(total, cyclic_triangles(&t).len());
    }

    #[test]
    fn order_and_reverse_split_all_pairs(seed in any::<u64>(), n in 1usize..=40) {
        let t = random_tournament(&mut seeded(seed), n, 2);
        let order = heuristic_transitive_order(&t, seed);
        let reversed: Vec<usize> = order.iter().rev().copied().collect();
        let sum = backward_edge_count(&t, &order).unwrap() + backward_edge_count(&t, &reversed).unwrap();
        prop_assert_eq!(sum, n * (n - 1) / 2);
    }

    #[test]
    fn cleaning_meets_size_and_degree_bounds(seed in any::<u64>(), n in 4usize..=70, num in 1i64..=9) {
        let delta = Ratio::new(num, 20);
        let (t, order) = random_close_instance(&mut seeded(seed), n, 3, delta);
        let out = clean_degrees(&t, &order, delta).unwrap();
        prop_assert!(audit_clean_degrees(&t, delta, &out).is_ok());
        let kept = out.kept.len() as i64;
        prop_assert!(Ratio::from_integer(kept) >= (Ratio::from_integer(1) - delta) * Ratio::from_integer(n as i64));
        for (i, &a) in out.kept.iter().enumerate() {
            let against: i64 = out.kept.iter().enumerate()
                .filter(|&(j, &b)| (j > i && t.beats(b, a)) || (j < i && t.beats(a, b)))
                .count() as i64;
            prop_assert!(Ratio::from_integer(against) <= delta * Ratio::from_integer(4 * kept));
        }
    }
}
