use proptest::prelude::*;

use ramsey_pods::color::{Color, ColorSet};
use ramsey_pods::paths::{longest_restricted_monotone, validate_path, MonotoneDp, PathInstance};
use ramsey_pods::random::{random_coloring, seeded};
use ramsey_pods::reductions::{coloring_to_vectors, merge_colors, vectors_to_coloring, Partition};
use ramsey_pods::vectors::validate_increasing;

/// A random partition of `1..=q` into nonempty blocks.
fn partition(q: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..q, q).prop_map(move |labels| {
        let mut blocks: Vec<Vec<Color>> = vec![Vec::new(); q];
        for (c, &b) in labels.iter().enumerate() {
            blocks[b].push(c as Color + 1);
        }
        blocks.retain(|b| !b.is_empty());
        Partition::new(blocks).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn colorings_give_increasing_families(seed in any::<u64>(), n in 0usize..=12, q in 2usize..=4) {
        let fam = coloring_to_vectors(&random_coloring(&mut seeded(seed), n, q)).unwrap();
        prop_assert_eq!(fam.r(), q - 1);
        prop_assert!(validate_increasing(&fam).is_ok());
    }

    #[test]
    fn families_give_colorings_with_short_paths(seed in any::<u64>(), len in 1usize..=12, q in 2usize..=4) {
        let fam = coloring_to_vectors(&random_coloring(&mut seeded(seed), len, q)).unwrap();
        let top = fam.rows().into_iter().flatten().max().unwrap() as usize;
        let k = vectors_to_coloring(&fam).unwrap();
        for c in 1..=q as Color {
            prop_assert!(MonotoneDp::new(&k, ColorSet::avoiding(q, c)).best_len() <= top);
        }
    }

    #[test]
    fn merged_paths_pull_back(
        (q, seed, n, part, pick) in (2usize..=5).prop_flat_map(|q| (Just(q), any::<u64>(), 1usize..=10, partition(q), 1u64..32))
    ) {
        let k = random_coloring(&mut seeded(seed), n, q);
        let merged = merge_colors(&k, &part).unwrap();
        let chosen = ColorSet::from_bits(pick & ((1 << part.merged_q()) - 1));
        prop_assume!(!chosen.is_empty());
        let mut cert = longest_restricted_monotone(&merged, chosen).unwrap();
        let pulled = part.pullback(chosen);
        cert.constraint = ramsey_pods::paths::ColorConstraint::Allowed(pulled);
        prop_assert!(validate_path(PathInstance::Ordered(&k), &cert).is_ok());
        prop_assert!(pulled.len() <= part.max_original_colors(chosen.len()));
    }
}
