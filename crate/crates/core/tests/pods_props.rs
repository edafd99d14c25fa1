use proptest::prelude::*;

use ramsey_pods::pods::{pods_disjoint_fast, pods_disjoint_voxel, Packing, Pod};
use ramsey_pods::search::exact_comparable;
use ramsey_pods::vectors::{grid_points, validate_comparable, GridVector, VectorFamily};
use ramsey_pods::Budget;

fn gains(x: &[u32], y: &[u32]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a < b).count()
}

/// Largest set of pairwise comparable points, by plain branching.
fn max_comparable(points: &[Vec<u32>], r: usize) -> usize {
    fn grow(cands: &[usize], adj: &[Vec<bool>], size: usize, best: &mut usize) {
        *best = (*best).max(size);
        for (k, &v) in cands.iter().enumerate() {
            if size + cands.len() - k <= *best {
                return;
            }
            let next: Vec<usize> = cands[k + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
            grow(&next, adj, size + 1, best);
        }
    }
    let m = points.len();
    let adj: Vec<Vec<bool>> = (0..m)
        .map(|a| (0..m).map(|b| a != b && (gains(&points[a], &points[b]) >= r || gains(&points[b], &points[a]) >= r)).collect())
        .collect();
    let mut best = 0;
    grow(&(0..m).collect::<Vec<_>>(), &adj, 0, &mut best);
    best
}

#[test]
fn voxel_and_apex_tests_agree_exhaustively() {
    let mut cases = vec![(4, 3, 2), (3, 3, 2)];
    cases.extend((1..=3).map(|n| (3, 2, n)));
    cases.extend((1..=3).map(|n| (2, 1, n)));
    for (q, r, n) in cases {
        let pods: Vec<Pod> = grid_points(q, n).into_iter().map(|p| Pod::new(r, GridVector::new(p, n).unwrap()).unwrap()).collect();
        for a in &pods {
            for b in &pods {
                assert_eq!(pods_disjoint_voxel(a, b).unwrap(), pods_disjoint_fast(a, b).unwrap(), "({q},{r},{n})");
            }
        }
    }
}

#[test]
fn largest_packing_matches_comparable_sets() {
    for (q, r, n) in [(2, 1, 2), (2, 1, 3), (2, 2, 3), (3, 2, 2), (3, 2, 3), (3, 3, 2), (4, 3, 2)] {
        let rec = exact_comparable(q, r, n as usize, Budget::default()).unwrap();
        assert!(rec.is_exact());
        assert_eq!(max_comparable(&grid_points(q, n), r), rec.value, "({q},{r},{n})");
    }
}

proptest! {
    #[test]
    fn packings_are_comparable_families(
        (q, r, n, apices) in (2usize..=4).prop_flat_map(|q| (Just(q), 1..=q, 2u32..=3))
            .prop_flat_map(|(q, r, n)| (Just(q), Just(r), Just(n), prop::collection::vec(prop::collection::vec(1..=n, q), 1..=5)))
    ) {
        let packing = Packing::new(q, r, n, apices.clone()).unwrap();
        let fam = VectorFamily::from_rows(q, n, r, apices).unwrap();
        prop_assert_eq!(packing.is_valid(), validate_comparable(&fam).is_ok());
        prop_assert_eq!(packing.first_overlap().is_none(), packing.first_overlap_voxel().is_none());
    }
}
