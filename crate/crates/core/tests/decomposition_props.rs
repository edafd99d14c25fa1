use proptest::prelude::*;

use ramsey_pods::color::{Color, ColorSet};
use ramsey_pods::decomposition::{
    audit_classification, audit_gluing, audit_three_color_path, baseline_floor, build_gluing, classify_colors,
    recursive_color_avoiding, three_color_path, DecomposeConfig, DecompositionError, GluingStructure, Scale, Support,
};
use ramsey_pods::paths::{proof_parameters, validate_path, DirectedDp, PathInstance};
use ramsey_pods::random::{random_close_instance, random_coloring, random_tournament, seeded};
use ramsey_pods::tournament::{cyclic_triangles, heuristic_transitive_order, ColoredTournament, OrderedColoring};

/// Interleaving, arc directions, palette and sizes, checked from scratch.
fn check_gluing(t: &ColoredTournament, order: &[usize], g: &GluingStructure) -> Result<(), String> {
    let pos = |v: usize| order.iter().position(|&w| w == v).unwrap();
    if g.blocks.is_empty() {
        return Ok(());
    }
    if g.anchors.len() != g.blocks.len() + 1 {
        return Err("anchor count".into());
    }
    let mut used = std::collections::HashSet::new();
    for (a, block) in g.blocks.iter().enumerate() {
        let (lo, hi) = (g.anchors[a], g.anchors[a + 1]);
        let min = if g.full_window[a] { g.s } else { 1 };
        if block.len() < min {
            return Err(format!("block {a} too small"));
        }
        for &w in block {
            if !(pos(lo) < pos(w) && pos(w) < pos(hi)) {
                return Err(format!("block {a} not between anchors"));
            }
            for (x, y) in [(lo, w), (w, hi)] {
                if !t.beats(x, y) || !g.palette.contains(t.color(x, y)) {
                    return Err(format!("arc {x}->{y} missing or off palette"));
                }
            }
        }
    }
    for v in g.anchors.iter().chain(g.blocks.iter().flatten()) {
        if !used.insert(*v) {
            return Err(format!("vertex {v} reused"));
        }
    }
    Ok(())
}

fn root_ceil(n: usize, k: u32) -> usize {
    (1..=n).find(|&m| m.pow(k) >= n).unwrap_or(n.min(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn three_color_paths_pass_audit(seed in any::<u64>(), n in 3usize..=45, q in 1usize..=5) {
        let t = random_tournament(&mut seeded(seed), n, q);
        match three_color_path(&t, Support::Auto) {
            Ok(out) => {
                prop_assert!(audit_three_color_path(&t, &out).is_ok());
                let v = &out.certificate.vertices;
                let colors: ColorSet = v.windows(2).map(|w| t.color(w[0], w[1])).collect();
                prop_assert!(colors.len() <= 3);
                for j in 0..v.len() - 1 {
                    prop_assert!(t.beats(v[j], v[j + 1]));
                    prop_assert_eq!(t.color(v[j], v[j + 1]), out.pattern[j % 3]);
                }
                for j in 0..v.len() - 2 {
                    prop_assert!(t.beats(v[j + 2], v[j]));
                }
            }
            Err(DecompositionError::NoCyclicTriangles) => prop_assert!(cyclic_triangles(&t).is_empty()),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn classification_recomputes(seed in any::<u64>(), n in 24usize..=44, q in 2usize..=5, gamma in 0.05f64..1.2) {
        let mut rng = seeded(seed);
        let t = random_tournament(&mut rng, n, q);
        let order = heuristic_transitive_order(&t, seed);
        let params = proof_parameters(q, n).unwrap().with_overrides(gamma, 1, 2.0);
        let cls = classify_colors(&t, &order, &params, 22).unwrap();
        prop_assert!(audit_classification(&cls).is_ok());
        // halves have at most 22 vertices here, so the half tables are exact
        let left: Vec<usize> = cls.intervals[0].iter().chain(&cls.intervals[1]).copied().collect();
        let right: Vec<usize> = cls.intervals[2].iter().chain(&cls.intervals[3]).copied().collect();
        for c in 1..=q as Color {
            let allowed = ColorSet::avoiding(q, c);
            let i = c as usize - 1;
            let dl = DirectedDp::new(&t.induced(&left), allowed).unwrap();
            let dr = DirectedDp::new(&t.induced(&right), allowed).unwrap();
            for (k, &v) in left.iter().enumerate() {
                prop_assert_eq!(cls.ending[i][v], dl.ending_lengths()[k]);
            }
            for (k, &w) in right.iter().enumerate() {
                prop_assert_eq!(cls.starting[i][w], dr.starting_lengths()[k]);
            }
            // joining at any admissible arc gives exactly the two table entries
            for &v in cls.top_left[i].iter().filter(|v| cls.intervals[1].contains(v)) {
                for &w in cls.top_right[i].iter().filter(|w| cls.intervals[2].contains(w)) {
                    if !(t.beats(v, w) && t.color(v, w) != c) {
                        continue;
                    }
                    let kv = left.iter().position(|&x| x == v).unwrap();
                    let kw = right.iter().position(|&x| x == w).unwrap();
                    let mut path: Vec<usize> = dl.path_ending_at(kv).into_iter().map(|x| left[x]).collect();
                    path.extend(dr.path_starting_at(kw).into_iter().map(|x| right[x]));
                    prop_assert_eq!(path.len(), cls.ending[i][v] + cls.starting[i][w]);
                    prop_assert!(path.windows(2).all(|e| t.beats(e[0], e[1]) && t.color(e[0], e[1]) != c));
                }
            }
        }
    }

    #[test]
    fn gluing_structures_reaudit(seed in any::<u64>(), n in 32usize..=60, q in 2usize..=5, gamma in 0.5f64..1.5) {
        let mut rng = seeded(seed);
        let delta = num_rational::Ratio::new(1, 6);
        let (t, _) = random_close_instance(&mut rng, n, q, delta);
        let order = heuristic_transitive_order(&t, seed);
        let params = proof_parameters(q, n).unwrap().with_overrides(gamma, 2, 1.0);
        let cls = classify_colors(&t, &order, &params, 22).unwrap();
        match build_gluing(&t, &cls, 22) {
            Ok(g) => {
                prop_assert!(audit_gluing(&t, &order, &g).is_ok());
                prop_assert!(check_gluing(&t, &order, &g).is_ok());
            }
            Err(DecompositionError::NotDiffuse { .. }) => prop_assert!(cls.chosen_diffuse.is_none()),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recursive_paths_validate_and_beat_baseline(seed in any::<u64>(), n in 1usize..=70, q in 1usize..=5) {
        let t = random_tournament(&mut seeded(seed), n, q);
        let cfg = DecomposeConfig { seed, ..DecomposeConfig::default() };
        let out = recursive_color_avoiding(&t, &cfg);
        prop_assert!(validate_path(PathInstance::Tournament(&t), &out.path).is_ok());
        prop_assert!(out.path.vertices.windows(2).all(|e| t.color(e[0], e[1]) != out.color));
        prop_assert!(out.path.len() >= out.baseline);
        prop_assert!(out.path.len() >= baseline_floor(n, q));
    }

    #[test]
    fn transitive_instances_meet_the_merged_floor(seed in any::<u64>(), n in 1usize..=80, q in 2usize..=5) {
        let t = ColoredTournament::transitive(&random_coloring(&mut seeded(seed), n, q));
        let out = recursive_color_avoiding(&t, &DecomposeConfig::default());
        prop_assert!(validate_path(PathInstance::Tournament(&t), &out.path).is_ok());
        // two colors: a single-color monotone path, so only the square root is guaranteed
        let root = if q == 2 { 2 } else { q as u32 - 1 };
        prop_assert!(out.path.len() >= root_ceil(n, root));
    }
}

/// Transitive; arcs out of the first six vertices take colors 1, 1, 2, 2,
/// 3, 3 and every other arc color 4; the endpoint sets are set by hand so
/// that colors 1..3 are diffuse.
#[test]
fn handcrafted_gluing_chain() {
    let n = 32;
    let k = OrderedColoring::from_fn(n, 4, |u, _| if u < 6 { (u / 2 + 1) as Color } else { 4 }).unwrap();
    let t = ColoredTournament::transitive(&k);
    let order: Vec<usize> = (0..n).collect();
    let params = proof_parameters(4, n).unwrap().with_overrides(2.0, 2, 3.0);
    let mut cls = classify_colors(&t, &order, &params, 22).unwrap();
    for i in 0..3 {
        cls.top_left[i] = vec![2 * i, 2 * i + 1];
    }
    cls.chosen_diffuse = Some([1, 2, 3].into_iter().collect());
    let g = build_gluing(&t, &cls, 22).unwrap();
    assert!(g.t() >= 1);
    check_gluing(&t, &order, &g).unwrap();
}

#[test]
fn monochromatic_transitive_returns_everything() {
    for (n, q) in [(1, 2), (8, 2), (30, 3), (64, 4)] {
        let t = ColoredTournament::transitive(&OrderedColoring::monochromatic(n, q, 1).unwrap());
        for scale in [Scale::Desk, Scale::Asymptotic] {
            let out = recursive_color_avoiding(&t, &DecomposeConfig { scale, ..DecomposeConfig::default() });
            assert_eq!(out.path.len(), n);
            assert!(n == 1 || out.color != 1);
        }
    }
}
