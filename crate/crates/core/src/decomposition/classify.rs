//! Long, condensed and diffuse colors around the midpoint of a vertex order.

use serde::Serialize;

use super::tables::SubPaths;
use super::DecompositionError;
use crate::color::{Color, ColorSet};
use crate::paths::ProofParameters;
use crate::tournament::{validate_permutation, ColoredTournament};

/// Per-color structure of a tournament split at the middle of `order`.
///
/// The order is cut into intervals `A, B, C, D` of lengths `N/2 - 4s`, `4s`,
/// `4s` and the rest. `X_i` holds the `s` vertices of `A ∪ B` with the
/// longest `i`-avoiding path in `T[A ∪ B]` ending there; `Y_i` the `s`
/// vertices of `C ∪ D` with the longest such path in `T[C ∪ D]` starting
/// there. Ties go to the earlier vertex in the order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColorClassification {
    pub q: usize,
    pub s: usize,
    pub gamma: f64,
    pub order: Vec<usize>,
    /// vertex ids of each interval, in order
    pub intervals: [Vec<usize>; 4],
    /// longest `i`-avoiding path in the whole tournament (index `i - 1`)
    pub ell: Vec<usize>,
    /// whether every path table above came from the exact subset DP
    pub exact: bool,
    /// `ending[i-1][v]`: longest `i`-avoiding path in `T[A ∪ B]` ending at `v`; 0 off `A ∪ B`
    pub ending: Vec<Vec<usize>>,
    /// `starting[i-1][v]`: longest `i`-avoiding path in `T[C ∪ D]` starting at `v`; 0 off `C ∪ D`
    pub starting: Vec<Vec<usize>>,
    pub top_left: Vec<Vec<usize>>,
    pub top_right: Vec<Vec<usize>>,
    pub long: ColorSet,
    pub left_condensed: ColorSet,
    pub right_condensed: ColorSet,
    /// short, left- and right-condensed
    pub condensed: ColorSet,
    pub left_diffuse: ColorSet,
    pub right_diffuse: ColorSet,
    /// the first `quota` left-diffuse colors, when there are that many
    pub chosen_diffuse: Option<ColorSet>,
    pub quota: usize,
}

impl ColorClassification {
    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Whether color `c` counts as long: `ell >= gamma N`.
    pub fn is_long(&self, c: Color) -> bool {
        self.ell[c as usize - 1] as f64 >= self.gamma * self.n() as f64
    }
}

/// The `s` entries of `candidates` with the largest `score`, ties to the earlier one.
fn top(candidates: &[usize], score: &[usize], s: usize) -> Vec<usize> {
    let mut ranked: Vec<(usize, usize)> = candidates.iter().enumerate().map(|(k, &v)| (k, v)).collect();
    ranked.sort_by_key(|&(k, v)| (std::cmp::Reverse(score[v]), k));
    ranked.into_iter().take(s).map(|(_, v)| v).collect()
}

fn flags_from(
    q: usize,
    s: usize,
    long: ColorSet,
    intervals: &[Vec<usize>; 4],
    top_left: &[Vec<usize>],
    top_right: &[Vec<usize>],
) -> (ColorSet, ColorSet) {
    let mut left = ColorSet::EMPTY;
    let mut right = ColorSet::EMPTY;
    for c in 1..=q as Color {
        if long.contains(c) {
            continue;
        }
        let i = c as usize - 1;
        let in_b = top_left[i].iter().filter(|v| intervals[1].contains(v)).count();
        let in_c = top_right[i].iter().filter(|v| intervals[2].contains(v)).count();
        // |X ∩ B| >= s/2
        if 2 * in_b >= s {
            left = left.with(c);
        }
        if 2 * in_c >= s {
            right = right.with(c);
        }
    }
    (left, right)
}

/// Splits `order` into the four intervals and classifies every color.
///
/// Path tables are exact on halves of at most `exact_max` vertices and come
/// from the forward-arc DP along `order` otherwise.
pub fn classify_colors(
    t: &ColoredTournament,
    order: &[usize],
    params: &ProofParameters,
    exact_max: usize,
) -> Result<ColorClassification, DecompositionError> {
    let n = t.n();
    validate_permutation(n, order)?;
    let s = params.s;
    if n < 16 * s {
        return Err(DecompositionError::DegenerateScale { n, s });
    }
    let q = t.q();
    let half = n / 2;
    let cuts = [0, half - 4 * s, half, half + 4 * s, n];
    let intervals: [Vec<usize>; 4] = std::array::from_fn(|k| order[cuts[k]..cuts[k + 1]].to_vec());
    let left: Vec<usize> = order[..half].to_vec();
    let right: Vec<usize> = order[half..].to_vec();

    let mut ending = vec![vec![0; n]; q];
    let mut starting = vec![vec![0; n]; q];
    let mut ell = vec![0; q];
    let mut exact = true;
    let mut top_left = Vec::with_capacity(q);
    let mut top_right = Vec::with_capacity(q);
    for c in 1..=q as Color {
        let i = c as usize - 1;
        let allowed = ColorSet::avoiding(q, c);
        let lt = SubPaths::new(t, &left, allowed, exact_max);
        let rt = SubPaths::new(t, &right, allowed, exact_max);
        let whole = SubPaths::new(t, order, allowed, exact_max);
        exact &= lt.is_exact() && rt.is_exact() && whole.is_exact();
        for (k, &v) in left.iter().enumerate() {
            ending[i][v] = lt.end_len(k);
        }
        for (k, &v) in right.iter().enumerate() {
            starting[i][v] = rt.start_len(k);
        }
        ell[i] = whole.best_len().max(lt.best_len()).max(rt.best_len());
        top_left.push(top(&left, &ending[i], s));
        top_right.push(top(&right, &starting[i], s));
    }

    let mut long = ColorSet::EMPTY;
    for c in 1..=q as Color {
        if ell[c as usize - 1] as f64 >= params.gamma * n as f64 {
            long = long.with(c);
        }
    }
    let (left_condensed, right_condensed) = flags_from(q, s, long, &intervals, &top_left, &top_right);
    let short = ColorSet::full(q).iter().filter(|&c| !long.contains(c)).collect::<ColorSet>();
    let condensed = left_condensed.iter().filter(|&c| right_condensed.contains(c)).collect();
    let left_diffuse = short.iter().filter(|&c| !left_condensed.contains(c)).collect::<ColorSet>();
    let right_diffuse = short.iter().filter(|&c| !right_condensed.contains(c)).collect();
    let quota = params.diffuse_quota();
    let chosen_diffuse =
        (left_diffuse.len() >= quota).then(|| left_diffuse.iter().take(quota).collect::<ColorSet>());
    Ok(ColorClassification {
        q,
        s,
        gamma: params.gamma,
        order: order.to_vec(),
        intervals,
        ell,
        exact,
        ending,
        starting,
        top_left,
        top_right,
        long,
        left_condensed,
        right_condensed,
        condensed,
        left_diffuse,
        right_diffuse,
        chosen_diffuse,
        quota,
    })
}

/// Recomputes every flag from the stored lengths and sets, and checks the
/// ranking: `|X_i| = |Y_i| = s` and no vertex outside `X_i` (resp. `Y_i`)
/// scores strictly more than the weakest member.
pub fn audit_classification(cls: &ColorClassification) -> Result<(), String> {
    let (q, s, n) = (cls.q, cls.s, cls.n());
    let lens: Vec<usize> = cls.intervals.iter().map(Vec::len).collect();
    let half = n / 2;
    if lens != [half - 4 * s, 4 * s, 4 * s, n - half - 4 * s] {
        return Err(format!("interval lengths {lens:?} do not match N={n}, s={s}"));
    }
    let left: Vec<usize> = cls.intervals[0].iter().chain(&cls.intervals[1]).copied().collect();
    let right: Vec<usize> = cls.intervals[2].iter().chain(&cls.intervals[3]).copied().collect();
    for i in 0..q {
        for (set, side, score, name) in [
            (&cls.top_left[i], &left, &cls.ending[i], "X"),
            (&cls.top_right[i], &right, &cls.starting[i], "Y"),
        ] {
            if set.len() != s {
                return Err(format!("{name}_{} has {} vertices, expected {s}", i + 1, set.len()));
            }
            if set.iter().any(|v| !side.contains(v)) {
                return Err(format!("{name}_{} leaves its half", i + 1));
            }
            let weakest = set.iter().map(|&v| score[v]).min().unwrap_or(0);
            if let Some(v) = side.iter().find(|v| !set.contains(v) && score[**v] > weakest) {
                return Err(format!("vertex {} outranks {name}_{} but is excluded", v + 1, i + 1));
            }
        }
    }
    let long: ColorSet =
        (1..=q as Color).filter(|&c| cls.ell[c as usize - 1] as f64 >= cls.gamma * n as f64).collect();
    if long != cls.long {
        return Err(format!("long colors {} should be {long}", cls.long));
    }
    let (lc, rc) = flags_from(q, s, long, &cls.intervals, &cls.top_left, &cls.top_right);
    if lc != cls.left_condensed || rc != cls.right_condensed {
        return Err("condensed flags disagree with X/Y intersections".into());
    }
    for c in 1..=q as Color {
        let short = !long.contains(c);
        let expect = [
            (cls.condensed.contains(c), short && lc.contains(c) && rc.contains(c), "condensed"),
            (cls.left_diffuse.contains(c), short && !lc.contains(c), "left-diffuse"),
            (cls.right_diffuse.contains(c), short && !rc.contains(c), "right-diffuse"),
        ];
        for (got, want, name) in expect {
            if got != want {
                return Err(format!("color {c}: {name} flag is {got}, expected {want}"));
            }
        }
    }
    if let Some(chosen) = cls.chosen_diffuse {
        if chosen.len() != cls.quota || !chosen.is_subset(cls.left_diffuse) {
            return Err(format!("chosen diffuse set {chosen} is not {} left-diffuse colors", cls.quota));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::proof_parameters;
    use crate::tournament::OrderedColoring;

    fn params(q: usize, n: usize, gamma: f64, s: usize) -> ProofParameters {
        proof_parameters(q, n).unwrap().with_overrides(gamma, s, 1.0)
    }

    #[test]
    fn monochromatic_transitive() {
        let n = 32;
        let t = ColoredTournament::transitive(&OrderedColoring::monochromatic(n, 2, 1).unwrap());
        let order: Vec<usize> = (0..n).collect();
        let cls = classify_colors(&t, &order, &params(2, n, 0.1, 2), 22).unwrap();
        audit_classification(&cls).unwrap();
        assert_eq!(cls.ell, vec![1, n]);
        assert!(!cls.long.contains(1) && cls.long.contains(2));
        assert!(cls.top_left.iter().chain(&cls.top_right).all(|x| x.len() == 2));
    }

    #[test]
    fn parity_coloring_is_condensed() {
        // consecutive vertices have odd sums, so avoiding-path lengths grow
        // along the order and the best endpoints crowd the midpoint
        let n = 48;
        let k = OrderedColoring::from_fn(n, 2, |u, v| if (u + v) % 2 == 0 { 1 } else { 2 }).unwrap();
        let t = ColoredTournament::transitive(&k);
        let order: Vec<usize> = (0..n).collect();
        let cls = classify_colors(&t, &order, &params(2, n, 2.0, 2), 22).unwrap();
        audit_classification(&cls).unwrap();
        assert!(!cls.exact);
        assert_eq!(cls.long, ColorSet::EMPTY);
        assert_eq!(cls.condensed, ColorSet::full(2));
        assert!(cls.chosen_diffuse.is_none());
    }

    #[test]
    fn too_small_is_degenerate() {
        let t = ColoredTournament::transitive(&OrderedColoring::monochromatic(15, 2, 1).unwrap());
        let order: Vec<usize> = (0..15).collect();
        let err = classify_colors(&t, &order, &params(2, 15, 0.1, 1), 22).unwrap_err();
        assert!(matches!(err, DecompositionError::DegenerateScale { n: 15, s: 1 }));
    }

    #[test]
    fn tampered_flags_fail_audit() {
        let n = 32;
        let t = ColoredTournament::transitive(&OrderedColoring::monochromatic(n, 2, 1).unwrap());
        let order: Vec<usize> = (0..n).collect();
        let mut cls = classify_colors(&t, &order, &params(2, n, 0.1, 2), 22).unwrap();
        cls.long = ColorSet::EMPTY;
        assert!(audit_classification(&cls).is_err());
    }
}
