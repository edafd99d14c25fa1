//! Relations between exactly computed extremal values.

use std::collections::HashMap;

use ramsey_pods::search::{run_search, ExtremalRecord, Kind};
use ramsey_pods::Budget;

struct Table {
    budget: Budget,
    records: HashMap<(Kind, usize, usize, usize), Option<usize>>,
}

impl Table {
    fn new() -> Self {
        Self { budget: Budget::nodes(2_000_000), records: HashMap::new() }
    }

    /// Exact value, or `None` when the search did not close.
    fn exact(&mut self, kind: Kind, q: usize, r: usize, size: usize) -> Option<usize> {
        let budget = self.budget;
        *self.records.entry((kind, q, r, size)).or_insert_with(|| {
            let rec: ExtremalRecord = run_search(kind, q, r, size, budget).unwrap();
            rec.validate().unwrap_or_else(|e| panic!("{kind:?}({q},{r},{size}) witness: {e}"));
            rec.is_exact().then_some(rec.value)
        })
    }
}

fn params(max_q: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_q).flat_map(|q| (1..=q).map(move |r| (q, r)))
}

#[test]
fn sequences_sit_below_comparable_sets() {
    let mut table = Table::new();
    let mut compared = 0;
    for (q, r) in params(4) {
        for n in 1..=3 {
            if let (Some(f), Some(g)) = (table.exact(Kind::IncreasingSequence, q, r, n), table.exact(Kind::ComparableSet, q, r, n)) {
                assert!(f <= g, "F({q},{r},{n}) = {f} > G = {g}");
                compared += 1;
            }
        }
    }
    assert!(compared >= 20);
}

#[test]
fn tournaments_sit_below_orderings() {
    let mut table = Table::new();
    for (q, r) in params(3) {
        for size in 1..=5 {
            if let (Some(lo), Some(hi)) = (table.exact(Kind::Tournament, q, r, size), table.exact(Kind::OrderedColoring, q, r, size)) {
                assert!(lo <= hi, "g({q},{r},{size}) = {lo} > f = {hi}");
            }
        }
    }
}

#[test]
fn deleting_coordinates_never_shrinks_sequences() {
    let mut table = Table::new();
    for (q, r) in params(4) {
        for t in 1..r {
            for n in 1..=3 {
                if let (Some(a), Some(b)) = (table.exact(Kind::IncreasingSequence, q, r, n), table.exact(Kind::IncreasingSequence, q - t, r - t, n)) {
                    assert!(a <= b, "F({q},{r},{n}) = {a} > F({},{},{n}) = {b}", q - t, r - t);
                }
            }
        }
    }
}

#[test]
fn merging_colors_never_lengthens_paths() {
    let mut table = Table::new();
    for (q, r) in params(4) {
        for size in 1..=6 {
            let Some(here) = table.exact(Kind::OrderedColoring, q, r, size) else { continue };
            for t in 1..r {
                if let Some(fewer) = table.exact(Kind::OrderedColoring, q - t, r - t, size) {
                    assert!(here >= fewer, "f({q},{r},{size}) < f({},{},{size})", q - t, r - t);
                }
            }
            for d in 2..=r {
                if q % d == 0 && r % d == 0 {
                    if let Some(coarse) = table.exact(Kind::OrderedColoring, q / d, r / d, size) {
                        assert!(here >= coarse, "f({q},{r},{size}) < f({},{},{size})", q / d, r / d);
                    }
                }
            }
        }
    }
}

#[test]
fn ordered_values_are_submultiplicative() {
    let mut table = Table::new();
    for (q, r) in params(3) {
        for a in 2..=3 {
            for b in a..=3 {
                let values = (
                    table.exact(Kind::OrderedColoring, q, r, a),
                    table.exact(Kind::OrderedColoring, q, r, b),
                    table.exact(Kind::OrderedColoring, q, r, a * b),
                );
                if let (Some(x), Some(y), Some(z)) = values {
                    assert!(x * y >= z, "f({q},{r},{a}) f({q},{r},{b}) < f({q},{r},{})", a * b);
                }
            }
        }
    }
}
