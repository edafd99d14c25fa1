use num_rational::Ratio;

use super::{backward_edge_count, ColoredTournament, TournamentError};

/// An ordered graph on `0..n` whose vertex order is `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistentOrderedGraph {
    order: Vec<usize>,
    /// position of each vertex in `order`
    rank: Vec<usize>,
    adj: Vec<bool>,
}

impl ConsistentOrderedGraph {
    /// The graph whose pairs `v < w` (in `order`) are edges iff `v -> w` in `t`.
    pub fn from_tournament(t: &ColoredTournament, order: Vec<usize>) -> Result<Self, TournamentError> {
        super::validate_permutation(t.n(), &order)?;
        let n = t.n();
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let mut adj = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    let (first, second) = if rank[u] < rank[v] { (u, v) } else { (v, u) };
                    adj[u * n + v] = t.beats(first, second);
                }
            }
        }
        Ok(Self { order, rank, adj })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.rank[u] < self.rank[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n() + v]
    }

    pub fn non_neighbor_count(&self, v: usize) -> usize {
        (0..self.n()).filter(|&u| u != v && !self.adjacent(u, v)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    /// Re-derives every pair from `t` and reports the first inconsistent one.
    pub fn check_consistent(&self, t: &ColoredTournament) -> Result<(), (usize, usize)> {
        for (i, &v) in self.order.iter().enumerate() {
            for &w in &self.order[i + 1..] {
                if self.adjacent(v, w) != t.beats(v, w) {
                    return Err((v, w));
                }
            }
        }
        Ok(())
    }
}

/// Output of [`clean_degrees`]. Vertex `k` of `tournament` and `graph` is
/// vertex `kept[k]` of the input, and `graph` uses the index order.
#[derive(Debug, Clone)]
pub struct CleanedInstance {
    pub kept: Vec<usize>,
    pub deleted: Vec<usize>,
    pub tournament: ColoredTournament,
    pub graph: ConsistentOrderedGraph,
}

fn check_delta(delta: Ratio<i64>) -> Result<(), TournamentError> {
    if delta <= Ratio::from_integer(0) || delta >= Ratio::new(1, 2) {
        return Err(TournamentError::DeltaOutOfRange(delta.to_string()));
    }
    Ok(())
}

/// Deletes every vertex incident to more than `2 delta N` backward edges of
/// `order`, and returns the remaining subtournament with its consistent graph.
pub fn clean_degrees(
    t: &ColoredTournament,
    order: &[usize],
    delta: Ratio<i64>,
) -> Result<CleanedInstance, TournamentError> {
    check_delta(delta)?;
    let n = t.n();
    let backward = backward_edge_count(t, order)?;
    let (num, den) = (*delta.numer() as i128, *delta.denom() as i128);
    // backward <= delta^2 N^2
    if backward as i128 * den * den > num * num * (n as i128) * (n as i128) {
        return Err(TournamentError::NotClose {
            backward,
            allowed: (delta * delta * Ratio::from_integer(n as i64 * n as i64)).to_string(),
        });
    }

    let mut degree = vec![0usize; n];
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            if t.beats(b, a) {
                degree[a] += 1;
                degree[b] += 1;
            }
        }
    }
    // degree > 2 delta N
    let heavy = |v: usize| degree[v] as i128 * den > 2 * num * n as i128;
    let kept: Vec<usize> = order.iter().copied().filter(|&v| !heavy(v)).collect();
    let deleted: Vec<usize> = order.iter().copied().filter(|&v| heavy(v)).collect();
    let tournament = t.induced(&kept);
    let graph = ConsistentOrderedGraph::from_tournament(&tournament, (0..kept.len()).collect())?;
    Ok(CleanedInstance { kept, deleted, tournament, graph })
}

/// Independent recount of the guarantees of [`clean_degrees`]: enough
/// vertices survive, the graph agrees with the original tournament, and no
/// vertex has more than `4 delta |V(T')|` non-neighbors.
pub fn audit_clean_degrees(
    t: &ColoredTournament,
    delta: Ratio<i64>,
    out: &CleanedInstance,
) -> Result<(), String> {
    let n = t.n() as i128;
    let m = out.kept.len();
    let (num, den) = (*delta.numer() as i128, *delta.denom() as i128);
    // m >= (1 - delta) n
    if (m as i128) * den < (den - num) * n {
        return Err(format!("only {m} of {n} vertices kept"));
    }
    if out.graph.n() != m || out.tournament.n() != m {
        return Err("graph and tournament sizes disagree with the kept set".into());
    }
    for a in 0..m {
        for b in a + 1..m {
            let (u, v) = (out.kept[a], out.kept[b]);
            if out.tournament.beats(a, b) != t.beats(u, v) || out.tournament.color(a, b) != t.color(u, v) {
                return Err(format!("pair ({u},{v}) changed in the subtournament"));
            }
            if out.graph.precedes(a, b) && out.graph.adjacent(a, b) != t.beats(u, v) {
                return Err(format!("graph inconsistent on pair ({u},{v})"));
            }
        }
    }
    for a in 0..m {
        let missing = (0..m).filter(|&b| b != a && !t.beats(out.kept[a.min(b)], out.kept[a.max(b)])).count();
        if missing as i128 * den > 4 * num * m as i128 {
            return Err(format!("vertex {} has {missing} non-neighbors", out.kept[a]));
        }
    }
    Ok(())
}
