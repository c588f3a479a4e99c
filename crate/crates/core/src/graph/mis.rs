//! Exhaustive maximum independent set search.
//!
//! Branch and bound for maximum cliques in the complement, with a greedy
//! coloring bound (each color class is a clique of the original graph, so it
//! contributes at most one vertex to an independent set). Pruning is strict,
//! so every maximum set is reached exactly once.

use super::{Graph, GraphError};
use crate::bits::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisResult {
    pub size: usize,
    /// All maximum independent sets in canonical order, unless `truncated`.
    pub witnesses: Vec<VertexSet>,
    /// Number of maximum independent sets found.
    pub count: usize,
    pub truncated: bool,
    pub nodes: u64,
}

struct Search<'a> {
    /// Complement adjacency in search order.
    non_adj: Vec<VertexSet>,
    /// Adjacency in search order.
    adj: Vec<VertexSet>,
    order: &'a [usize],
    best: usize,
    count: usize,
    keep: usize,
    found: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, mut candidates: VertexSet) -> Result<(), GraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::BudgetExceeded(self.budget));
        }
        if candidates.is_empty() {
            self.record(current);
            return Ok(());
        }
        let colored = self.color(&candidates);
        for &(v, color) in colored.iter().rev() {
            if current.len() + color < self.best {
                return Ok(());
            }
            current.push(v);
            let next = candidates.intersection(&self.non_adj[v]);
            self.expand(current, next)?;
            current.pop();
            candidates.remove(v);
        }
        Ok(())
    }

    fn record(&mut self, current: &[usize]) {
        if current.len() > self.best {
            self.best = current.len();
            self.count = 0;
            self.found.clear();
        }
        if current.len() == self.best {
            self.count += 1;
            if self.found.len() <= self.keep {
                self.found.push(current.to_vec());
            }
        }
    }

    /// Greedy sequential coloring; returns vertices with nondecreasing colors.
    fn color(&self, candidates: &VertexSet) -> Vec<(usize, usize)> {
        let mut uncolored = candidates.clone();
        let mut out = Vec::with_capacity(candidates.len());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                // Members of one class must be pairwise adjacent in the graph.
                q = q.intersection(&self.adj[v]);
                out.push((v, color));
            }
        }
        out
    }
}

/// Exact maximum independent set size and, when there are at most `stop_at`
/// of them, every maximum independent set.
///
/// Vertices are searched in order of decreasing degree, ties broken by index.
pub fn max_independent_brute(
    g: &Graph,
    stop_at: Option<usize>,
    budget: Option<u64>,
) -> Result<MisResult, GraphError> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let non_adj: Vec<VertexSet> = order
        .iter()
        .map(|&v| {
            VertexSet::from_indices(
                n,
                (0..n).filter(|&u| u != v && !g.adjacent(u, v)).map(|u| position[u]),
            )
        })
        .collect();
    let adj: Vec<VertexSet> = order
        .iter()
        .map(|&v| VertexSet::from_indices(n, g.neighbors(v).iter().map(|u| position[u])))
        .collect();
    let mut search = Search {
        non_adj,
        adj,
        order: &order,
        best: 0,
        count: 0,
        keep: stop_at.unwrap_or(usize::MAX),
        found: Vec::new(),
        nodes: 0,
        budget: budget.unwrap_or(u64::MAX),
    };
    search.expand(&mut Vec::new(), VertexSet::full(n))?;
    let truncated = search.count > search.keep;
    let mut witnesses: Vec<VertexSet> = if truncated {
        Vec::new()
    } else {
        search
            .found
            .iter()
            .map(|members| VertexSet::from_indices(n, members.iter().map(|&p| search.order[p])))
            .collect()
    };
    witnesses.sort();
    Ok(MisResult {
        size: search.best,
        witnesses,
        count: search.count,
        truncated,
        nodes: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        // Kneser K(5,2): 2-subsets of 0..5, adjacent when disjoint.
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let labels = pairs.iter().map(|(a, b)| format!("{a}{b}")).collect();
        Graph::from_relation(labels, |i, j| {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            a != c && a != d && b != c && b != d
        })
    }

    #[test]
    fn five_cycle() {
        let r = max_independent_brute(&Graph::cycle(5), None, None).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(r.count, 5);
    }

    #[test]
    fn petersen_has_five_stars() {
        let g = petersen();
        let r = max_independent_brute(&g, None, None).unwrap();
        assert_eq!(r.size, 4);
        assert_eq!(r.witnesses.len(), 5);
        for w in &r.witnesses {
            assert!(super::super::is_independent(&g, w));
        }
        // Canonical order and distinctness.
        assert!(r.witnesses.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn truncation_and_budget() {
        let r = max_independent_brute(&Graph::cycle(5), Some(2), None).unwrap();
        assert!(r.truncated);
        assert!(r.witnesses.is_empty());
        assert_eq!((r.size, r.count), (2, 5));
        let err = max_independent_brute(&petersen(), None, Some(3)).unwrap_err();
        assert_eq!(err, GraphError::BudgetExceeded(3));
    }

    #[test]
    fn edgeless_and_complete() {
        let empty = Graph::unlabeled(4, []).unwrap();
        let r = max_independent_brute(&empty, None, None).unwrap();
        assert_eq!((r.size, r.count), (4, 1));
        let r = max_independent_brute(&Graph::complete(4), None, None).unwrap();
        assert_eq!((r.size, r.count), (1, 4));
    }
}
