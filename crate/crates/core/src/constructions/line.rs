//! Line graphs of complete graphs and their round-robin one-factorizations.

use super::{combinations, subset_label, ConstructionError};
use crate::graph::Graph;

/// `L(K_n)`: the 2-subsets of `{1..n}` in lexicographic order, adjacent when
/// they share a point.
pub fn build_line_graph_complete(n: usize) -> Result<Graph, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::DimensionError(format!("L(K_{n}) is empty")));
    }
    let pairs = combinations(n, 2);
    let labels = pairs.iter().map(|p| subset_label(p)).collect();
    Ok(Graph::from_relation(labels, |x, y| {
        let (a, b) = (&pairs[x], &pairs[y]);
        a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1]
    }))
}

/// A partition of the edges of `K_n` into `n - 1` perfect matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFactorization {
    pub n: usize,
    /// Colour (`1..=n-1`) of each 2-subset, indexed like the vertices of
    /// [`build_line_graph_complete`].
    pub colour: Vec<usize>,
}

impl OneFactorization {
    /// Pair indices of the matching with colour `c`.
    pub fn matching(&self, c: usize) -> Vec<usize> {
        (0..self.colour.len()).filter(|&x| self.colour[x] == c).collect()
    }

    pub fn matchings(&self) -> Vec<Vec<usize>> {
        (1..self.n).map(|c| self.matching(c)).collect()
    }
}

/// Circle method: point `n - 1` is fixed, and in round `r` it is matched to
/// `r` while `r - i` and `r + i` (mod `n - 1`) are matched for `i ≥ 1`.
/// Round `r` gets colour `r + 1`.
pub fn round_robin_one_factorization(n: usize) -> Result<OneFactorization, ConstructionError> {
    if n % 2 == 1 {
        return Err(ConstructionError::OddOrder(n));
    }
    if n == 0 {
        return Err(ConstructionError::DimensionError("K_0 has no edges".into()));
    }
    let m = n - 1;
    let pairs = combinations(n, 2);
    let index = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pairs.binary_search(&vec![a, b]).expect("pair")
    };
    let mut colour = vec![usize::MAX; pairs.len()];
    for r in 0..m {
        colour[index(r, m)] = r + 1;
        for i in 1..n / 2 {
            colour[index((r + i) % m, (r + m - i) % m)] = r + 1;
        }
    }
    let f = OneFactorization { n, colour };
    let valid = f.colour.iter().all(|&c| (1..=m).contains(&c))
        && f.matchings().iter().all(|mt| {
            let mut seen = vec![false; n];
            mt.len() == n / 2
                && mt.iter().all(|&x| {
                    pairs[x].iter().all(|&p| !std::mem::replace(&mut seen[p], true))
                })
        });
    if !valid {
        return Err(ConstructionError::ConstructionFailed("round robin is not a one-factorization".into()));
    }
    Ok(f)
}
