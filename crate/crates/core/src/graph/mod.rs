//! Loopless undirected graphs with bitset adjacency.

mod endo;
mod mis;
mod spectrum;

use std::collections::HashSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bits::{BitMatrix, VertexSet};
use crate::exact_linalg::{ExactMatrix, Rational};

pub use endo::{endomorphism_search, EndoMode, EndoReport};
pub use mis::{max_independent_brute, MisResult};
pub use spectrum::{integer_eigenvalues, integer_spectrum, SpectrumReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is not regular (degrees {min}..{max})")]
    NotRegular { min: usize, max: usize },
    #[error("spectrum is not integral: integer eigenvalues account for {found} of {expected} dimensions")]
    NonIntegralSpectrum { found: usize, expected: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("graph text, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: BitMatrix,
}

impl Graph {
    /// Validates symmetry, absence of loops and label distinctness.
    pub fn from_adjacency(labels: Vec<String>, adj: BitMatrix) -> Result<Self, GraphError> {
        let n = adj.size();
        if labels.len() != n {
            return Err(GraphError::Invalid(format!(
                "{} labels for {n} vertices",
                labels.len()
            )));
        }
        if let Some(i) = (0..n).find(|&i| adj.get(i, i)) {
            return Err(GraphError::Invalid(format!("loop at vertex {i}")));
        }
        if !adj.is_symmetric() {
            return Err(GraphError::Invalid("adjacency is not symmetric".into()));
        }
        let mut seen = HashSet::with_capacity(n);
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(GraphError::Invalid(format!("duplicate label {dup:?}")));
        }
        Ok(Self { labels, adj })
    }

    pub fn from_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut adj = BitMatrix::new(n);
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(GraphError::Invalid(format!("edge ({i},{j}) out of range {n}")));
            }
            if i == j {
                return Err(GraphError::Invalid(format!("loop at vertex {i}")));
            }
            adj.set(i, j);
            adj.set(j, i);
        }
        Self::from_adjacency(labels, adj)
    }

    /// Graph on `labels` where `i ~ j` iff `related(i, j)`; the relation is
    /// evaluated once per unordered pair.
    pub fn from_relation(labels: Vec<String>, mut related: impl FnMut(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut adj = BitMatrix::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if related(i, j) {
                    adj.set(i, j);
                    adj.set(j, i);
                }
            }
        }
        Self::from_adjacency(labels, adj).expect("relation graph is simple")
    }

    /// Graph with vertex labels `0..n`.
    pub fn unlabeled(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::from_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn complete(n: usize) -> Self {
        Self::from_relation((0..n).map(|i| i.to_string()).collect(), |_, _| true)
    }

    pub fn cycle(n: usize) -> Self {
        Self::unlabeled(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        self.adj.row(v)
    }

    pub fn adjacency_bits(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row(v).len()
    }

    /// Common valency, or `NotRegular`.
    pub fn valency(&self) -> Result<usize, GraphError> {
        let degrees = self.adj.row_sums();
        let min = degrees.iter().copied().min().unwrap_or(0);
        let max = degrees.iter().copied().max().unwrap_or(0);
        if min != max {
            return Err(GraphError::NotRegular { min, max });
        }
        Ok(min)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.row_sums().iter().sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |i| {
            self.adj.row(i).iter().filter(move |&j| j > i).map(move |j| (i, j))
        })
    }

    pub fn adjacency_matrix(&self) -> ExactMatrix {
        let n = self.vertex_count();
        ExactMatrix::from_fn(n, n, |i, j| {
            if self.adjacent(i, j) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Subgraph induced on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        Graph::from_relation(labels, |i, j| self.adjacent(vertices[i], vertices[j]))
    }

    pub fn vertex_set(&self, members: impl IntoIterator<Item = usize>) -> VertexSet {
        VertexSet::from_indices(self.vertex_count(), members)
    }

    pub fn set_labels(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// Line-oriented text: vertex count, `i j` edges, then labels after `#labels`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count());
        for (i, j) in self.edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
        out.push_str("#labels\n");
        for l in &self.labels {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, l.trim()));
        let (first_line, first) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or(GraphError::Parse {
                line: 1,
                msg: "empty input".into(),
            })?;
        let n: usize = first.parse().map_err(|e| GraphError::Parse {
            line: first_line,
            msg: format!("bad vertex count {first:?}: {e}"),
        })?;
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        let mut in_labels = false;
        for (ln, line) in lines {
            if in_labels {
                if !line.is_empty() {
                    labels.push(line.to_string());
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            if line == "#labels" {
                in_labels = true;
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|e| GraphError::Parse {
                    line: ln,
                    msg: format!("bad vertex {s:?}: {e}"),
                })
            };
            if parts.len() != 2 {
                return Err(GraphError::Parse {
                    line: ln,
                    msg: "expected \"i j\"".into(),
                });
            }
            let (i, j) = (parse(parts[0])?, parse(parts[1])?);
            if i >= j {
                return Err(GraphError::Parse {
                    line: ln,
                    msg: format!("edge ({i},{j}) must satisfy i < j"),
                });
            }
            edges.push((i, j));
        }
        if !in_labels {
            labels = (0..n).map(|i| i.to_string()).collect();
        }
        if labels.len() != n {
            return Err(GraphError::Parse {
                line: first_line,
                msg: format!("{} labels for {n} vertices", labels.len()),
            });
        }
        Self::from_edges(labels, edges)
    }
}

/// No two members of `s` are adjacent.
pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|v| g.neighbors(v).is_disjoint(s))
}

/// Every edge of `g` maps to an edge of `h` under `map`.
pub fn check_homomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    map.len() == g.vertex_count()
        && map.iter().all(|&x| x < h.vertex_count())
        && g.edges().all(|(u, v)| h.adjacent(map[u], map[v]))
}

/// 0/1 rational vector of a vertex set.
pub fn characteristic_vector(s: &VertexSet) -> Vec<Rational> {
    (0..s.capacity())
        .map(|i| if s.contains(i) { Rational::one() } else { Rational::zero() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::unlabeled(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn independence_basics() {
        let g = petersen();
        assert!(is_independent(&g, &VertexSet::new(10)));
        assert!(!is_independent(&g, &g.vertex_set([0, 1])));
        assert!(is_independent(&g, &g.vertex_set([0, 2])));
    }

    #[test]
    fn homomorphism_basics() {
        let g = petersen();
        let id: Vec<usize> = (0..10).collect();
        assert!(check_homomorphism(&g, &g, &id));
        assert!(!check_homomorphism(&g, &g, &[0; 10]));
        assert!(!check_homomorphism(&g, &g, &[0; 3]));
    }

    #[test]
    fn invalid_graphs_are_rejected() {
        assert!(Graph::unlabeled(3, [(0, 0)]).is_err());
        assert!(Graph::unlabeled(3, [(0, 5)]).is_err());
        assert!(Graph::from_edges(vec!["a".into(), "a".into()], []).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = petersen();
        let text = g.to_text();
        assert!(text.starts_with("10\n0 1\n"));
        assert_eq!(Graph::from_text(&text).unwrap(), g);
        let bare = Graph::from_text("3\n0 1\n1 2\n").unwrap();
        assert_eq!(bare.edge_count(), 2);
        assert!(Graph::from_text("3\n1 0\n").is_err());
        assert!(Graph::from_text("3\n0 1\n#labels\na\nb\n").is_err());
    }

    #[test]
    fn regularity() {
        assert_eq!(petersen().valency(), Ok(3));
        let path = Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.valency(), Err(GraphError::NotRegular { min: 1, max: 2 }));
    }
}
