//! Kneser graphs `K(v, k)` and their star incidence matrices.

use num_traits::{One, Zero};

use super::{combinations, subset_label, ConstructionError};
use crate::exact_linalg::{ExactMatrix, Rational};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct KneserConstruction {
    pub subsets: Vec<Vec<usize>>,
    /// Disjoint subsets adjacent.
    pub graph: Graph,
    /// `points × subsets` inclusion matrix; row `p` is the star of `p`.
    pub star: ExactMatrix,
}

impl KneserConstruction {
    /// `subsets × points`: the transposed star matrix, whose columns span the
    /// characteristic vectors of the stars.
    pub fn m(&self) -> ExactMatrix {
        self.star.transpose()
    }
}

pub fn build_kneser(v: usize, k: usize) -> Result<KneserConstruction, ConstructionError> {
    if k == 0 || v < 2 * k {
        return Err(ConstructionError::DimensionError(format!(
            "Kneser graph needs 1 <= k and 2k <= v, got v = {v}, k = {k}"
        )));
    }
    if v > 128 {
        return Err(ConstructionError::DimensionError(format!("v = {v} exceeds 128")));
    }
    let subsets = combinations(v, k);
    let masks: Vec<u128> = subsets.iter().map(|s| s.iter().fold(0, |m, &p| m | 1 << p)).collect();
    let labels = subsets.iter().map(|s| subset_label(s)).collect();
    let graph = Graph::from_relation(labels, |x, y| masks[x] & masks[y] == 0);
    let star = ExactMatrix::from_fn(v, subsets.len(), |p, c| {
        if masks[c] >> p & 1 == 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    Ok(KneserConstruction { subsets, graph, star })
}
