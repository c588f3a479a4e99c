//! Constructors for every concrete object the certifier runs on.
//!
//! All constructors are deterministic and emit vertices in a fixed canonical
//! order: partitions by sorted cells, subspaces by their reduced echelon
//! bytes, subsets lexicographically.

mod gf;
mod golay;
mod kneser;
mod line;
mod p33;

use thiserror::Error;

use crate::schemes::SchemeError;

pub use gf::{build_q_kneser, build_w1k, enumerate_subspaces, gauss_binomial, q_integer, Subspace};
pub use golay::{extended_golay_lexicode, GolayCode};
pub use kneser::{build_kneser, KneserConstruction};
pub use line::{build_line_graph_complete, round_robin_one_factorization, OneFactorization};
pub use p33::{build_p33, build_p33_m, pair_index, P33Construction, Partition33, P33_CLASS_MEETS};
pub use golay::{build_witt, WittBlock, WittConstruction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("q = {0} is not a prime")]
    UnsupportedField(u32),
    #[error("dimension error: {0}")]
    DimensionError(String),
    #[error("one-factorization needs an even order, got {0}")]
    OddOrder(usize),
    #[error("construction failed validation: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Comma-separated 1-based label of a subset given by 0-based members.
pub fn subset_label(members: &[usize]) -> String {
    members
        .iter()
        .map(|m| (m + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_lex_order() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(9, 2).len(), 36);
    }

    #[test]
    fn labels_are_one_based() {
        assert_eq!(subset_label(&[0, 1]), "1,2");
    }
}
