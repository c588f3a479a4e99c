//! Symmetric association schemes: axiom checks, eigenmatrix, primitive
//! idempotents, Seidel's identity and inner distributions.

mod eigen;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{BitMatrix, VertexSet};
use crate::exact_linalg::{ExactMatrix, LinalgError, Rational};
use crate::graph::{Graph, GraphError};

pub use eigen::{
    eigenmatrix, idempotents, inner_distribution, projection_idempotents, seidel_check, Eigenmatrix,
    IdempotentBasis, SeidelReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    /// Square 0/1 matrices of one common size.
    Shape,
    /// `A_0 = I`.
    Identity,
    /// `Σ A_i = J`, each pair in exactly one class.
    Partition,
    Symmetric,
    /// Constant row sums.
    Regular,
    /// `A_i A_j` lies in the span of the classes.
    Closure,
    Commutative,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Shape => "shape",
            Axiom::Identity => "identity",
            Axiom::Partition => "partition",
            Axiom::Symmetric => "symmetric",
            Axiom::Regular => "regular",
            Axiom::Closure => "closure",
            Axiom::Commutative => "commutative",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("axiom {axiom} violated at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },
    #[error(transparent)]
    Spectrum(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("inconsistent eigenstructure: {0}")]
    Eigenstructure(String),
    #[error("vertex set is empty")]
    EmptySet,
}

fn violation(axiom: Axiom, witness: Vec<usize>) -> SchemeError {
    SchemeError::AxiomViolation { axiom, witness }
}

/// A validated symmetric association scheme `A_0, ..., A_d`.
#[derive(Clone, Debug)]
pub struct AssociationScheme {
    classes: Vec<BitMatrix>,
    valencies: Vec<usize>,
    /// Row-major `n × n` table of class indices.
    relation: Vec<u8>,
    /// `p[i][j][k]` with `A_i A_j = Σ_k p[i][j][k] A_k`.
    intersection: Vec<Vec<Vec<i64>>>,
}

/// Validates the axioms on 0/1 rational matrices.
pub fn verify_axioms(classes: &[ExactMatrix]) -> Result<AssociationScheme, SchemeError> {
    let n = classes.first().map_or(0, ExactMatrix::rows);
    let mut bits = Vec::with_capacity(classes.len());
    for (i, a) in classes.iter().enumerate() {
        if a.rows() != n || a.cols() != n {
            return Err(violation(Axiom::Shape, vec![i]));
        }
        let mut b = BitMatrix::new(n);
        for x in 0..n {
            for y in 0..n {
                let e = a.get(x, y);
                if e.is_zero() {
                    continue;
                }
                if *e != Rational::from_integer(BigInt::from(1)) {
                    return Err(violation(Axiom::Shape, vec![i, x, y]));
                }
                b.set(x, y);
            }
        }
        bits.push(b);
    }
    AssociationScheme::from_classes(bits)
}

impl AssociationScheme {
    /// Validates the axioms on bitset classes, in the order: identity,
    /// partition, symmetry, regularity, closure, commutativity.
    pub fn from_classes(classes: Vec<BitMatrix>) -> Result<Self, SchemeError> {
        let Some(first) = classes.first() else {
            return Err(violation(Axiom::Shape, vec![]));
        };
        let n = first.size();
        if classes.len() > u8::MAX as usize {
            return Err(violation(Axiom::Shape, vec![classes.len()]));
        }
        if let Some(i) = classes.iter().position(|c| c.size() != n) {
            return Err(violation(Axiom::Shape, vec![i]));
        }
        if classes[0] != BitMatrix::identity(n) {
            return Err(violation(Axiom::Identity, vec![0]));
        }
        let mut relation = vec![u8::MAX; n * n];
        for (i, c) in classes.iter().enumerate() {
            for x in 0..n {
                for y in c.row(x).iter() {
                    let slot = &mut relation[x * n + y];
                    if *slot != u8::MAX {
                        return Err(violation(Axiom::Partition, vec![x, y]));
                    }
                    *slot = i as u8;
                }
            }
        }
        if let Some(pos) = relation.iter().position(|&r| r == u8::MAX) {
            return Err(violation(Axiom::Partition, vec![pos / n, pos % n]));
        }
        if let Some(i) = classes.iter().position(|c| !c.is_symmetric()) {
            return Err(violation(Axiom::Symmetric, vec![i]));
        }
        let mut valencies = Vec::with_capacity(classes.len());
        for (i, c) in classes.iter().enumerate() {
            let sums = c.row_sums();
            if let Some(x) = sums.iter().position(|&s| s != sums[0]) {
                return Err(violation(Axiom::Regular, vec![i, x]));
            }
            valencies.push(sums[0]);
        }
        let d1 = classes.len();
        // Representative pair for each class.
        let reps: Vec<(usize, usize)> = (0..d1)
            .map(|k| {
                let pos = relation.iter().position(|&r| r as usize == k).expect("class nonempty");
                (pos / n, pos % n)
            })
            .collect();
        if let Some(k) = (0..d1).find(|&k| classes[k].row_sums()[0] == 0) {
            return Err(violation(Axiom::Partition, vec![k]));
        }
        let mut intersection = vec![vec![vec![0i64; d1]; d1]; d1];
        for i in 0..d1 {
            for j in 0..d1 {
                // (A_i A_j)[x][y] = |N_i(x) ∩ N_j(y)| since A_j is symmetric.
                let coeff: Vec<i64> = reps
                    .iter()
                    .map(|&(x, y)| classes[i].row(x).intersection_len(classes[j].row(y)) as i64)
                    .collect();
                for x in 0..n {
                    for y in 0..n {
                        let prod = classes[i].row(x).intersection_len(classes[j].row(y)) as i64;
                        if prod != coeff[relation[x * n + y] as usize] {
                            return Err(violation(Axiom::Closure, vec![i, j, x, y]));
                        }
                        let swapped = classes[j].row(x).intersection_len(classes[i].row(y)) as i64;
                        if prod != swapped {
                            return Err(violation(Axiom::Commutative, vec![i, j, x, y]));
                        }
                    }
                }
                intersection[i][j] = coeff;
            }
        }
        Ok(Self {
            classes,
            valencies,
            relation,
            intersection,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.classes[0].size()
    }

    /// Number of classes `d` (excluding the identity).
    pub fn class_count(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    pub fn class(&self, i: usize) -> &BitMatrix {
        &self.classes[i]
    }

    pub fn class_matrix(&self, i: usize) -> ExactMatrix {
        let n = self.vertex_count();
        let one = Rational::from_integer(BigInt::from(1));
        ExactMatrix::from_fn(n, n, |x, y| {
            if self.classes[i].get(x, y) {
                one.clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Class index of the pair `(x, y)`.
    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.relation[x * self.vertex_count() + y] as usize
    }

    /// `p_{ij}^k`: coefficient of `A_k` in `A_i A_j`.
    pub fn intersection_number(&self, i: usize, j: usize, k: usize) -> i64 {
        self.intersection[i][j][k]
    }

    /// Class `i` (for `i ≥ 1`) as a graph with the given labels.
    pub fn class_graph(&self, i: usize, labels: Vec<String>) -> Result<Graph, GraphError> {
        Graph::from_adjacency(labels, self.classes[i].clone())
    }

    /// Pairs `{x, y}` (with `x < y`) in class `i`.
    pub fn class_pairs(&self, i: usize) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|x| self.classes[i].row(x).iter().filter(move |&y| y > x).map(move |y| (x, y)))
            .collect()
    }

    /// Number of members of `s` in relation `i` to `x`.
    pub fn class_degree_into(&self, x: usize, i: usize, s: &VertexSet) -> usize {
        self.classes[i].row(x).intersection_len(s)
    }
}
