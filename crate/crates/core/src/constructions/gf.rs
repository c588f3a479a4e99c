//! Subspaces of `GF(q)^v` for prime `q`, and the q-Kneser graphs.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{combinations, ConstructionError};
use crate::exact_linalg::modular::is_prime_small;
use crate::exact_linalg::{ExactMatrix, Rational};
use crate::graph::Graph;

/// Gaussian binomial `[n k]_q`.
pub fn gauss_binomial(q: u64, n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// `[n]_q = (q^n - 1) / (q - 1)`.
pub fn q_integer(q: u64, n: u64) -> BigInt {
    gauss_binomial(q, n, 1)
}

/// A subspace stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    q: u32,
    ambient: usize,
    /// `dim × ambient` row-major basis in reduced row echelon form.
    basis: Vec<u32>,
}

/// Reduces `rows` (each of length `cols`) in place mod `q`; returns the rank,
/// leaving the nonzero rows first.
fn rref_mod_q(rows: &mut [Vec<u32>], cols: usize, q: u32) -> usize {
    let q64 = u64::from(q);
    let inv = |a: u32| -> u32 {
        let mut r = 1u64;
        let (mut b, mut e) = (u64::from(a), q64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % q64;
            }
            b = b * b % q64;
            e >>= 1;
        }
        r as u32
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let s = u64::from(inv(rows[rank][c]));
        for x in rows[rank].iter_mut() {
            *x = (u64::from(*x) * s % q64) as u32;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = u64::from(row[c]);
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = ((u64::from(*x) + (q64 - f) * u64::from(y)) % q64) as u32;
            }
        }
        rank += 1;
    }
    rank
}

impl Subspace {
    /// Span of the given vectors.
    pub fn span(q: u32, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self, ConstructionError> {
        if !is_prime_small(u64::from(q)) {
            return Err(ConstructionError::UnsupportedField(q));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(ConstructionError::DimensionError(format!(
                "vector of length {} in GF({q})^{ambient}",
                v.len()
            )));
        }
        let mut rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.iter().map(|x| x % q).collect()).collect();
        let rank = rref_mod_q(&mut rows, ambient, q);
        Ok(Self {
            q,
            ambient,
            basis: rows[..rank].concat(),
        })
    }

    pub fn field_order(&self) -> u32 {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len() / self.ambient.max(1)
    }

    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        self.basis.chunks(self.ambient).map(<[u32]>::to_vec).collect()
    }

    /// `dim(self ∩ other)`.
    pub fn intersection_dim(&self, other: &Self) -> usize {
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        let sum = rref_mod_q(&mut rows, self.ambient, self.q);
        self.dim() + other.dim() - sum
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.intersection_dim(other) == other.dim()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.q < 10 { "" } else { "." };
        let rows: Vec<String> = self
            .basis
            .chunks(self.ambient)
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "<{}>", rows.join(","))
    }
}

/// All `k`-dimensional subspaces of `GF(q)^v`, enumerated by pivot pattern
/// and free entries, sorted by basis.
pub fn enumerate_subspaces(q: u32, v: usize, k: usize) -> Result<Vec<Subspace>, ConstructionError> {
    if !is_prime_small(u64::from(q)) {
        return Err(ConstructionError::UnsupportedField(q));
    }
    if k > v {
        return Err(ConstructionError::DimensionError(format!("k = {k} exceeds v = {v}")));
    }
    let mut out = Vec::new();
    for pivots in combinations(v, k) {
        // Free slots: right of the row's pivot, outside pivot columns.
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..v).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u32; slots.len()];
        loop {
            let mut basis = vec![0u32; k * v];
            for (r, &p) in pivots.iter().enumerate() {
                basis[r * v + p] = 1;
            }
            for (&(r, c), &d) in slots.iter().zip(&digits) {
                basis[r * v + c] = d;
            }
            out.push(Subspace { q, ambient: v, basis });
            // Odometer increment.
            let Some(i) = digits.iter().rposition(|&d| d + 1 < q) else {
                break;
            };
            digits[i] += 1;
            digits[i + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    out.sort_unstable();
    let expected = gauss_binomial(u64::from(q), v as u64, k as u64);
    if BigInt::from(out.len()) != expected {
        return Err(ConstructionError::ConstructionFailed(format!(
            "{} subspaces, expected {expected}",
            out.len()
        )));
    }
    Ok(out)
}

/// The q-Kneser graph `qK_{v:k}`: `k`-subspaces, adjacent when they meet
/// trivially.
pub fn build_q_kneser(q: u32, v: usize, k: usize) -> Result<(Graph, Vec<Subspace>), ConstructionError> {
    if k == 0 || v < 2 * k {
        return Err(ConstructionError::DimensionError(format!(
            "q-Kneser graph needs 1 <= k and 2k <= v, got v = {v}, k = {k}"
        )));
    }
    let spaces = enumerate_subspaces(q, v, k)?;
    let labels = spaces.iter().map(ToString::to_string).collect();
    let g = Graph::from_relation(labels, |x, y| spaces[x].intersection_dim(&spaces[y]) == 0);
    Ok((g, spaces))
}

/// Incidence of 1-spaces (rows) against `k`-spaces (columns).
pub fn build_w1k(q: u32, v: usize, k: usize) -> Result<ExactMatrix, ConstructionError> {
    let points = enumerate_subspaces(q, v, 1)?;
    let blocks = enumerate_subspaces(q, v, k)?;
    Ok(ExactMatrix::from_fn(points.len(), blocks.len(), |r, c| {
        if blocks[c].contains(&points[r]) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}
