//! Certified reduced row-echelon form and the operations derived from it.
//!
//! The RREF is computed modulo a sequence of word-size primes, lifted to the
//! rationals by Chinese remaindering and rational reconstruction, and then
//! certified: with `r` the rank modulo a prime and `K` the reconstructed
//! kernel basis, `A·K = 0` over the integers proves `rank(A) ≤ cols - (cols - r)`,
//! and `rank(A) ≥ r` holds for any prime. The row space of `A` is then the
//! annihilator of `K`, which pins down the RREF uniquely. When no certificate
//! is found within the prime budget, Bareiss elimination takes over.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::bareiss::bareiss_rref;
use super::modular::{crt_step, primes, residue, rational_reconstruct, rref_mod, ModRref};
use super::{common_denominator, integer_row, ExactMatrix, LinalgError, Rational};

/// Number of primes tried before falling back to Bareiss elimination.
const MAX_PRIMES: usize = 48;

/// Reduced row-echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.matrix.cols()).filter(|&j| !is_pivot[j]).collect()
    }

    /// Canonical kernel basis: one column per free variable (in increasing
    /// order), with that variable set to 1, the other free variables 0, and
    /// the pivot variables solved.
    pub fn kernel(&self) -> ExactMatrix {
        let free = self.free_columns();
        let n = self.matrix.cols();
        let mut k = ExactMatrix::zeros(n, free.len());
        for (c, &f) in free.iter().enumerate() {
            k.set(f, c, Rational::one());
            for (i, &p) in self.pivots.iter().enumerate() {
                let v = self.matrix.get(i, f);
                if !v.is_zero() {
                    k.set(p, c, -v);
                }
            }
        }
        k
    }
}

struct IntRows {
    rows: usize,
    cols: usize,
    big: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

impl IntRows {
    fn new(m: &ExactMatrix) -> Self {
        let big: Vec<BigInt> = (0..m.rows()).flat_map(|i| integer_row(m.row(i))).collect();
        let small = big.iter().map(ToPrimitive::to_i64).collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            big,
            small,
        }
    }

    fn residues(&self, p: u64) -> Vec<u64> {
        match &self.small {
            Some(s) => s.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect(),
            None => self.big.iter().map(|x| residue(x, p)).collect(),
        }
    }

    /// Checks `A · v = 0` for an integer vector given by its support.
    fn annihilates(&self, support: &[(usize, BigInt)]) -> bool {
        let small_support: Option<Vec<(usize, i64)>> = support
            .iter()
            .map(|(j, x)| x.to_i64().map(|v| (*j, v)))
            .collect();
        if let (Some(a), Some(s)) = (&self.small, &small_support) {
            let fast = (0..self.rows).try_fold(true, |ok, i| {
                let row = &a[i * self.cols..(i + 1) * self.cols];
                let mut acc: i128 = 0;
                for &(j, v) in s {
                    acc = acc.checked_add(row[j] as i128 * v as i128)?;
                }
                Some(ok && acc == 0)
            });
            if let Some(result) = fast {
                return result;
            }
        }
        (0..self.rows).all(|i| {
            let row = &self.big[i * self.cols..(i + 1) * self.cols];
            let acc: BigInt = support.iter().map(|(j, v)| &row[*j] * v).sum();
            acc.is_zero()
        })
    }
}

/// Pattern ordering: higher rank wins, then lexicographically smaller pivots.
/// The rational pivot set is the greedy (lexicographically least) column
/// basis, and any prime can only lose rank or push pivots right.
fn better_pattern(candidate: &[usize], current: &[usize]) -> bool {
    candidate.len() > current.len() || (candidate.len() == current.len() && candidate < current)
}

/// Exact reduced row-echelon form of `m`.
pub fn rref(m: &ExactMatrix) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return Rref {
            matrix: ExactMatrix::zeros(0, cols),
            pivots: Vec::new(),
        };
    }
    let a = IntRows::new(m);
    let mut pattern: Option<Vec<usize>> = None;
    // Non-pivot entries R[i][f] (f free) accumulated by CRT, row-major over
    // (pivot row, free column).
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut free: Vec<usize> = Vec::new();

    for &p in primes().iter().take(MAX_PRIMES) {
        let red: ModRref = rref_mod(a.residues(p), rows, cols, p);
        match &pattern {
            Some(cur) if &red.pivots == cur => {
                for (slot, (i, f)) in acc.iter_mut().zip(index_pairs(red.pivots.len(), &free)) {
                    *slot = crt_step(slot, &modulus, red.entry(i, f), p);
                }
                modulus *= BigInt::from(p);
            }
            Some(cur) if !better_pattern(&red.pivots, cur) => continue,
            _ => {
                free = complement(&red.pivots, cols);
                acc = index_pairs(red.pivots.len(), &free)
                    .map(|(i, f)| BigInt::from(red.entry(i, f)))
                    .collect();
                modulus = BigInt::from(p);
                pattern = Some(red.pivots.clone());
            }
        }
        let pivots = pattern.as_ref().expect("pattern set");
        if free.is_empty() {
            // Full column rank modulo p implies full column rank.
            return identity_rref(pivots.len(), cols);
        }
        let Some(values) = acc
            .iter()
            .map(|x| rational_reconstruct(x, &modulus))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let candidate = assemble(pivots, &free, &values, cols);
        if kernel_certified(&a, &candidate) {
            return candidate;
        }
    }
    let (matrix, pivots) = bareiss_rref(m);
    Rref { matrix, pivots }
}

fn index_pairs(rank: usize, free: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..rank).flat_map(move |i| free.iter().map(move |&f| (i, f)))
}

fn complement(pivots: &[usize], cols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols).filter(|&j| !is_pivot[j]).collect()
}

fn identity_rref(rank: usize, cols: usize) -> Rref {
    debug_assert_eq!(rank, cols);
    Rref {
        matrix: ExactMatrix::identity(cols),
        pivots: (0..cols).collect(),
    }
}

fn assemble(pivots: &[usize], free: &[usize], values: &[Rational], cols: usize) -> Rref {
    let r = pivots.len();
    let mut mat = ExactMatrix::zeros(r, cols);
    for (i, &p) in pivots.iter().enumerate() {
        mat.set(i, p, Rational::one());
    }
    for ((i, f), v) in index_pairs(r, free).zip(values) {
        mat.set(i, f, v.clone());
    }
    Rref {
        matrix: mat,
        pivots: pivots.to_vec(),
    }
}

fn kernel_certified(a: &IntRows, candidate: &Rref) -> bool {
    // RREF shape: entries left of a pivot and in other pivot columns vanish.
    for (i, &p) in candidate.pivots.iter().enumerate() {
        if (0..p).any(|j| !candidate.matrix.get(i, j).is_zero()) {
            return false;
        }
    }
    // One kernel vector per free column f: e_f minus the f-th column of R.
    candidate.free_columns().into_iter().all(|f| {
        let mut entries: Vec<(usize, Rational)> = vec![(f, Rational::one())];
        for (i, &p) in candidate.pivots.iter().enumerate() {
            let v = candidate.matrix.get(i, f);
            if !v.is_zero() {
                entries.push((p, -v));
            }
        }
        let values: Vec<Rational> = entries.iter().map(|e| e.1.clone()).collect();
        let den = common_denominator(&values);
        let support: Vec<(usize, BigInt)> = entries
            .iter()
            .map(|(j, x)| (*j, x.numer() * (&den / x.denom())))
            .collect();
        a.annihilates(&support)
    })
}

/// Rank over the rationals.
pub fn rank(m: &ExactMatrix) -> usize {
    rref(m).rank()
}

/// Canonical null-space basis read off the RREF: `cols(m) - rank(m)` columns.
pub fn nullspace_basis(m: &ExactMatrix) -> ExactMatrix {
    if m.rows() == 0 {
        return ExactMatrix::identity(m.cols());
    }
    rref(m).kernel()
}

/// Transpose of the RREF of `mᵀ` with zero columns dropped.
pub fn reduced_column_echelon(m: &ExactMatrix) -> ExactMatrix {
    rref(&m.transpose()).matrix.transpose()
}

/// `cols(m) - rank(m - lambda·I)`.
pub fn integer_nullity(m: &ExactMatrix, lambda: i64) -> Result<usize, LinalgError> {
    let shifted = m.shift_diagonal(&Rational::from_integer(BigInt::from(lambda)))?;
    Ok(m.cols() - rank(&shifted))
}

/// Solves `m·h = z`; returns the solution with all free variables zero, or
/// `None` when `z` is outside the column space.
pub fn colspace_solve(m: &ExactMatrix, z: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
    if z.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            z.len(),
            m.rows()
        )));
    }
    let aug = m.hstack(&ExactMatrix::column_vector(z.to_vec()))?;
    let r = rref(&aug);
    let n = m.cols();
    if r.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut h = vec![Rational::zero(); n];
    for (i, &p) in r.pivots.iter().enumerate() {
        h[p] = r.matrix.get(i, n).clone();
    }
    Ok(Some(h))
}

pub fn inverse(m: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let r = rref(&m.hstack(&ExactMatrix::identity(n))?);
    if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    Ok(r.matrix.select_cols(&(n..2 * n).collect::<Vec<_>>()))
}

/// Orthogonal projection `U (UᵀU)⁻¹ Uᵀ` onto the column space of `u`, whose
/// columns must be linearly independent.
pub fn orthogonal_projection(u: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    let ut = u.transpose();
    let gram_inv = inverse(&ut.mul(u)?)?;
    u.mul(&gram_inv)?.mul(&ut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{bareiss_rank, frac, rat};

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ExactMatrix::identity(5)), 5);
        assert_eq!(rank(&ExactMatrix::ones(4, 4)), 1);
        assert_eq!(rank(&ExactMatrix::zeros(3, 3)), 0);
    }

    #[test]
    fn nullspace_examples() {
        let k = nullspace_basis(&ExactMatrix::identity(3));
        assert_eq!((k.rows(), k.cols()), (3, 0));
        let k = nullspace_basis(&ExactMatrix::from_int_rows(&[vec![1, 1]]).unwrap());
        assert_eq!(k, ExactMatrix::new(2, 1, vec![rat(-1), rat(1)]).unwrap());
    }

    #[test]
    fn column_echelon_examples() {
        assert_eq!(reduced_column_echelon(&ExactMatrix::identity(4)), ExactMatrix::identity(4));
        let c = reduced_column_echelon(&ExactMatrix::zeros(3, 3));
        assert_eq!((c.rows(), c.cols()), (3, 0));
    }

    #[test]
    fn nullity_examples() {
        let i3 = ExactMatrix::identity(3);
        assert_eq!(integer_nullity(&i3, 1).unwrap(), 3);
        assert_eq!(integer_nullity(&i3, 0).unwrap(), 0);
        assert!(integer_nullity(&ExactMatrix::zeros(2, 3), 0).is_err());
    }

    #[test]
    fn multiples_of_the_first_prime_do_not_fool_the_rank() {
        // Every entry is divisible by the first modular prime.
        let p = primes()[0] as i64;
        let m = ExactMatrix::from_int_rows(&[vec![p, 0], vec![0, p]]).unwrap();
        assert_eq!(rank(&m), 2);
        let m = ExactMatrix::from_int_rows(&[vec![p, 1], vec![0, 0]]).unwrap();
        let r = rref(&m);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix.get(0, 1), &frac(1, p));
    }

    #[test]
    fn large_entries_fall_back_or_reconstruct() {
        // Huge coprime entries force many primes or the Bareiss fallback.
        let big = rat(10).pow(200) + rat(7);
        let m = ExactMatrix::new(2, 3, vec![big.clone(), rat(1), rat(3), rat(2), rat(5), big]).unwrap();
        let r = rref(&m);
        assert_eq!(r.rank(), 2);
        assert_eq!(r.rank(), bareiss_rank(&m));
        let k = r.kernel();
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn solve_and_membership() {
        let m = ExactMatrix::from_int_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let h = colspace_solve(&m, &[rat(2), rat(3), rat(5)]).unwrap().unwrap();
        assert_eq!(h, vec![rat(2), rat(3)]);
        assert!(colspace_solve(&m, &[rat(1), rat(0), rat(0)]).unwrap().is_none());
        assert!(colspace_solve(&m, &[rat(1)]).is_err());
    }

    #[test]
    fn inverse_and_projection() {
        let m = ExactMatrix::from_int_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(2));
        assert_eq!(inverse(&ExactMatrix::ones(2, 2)), Err(LinalgError::Singular));

        let ones = ExactMatrix::ones(3, 1);
        let p = orthogonal_projection(&ones).unwrap();
        assert_eq!(p, ExactMatrix::ones(3, 3).scale(&frac(1, 3)));
    }
}
