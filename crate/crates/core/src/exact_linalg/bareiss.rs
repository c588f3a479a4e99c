//! Fraction-free (Bareiss) elimination on integer-scaled rows.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{integer_row, ExactMatrix, Rational};

/// Row echelon form by Bareiss elimination. Every intermediate entry is a
/// minor of the input, so all divisions are exact. Pivot row is the first
/// row with a nonzero entry in the current column.
fn bareiss_echelon(m: &ExactMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| integer_row(m.row(i))).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[col];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        // Rows above the pivot keep their scale; entries left of `col` in
        // lower rows are already zero.
        prev = pivot.clone();
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Rank over the rationals by fraction-free elimination.
pub fn bareiss_rank(m: &ExactMatrix) -> usize {
    bareiss_echelon(m).1.len()
}

/// Reduced row-echelon form (nonzero rows only) and pivot columns, computed
/// from the Bareiss echelon form by exact back-substitution.
pub fn bareiss_rref(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let (ech, pivots) = bareiss_echelon(m);
    let cols = m.cols();
    let mut rows: Vec<Vec<Rational>> = ech
        .into_iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let lead = row[pc].clone();
            row.into_iter()
                .map(|x| Rational::new(x, lead.clone()))
                .collect()
        })
        .collect();
    for k in (0..rows.len()).rev() {
        let pc = pivots[k];
        let (above, below) = rows.split_at_mut(k);
        let pivot_row = &below[0];
        for row in above.iter_mut() {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &f * &pivot_row[j];
                }
            }
        }
    }
    let r = rows.len();
    let entries = rows.into_iter().flatten().collect();
    (
        ExactMatrix::new(r, cols, entries).expect("echelon shape"),
        pivots,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{frac, rat};

    #[test]
    fn ranks_of_small_matrices() {
        assert_eq!(bareiss_rank(&ExactMatrix::identity(5)), 5);
        assert_eq!(bareiss_rank(&ExactMatrix::ones(4, 4)), 1);
        assert_eq!(bareiss_rank(&ExactMatrix::zeros(3, 2)), 0);
        let m = ExactMatrix::from_int_rows(&[vec![0, 2, 4], vec![0, 1, 2], vec![1, 0, 1]]).unwrap();
        assert_eq!(bareiss_rank(&m), 2);
    }

    #[test]
    fn rref_of_rank_two() {
        let m = ExactMatrix::from_int_rows(&[vec![2, 4, 6], vec![1, 3, 5], vec![3, 7, 11]]).unwrap();
        let (r, piv) = bareiss_rref(&m);
        assert_eq!(piv, vec![0, 1]);
        let expected =
            ExactMatrix::new(2, 3, vec![rat(1), rat(0), rat(-1), rat(0), rat(1), rat(2)]).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn rref_with_fractional_input() {
        let m = ExactMatrix::new(1, 2, vec![frac(1, 2), frac(1, 3)]).unwrap();
        let (r, piv) = bareiss_rref(&m);
        assert_eq!(piv, vec![0]);
        assert_eq!(r.get(0, 1), &frac(2, 3));
    }
}
