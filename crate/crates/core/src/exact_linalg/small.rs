//! Gauss-Jordan elimination on checked machine-integer rows, for the many
//! small systems of the enumeration sweep. Rows are kept primitive (content
//! divided out) instead of fraction-free, so entries stay small and rows
//! already zero in the pivot column are left alone. Overflow returns `None`
//! and callers fall back to rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{PrimInt, Signed, ToPrimitive};

use super::ExactMatrix;
#[cfg(test)]
use super::Rational;

/// Integer reduced row-echelon form: row `i` divided by its pivot entry is
/// row `i` of the RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRref<T> {
    /// The nonzero rows, primitive, with positive pivot entries.
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
}

fn content<T: PrimInt + Signed + Integer>(row: &[T]) -> T {
    row.iter().fold(T::zero(), |acc, &x| acc.gcd(&x))
}

fn make_primitive<T: PrimInt + Signed + Integer>(row: &mut [T]) {
    let g = content(row);
    if g > T::one() {
        for x in row.iter_mut() {
            *x = *x / g;
        }
    }
}

/// Reduces `a` (all rows of length `cols`).
pub fn gauss_jordan<T: PrimInt + Signed + Integer>(mut a: Vec<Vec<T>>, cols: usize) -> Option<IntRref<T>> {
    let n = a.len();
    for row in &mut a {
        make_primitive(row);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = T::zero().checked_sub(x)?;
            }
        }
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row");
        let piv = pivot_row[c];
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let f = row[c];
            if f.is_zero() {
                continue;
            }
            let g = piv.gcd(&f);
            let (s, t) = (piv / g, f / g);
            for j in 0..cols {
                row[j] = s.checked_mul(&row[j])?.checked_sub(&t.checked_mul(&pivot_row[j])?)?;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Some(IntRref { rows: a, pivots })
}

impl<T: PrimInt + Signed + Integer> IntRref<T> {
    /// `lcm` of the pivot entries: every RREF entry times it is an integer.
    pub fn common_denominator(&self) -> Option<T> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .try_fold(T::one(), |acc, (row, &p)| (acc / acc.gcd(&row[p])).checked_mul(&row[p]))
    }

    /// Primitive integer kernel basis, one vector per free column in
    /// increasing order: `e_f` minus column `f` of the RREF, scaled.
    pub fn kernel(&self, cols: usize) -> Option<Vec<Vec<T>>> {
        let den = self.common_denominator()?;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![T::zero(); cols];
                v[f] = den;
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -(den / row[p]).checked_mul(&row[f])?;
                }
                make_primitive(&mut v);
                Some(v)
            })
            .collect()
    }

    /// The rational RREF.
    #[cfg(test)]
    pub fn to_exact(&self, cols: usize) -> ExactMatrix
    where
        T: ToPrimitive,
    {
        ExactMatrix::from_fn(self.rows.len(), cols, |i, j| {
            let p = self.rows[i][self.pivots[i]];
            Rational::new(big(self.rows[i][j]), big(p))
        })
    }
}

#[cfg(test)]
fn big<T: ToPrimitive>(x: T) -> BigInt {
    BigInt::from(x.to_i128().expect("machine integer"))
}

/// Divides out the gcd of the entries.
pub fn primitive<T: PrimInt + Signed + Integer>(mut v: Vec<T>) -> Vec<T> {
    make_primitive(&mut v);
    v
}

/// Integer matrix with the same column space as `m`: every column scaled by
/// the lcm of its denominators. `None` if an entry leaves `i64`.
pub fn integer_columns(m: &ExactMatrix) -> Option<Vec<Vec<i64>>> {
    let mut out = vec![vec![0i64; m.cols()]; m.rows()];
    for c in 0..m.cols() {
        let col = m.column(c);
        let den = col.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        for (r, x) in col.iter().enumerate() {
            out[r][c] = (x.numer() * (&den / x.denom())).to_i64()?;
        }
    }
    Some(out)
}
