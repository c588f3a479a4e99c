//! Dense matrices over the rationals with exact elimination.
//!
//! Every entry is an arbitrary-precision [`Rational`]. Products run on a
//! common-denominator integer form (`i128` when it fits, `BigInt` otherwise).
//! Echelon forms are produced by a modular engine whose answers are certified
//! over the rationals before they are returned; fraction-free Bareiss
//! elimination is the fallback and the reference implementation.

mod bareiss;
mod echelon;
pub(crate) mod modular;
pub(crate) mod small;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use bareiss::{bareiss_rank, bareiss_rref};
pub use echelon::{
    colspace_solve, integer_nullity, inverse, nullspace_basis, orthogonal_projection, rank,
    reduced_column_echelon, rref, Rref,
};

/// Arbitrary-precision rational. Always kept in lowest terms with a positive
/// denominator; zero is `0/1`.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`, reduced.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry count {len} does not match a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix text, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::one(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self, LinalgError> {
        Self::new(rows, cols, data.iter().map(|&x| rat(x)).collect())
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_int_rows(data: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch(format!(
                "ragged rows: expected {cols} entries, found {}",
                bad.len()
            )));
        }
        let flat: Vec<i64> = data.iter().flatten().copied().collect();
        Self::from_i64(rows, cols, &flat)
    }

    /// Column vector.
    pub fn column_vector(values: Vec<Rational>) -> Self {
        let rows = values.len();
        Self {
            rows,
            cols: 1,
            entries: values,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(LinalgError::DimensionMismatch(format!(
                "column of length {} in a matrix with {rows} rows",
                bad.len()
            )));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other, "add")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { entries, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other, "sub")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { entries, ..*self })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let entries = self.entries.iter().map(|a| a * factor).collect();
        Self { entries, ..*self }
    }

    /// `self - lambda * I`.
    pub fn shift_diagonal(&self, lambda: &Rational) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) - lambda;
            out.set(i, i, v);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let a = ScaledInt::from_entries(&self.entries);
        let b = ScaledInt::from_entries(&other.entries);
        let den = &a.den * &b.den;
        let nums = match (&a.small, &b.small) {
            (Some(sa), Some(sb)) => mul_i128(sa, sb, self.rows, self.cols, other.cols)
                .unwrap_or_else(|| mul_big(&a.big, &b.big, self.rows, self.cols, other.cols)),
            _ => mul_big(&a.big, &b.big, self.rows, self.cols, other.cols),
        };
        let entries = nums
            .into_iter()
            .map(|n| Rational::new(n, den.clone()))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "mul_vec: {} columns vs vector of length {}",
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "hstack: {} rows vs {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        Ok(Self::from_fn(self.rows, cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vstack: {} cols vs {} cols",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Indices of columns that are not identically zero.
    pub fn nonzero_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !self.get(i, j).is_zero()))
            .collect()
    }

    /// Serializes as `rows,cols` followed by one comma-separated line per row.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{},{}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, LinalgError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(LinalgError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let dims: Vec<&str> = header.split(',').map(str::trim).collect();
        let parse_dim = |s: &str| {
            s.parse::<usize>().map_err(|e| LinalgError::Parse {
                line: hline,
                msg: format!("bad dimension {s:?}: {e}"),
            })
        };
        if dims.len() != 2 {
            return Err(LinalgError::Parse {
                line: hline,
                msg: "header must be \"rows,cols\"".into(),
            });
        }
        let (rows, cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        let mut entries = Vec::with_capacity(rows * cols);
        let mut seen_rows = 0;
        for (n, line) in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != cols {
                return Err(LinalgError::Parse {
                    line: n,
                    msg: format!("expected {cols} entries, found {}", fields.len()),
                });
            }
            for f in fields {
                let value = Rational::from_str(f).map_err(|e| LinalgError::Parse {
                    line: n,
                    msg: format!("bad entry {f:?}: {e}"),
                })?;
                entries.push(value);
            }
            seen_rows += 1;
        }
        if seen_rows != rows {
            return Err(LinalgError::Parse {
                line: hline,
                msg: format!("header declares {rows} rows, found {seen_rows}"),
            });
        }
        Self::new(rows, cols, entries)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(12) {
            let line: Vec<String> = self.row(i).iter().take(12).map(ToString::to_string).collect();
            writeln!(f, "  {}{}", line.join(" "), if self.cols > 12 { " ..." } else { "" })?;
        }
        if self.rows > 12 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}

/// Entries brought to a common denominator: `entry = numerator / den`.
pub(crate) struct ScaledInt {
    pub den: BigInt,
    pub big: Vec<BigInt>,
    pub small: Option<Vec<i64>>,
}

impl ScaledInt {
    pub fn from_entries(entries: &[Rational]) -> Self {
        let den = entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let big: Vec<BigInt> = entries
            .iter()
            .map(|e| e.numer() * (&den / e.denom()))
            .collect();
        let small = big.iter().map(ToPrimitive::to_i64).collect();
        Self { den, big, small }
    }
}

fn mul_i128(a: &[i64], b: &[i64], n: usize, inner: usize, m: usize) -> Option<Vec<BigInt>> {
    let mut out = Vec::with_capacity(n * m);
    let mut acc = vec![0i128; m];
    for i in 0..n {
        acc.iter_mut().for_each(|x| *x = 0);
        for k in 0..inner {
            let aik = a[i * inner + k] as i128;
            if aik == 0 {
                continue;
            }
            let brow = &b[k * m..(k + 1) * m];
            for (slot, &bkj) in acc.iter_mut().zip(brow) {
                if bkj != 0 {
                    *slot = slot.checked_add(aik * bkj as i128)?;
                }
            }
        }
        out.extend(acc.iter().map(|&x| BigInt::from(x)));
    }
    Some(out)
}

fn mul_big(a: &[BigInt], b: &[BigInt], n: usize, inner: usize, m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * m];
    for i in 0..n {
        let row = &mut out[i * m..(i + 1) * m];
        for k in 0..inner {
            let aik = &a[i * inner + k];
            if aik.is_zero() {
                continue;
            }
            for (slot, bkj) in row.iter_mut().zip(&b[k * m..(k + 1) * m]) {
                if !bkj.is_zero() {
                    *slot += aik * bkj;
                }
            }
        }
    }
    out
}

/// Least common multiple of the denominators in `values`.
pub(crate) fn common_denominator(values: &[Rational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
}

/// Scales a rational vector to a primitive-free integer vector with the same
/// direction (multiplies by the common denominator only).
pub(crate) fn integer_row(values: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(values);
    values.iter().map(|e| e.numer() * (&den / e.denom())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let x = frac(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(frac(0, 7), Rational::zero());
        assert_eq!(frac(0, 7).denom(), &BigInt::one());
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            ExactMatrix::new(2, 2, vec![rat(1)]),
            Err(LinalgError::Shape { .. })
        ));
        let a = ExactMatrix::identity(2);
        let b = ExactMatrix::identity(3);
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
        assert!(ExactMatrix::zeros(2, 3).shift_diagonal(&rat(1)).is_err());
    }

    #[test]
    fn product_small_and_big_paths_agree() {
        let a = ExactMatrix::from_int_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let b = ExactMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c, ExactMatrix::from_int_rows(&[vec![2, 1], vec![4, 3]]).unwrap());

        // Force the BigInt path with entries near i64::MAX.
        let big = rat(i64::MAX);
        let m = ExactMatrix::new(1, 2, vec![big.clone(), big.clone()]).unwrap();
        let col = ExactMatrix::new(2, 1, vec![big.clone(), big.clone()]).unwrap();
        let p = m.mul(&col).unwrap();
        assert_eq!(p.get(0, 0), &(&big * &big * rat(2)));
    }

    #[test]
    fn product_with_fractions() {
        let a = ExactMatrix::new(1, 2, vec![frac(1, 2), frac(1, 3)]).unwrap();
        let b = ExactMatrix::new(2, 1, vec![frac(2, 5), frac(3, 7)]).unwrap();
        assert_eq!(a.mul(&b).unwrap().get(0, 0), &(frac(1, 5) + frac(1, 7)));
    }

    #[test]
    fn csv_round_trip() {
        let m = ExactMatrix::new(2, 2, vec![frac(1, 2), rat(-3), rat(0), frac(-7, 9)]).unwrap();
        let text = m.to_csv();
        assert!(text.starts_with("2,2\n1/2,-3\n"));
        assert_eq!(ExactMatrix::from_csv(&text).unwrap(), m);
    }

    #[test]
    fn csv_rejects_malformed_input() {
        assert!(ExactMatrix::from_csv("").is_err());
        assert!(ExactMatrix::from_csv("2,2\n1,2\n").is_err());
        assert!(ExactMatrix::from_csv("1,2\n1,x\n").is_err());
        assert!(ExactMatrix::from_csv("1,2\n1\n").is_err());
    }
}
