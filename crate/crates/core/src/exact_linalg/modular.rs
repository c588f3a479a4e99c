//! Word-size prime-field elimination and rational reconstruction.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

const PRIME_COUNT: usize = 96;

/// Primes just below 2^31, largest first. Products of two residues fit in u64.
pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime_small(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

pub(crate) fn is_prime_small(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below modulus")
}

/// Reduced row-echelon form over GF(p).
pub(crate) struct ModRref {
    pub pivots: Vec<usize>,
    /// `pivots.len()` rows of length `cols`.
    pub rows: Vec<u64>,
    pub cols: usize,
}

impl ModRref {
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.rows[i * self.cols + j]
    }
}

pub(crate) fn rref_mod(mut data: Vec<u64>, rows: usize, cols: usize, p: u64) -> ModRref {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if piv != rank {
            for j in col..cols {
                data.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(data[rank * cols + col], p);
        for j in col..cols {
            let x = &mut data[rank * cols + j];
            *x = *x * inv % p;
        }
        let (head, tail) = data.split_at_mut(rank * cols);
        let (pivot_row, rest) = tail.split_at_mut(cols);
        let pivot_row = &pivot_row[..];
        let eliminate = |row: &mut [u64]| {
            let f = row[col];
            if f == 0 {
                return;
            }
            let nf = p - f;
            for j in col..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + nf * pivot_row[j]) % p;
                }
            }
        };
        head.chunks_mut(cols).for_each(eliminate);
        rest.chunks_mut(cols).take(rows - rank - 1).for_each(eliminate);
        pivots.push(col);
        rank += 1;
    }
    data.truncate(rank * cols);
    ModRref {
        pivots,
        rows: data,
        cols,
    }
}

/// Chinese remaindering: returns `x mod (m * p)` with `x ≡ a (mod m)` and
/// `x ≡ b (mod p)`.
pub(crate) fn crt_step(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let a_mod_p = residue(a, p);
    let m_inv = inv_mod(residue(m, p), p);
    let diff = (b + p - a_mod_p) % p;
    let t = diff * m_inv % p;
    a + m * BigInt::from(t)
}

/// Rational number `n/d` with `n ≡ a·d (mod m)` and `|n|, d ≤ sqrt(m/2)`, if
/// one exists.
pub(crate) fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    if a.is_zero() {
        return Some(Rational::zero());
    }
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}
