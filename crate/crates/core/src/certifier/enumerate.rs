//! Enumeration of maximum independent sets through the column space of `M`.
//!
//! With seeds inside the unknown set `S`, the characteristic vector `z = Mh`
//! vanishes on every vertex adjacent to a seed, so `h` lies in the null space
//! `N` of those rows of `M`. Writing `C` for the reduced column echelon form of
//! `MN`, `z = Cy`; `C` contains an identity on some rows, so `y` is a 0/1
//! vector and all candidates can be swept.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, PrimInt, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{is_valid_set, CertifierError};
use crate::bits::VertexSet;
use crate::exact_linalg::small::{gauss_jordan, integer_columns, primitive, IntRref};
use crate::exact_linalg::{colspace_solve, nullspace_basis, reduced_column_echelon, ExactMatrix, Rational};
use crate::graph::{characteristic_vector, is_independent, Graph};
use crate::schemes::AssociationScheme;

pub const DEFAULT_RANK_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Largest `rank(C)` that will be swept.
    pub rank_cap: usize,
    /// Solve `z = Mh` for every set found.
    pub compute_h: bool,
    /// Search greedily for a small row subset `C₀` of `C` that already forces
    /// the outcome.
    pub minimize_c0: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            rank_cap: DEFAULT_RANK_CAP,
            compute_h: true,
            minimize_c0: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub seed_description: String,
    pub seeds: Vec<usize>,
    /// Rows of `M₁`: vertices adjacent to some seed.
    pub m1_rows: usize,
    /// Columns of `N`.
    pub nullity: usize,
    pub rank_c: usize,
    /// `2^rank(C)`.
    pub candidates_tested: u64,
    /// Candidates `y` with `Cy` a 0/1 vector, the zero vector included.
    pub zero_one_candidates: u64,
    pub valid_sets: Vec<VertexSet>,
    #[serde(with = "crate::certificate::rational_rows")]
    pub h_vectors: Vec<Vec<Rational>>,
    /// Rows of a `C₀` found by [`minimize_c0`], when requested.
    pub c0_rows: Option<Vec<usize>>,
}

/// Integer form of `C`: row `r` is `nums[r] / dens[r]`.
struct SweepMatrix {
    nums: Vec<Vec<i128>>,
    dens: Vec<i128>,
}

impl SweepMatrix {
    fn new(c: &ExactMatrix) -> Option<Self> {
        let r = c.cols().max(1) as i128;
        let limit = i128::MAX / 4 / r;
        let mut nums = Vec::with_capacity(c.rows());
        let mut dens = Vec::with_capacity(c.rows());
        for row in 0..c.rows() {
            let entries = c.row(row);
            let den = entries
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            let row_nums: Option<Vec<i128>> = entries
                .iter()
                .map(|x| (x.numer() * (&den / x.denom())).to_i128().filter(|v| v.abs() < limit))
                .collect();
            nums.push(row_nums?);
            dens.push(den.to_i128().filter(|v| *v < limit)?);
        }
        Some(Self { nums, dens })
    }

    /// `C` from the integer RREF of `Cᵀ`.
    fn from_transposed<T: PrimInt + Signed + Integer + ToPrimitive>(red: &IntRref<T>, rows: usize) -> Option<Self> {
        let den = red.common_denominator()?.to_i128()?;
        let scales: Vec<i128> = red
            .rows
            .iter()
            .zip(&red.pivots)
            .map(|(row, &p)| row[p].to_i128().map(|piv| den / piv))
            .collect::<Option<_>>()?;
        let limit = i128::MAX / 4 / (red.rows.len().max(1) as i128);
        let mut nums = Vec::with_capacity(rows);
        let mut dens = Vec::with_capacity(rows);
        for r in 0..rows {
            let mut row: Vec<i128> = red
                .rows
                .iter()
                .zip(&scales)
                .map(|(c, s)| c[r].to_i128()?.checked_mul(*s))
                .collect::<Option<_>>()?;
            let g = row.iter().fold(den, |acc, &x| acc.gcd(&x));
            for x in &mut row {
                *x /= g;
                if x.abs() >= limit {
                    return None;
                }
            }
            nums.push(row);
            dens.push(den / g);
        }
        Some(Self { nums, dens })
    }

    /// `Cy` when it is a 0/1 vector.
    fn zero_one(&self, y: u64) -> Option<Vec<bool>> {
        let mut out = Vec::with_capacity(self.nums.len());
        for (row, &den) in self.nums.iter().zip(&self.dens) {
            let mut s = 0i128;
            let mut bits = y;
            while bits != 0 {
                s += row[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            if s == 0 {
                out.push(false);
            } else if s == den {
                out.push(true);
            } else {
                return None;
            }
        }
        Some(out)
    }

    /// Whether row `r` of `Cy` is 0 or 1.
    fn row_is_zero_one(&self, r: usize, y: u64) -> bool {
        let mut s = 0i128;
        let mut bits = y;
        while bits != 0 {
            s += self.nums[r][bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        s == 0 || s == self.dens[r]
    }
}

fn exact_zero_one(c: &ExactMatrix, y: u64) -> Option<Vec<bool>> {
    let one = Rational::one();
    (0..c.rows())
        .map(|r| {
            let s: Rational = (0..c.cols()).filter(|&j| y >> j & 1 == 1).map(|j| c.get(r, j)).sum();
            if s.is_zero() {
                Some(false)
            } else if s == one {
                Some(true)
            } else {
                None
            }
        })
        .collect()
}

/// `M` with integer columns, dense and by row support.
struct IntegerM {
    dense: Vec<Vec<i64>>,
    sparse: Vec<Vec<(usize, i64)>>,
    cols: usize,
}

impl IntegerM {
    fn new(m: &ExactMatrix) -> Option<Self> {
        let dense = integer_columns(m)?;
        let sparse = dense
            .iter()
            .map(|row| row.iter().enumerate().filter(|e| *e.1 != 0).map(|(j, &x)| (j, x)).collect())
            .collect();
        Some(Self {
            dense,
            sparse,
            cols: m.cols(),
        })
    }

    /// `dim null(M₁)`, `rank(C)` and `C`, all in machine integers of type `T`.
    fn reduce<T>(&self, adjacent: &[usize]) -> Option<(usize, usize, SweepMatrix)>
    where
        T: PrimInt + Signed + Integer + ToPrimitive + TryFrom<i64>,
    {
        let cols = self.cols;
        let conv = |x: i64| T::try_from(x).ok();
        let kernel: Vec<Vec<T>> = if adjacent.is_empty() {
            (0..cols).map(|j| (0..cols).map(|i| if i == j { T::one() } else { T::zero() }).collect()).collect()
        } else {
            let m1: Vec<Vec<T>> = adjacent
                .iter()
                .map(|&r| self.dense[r].iter().map(|&x| conv(x)).collect::<Option<_>>())
                .collect::<Option<_>>()?;
            gauss_jordan(m1, cols)?.kernel(cols)?
        };
        // Rows of (MN)ᵀ.
        let mnt: Vec<Vec<T>> = kernel
            .iter()
            .map(|k| {
                let col: Option<Vec<T>> = self
                    .sparse
                    .iter()
                    .map(|row| {
                        row.iter()
                            .try_fold(T::zero(), |acc, &(j, x)| acc.checked_add(&conv(x)?.checked_mul(&k[j])?))
                    })
                    .collect();
                col.map(primitive)
            })
            .collect::<Option<_>>()?;
        let red = gauss_jordan(mnt, self.dense.len())?;
        let sweep = SweepMatrix::from_transposed(&red, self.dense.len())?;
        Some((kernel.len(), red.pivots.len(), sweep))
    }

    fn reduce_small(&self, adjacent: &[usize]) -> Option<(usize, usize, SweepMatrix)> {
        self.reduce::<i64>(adjacent).or_else(|| self.reduce::<i128>(adjacent))
    }
}

/// Runs the null-space/column-echelon sweep for one seed set.
pub fn colspace_enumerate(
    g: &Graph,
    m: &ExactMatrix,
    seeds: &VertexSet,
    target_size: usize,
    opts: &EnumerationOptions,
) -> Result<EnumerationReport, CertifierError> {
    let mi = IntegerM::new(m);
    enumerate_with(g, m, mi.as_ref(), seeds, target_size, opts)
}

fn enumerate_with(
    g: &Graph,
    m: &ExactMatrix,
    mi: Option<&IntegerM>,
    seeds: &VertexSet,
    target_size: usize,
    opts: &EnumerationOptions,
) -> Result<EnumerationReport, CertifierError> {
    let n = g.vertex_count();
    if m.rows() != n {
        return Err(CertifierError::Mismatch(format!("M has {} rows for {n} vertices", m.rows())));
    }
    if !is_independent(g, seeds) {
        return Err(CertifierError::SeedsNotIndependent);
    }
    let mut adjacent = VertexSet::new(n);
    for s in seeds.iter() {
        adjacent = adjacent.union(g.neighbors(s));
    }
    let adjacent = adjacent.to_vec();
    let fast = mi.and_then(|mi| mi.reduce_small(&adjacent));
    let (nullity, rank_c, sweep, c) = match fast {
        Some((nullity, rank_c, sweep)) => (nullity, rank_c, Some(sweep), None),
        None => {
            let m1 = m.select_rows(&adjacent);
            let null = if m1.rows() == 0 { ExactMatrix::identity(m.cols()) } else { nullspace_basis(&m1) };
            let c = reduced_column_echelon(&m.mul(&null)?);
            (null.cols(), c.cols(), SweepMatrix::new(&c), Some(c))
        }
    };
    if rank_c > opts.rank_cap.min(63) {
        return Err(CertifierError::RankTooLarge {
            rank: rank_c,
            cap: opts.rank_cap,
        });
    }
    let total = 1u64 << rank_c;
    let mut zero_one = 0u64;
    let mut found = BTreeSet::new();
    let mut outcomes: Vec<(u64, bool)> = Vec::new();
    for y in 0..total {
        let z = match (&sweep, &c) {
            (Some(s), _) => s.zero_one(y),
            (None, Some(c)) => exact_zero_one(c, y),
            (None, None) => unreachable!("one form of C is always present"),
        };
        let Some(z) = z else { continue };
        zero_one += 1;
        let set = VertexSet::from_indices(n, (0..n).filter(|&i| z[i]));
        let valid = is_valid_set(g, &set, target_size, seeds);
        outcomes.push((y, valid || set.is_empty()));
        if valid {
            found.insert(set);
        }
    }
    let valid_sets: Vec<VertexSet> = found.into_iter().collect();
    let h_vectors = if opts.compute_h {
        valid_sets
            .iter()
            .map(|s| {
                colspace_solve(m, &characteristic_vector(s))?
                    .ok_or_else(|| CertifierError::Mismatch("enumerated set outside colspace(M)".into()))
            })
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let c0_rows = match (&sweep, opts.minimize_c0) {
        (Some(s), true) => minimize_rows(s, rank_c, &outcomes),
        _ => None,
    };
    Ok(EnumerationReport {
        seed_description: seed_labels(g, seeds).join(" + "),
        seeds: seeds.to_vec(),
        m1_rows: adjacent.len(),
        nullity,
        rank_c,
        candidates_tested: total,
        zero_one_candidates: zero_one,
        valid_sets,
        h_vectors,
        c0_rows,
    })
}

fn seed_labels(g: &Graph, seeds: &VertexSet) -> Vec<String> {
    seeds.iter().map(|s| g.label(s).to_string()).collect()
}

/// Greedy choice of rows `R` such that every `y` with `C_R y` a 0/1 vector
/// has an accepted outcome (the zero vector or a valid set). `outcomes` lists
/// the 0/1 candidates of the full `C`; all other `y` start out as the ones to
/// exclude.
fn minimize_rows(sweep: &SweepMatrix, rank: usize, outcomes: &[(u64, bool)]) -> Option<Vec<usize>> {
    let accepted: BTreeSet<u64> = outcomes.iter().filter(|o| o.1).map(|o| o.0).collect();
    let mut bad: Vec<u64> = (0..1u64 << rank).filter(|y| !accepted.contains(y)).collect();
    let mut chosen = Vec::new();
    while !bad.is_empty() {
        let (best, killed) = (0..sweep.nums.len())
            .filter(|r| !chosen.contains(r))
            .map(|r| (r, bad.iter().filter(|&&y| !sweep.row_is_zero_one(r, y)).count()))
            .max_by_key(|&(r, k)| (k, std::cmp::Reverse(r)))?;
        if killed == 0 {
            return None;
        }
        chosen.push(best);
        bad.retain(|&y| sweep.row_is_zero_one(best, y));
    }
    chosen.sort_unstable();
    Some(chosen)
}

/// Exposes the `C₀` search for a seed set.
pub fn minimize_c0(
    g: &Graph,
    m: &ExactMatrix,
    seeds: &VertexSet,
    target_size: usize,
) -> Result<Option<Vec<usize>>, CertifierError> {
    let opts = EnumerationOptions {
        compute_h: false,
        minimize_c0: true,
        ..Default::default()
    };
    Ok(colspace_enumerate(g, m, seeds, target_size, &opts)?.c0_rows)
}

/// Which seed sets the driver iterates over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedStrategy {
    /// Every single vertex.
    Singletons,
    /// Every pair of vertices in scheme class `c`.
    PairsInClass(usize),
}

impl fmt::Display for SeedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedStrategy::Singletons => f.write_str("singletons"),
            SeedStrategy::PairsInClass(c) => write!(f, "pairs:A{c}"),
        }
    }
}

impl FromStr for SeedStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "singletons" {
            return Ok(SeedStrategy::Singletons);
        }
        let class = s
            .strip_prefix("pairs:")
            .map(|c| c.strip_prefix('A').unwrap_or(c))
            .and_then(|c| c.parse::<usize>().ok())
            .filter(|&c| c > 0)
            .ok_or_else(|| format!("unknown seed strategy {s:?}; expected singletons or pairs:A<class>"))?;
        Ok(SeedStrategy::PairsInClass(class))
    }
}

impl SeedStrategy {
    pub fn seed_sets(&self, g: &Graph, scheme: Option<&AssociationScheme>) -> Result<Vec<VertexSet>, CertifierError> {
        let n = g.vertex_count();
        match *self {
            SeedStrategy::Singletons => Ok((0..n).map(|v| VertexSet::from_indices(n, [v])).collect()),
            SeedStrategy::PairsInClass(c) => {
                let scheme = scheme.ok_or_else(|| CertifierError::Mismatch("pair seeds need a scheme".into()))?;
                if c > scheme.class_count() || scheme.vertex_count() != n {
                    return Err(CertifierError::Mismatch(format!("no class A{c} on this graph")));
                }
                Ok(scheme
                    .class_pairs(c)
                    .into_iter()
                    .map(|(x, y)| VertexSet::from_indices(n, [x, y]))
                    .collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub seed_strategy: String,
    pub seeds_tried: usize,
    pub candidates_tested: u64,
    pub zero_one_candidates: u64,
    pub rank_c_min: usize,
    pub rank_c_max: usize,
    pub sets_found: usize,
}

/// Union of [`colspace_enumerate`] over a seed family, computed on `jobs`
/// worker threads and merged in canonical order.
pub fn enumerate_all_max_independent(
    g: &Graph,
    m: &ExactMatrix,
    target_size: usize,
    strategy: SeedStrategy,
    scheme: Option<&AssociationScheme>,
    jobs: usize,
    rank_cap: usize,
) -> Result<(Vec<VertexSet>, EnumerationSummary), CertifierError> {
    let seeds = strategy.seed_sets(g, scheme)?;
    let opts = EnumerationOptions {
        rank_cap,
        compute_h: false,
        minimize_c0: false,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CertifierError::Mismatch(format!("thread pool: {e}")))?;
    let mi = IntegerM::new(m);
    let reports: Vec<Result<EnumerationReport, CertifierError>> = pool.install(|| {
        seeds
            .par_iter()
            .map(|s| enumerate_with(g, m, mi.as_ref(), s, target_size, &opts))
            .collect()
    });
    let mut all = BTreeSet::new();
    let mut summary = EnumerationSummary {
        seed_strategy: strategy.to_string(),
        seeds_tried: seeds.len(),
        candidates_tested: 0,
        zero_one_candidates: 0,
        rank_c_min: usize::MAX,
        rank_c_max: 0,
        sets_found: 0,
    };
    for r in reports {
        let r = r?;
        summary.candidates_tested += r.candidates_tested;
        summary.zero_one_candidates += r.zero_one_candidates;
        summary.rank_c_min = summary.rank_c_min.min(r.rank_c);
        summary.rank_c_max = summary.rank_c_max.max(r.rank_c);
        all.extend(r.valid_sets);
    }
    if seeds.is_empty() {
        summary.rank_c_min = 0;
    }
    summary.sets_found = all.len();
    Ok((all.into_iter().collect(), summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_kneser;

    #[test]
    fn seed_strategy_parsing() {
        assert_eq!("singletons".parse::<SeedStrategy>().unwrap(), SeedStrategy::Singletons);
        assert_eq!("pairs:A2".parse::<SeedStrategy>().unwrap(), SeedStrategy::PairsInClass(2));
        assert_eq!("pairs:3".parse::<SeedStrategy>().unwrap(), SeedStrategy::PairsInClass(3));
        assert!("pairs:A0".parse::<SeedStrategy>().is_err());
        assert!("triples".parse::<SeedStrategy>().is_err());
        assert_eq!(SeedStrategy::PairsInClass(2).to_string(), "pairs:A2");
    }

    #[test]
    fn petersen_stars() {
        let k = build_kneser(5, 2).unwrap();
        let m = k.m();
        let seed = VertexSet::from_indices(10, [0]);
        let r = colspace_enumerate(&k.graph, &m, &seed, 4, &EnumerationOptions::default()).unwrap();
        // Vertex {1,2} lies in the stars of 1 and 2.
        assert_eq!(r.valid_sets.len(), 2);
        assert_eq!(r.h_vectors.len(), 2);
        let (sets, summary) =
            enumerate_all_max_independent(&k.graph, &m, 4, SeedStrategy::Singletons, None, 2, 24).unwrap();
        assert_eq!(sets.len(), 5);
        assert_eq!(summary.seeds_tried, 10);
    }

    fn sweep_values(s: &SweepMatrix) -> Vec<Vec<Rational>> {
        s.nums
            .iter()
            .zip(&s.dens)
            .map(|(row, &d)| {
                row.iter()
                    .map(|&x| Rational::new(BigInt::from(x), BigInt::from(d)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn integer_path_matches_rational_path() {
        let k = build_kneser(7, 3).unwrap();
        // Rational columns exercise the column scaling.
        let m = k.m().scale(&Rational::new(BigInt::from(2), BigInt::from(3)));
        let mi = IntegerM::new(&m).unwrap();
        for seed in 0..k.graph.vertex_count() {
            let adjacent = k.graph.neighbors(seed).to_vec();
            let (nullity, rank_c, sweep) = mi.reduce::<i64>(&adjacent).unwrap();
            let wide = mi.reduce::<i128>(&adjacent).unwrap();
            assert_eq!(sweep_values(&wide.2), sweep_values(&sweep));
            let null = nullspace_basis(&m.select_rows(&adjacent));
            let c = reduced_column_echelon(&m.mul(&null).unwrap());
            assert_eq!((nullity, rank_c), (null.cols(), c.cols()));
            let exact: Vec<Vec<Rational>> = (0..c.rows()).map(|r| c.row(r).to_vec()).collect();
            assert_eq!(sweep_values(&sweep), exact);
        }
    }

    #[test]
    fn rank_cap_is_enforced() {
        let k = build_kneser(5, 2).unwrap();
        let opts = EnumerationOptions {
            rank_cap: 1,
            ..Default::default()
        };
        let seed = VertexSet::from_indices(10, [0]);
        assert!(matches!(
            colspace_enumerate(&k.graph, &k.m(), &seed, 4, &opts),
            Err(CertifierError::RankTooLarge { .. })
        ));
    }
}
