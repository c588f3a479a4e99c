//! Partitions of nine points into three triples.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{combinations, ConstructionError};
use crate::bits::{BitMatrix, VertexSet};
use crate::exact_linalg::{ExactMatrix, Rational};
use crate::graph::Graph;
use crate::schemes::AssociationScheme;

/// Meet-cell counts for classes `A_0, ..., A_4`.
pub const P33_CLASS_MEETS: [usize; 5] = [3, 9, 7, 6, 5];

/// Partition of `{1..9}` into three cells of size three. Canonical form:
/// each cell sorted, cells sorted by their least element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition33 {
    cells: [[u8; 3]; 3],
}

impl Partition33 {
    pub fn new(mut cells: [[u8; 3]; 3]) -> Result<Self, ConstructionError> {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort_unstable_by_key(|c| c[0]);
        let mut seen = 0u16;
        for &x in cells.iter().flatten() {
            if !(1..=9).contains(&x) || seen & (1 << x) != 0 {
                return Err(ConstructionError::ConstructionFailed(format!(
                    "{cells:?} is not a partition of 1..9"
                )));
            }
            seen |= 1 << x;
        }
        Ok(Self { cells })
    }

    /// All 280 partitions in canonical order.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(280);
        for first in combinations(8, 2) {
            let c0 = [1, first[0] as u8 + 2, first[1] as u8 + 2];
            let rest: Vec<u8> = (1..=9).filter(|x| !c0.contains(x)).collect();
            for second in combinations(5, 2) {
                let c1 = [rest[0], rest[second[0] + 1], rest[second[1] + 1]];
                let c2: Vec<u8> = rest.iter().copied().filter(|x| !c1.contains(x)).collect();
                out.push(Self {
                    cells: [c0, c1, [c2[0], c2[1], c2[2]]],
                });
            }
        }
        out.sort_unstable();
        out
    }

    pub fn cells(&self) -> &[[u8; 3]; 3] {
        &self.cells
    }

    fn masks(&self) -> [u16; 3] {
        self.cells.map(|c| c.iter().fold(0u16, |m, &x| m | 1 << x))
    }

    /// Number of cells of the meet `self ∧ other`.
    pub fn meet_cells(&self, other: &Self) -> usize {
        let (a, b) = (self.masks(), other.masks());
        a.iter()
            .flat_map(|x| b.iter().map(move |y| x & y != 0))
            .filter(|&nonempty| nonempty)
            .count()
    }

    /// `i` and `j` lie in a common cell (1-based points).
    pub fn joins(&self, i: u8, j: u8) -> bool {
        self.cells.iter().any(|c| c.contains(&i) && c.contains(&j))
    }

    /// Every cell of one meets every cell of the other in one point.
    pub fn is_skew(&self, other: &Self) -> bool {
        self.meet_cells(other) == 9
    }
}

impl fmt::Display for Partition33 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .cells
            .iter()
            .map(|c| c.iter().map(u8::to_string).collect())
            .collect();
        f.write_str(&parts.join("|"))
    }
}

impl FromStr for Partition33 {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConstructionError::ConstructionFailed(format!("bad partition label {s:?}"));
        let cells: Vec<[u8; 3]> = s
            .split('|')
            .map(|c| {
                let digits: Vec<u8> = c
                    .chars()
                    .map(|ch| ch.to_digit(10).map(|d| d as u8))
                    .collect::<Option<_>>()
                    .ok_or_else(bad)?;
                digits.try_into().map_err(|_| bad())
            })
            .collect::<Result<_, _>>()?;
        let cells: [[u8; 3]; 3] = cells.try_into().map_err(|_| bad())?;
        Self::new(cells)
    }
}

/// The graph on 3×3 partitions together with its four-class scheme.
#[derive(Clone, Debug)]
pub struct P33Construction {
    pub partitions: Vec<Partition33>,
    pub scheme: AssociationScheme,
    /// Skew partitions: class `A_1`.
    pub graph: Graph,
}

impl P33Construction {
    pub fn index_of(&self, p: &Partition33) -> Option<usize> {
        self.partitions.binary_search(p).ok()
    }

    /// `S_{i,j}`: partitions with `i` and `j` (1-based) in a common cell.
    pub fn s_ij(&self, i: u8, j: u8) -> VertexSet {
        VertexSet::from_indices(
            self.partitions.len(),
            self.partitions
                .iter()
                .enumerate()
                .filter(|(_, p)| p.joins(i, j))
                .map(|(x, _)| x),
        )
    }
}

/// Builds the 280 partitions with classes `A_1..A_4` given by meets of 9, 7,
/// 6 and 5 cells, and validates the scheme axioms.
pub fn build_p33() -> Result<P33Construction, ConstructionError> {
    let partitions = Partition33::all();
    let n = partitions.len();
    if n != 280 {
        return Err(ConstructionError::ConstructionFailed(format!("{n} partitions")));
    }
    let mut classes: Vec<BitMatrix> = (0..5).map(|_| BitMatrix::new(n)).collect();
    for (x, px) in partitions.iter().enumerate() {
        for (y, py) in partitions.iter().enumerate() {
            let meet = px.meet_cells(py);
            let class = P33_CLASS_MEETS
                .iter()
                .position(|&m| m == meet)
                .ok_or_else(|| ConstructionError::ConstructionFailed(format!("meet of {meet} cells")))?;
            if (class == 0) != (x == y) {
                return Err(ConstructionError::ConstructionFailed(format!(
                    "meet of 3 cells off the diagonal at ({x},{y})"
                )));
            }
            classes[class].set(x, y);
        }
    }
    let graph = Graph::from_adjacency(
        partitions.iter().map(ToString::to_string).collect(),
        classes[1].clone(),
    )
    .map_err(|e| ConstructionError::ConstructionFailed(e.to_string()))?;
    let scheme = AssociationScheme::from_classes(classes)?;
    Ok(P33Construction {
        partitions,
        scheme,
        graph,
    })
}

/// Column index of the pair `{i, j}` (1-based, `i < j`) among the 36 pairs of
/// `{1..9}` in lexicographic order.
pub fn pair_index(i: u8, j: u8) -> usize {
    let (i, j) = (i.min(j) as usize, i.max(j) as usize);
    (1..i).map(|a| 9 - a).sum::<usize>() + (j - i - 1)
}

/// The 280×36 matrix whose row for `π` is the indicator of the pairs lying in
/// a cell of `π`.
pub fn build_p33_m(partitions: &[Partition33]) -> ExactMatrix {
    let pairs = combinations(9, 2);
    ExactMatrix::from_fn(partitions.len(), pairs.len(), |r, c| {
        if partitions[r].joins(pairs[c][0] as u8 + 1, pairs[c][1] as u8 + 1) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}
