//! The extended binary Golay code as a lexicode, and the Witt 3-(22,6,1)
//! design obtained from its octads.

use num_traits::{One, Zero};

use super::{combinations, ConstructionError};
use crate::exact_linalg::{ExactMatrix, Rational};
use crate::graph::Graph;

/// Codewords of the `[24, 12, 8]` code as 24-bit masks.
#[derive(Clone, Debug)]
pub struct GolayCode {
    pub words: Vec<u32>,
}

impl GolayCode {
    pub fn weight_distribution(&self) -> [usize; 25] {
        let mut dist = [0; 25];
        for w in &self.words {
            dist[w.count_ones() as usize] += 1;
        }
        dist
    }

    pub fn octads(&self) -> Vec<u32> {
        self.words.iter().copied().filter(|w| w.count_ones() == 8).collect()
    }
}

/// Greedy lexicode of length 24 and minimum distance 8: scan the words in
/// increasing order and keep each one at distance at least 8 from every word
/// kept so far. The result is validated as a linear code of dimension 12.
pub fn extended_golay_lexicode() -> Result<GolayCode, ConstructionError> {
    let mut words: Vec<u32> = vec![0];
    for w in 1u32..1 << 24 {
        if w.count_ones() >= 8 && words.iter().rev().all(|&c| (w ^ c).count_ones() >= 8) {
            words.push(w);
        }
    }
    let fail = |m: String| Err(ConstructionError::ConstructionFailed(m));
    if words.len() != 4096 {
        return fail(format!("lexicode has {} words", words.len()));
    }
    // Linearity: the span of an echelon basis extracted from the words must
    // be the word set itself.
    let mut basis: Vec<u32> = Vec::new();
    for &w in &words {
        let r = basis.iter().fold(w, |acc, &b| acc.min(acc ^ b));
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    if basis.len() != 12 {
        return fail(format!("words span dimension {}", basis.len()));
    }
    let mut span: Vec<u32> = (0u32..1 << 12)
        .map(|i| (0..12).filter(|b| i >> b & 1 == 1).fold(0, |acc, b| acc ^ basis[b]))
        .collect();
    span.sort_unstable();
    let mut sorted = words.clone();
    sorted.sort_unstable();
    if span != sorted {
        return fail("word set is not closed under sums".into());
    }
    let code = GolayCode { words };
    let dist = code.weight_distribution();
    let expected = [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)];
    for (w, &count) in dist.iter().enumerate() {
        let want = expected.iter().find(|e| e.0 == w).map_or(0, |e| e.1);
        if count != want {
            return fail(format!("{count} words of weight {w}, expected {want}"));
        }
    }
    Ok(code)
}

/// A block of the Witt design: six points of `{1..22}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WittBlock(pub [u8; 6]);

impl WittBlock {
    pub fn mask(&self) -> u32 {
        self.0.iter().fold(0, |m, &p| m | 1 << (p - 1))
    }

    pub fn label(&self) -> String {
        self.0.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
    }
}

#[derive(Clone, Debug)]
pub struct WittConstruction {
    pub blocks: Vec<WittBlock>,
    /// Disjoint blocks adjacent.
    pub graph: Graph,
    /// Block-by-point incidence, `77 × 22`.
    pub m: ExactMatrix,
    pub octad_count: usize,
}

/// Derives the octads through coordinates 22 and 23 (0-based), giving 77
/// blocks on the remaining 22 points (labelled `bit + 1`), and checks the
/// Steiner property.
pub fn build_witt() -> Result<WittConstruction, ConstructionError> {
    let code = extended_golay_lexicode()?;
    let octads = code.octads();
    let through = (1u32 << 22) | (1u32 << 23);
    let mut blocks: Vec<WittBlock> = octads
        .iter()
        .filter(|&&o| o & through == through)
        .map(|&o| {
            let pts: Vec<u8> = (0..22).filter(|b| o >> b & 1 == 1).map(|b| b as u8 + 1).collect();
            WittBlock(pts.try_into().expect("six points"))
        })
        .collect();
    blocks.sort_unstable();
    let fail = |m: String| Err(ConstructionError::ConstructionFailed(m));
    if blocks.len() != 77 {
        return fail(format!("{} derived blocks", blocks.len()));
    }
    let masks: Vec<u32> = blocks.iter().map(WittBlock::mask).collect();
    for t in combinations(22, 3) {
        let tm = t.iter().fold(0u32, |m, &p| m | 1 << p);
        let hits = masks.iter().filter(|&&b| b & tm == tm).count();
        if hits != 1 {
            return fail(format!("triple {t:?} lies in {hits} blocks"));
        }
    }
    let labels = blocks.iter().map(WittBlock::label).collect();
    let graph = Graph::from_relation(labels, |x, y| masks[x] & masks[y] == 0);
    let m = ExactMatrix::from_fn(77, 22, |r, c| {
        if masks[r] >> c & 1 == 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    Ok(WittConstruction {
        blocks,
        graph,
        m,
        octad_count: octads.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_design_parameters() {
        let w = build_witt().unwrap();
        assert_eq!(w.octad_count, 759);
        assert_eq!(w.graph.vertex_count(), 77);
        // Blocks meet in 0 or 2 points; 16 blocks are disjoint from a given one.
        assert_eq!(w.graph.valency().unwrap(), 16);
        for c in 0..22 {
            let s: Rational = w.m.column(c).iter().sum();
            assert_eq!(s, Rational::from_integer(21.into()));
        }
        for a in &w.blocks {
            for b in &w.blocks {
                let meet = (a.mask() & b.mask()).count_ones();
                assert!(a == b || meet == 0 || meet == 2);
            }
        }
    }
}
