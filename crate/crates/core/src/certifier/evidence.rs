//! Combinatorial evidence used by the core argument, and the support
//! localization step of the characterization proofs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CertifierError;
use crate::bits::VertexSet;
use crate::constructions::{build_line_graph_complete, combinations, subset_label, ConstructionError, P33Construction};
use crate::exact_linalg::{colspace_solve, rank, ExactMatrix};
use crate::graph::{characteristic_vector, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairIntersection {
    pub first: String,
    pub second: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreEvidenceReport {
    /// `|S_{ij} ∩ S_{kl}|` for every unordered pair of distinct pairs.
    pub pairwise_intersections: Vec<PairIntersection>,
    /// How often each intersection size occurs, `|S_{ij}|` itself included.
    pub size_counts: BTreeMap<usize, usize>,
    /// 70 for equal pairs, 10 for overlapping, 20 for disjoint.
    pub pattern_matches: bool,
    /// Size 10 exactly on the edges of `L(K_9)`.
    pub matches_line_graph: bool,
    pub quadruple: Vec<String>,
    pub quadruple_singleton: bool,
    /// `|S_{1,2} ∩ S_{1,i}|` for `i = 3..9`.
    pub fan_sizes: Vec<usize>,
    /// The sets `S_{1,2} ∩ S_{1,i}` are pairwise disjoint and cover `S_{1,2}`.
    pub fan_partitions_s12: bool,
    pub induced_map_target: String,
}

impl CoreEvidenceReport {
    pub fn consistent(&self) -> bool {
        self.pattern_matches
            && self.matches_line_graph
            && self.quadruple_singleton
            && self.quadruple == ["123|456|789"]
            && self.fan_sizes.iter().all(|&s| s == 10)
            && self.fan_partitions_s12
    }
}

/// Intersection pattern of the 36 sets `S_{ij}`, the quadruple intersection
/// `S_{1,2} ∩ S_{1,3} ∩ S_{4,5} ∩ S_{4,6}`, and the partition of `S_{1,2}` by
/// the third point of its cell.
pub fn p33_core_evidence(p: &P33Construction) -> Result<CoreEvidenceReport, CertifierError> {
    let pairs: Vec<(u8, u8)> = combinations(9, 2)
        .into_iter()
        .map(|c| (c[0] as u8 + 1, c[1] as u8 + 1))
        .collect();
    let sets: Vec<VertexSet> = pairs.iter().map(|&(i, j)| p.s_ij(i, j)).collect();
    let line = build_line_graph_complete(9)?;
    let mut pairwise = Vec::new();
    let mut size_counts = BTreeMap::new();
    let mut pattern_matches = true;
    let mut matches_line_graph = true;
    for a in 0..pairs.len() {
        for b in a..pairs.len() {
            let size = sets[a].intersection_len(&sets[b]);
            *size_counts.entry(size).or_insert(0) += 1;
            let (x, y) = (pairs[a], pairs[b]);
            let overlap = [x.0, x.1].iter().filter(|q| [y.0, y.1].contains(q)).count();
            let expected = match overlap {
                2 => 70,
                1 => 10,
                _ => 20,
            };
            pattern_matches &= size == expected;
            if a != b {
                matches_line_graph &= (size == 10) == line.adjacent(a, b);
                pairwise.push(PairIntersection {
                    first: subset_label(&[x.0 as usize - 1, x.1 as usize - 1]),
                    second: subset_label(&[y.0 as usize - 1, y.1 as usize - 1]),
                    size,
                });
            }
        }
    }
    let quad = p
        .s_ij(1, 2)
        .intersection(&p.s_ij(1, 3))
        .intersection(&p.s_ij(4, 5))
        .intersection(&p.s_ij(4, 6));
    let quadruple: Vec<String> = p.graph.set_labels(&quad);
    let s12 = p.s_ij(1, 2);
    let fans: Vec<VertexSet> = (3..=9).map(|i| s12.intersection(&p.s_ij(1, i))).collect();
    let disjoint = (0..fans.len()).all(|a| (a + 1..fans.len()).all(|b| fans[a].is_disjoint(&fans[b])));
    let union = fans.iter().fold(VertexSet::new(s12.capacity()), |acc, f| acc.union(f));
    let report = CoreEvidenceReport {
        pairwise_intersections: pairwise,
        size_counts,
        pattern_matches,
        matches_line_graph,
        quadruple_singleton: quad.len() == 1,
        quadruple,
        fan_sizes: fans.iter().map(VertexSet::len).collect(),
        fan_partitions_s12: disjoint && union == s12,
        induced_map_target: "L(K_9): pairs ij adjacent iff |S_ij ∩ S_kl| = 10".into(),
    };
    if !report.consistent() {
        return Err(ConstructionError::ConstructionFailed("core evidence does not match".into()).into());
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportReport {
    pub alpha: usize,
    /// Columns where row `alpha` of `M` is nonzero.
    pub inside: Vec<usize>,
    /// Support of the canonical solution of `z = Mh`.
    pub canonical_support: Vec<usize>,
    /// `dim null(M)`; when positive, `h` is only determined modulo `null(M)`.
    pub nullity: usize,
    /// Support of a solution using inside columns only, when one exists.
    pub localized_support: Option<Vec<usize>>,
    /// Some solution of `z = Mh` is supported inside `alpha`.
    pub holds: bool,
    /// Rows of `M` at the neighbours of `alpha` vanish exactly on the inside
    /// columns and are linearly independent on the others.
    pub outside_independent: bool,
}

fn support(h: &[crate::exact_linalg::Rational]) -> Vec<usize> {
    (0..h.len()).filter(|&i| !num_traits::Zero::is_zero(&h[i])).collect()
}

/// Solves `z = Mh` for the characteristic vector `z` of `s` and checks that
/// `h` can be taken with support inside `alpha`. When `M` has a null space the
/// statement is about the class of `h` modulo `null(M)`, so the check solves
/// against the inside columns alone.
pub fn support_localization_check(
    m: &ExactMatrix,
    g: &Graph,
    s: &VertexSet,
    alpha: usize,
) -> Result<SupportReport, CertifierError> {
    if !s.contains(alpha) {
        return Err(CertifierError::Mismatch(format!("vertex {alpha} is not in the set")));
    }
    if m.rows() != g.vertex_count() {
        return Err(CertifierError::Mismatch("M does not match the graph".into()));
    }
    let z = characteristic_vector(s);
    let h = colspace_solve(m, &z)?
        .ok_or_else(|| CertifierError::Mismatch("set is outside the column space of M".into()))?;
    let inside: Vec<usize> = (0..m.cols()).filter(|&c| !num_traits::Zero::is_zero(m.get(alpha, c))).collect();
    let nullity = m.cols() - rank(m);
    let localized = colspace_solve(&m.select_cols(&inside), &z)?
        .map(|hl| support(&hl).into_iter().map(|i| inside[i]).collect::<Vec<_>>());
    let rows = g.neighbors(alpha).to_vec();
    let m_out = m.select_rows(&rows);
    let nonzero = m_out.nonzero_columns();
    let outside: Vec<usize> = (0..m.cols()).filter(|c| !inside.contains(c)).collect();
    let outside_independent = nonzero == outside && rank(&m_out.select_cols(&nonzero)) == nonzero.len();
    Ok(SupportReport {
        alpha,
        canonical_support: support(&h),
        nullity,
        holds: localized.is_some(),
        localized_support: localized,
        inside,
        outside_independent,
    })
}
