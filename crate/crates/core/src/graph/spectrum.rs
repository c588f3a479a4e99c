use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};
use crate::exact_linalg::{integer_nullity, ExactMatrix};

/// Integer eigenvalues with multiplicities, strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub pairs: Vec<(i64, usize)>,
    pub least: i64,
}

impl SpectrumReport {
    pub fn multiplicity(&self, eigenvalue: i64) -> usize {
        self.pairs
            .iter()
            .find(|(l, _)| *l == eigenvalue)
            .map_or(0, |&(_, m)| m)
    }

    pub fn largest(&self) -> i64 {
        self.pairs[0].0
    }
}

/// Integer eigenvalues of a square matrix diagonalizable over the rationals,
/// scanning `bound, bound-1, ..., -bound`. The scan stops once the
/// multiplicities found account for every dimension.
pub fn integer_eigenvalues(m: &ExactMatrix, bound: i64) -> Result<Vec<(i64, usize)>, GraphError> {
    let n = m.cols();
    let mut pairs = Vec::new();
    let mut total = 0;
    for lambda in (-bound..=bound).rev() {
        if total == n {
            break;
        }
        let mult = integer_nullity(m, lambda).map_err(|e| GraphError::Invalid(e.to_string()))?;
        if mult > 0 {
            pairs.push((lambda, mult));
            total += mult;
        }
    }
    if total < n {
        return Err(GraphError::NonIntegralSpectrum {
            found: total,
            expected: n,
        });
    }
    Ok(pairs)
}

/// Spectrum of a regular graph whose eigenvalues are all integers.
pub fn integer_spectrum(g: &Graph) -> Result<SpectrumReport, GraphError> {
    let k = g.valency()?;
    let pairs = integer_eigenvalues(&g.adjacency_matrix(), k as i64)?;
    let least = pairs.last().map_or(0, |p| p.0);
    Ok(SpectrumReport { pairs, least })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{frac, rat};

    #[test]
    fn complete_graph_k4() {
        let s = integer_spectrum(&Graph::complete(4)).unwrap();
        assert_eq!(s.pairs, vec![(3, 1), (-1, 3)]);
        assert_eq!(s.least, -1);
    }

    #[test]
    fn five_cycle_is_not_integral() {
        // Eigenvalues 2 and (-1 ± sqrt 5)/2.
        let err = integer_spectrum(&Graph::cycle(5)).unwrap_err();
        assert_eq!(err, GraphError::NonIntegralSpectrum { found: 1, expected: 5 });
    }

    #[test]
    fn non_regular_graph() {
        let path = Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(integer_spectrum(&path), Err(GraphError::NotRegular { .. })));
    }

    #[test]
    fn scan_on_a_rational_matrix() {
        let m = ExactMatrix::new(2, 2, vec![rat(2), rat(0), rat(0), frac(1, 2)]).unwrap();
        assert!(integer_eigenvalues(&m, 3).is_err());
    }

    #[test]
    fn trace_identities_hold() {
        let g = Graph::cycle(6);
        let s = integer_spectrum(&g).unwrap();
        assert_eq!(s.pairs, vec![(2, 1), (1, 2), (-1, 2), (-2, 1)]);
        let tr: i64 = s.pairs.iter().map(|&(l, m)| l * m as i64).sum();
        let tr2: i64 = s.pairs.iter().map(|&(l, m)| l * l * m as i64).sum();
        assert_eq!(tr, 0);
        assert_eq!(tr2, 2 * g.edge_count() as i64);
    }
}
