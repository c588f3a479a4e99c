//! The certification pipeline: ratio bound, tightness, column-space
//! membership, exhaustive enumeration of maximum independent sets, and the
//! per-family drivers.

mod enumerate;
mod evidence;
mod family;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::VertexSet;
use crate::constructions::ConstructionError;
use crate::exact_linalg::{colspace_solve, ExactMatrix, LinalgError, Rational};
use crate::graph::{is_independent, Graph, GraphError};
use crate::schemes::{AssociationScheme, SchemeError};

pub use enumerate::{
    colspace_enumerate, enumerate_all_max_independent, minimize_c0, EnumerationOptions, EnumerationReport,
    EnumerationSummary, SeedStrategy, DEFAULT_RANK_CAP,
};
pub use evidence::{
    p33_core_evidence, support_localization_check, CoreEvidenceReport, PairIntersection, SupportReport,
};
pub use family::{certify_family, CertifyOptions, Family};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifierError {
    #[error("least eigenvalue {0} is not negative")]
    InvalidSpectrum(i64),
    #[error("set of size {size} does not meet the ratio bound {bound}")]
    NotTight { size: usize, bound: String },
    #[error("rank of C is {rank}, above the enumeration cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },
    #[error("seed set is not independent")]
    SeedsNotIndependent,
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

impl CertifierError {
    /// Budget and rank-cap exhaustion, as opposed to a failed check.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            CertifierError::RankTooLarge { .. } | CertifierError::Graph(GraphError::BudgetExceeded(_))
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioBoundCertificate {
    pub v: usize,
    pub valency: i64,
    pub least_eigenvalue: i64,
    #[serde(with = "crate::certificate::rational_string")]
    pub bound: Rational,
    pub tight: bool,
}

impl RatioBoundCertificate {
    /// The bound as an integer, when it is one.
    pub fn integral_bound(&self) -> Option<usize> {
        if self.bound.is_integer() {
            self.bound.to_integer().try_into().ok()
        } else {
            None
        }
    }

    /// `⌊bound⌋`, the largest size an independent set can have.
    pub fn floor(&self) -> usize {
        self.bound.floor().to_integer().try_into().unwrap_or(0)
    }
}

/// `v / (1 - k/τ)`, computed as `vτ / (τ - k)`.
pub fn ratio_bound(v: usize, k: i64, tau: i64) -> Result<RatioBoundCertificate, CertifierError> {
    if tau >= 0 {
        return Err(CertifierError::InvalidSpectrum(tau));
    }
    let bound = Rational::new(BigInt::from(v) * BigInt::from(tau), BigInt::from(tau - k));
    Ok(RatioBoundCertificate {
        v,
        valency: k,
        least_eigenvalue: tau,
        bound,
        tight: false,
    })
}

/// Checks `A(x - c·1) = τ(x - c·1)` with `c = |S|/v`, after checking that
/// `|S|` meets the ratio bound.
pub fn tightness_eigenvector_check(g: &Graph, s: &VertexSet, tau: i64) -> Result<bool, CertifierError> {
    let v = g.vertex_count();
    let k = g.valency()?;
    let bound = ratio_bound(v, k as i64, tau)?;
    if Rational::from_integer(BigInt::from(s.len())) != bound.bound {
        return Err(CertifierError::NotTight {
            size: s.len(),
            bound: bound.bound.to_string(),
        });
    }
    let c = Rational::new(BigInt::from(s.len()), BigInt::from(v));
    let tau = Rational::from_integer(BigInt::from(tau));
    let k = Rational::from_integer(BigInt::from(k));
    Ok((0..v).all(|u| {
        let ax = Rational::from_integer(BigInt::from(g.neighbors(u).intersection_len(s)));
        let xu = if s.contains(u) { Rational::from_integer(BigInt::from(1)) } else { Rational::zero() };
        ax - &c * &k == &tau * (xu - &c)
    }))
}

/// `Some(h)` with `M h = z` (free variables zero), or `None`.
pub fn colspace_membership(m: &ExactMatrix, z: &[Rational]) -> Result<Option<Vec<Rational>>, CertifierError> {
    Ok(colspace_solve(m, z)?)
}

/// Every member of `s` sees exactly `expected[i]` members of `s` in class `i`.
pub fn verify_inner_distribution(scheme: &AssociationScheme, s: &VertexSet, expected: &[usize]) -> bool {
    expected.len() == scheme.class_count() + 1
        && s.iter().all(|x| {
            expected
                .iter()
                .enumerate()
                .all(|(i, &e)| scheme.class_degree_into(x, i, s) == e)
        })
}

/// Independent, of the given size, and containing the seeds.
pub(crate) fn is_valid_set(g: &Graph, s: &VertexSet, size: usize, seeds: &VertexSet) -> bool {
    s.len() == size && seeds.is_subset(s) && is_independent(g, s)
}
