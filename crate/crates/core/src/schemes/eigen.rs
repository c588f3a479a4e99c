//! Common eigenspaces, the eigenmatrix and the primitive idempotents.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{AssociationScheme, SchemeError};
use crate::bits::VertexSet;
use crate::exact_linalg::{nullspace_basis, orthogonal_projection, ExactMatrix, Rational};
use crate::graph::integer_eigenvalues;

/// Eigenvalues of the classes on their common eigenspaces.
///
/// Row `j` belongs to eigenspace `U_j` and column `i` to class `A_i`, so
/// `p[j][i]` is the eigenvalue of `A_i` on `U_j`. Row 0 is the eigenspace of
/// the all-ones vector; row 1 is the eigenspace on which `A_1` takes its least
/// eigenvalue; the remaining rows follow in decreasing order of the `A_1`
/// eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenmatrix {
    pub p: Vec<Vec<i64>>,
    pub multiplicities: Vec<usize>,
    /// Basis of each `U_j`, as columns.
    #[serde(skip)]
    pub bases: Vec<ExactMatrix>,
}

impl Eigenmatrix {
    /// Eigenvalue of class `i` on eigenspace `j`.
    pub fn eigenvalue(&self, class: usize, eigenspace: usize) -> i64 {
        self.p[eigenspace][class]
    }

    /// All eigenvalues of class `i`, one per eigenspace.
    pub fn class_eigenvalues(&self, class: usize) -> Vec<i64> {
        self.p.iter().map(|row| row[class]).collect()
    }

    /// `P` with its first column replaced by the multiplicities.
    pub fn modified(&self) -> Vec<Vec<i64>> {
        self.p
            .iter()
            .zip(&self.multiplicities)
            .map(|(row, &m)| {
                let mut r = row.clone();
                r[0] = m as i64;
                r
            })
            .collect()
    }
}

struct Block {
    basis: ExactMatrix,
    /// Rows of `basis` that form an identity matrix.
    unit_rows: Vec<usize>,
    tuple: Vec<i64>,
}

/// Splits the whole space into common eigenspaces, one class at a time. Each
/// block is invariant under every class (the classes commute), so a class acts
/// on a block `U` through the small matrix read off the unit rows of `A·U`.
pub fn eigenmatrix(scheme: &AssociationScheme) -> Result<Eigenmatrix, SchemeError> {
    let n = scheme.vertex_count();
    let d1 = scheme.class_count() + 1;
    let mut blocks = vec![Block {
        basis: ExactMatrix::identity(n),
        unit_rows: (0..n).collect(),
        tuple: vec![1],
    }];
    for i in 1..d1 {
        let a = scheme.class_matrix(i);
        let mut next = Vec::new();
        for block in blocks {
            let image = a.mul(&block.basis)?;
            let restricted = image.select_rows(&block.unit_rows);
            if image != block.basis.mul(&restricted)? {
                return Err(SchemeError::Eigenstructure(format!(
                    "class {i} does not preserve a common eigenspace"
                )));
            }
            if let Some(lambda) = scalar_multiple(&restricted) {
                let mut tuple = block.tuple;
                tuple.push(lambda);
                next.push(Block { tuple, ..block });
                continue;
            }
            let pairs = integer_eigenvalues(&restricted, scheme.valencies()[i] as i64)?;
            for (lambda, _) in pairs {
                let kernel = nullspace_basis(
                    &restricted.shift_diagonal(&Rational::from_integer(BigInt::from(lambda)))?,
                );
                let free = unit_rows_of(&kernel);
                let mut tuple = block.tuple.clone();
                tuple.push(lambda);
                next.push(Block {
                    basis: block.basis.mul(&kernel)?,
                    unit_rows: free.iter().map(|&r| block.unit_rows[r]).collect(),
                    tuple,
                });
            }
        }
        blocks = next;
    }
    if blocks.len() != d1 {
        return Err(SchemeError::Eigenstructure(format!(
            "{} common eigenspaces for {} classes",
            blocks.len(),
            d1 - 1
        )));
    }
    let valencies: Vec<i64> = scheme.valencies().iter().map(|&v| v as i64).collect();
    let trivial = blocks
        .iter()
        .position(|b| b.tuple == valencies)
        .ok_or_else(|| SchemeError::Eigenstructure("no eigenspace carries the valencies".into()))?;
    let first = blocks.swap_remove(trivial);
    if d1 > 1 {
        blocks.sort_by(|a, b| b.tuple[1].cmp(&a.tuple[1]).then_with(|| b.tuple.cmp(&a.tuple)));
        let least = blocks.pop().expect("nontrivial eigenspace");
        blocks.insert(0, least);
    }
    blocks.insert(0, first);
    Ok(Eigenmatrix {
        p: blocks.iter().map(|b| b.tuple.clone()).collect(),
        multiplicities: blocks.iter().map(|b| b.basis.cols()).collect(),
        bases: blocks.into_iter().map(|b| b.basis).collect(),
    })
}

/// `Some(λ)` when `m = λ·I`.
fn scalar_multiple(m: &ExactMatrix) -> Option<i64> {
    let lambda = m.get(0, 0).clone();
    let scalar = (0..m.rows()).all(|r| {
        (0..m.cols()).all(|c| {
            let e = m.get(r, c);
            if r == c {
                *e == lambda
            } else {
                e.is_zero()
            }
        })
    });
    if scalar && lambda.is_integer() {
        lambda.to_integer().try_into().ok()
    } else {
        None
    }
}

/// Canonical kernel bases carry an identity on the free-variable rows.
fn unit_rows_of(kernel: &ExactMatrix) -> Vec<usize> {
    (0..kernel.cols())
        .map(|c| {
            (0..kernel.rows())
                .find(|&r| kernel.get(r, c).is_one() && (0..kernel.cols()).all(|k| k == c || kernel.get(r, k).is_zero()))
                .expect("kernel basis has a unit row per column")
        })
        .collect()
}

/// Primitive idempotents `E_0, ..., E_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentBasis {
    pub idempotents: Vec<ExactMatrix>,
}

/// Builds `E_j = (m_j / v) Σ_i (p_i(j) / v_i) A_i` and certifies each one:
/// symmetric, idempotent, `A_i E_j = p_i(j) E_j` for every class and trace
/// `m_j`. A symmetric idempotent is the orthogonal projection onto its column
/// space; the eigen-equations put that column space inside `U_j` and the trace
/// makes the dimensions agree. Orthogonality and `Σ E_j = I` are checked too.
pub fn idempotents(scheme: &AssociationScheme, em: &Eigenmatrix) -> Result<IdempotentBasis, SchemeError> {
    let n = scheme.vertex_count();
    let d1 = scheme.class_count() + 1;
    let classes: Vec<ExactMatrix> = (0..d1).map(|i| scheme.class_matrix(i)).collect();
    let v = BigInt::from(n);
    let mut out = Vec::with_capacity(d1);
    for j in 0..d1 {
        let coeffs: Vec<Rational> = (0..d1)
            .map(|i| {
                Rational::new(
                    BigInt::from(em.multiplicities[j] as i64 * em.p[j][i]),
                    &v * BigInt::from(scheme.valencies()[i]),
                )
            })
            .collect();
        let e = ExactMatrix::from_fn(n, n, |x, y| coeffs[scheme.relation(x, y)].clone());
        let fail = |what: &str| SchemeError::Eigenstructure(format!("E_{j} is not {what}"));
        if !e.is_symmetric() {
            return Err(fail("symmetric"));
        }
        if e.mul(&e)? != e {
            return Err(fail("idempotent"));
        }
        if e.trace() != Rational::from_integer(BigInt::from(em.multiplicities[j])) {
            return Err(fail("of the right rank"));
        }
        for (i, a) in classes.iter().enumerate() {
            let lambda = Rational::from_integer(BigInt::from(em.p[j][i]));
            if a.mul(&e)? != e.scale(&lambda) {
                return Err(fail("an eigenprojection"));
            }
        }
        out.push(e);
    }
    let mut sum = ExactMatrix::zeros(n, n);
    for (j, e) in out.iter().enumerate() {
        sum = sum.add(e)?;
        for f in &out[j + 1..] {
            if !e.mul(f)?.is_zero() {
                return Err(SchemeError::Eigenstructure("idempotents are not orthogonal".into()));
            }
        }
    }
    if sum != ExactMatrix::identity(n) {
        return Err(SchemeError::Eigenstructure("idempotents do not sum to I".into()));
    }
    Ok(IdempotentBasis { idempotents: out })
}

/// Idempotents as `U (UᵀU)⁻¹ Uᵀ` from the eigenspace bases. Independent of
/// [`idempotents`]; practical for schemes with up to about a hundred vertices.
pub fn projection_idempotents(em: &Eigenmatrix) -> Result<IdempotentBasis, SchemeError> {
    let idempotents = em
        .bases
        .iter()
        .map(orthogonal_projection)
        .collect::<Result<_, _>>()?;
    Ok(IdempotentBasis { idempotents })
}

/// Both sides of Seidel's identity for a vector `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeidelReport {
    pub equal: bool,
    /// `xᵀA_i x / (v v_i)`.
    pub class_coefficients: Vec<Rational>,
    /// `xᵀE_j x / m_j`.
    pub idempotent_coefficients: Vec<Rational>,
    pub lhs: ExactMatrix,
    pub rhs: ExactMatrix,
}

fn quadratic_form_class(scheme: &AssociationScheme, i: usize, x: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for (a, xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        let inner: Rational = scheme.class(i).row(a).iter().map(|b| &x[b]).sum();
        total += xa * inner;
    }
    total
}

fn quadratic_form(m: &ExactMatrix, x: &[Rational]) -> Result<Rational, SchemeError> {
    let mx = m.mul_vec(x)?;
    Ok(mx.iter().zip(x).map(|(a, b)| a * b).sum())
}

/// Evaluates `Σ_i (xᵀA_i x)/(v v_i) A_i` and `Σ_j (xᵀE_j x)/m_j E_j` exactly.
pub fn seidel_check(
    scheme: &AssociationScheme,
    em: &Eigenmatrix,
    basis: &IdempotentBasis,
    x: &[Rational],
) -> Result<SeidelReport, SchemeError> {
    let n = scheme.vertex_count();
    if x.len() != n {
        return Err(SchemeError::Eigenstructure(format!(
            "vector of length {} for {n} vertices",
            x.len()
        )));
    }
    let v = BigInt::from(n);
    let class_coefficients: Vec<Rational> = (0..=scheme.class_count())
        .map(|i| {
            quadratic_form_class(scheme, i, x) / Rational::from_integer(&v * BigInt::from(scheme.valencies()[i]))
        })
        .collect();
    let idempotent_coefficients: Vec<Rational> = basis
        .idempotents
        .iter()
        .zip(&em.multiplicities)
        .map(|(e, &m)| Ok(quadratic_form(e, x)? / Rational::from_integer(BigInt::from(m))))
        .collect::<Result<_, SchemeError>>()?;
    let lhs = ExactMatrix::from_fn(n, n, |a, b| class_coefficients[scheme.relation(a, b)].clone());
    let mut rhs = ExactMatrix::zeros(n, n);
    for (e, c) in basis.idempotents.iter().zip(&idempotent_coefficients) {
        if !c.is_zero() {
            rhs = rhs.add(&e.scale(c))?;
        }
    }
    Ok(SeidelReport {
        equal: lhs == rhs,
        class_coefficients,
        idempotent_coefficients,
        lhs,
        rhs,
    })
}

/// `(xᵀA_i x)/|S|` for each class, with `x` the characteristic vector of `s`.
pub fn inner_distribution(scheme: &AssociationScheme, s: &VertexSet) -> Result<Vec<Rational>, SchemeError> {
    if s.is_empty() {
        return Err(SchemeError::EmptySet);
    }
    let size = BigInt::from(s.len());
    Ok((0..=scheme.class_count())
        .map(|i| {
            let pairs: usize = s.iter().map(|x| scheme.class_degree_into(x, i, s)).sum();
            Rational::new(BigInt::from(pairs), size.clone())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitMatrix;
    use crate::exact_linalg::{frac, rat};
    use crate::graph::Graph;

    fn complete_scheme(n: usize) -> AssociationScheme {
        let g = Graph::complete(n);
        AssociationScheme::from_classes(vec![BitMatrix::identity(n), g.adjacency_bits().clone()]).unwrap()
    }

    fn pentagon_scheme() -> AssociationScheme {
        let a = Graph::cycle(5).adjacency_bits().clone();
        let mut rest = BitMatrix::new(5);
        for x in 0..5 {
            for y in 0..5 {
                if x != y && !a.get(x, y) {
                    rest.set(x, y);
                }
            }
        }
        AssociationScheme::from_classes(vec![BitMatrix::identity(5), a, rest]).unwrap()
    }

    #[test]
    fn complete_graph_eigenmatrix() {
        let s = complete_scheme(6);
        let em = eigenmatrix(&s).unwrap();
        assert_eq!(em.p, vec![vec![1, 5], vec![1, -1]]);
        assert_eq!(em.multiplicities, vec![1, 5]);
        let e = idempotents(&s, &em).unwrap();
        assert_eq!(e.idempotents[0], ExactMatrix::ones(6, 6).scale(&frac(1, 6)));
        assert_eq!(
            e.idempotents[1],
            ExactMatrix::identity(6).sub(&ExactMatrix::ones(6, 6).scale(&frac(1, 6))).unwrap()
        );
        assert_eq!(projection_idempotents(&em).unwrap(), e);
    }

    #[test]
    fn pentagon_has_irrational_eigenvalues() {
        assert!(matches!(eigenmatrix(&pentagon_scheme()), Err(SchemeError::Spectrum(_))));
    }

    #[test]
    fn seidel_on_complete_scheme() {
        let s = complete_scheme(4);
        let em = eigenmatrix(&s).unwrap();
        let basis = idempotents(&s, &em).unwrap();
        let ones = vec![rat(1); 4];
        let r = seidel_check(&s, &em, &basis, &ones).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, ExactMatrix::ones(4, 4));
        let e0 = vec![rat(1), rat(0), rat(0), rat(0)];
        let r = seidel_check(&s, &em, &basis, &e0).unwrap();
        assert!(r.equal);
        assert_eq!(r.class_coefficients, vec![frac(1, 4), rat(0)]);
    }

    #[test]
    fn inner_distribution_basics() {
        let s = complete_scheme(5);
        let single = VertexSet::from_indices(5, [2]);
        assert_eq!(inner_distribution(&s, &single).unwrap(), vec![rat(1), rat(0)]);
        let pair = VertexSet::from_indices(5, [0, 3]);
        assert_eq!(inner_distribution(&s, &pair).unwrap(), vec![rat(1), rat(1)]);
        assert_eq!(inner_distribution(&s, &VertexSet::new(5)), Err(SchemeError::EmptySet));
    }
}
