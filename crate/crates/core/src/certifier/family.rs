//! Per-family drivers: construct, compute the spectrum, bound, prove the
//! column-space argument, enumerate, then run the family's identities.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};

use super::{
    colspace_enumerate, enumerate_all_max_independent, ratio_bound, support_localization_check,
    tightness_eigenvector_check, verify_inner_distribution, CertifierError, EnumerationOptions,
    RatioBoundCertificate, SeedStrategy, DEFAULT_RANK_CAP,
};
use crate::bits::{BitMatrix, VertexSet};
use crate::certificate::{Certificate, ErrorKind, PipelineError};
use crate::constructions::{
    build_kneser, build_line_graph_complete, build_p33, build_p33_m, build_q_kneser, build_w1k, build_witt,
    combinations, enumerate_subspaces, gauss_binomial, q_integer, round_robin_one_factorization,
    ConstructionError, Subspace,
};
use crate::exact_linalg::{frac, nullspace_basis, rank, rat, ExactMatrix, Rational};
use crate::graph::{
    characteristic_vector, check_homomorphism, integer_spectrum, is_independent, max_independent_brute, Graph,
    SpectrumReport,
};
use crate::schemes::{eigenmatrix, idempotents, seidel_check, AssociationScheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    P33,
    QKneser { q: u32, v: usize, k: usize },
    Witt,
    Kneser { v: usize, k: usize },
    LineComplete { n: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::P33 => "p33",
            Family::QKneser { .. } => "q-kneser",
            Family::Witt => "witt",
            Family::Kneser { .. } => "kneser",
            Family::LineComplete { .. } => "line-complete",
        }
    }

    pub fn parameters(&self) -> BTreeMap<String, String> {
        let pairs: Vec<(&str, String)> = match *self {
            Family::P33 | Family::Witt => vec![],
            Family::QKneser { q, v, k } => vec![("q", q.to_string()), ("v", v.to_string()), ("k", k.to_string())],
            Family::Kneser { v, k } => vec![("v", v.to_string()), ("k", k.to_string())],
            Family::LineComplete { n } => vec![("n", n.to_string())],
        };
        pairs.into_iter().map(|(a, b)| (a.to_string(), b)).collect()
    }

    /// Rejects parameters outside the family's range; the message names the
    /// offending parameters.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let dims = |v: usize, k: usize| {
            if k == 0 || v < 2 * k {
                Err(ConstructionError::DimensionError(format!("v, k: need 1 <= k and 2k <= v, got v = {v}, k = {k}")))
            } else {
                Ok(())
            }
        };
        match *self {
            Family::P33 | Family::Witt => Ok(()),
            Family::QKneser { q, v, k } => {
                if !crate::exact_linalg::modular::is_prime_small(u64::from(q)) {
                    return Err(ConstructionError::UnsupportedField(q));
                }
                dims(v, k)
            }
            Family::Kneser { v, k } => {
                dims(v, k)?;
                if v > 128 {
                    return Err(ConstructionError::DimensionError(format!("v: at most 128, got {v}")));
                }
                Ok(())
            }
            Family::LineComplete { n } if n < 4 => {
                Err(ConstructionError::DimensionError(format!("n: need n >= 4, got {n}")))
            }
            Family::LineComplete { .. } => Ok(()),
        }
    }

    /// The seed family whose completeness the driver can justify.
    pub fn default_seeds(&self) -> SeedStrategy {
        match self {
            Family::P33 => SeedStrategy::PairsInClass(2),
            _ => SeedStrategy::Singletons,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        let params = self.parameters();
        if !params.is_empty() {
            let inner: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", inner.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub jobs: usize,
    /// Overrides [`Family::default_seeds`].
    pub seeds: Option<SeedStrategy>,
    pub rank_cap: usize,
    /// Node budget for brute-force searches.
    pub budget: u64,
    /// Run the brute-force oracle on graphs with at most this many vertices.
    pub brute_force_limit: usize,
    pub timings: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            seeds: None,
            rank_cap: DEFAULT_RANK_CAP,
            budget: 50_000_000,
            brute_force_limit: 40,
            timings: false,
        }
    }
}

struct Run<'a> {
    cert: Certificate,
    opts: &'a CertifyOptions,
    clock: Instant,
    timings: BTreeMap<String, u64>,
}

impl Run<'_> {
    fn stage(&mut self, name: &str) {
        let ms = self.clock.elapsed().as_millis() as u64;
        self.timings.insert(name.to_string(), ms);
        self.clock = Instant::now();
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.cert.check(name, passed, detail);
    }

    fn record_sets(&mut self, g: &Graph, sets: &[VertexSet]) {
        self.cert.max_independent_sets = sets.iter().map(|s| g.set_labels(s)).collect();
    }
}

/// Runs the full pipeline. Failures never panic: an aborted run returns a
/// certificate with status `failed` and the error recorded.
pub fn certify_family(family: Family, opts: &CertifyOptions) -> Certificate {
    let mut run = Run {
        cert: Certificate::new(family.name(), family.parameters()),
        opts,
        clock: Instant::now(),
        timings: BTreeMap::new(),
    };
    let seeds = opts.seeds.unwrap_or_else(|| family.default_seeds());
    run.cert.parameters.insert("seeds".into(), seeds.to_string());
    let result = match family {
        Family::P33 => certify_p33(&mut run, seeds),
        Family::Witt => certify_witt(&mut run, seeds),
        Family::QKneser { q, v, k } => certify_q_kneser(&mut run, q, v, k, seeds),
        Family::Kneser { v, k } => certify_kneser(&mut run, v, k, seeds),
        Family::LineComplete { n } => certify_line(&mut run, n, seeds),
    };
    if let Err(e) = result {
        let kind = if e.is_budget() { ErrorKind::Budget } else { ErrorKind::Pipeline };
        run.cert.error = Some(PipelineError {
            kind,
            message: e.to_string(),
        });
    }
    if opts.timings {
        run.cert.timings = Some(run.timings);
    }
    run.cert.finalize();
    run.cert
}

fn to_usize(x: &BigInt) -> Result<usize, CertifierError> {
    x.to_usize()
        .ok_or_else(|| CertifierError::Mismatch(format!("{x} does not fit in a machine word")))
}

fn to_i64(x: &BigInt) -> Result<i64, CertifierError> {
    x.to_i64()
        .ok_or_else(|| CertifierError::Mismatch(format!("{x} does not fit in a machine word")))
}

/// `Σ c_i X_i` for integer coefficients.
fn combination(n: usize, terms: &[(i64, &ExactMatrix)]) -> Result<ExactMatrix, CertifierError> {
    let mut acc = ExactMatrix::zeros(n, n);
    for (c, m) in terms {
        acc = acc.add(&m.scale(&rat(*c)))?;
    }
    Ok(acc)
}

/// Columns of `M - cJ` are `τ`-eigenvectors of `A` and span a space of the
/// full `τ`-multiplicity; returns the rank found.
fn shifted_columns_span_eigenspace(
    a: &ExactMatrix,
    m: &ExactMatrix,
    c: &Rational,
    tau: i64,
) -> Result<(bool, usize), CertifierError> {
    let shifted = m.sub(&ExactMatrix::ones(m.rows(), m.cols()).scale(c))?;
    let eigen = a.mul(&shifted)? == shifted.scale(&rat(tau));
    Ok((eigen, rank(&shifted)))
}

fn spectrum_stage(run: &mut Run<'_>, g: &Graph) -> Result<(SpectrumReport, RatioBoundCertificate), CertifierError> {
    let spectrum = integer_spectrum(g)?;
    run.cert.spectrum = Some(spectrum.clone());
    let k = g.valency()? as i64;
    let ratio = ratio_bound(g.vertex_count(), k, spectrum.least)?;
    run.stage("spectrum");
    Ok((spectrum, ratio))
}

fn tightness_all(g: &Graph, sets: &[VertexSet], tau: i64) -> Result<bool, CertifierError> {
    for s in sets {
        if !tightness_eigenvector_check(g, s, tau)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn brute_force_stage(run: &mut Run<'_>, g: &Graph, sets: &[VertexSet]) -> Result<(), CertifierError> {
    if g.vertex_count() > run.opts.brute_force_limit {
        return Ok(());
    }
    let brute = max_independent_brute(g, None, Some(run.opts.budget))?;
    let size = sets.first().map_or(0, VertexSet::len);
    run.check(
        "brute_force_agrees",
        brute.size == size && brute.witnesses == sets,
        format!("oracle: {} sets of size {}", brute.count, brute.size),
    );
    run.stage("brute_force");
    Ok(())
}

fn p33_table() -> Vec<Vec<i64>> {
    vec![
        vec![1, 36, 162, 54, 27],
        vec![27, -12, -6, 6, 11],
        vec![48, 8, -6, -9, 6],
        vec![120, 2, -6, 6, -3],
        vec![84, -4, 12, -6, -3],
    ]
}

fn certify_p33(run: &mut Run<'_>, seeds: SeedStrategy) -> Result<(), CertifierError> {
    let p = build_p33()?;
    let g = &p.graph;
    let n = g.vertex_count();
    run.check("vertex_count_280", n == 280, n.to_string());
    run.check("scheme_axioms", true, "identity, partition, symmetry, regularity, closure, commutativity");
    run.check(
        "class_valencies",
        p.scheme.valencies() == [1, 36, 162, 54, 27],
        format!("{:?}", p.scheme.valencies()),
    );
    run.stage("construct");

    let em = eigenmatrix(&p.scheme)?;
    run.check("eigenmatrix_table", em.modified() == p33_table(), format!("{:?}", em.modified()));
    run.stage("eigenmatrix");

    let (spectrum, mut ratio) = spectrum_stage(run, g)?;
    let from_table: Vec<(i64, usize)> = {
        let mut v: Vec<(i64, usize)> = em.class_eigenvalues(1).into_iter().zip(em.multiplicities.clone()).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    };
    run.check("spectrum_matches_eigenmatrix", spectrum.pairs == from_table, format!("{:?}", spectrum.pairs));
    let tau = spectrum.least;
    run.check("least_eigenvalue_multiplicity", (tau, spectrum.multiplicity(tau)) == (-12, 27), "");
    run.check("ratio_bound_70", ratio.bound == rat(70), ratio.bound.to_string());
    let bound = ratio.integral_bound().unwrap_or(0);

    let m = build_p33_m(&p.partitions);
    let r = rank(&m);
    run.check("rank_M_28", r == 28, r.to_string());
    let line = build_line_graph_complete(9)?;
    let l = line.adjacency_matrix();
    let mtm = m.transpose().mul(&m)?;
    let target = combination(36, &[(50, &ExactMatrix::identity(36)), (20, &ExactMatrix::ones(36, 36)), (-10, &l)])?;
    run.check("MTM_line_graph_identity", mtm == target, "MᵀM = 50I + 20J - 10L");
    let pairs = combinations(9, 2);
    let b = ExactMatrix::from_fn(9, 36, |v, e| if pairs[e].contains(&v) { rat(1) } else { rat(0) });
    run.check("MBT_2J", m.mul(&b.transpose())? == ExactMatrix::ones(280, 9).scale(&rat(2)), "");
    let row_sums_ok = (0..n).all(|x| m.row(x).iter().sum::<Rational>() == rat(9));
    run.check("M_row_sums_9", row_sums_ok, "");
    let lspec = integer_spectrum(&line)?;
    run.check(
        "line_graph_K9_spectrum",
        lspec.pairs == [(14, 1), (5, 8), (-2, 27)],
        format!("{:?}", lspec.pairs),
    );
    let a = g.adjacency_matrix();
    let (eigen, shifted_rank) = shifted_columns_span_eigenspace(&a, &m, &frac(1, 4), tau)?;
    run.check(
        "colspace_argument",
        eigen && shifted_rank == spectrum.multiplicity(tau),
        format!("columns of M - J/4 are {tau}-eigenvectors spanning dimension {shifted_rank}"),
    );
    run.stage("matrix_M");

    let s_sets: Vec<VertexSet> = {
        let mut v: Vec<VertexSet> = pairs.iter().map(|c| p.s_ij(c[0] as u8 + 1, c[1] as u8 + 1)).collect();
        v.sort();
        v
    };
    let s_tight = s_sets.iter().all(|s| s.len() == 70 && is_independent(g, s)) && tightness_all(g, &s_sets, tau)?;
    run.check("S_ij_tight", s_tight, "all 36 S_ij are independent eigenvector-tight sets of size 70");
    ratio.tight = s_tight;
    run.cert.ratio = Some(ratio);

    let basis = idempotents(&p.scheme, &em)?;
    let classes: Vec<ExactMatrix> = (0..5).map(|i| p.scheme.class_matrix(i)).collect();
    let mmt = m.mul(&m.transpose())?;
    let scheme_side = combination(n, &[(9, &classes[0]), (2, &classes[2]), (3, &classes[3]), (5, &classes[4])])?;
    run.check("MMT_scheme_identity", mmt == scheme_side, "MMᵀ = 9I + 2A_2 + 3A_3 + 5A_4");
    let e = &basis.idempotents;
    run.check("E0_is_J_over_v", e[0] == ExactMatrix::ones(n, n).scale(&frac(1, 280)), "");
    run.check(
        "MMT_idempotent_identity",
        mmt == combination(n, &[(630, &e[0]), (70, &e[1])])?,
        "MMᵀ = 630E_0 + 70E_1",
    );
    run.stage("idempotents");

    // The single seed pair of the hand computation.
    let (a0, b0) = p.scheme.class_pairs(2)[0];
    let seed = VertexSet::from_indices(n, [a0, b0]);
    let opts = EnumerationOptions {
        rank_cap: run.opts.rank_cap,
        compute_h: true,
        minimize_c0: true,
    };
    let single = colspace_enumerate(g, &m, &seed, bound, &opts)?;
    let containing: Vec<VertexSet> = s_sets.iter().filter(|s| seed.is_subset(s)).cloned().collect();
    run.check("seed_pair_rank_C_6", single.rank_c == 6, format!("{} + {}", g.label(a0), g.label(b0)));
    run.check(
        "seed_pair_three_zero_one_candidates",
        single.zero_one_candidates == 3 && single.candidates_tested == 64,
        format!("{} of {}", single.zero_one_candidates, single.candidates_tested),
    );
    run.check(
        "seed_pair_two_S_ij",
        single.valid_sets == containing && containing.len() == 2,
        format!("{} sets", single.valid_sets.len()),
    );
    let h_ok = single.h_vectors.iter().all(|h| {
        let z = m.mul_vec(h).ok();
        z.is_some_and(|z| single.valid_sets.iter().any(|s| characteristic_vector(s) == z))
    });
    run.check("seed_pair_h_vectors", h_ok && single.h_vectors.len() == 2, "z = Mh for each set found");
    match &single.c0_rows {
        Some(rows) => run.check(
            "C0_submatrix",
            true,
            format!("greedy C₀ with {} rows: {:?}", rows.len(), rows.iter().map(|&r| g.label(r)).collect::<Vec<_>>()),
        ),
        None => run.check("C0_submatrix", false, "no row subset forces the outcome"),
    }
    run.stage("seed_pair");

    let (sets, summary) =
        enumerate_all_max_independent(g, &m, bound, seeds, Some(&p.scheme), run.opts.jobs, run.opts.rank_cap)?;
    run.cert.enumeration = Some(summary);
    run.stage("enumerate");
    run.check("max_sets_are_S_ij", sets == s_sets, format!("{} sets", sets.len()));
    run.check("max_set_count_36", sets.len() == 36, sets.len().to_string());
    run.check("max_sets_tight", tightness_all(g, &sets, tau)?, "");
    let expected_dist = [1, 0, 36, 18, 15];
    run.check(
        "inner_distribution_per_vertex",
        sets.iter().all(|s| verify_inner_distribution(&p.scheme, s, &expected_dist)),
        "(1, 0, 36, 18, 15) at every member",
    );
    let lemma = mmt.scale(&frac(1, 36));
    let coeffs = vec![frac(1, 4), rat(0), frac(1, 18), frac(1, 12), frac(5, 36)];
    let mut seidel_ok = true;
    for s in &sets {
        let r = seidel_check(&p.scheme, &em, &basis, &characteristic_vector(s))?;
        seidel_ok &= r.equal && r.lhs == lemma && r.class_coefficients == coeffs;
    }
    run.check(
        "seidel_lemma_identity",
        seidel_ok,
        "Σ xᵀA_ix/(v v_i) A_i = I/4 + A_2/18 + A_3/12 + 5A_4/36 = MMᵀ/36 for every set",
    );
    run.stage("set_identities");
    if seeds == SeedStrategy::PairsInClass(2) {
        run.cert.note(
            "Completeness of pair seeds: every independent set of size 70 is tight, so Seidel's identity \
             forces 36 members in class A_2 with each member; every such set therefore contains an A_2 pair.",
        );
    }
    run.record_sets(g, &sets);
    Ok(())
}

fn certify_witt(run: &mut Run<'_>, seeds: SeedStrategy) -> Result<(), CertifierError> {
    let w = build_witt()?;
    let g = &w.graph;
    let n = g.vertex_count();
    run.check("golay_octads_759", w.octad_count == 759, w.octad_count.to_string());
    run.check("blocks_77", n == 77, n.to_string());
    run.check("steiner_3_22_6_1", true, "every 3-set of points lies in exactly one block");
    let per_point = (0..22).all(|c| w.m.column(c).iter().sum::<Rational>() == rat(21));
    run.check("blocks_per_point_21", per_point, "");
    run.stage("construct");

    let (spectrum, mut ratio) = spectrum_stage(run, g)?;
    run.check(
        "witt_spectrum",
        spectrum.pairs == [(16, 1), (2, 55), (-6, 21)],
        format!("{:?}", spectrum.pairs),
    );
    let srg = (0..n).all(|x| {
        (x + 1..n).all(|y| {
            let common = g.neighbors(x).intersection_len(g.neighbors(y));
            common == if g.adjacent(x, y) { 0 } else { 4 }
        })
    });
    run.check("strongly_regular_lambda0_mu4", srg, "");
    let tau = spectrum.least;
    run.check("ratio_bound_21", ratio.bound == rat(21), ratio.bound.to_string());
    let bound = ratio.integral_bound().unwrap_or(0);

    let m = &w.m;
    let mtm = m.transpose().mul(m)?;
    run.check(
        "MTM_16I_5J",
        mtm == combination(22, &[(16, &ExactMatrix::identity(22)), (5, &ExactMatrix::ones(22, 22))])?,
        "",
    );
    run.check("rank_M_22", rank(m) == 22, "");
    let a = g.adjacency_matrix();
    let (eigen, shifted_rank) = shifted_columns_span_eigenspace(&a, m, &frac(3, 11), tau)?;
    run.check(
        "colspace_argument",
        eigen && shifted_rank == spectrum.multiplicity(tau),
        format!("columns of M - 3J/11 are {tau}-eigenvectors spanning dimension {shifted_rank}"),
    );
    let mut designs_ok = true;
    for alpha in 0..n {
        let rows = g.neighbors(alpha).to_vec();
        let outside: Vec<usize> = (0..22).filter(|&c| m.get(alpha, c).is_zero()).collect();
        let nmat = m.select_rows(&rows).select_cols(&outside);
        let block_sizes = (0..nmat.rows()).all(|r| nmat.row(r).iter().sum::<Rational>() == rat(6));
        let pair_counts = (0..16).all(|x| {
            (x + 1..16).all(|y| (0..nmat.rows()).filter(|&r| !nmat.get(r, x).is_zero() && !nmat.get(r, y).is_zero()).count() == 2)
        });
        let zero_inside = (0..22)
            .filter(|c| !outside.contains(c))
            .all(|c| rows.iter().all(|&r| m.get(r, c).is_zero()));
        designs_ok &= rows.len() == 16 && block_sizes && pair_counts && zero_inside && rank(&nmat) == 16;
    }
    run.check(
        "derived_2_16_6_2_designs",
        designs_ok,
        "for every block, the 16 disjoint blocks form an invertible 2-(16,6,2) design",
    );
    let pencils: Vec<VertexSet> = {
        let mut v: Vec<VertexSet> = (0..22)
            .map(|c| VertexSet::from_indices(n, (0..n).filter(|&r| !m.get(r, c).is_zero())))
            .collect();
        v.sort();
        v
    };
    let pencils_tight = tightness_all(g, &pencils, tau)?;
    run.check("pencils_tight", pencils_tight, "each point pencil meets the bound with a τ-eigenvector");
    ratio.tight = pencils_tight;
    run.cert.ratio = Some(ratio);
    run.stage("matrix_M");

    let (sets, summary) = enumerate_all_max_independent(g, m, bound, seeds, None, run.opts.jobs, run.opts.rank_cap)?;
    run.cert.enumeration = Some(summary);
    run.stage("enumerate");
    run.check("max_sets_are_pencils", sets == pencils, format!("{} sets", sets.len()));
    run.check("max_set_count_22", sets.len() == 22, sets.len().to_string());
    run.check("max_sets_tight", tightness_all(g, &sets, tau)?, "");

    let scheme = two_class_scheme(g)?;
    let em = eigenmatrix(&scheme)?;
    run.check(
        "witt_scheme_eigenmatrix",
        em.class_eigenvalues(1) == [16, -6, 2] && em.multiplicities == [1, 21, 55],
        format!("{:?}", em.modified()),
    );
    run.check(
        "pencil_inner_distribution",
        sets.iter().all(|s| verify_inner_distribution(&scheme, s, &[1, 0, 20])),
        "(1, 0, 20) at every member",
    );
    let mut localized = true;
    for s in &sets {
        let alpha = s.first().expect("nonempty");
        let r = support_localization_check(m, g, s, alpha)?;
        localized &= r.holds && r.outside_independent && r.canonical_support.len() == 1;
    }
    run.check("support_localization", localized, "supp(h) is one point of α for every pencil");
    run.stage("set_identities");
    run.record_sets(g, &sets);
    Ok(())
}

/// `{I, A, J - I - A}` for a strongly regular graph.
fn two_class_scheme(g: &Graph) -> Result<AssociationScheme, CertifierError> {
    let n = g.vertex_count();
    let mut rest = BitMatrix::new(n);
    for x in 0..n {
        for y in 0..n {
            if x != y && !g.adjacent(x, y) {
                rest.set(x, y);
            }
        }
    }
    Ok(AssociationScheme::from_classes(vec![
        BitMatrix::identity(n),
        g.adjacency_bits().clone(),
        rest,
    ])?)
}

/// What the Kneser and q-Kneser drivers share.
struct SubspaceFamily<'a> {
    graph: &'a Graph,
    /// Vertices × points.
    m: ExactMatrix,
    points: usize,
    valency_formula: i64,
    tau_formula: i64,
    bound_formula: usize,
    /// `v > 2k`.
    strict: bool,
    /// Rows inside a complement of the first vertex.
    complement_rows: Vec<usize>,
}

fn certify_subspace_family(
    run: &mut Run<'_>,
    fam: SubspaceFamily<'_>,
    seeds: SeedStrategy,
) -> Result<(), CertifierError> {
    let g = fam.graph;
    let m = &fam.m;
    let (spectrum, mut ratio) = spectrum_stage(run, g)?;
    let k = g.valency()? as i64;
    let tau = spectrum.least;
    run.check("valency_formula", k == fam.valency_formula, format!("{k} vs {}", fam.valency_formula));
    run.check("least_eigenvalue_formula", tau == fam.tau_formula, format!("{tau} vs {}", fam.tau_formula));
    run.check(
        "ratio_bound_formula",
        ratio.integral_bound() == Some(fam.bound_formula),
        format!("{} vs {}", ratio.bound, fam.bound_formula),
    );
    let bound = ratio.integral_bound().unwrap_or(0);
    let r = rank(m);
    run.check("rank_W_equals_points", r == fam.points, format!("{r} of {}", fam.points));
    let n = g.vertex_count();
    let c = Rational::new(BigInt::from(bound), BigInt::from(n));
    let a = g.adjacency_matrix();
    let (eigen, shifted_rank) = shifted_columns_span_eigenspace(&a, m, &c, tau)?;
    let multiplicity = spectrum.multiplicity(tau);
    let spans = eigen && shifted_rank == multiplicity && shifted_rank == fam.points - 1;
    let detail = format!(
        "columns of M - ({c})J are {tau}-eigenvectors spanning dimension {shifted_rank} of {multiplicity}"
    );
    if fam.strict || spans {
        run.check("colspace_argument", spans, detail);
    } else {
        run.check("shifted_columns_are_eigenvectors", eigen, detail);
    }
    let stars: Vec<VertexSet> = {
        let mut v: Vec<VertexSet> = (0..fam.points)
            .map(|p| VertexSet::from_indices(n, (0..n).filter(|&x| !m.get(x, p).is_zero())))
            .collect();
        v.sort();
        v
    };
    let stars_tight = tightness_all(g, &stars, tau)?;
    run.check("stars_tight", stars_tight, "every star meets the bound with a τ-eigenvector");
    ratio.tight = stars_tight;
    run.cert.ratio = Some(ratio);
    if fam.strict {
        let rows = &fam.complement_rows;
        let mb = m.select_rows(rows);
        let nonzero = mb.nonzero_columns();
        let independent = rank(&mb.select_cols(&nonzero)) == nonzero.len();
        run.check(
            "complement_columns_independent",
            independent,
            format!("{} rows, {} nonzero columns", rows.len(), nonzero.len()),
        );
    }
    run.stage("matrix_M");

    let sets = if spans {
        let (sets, summary) =
            enumerate_all_max_independent(g, m, bound, seeds, None, run.opts.jobs, run.opts.rank_cap)?;
        run.cert.enumeration = Some(summary);
        sets
    } else {
        // The tight sets are not confined to the column space of M, so only
        // exhaustive search is complete.
        if n > run.opts.brute_force_limit {
            return Err(CertifierError::Mismatch(format!(
                "column space of M misses part of the {tau}-eigenspace and {n} vertices exceed the brute-force limit {}",
                run.opts.brute_force_limit
            )));
        }
        run.cert.note("column space of M is smaller than the τ-eigenspace; maximum sets come from exhaustive search");
        max_independent_brute(g, None, Some(run.opts.budget))?.witnesses
    };
    run.stage("enumerate");
    run.check("max_sets_tight", tightness_all(g, &sets, tau)?, "");
    let mut localized = 0;
    for s in &sets {
        let alpha = s.first().expect("nonempty");
        // Sets outside colspace(M) can only occur at v = 2k.
        if let Ok(r) = support_localization_check(m, g, s, alpha) {
            if r.holds && r.outside_independent {
                localized += 1;
            }
        }
    }
    if fam.strict {
        run.check("max_sets_are_stars", sets == stars, format!("{} sets, {} points", sets.len(), fam.points));
        run.check(
            "support_localization",
            localized == sets.len(),
            format!("{localized} of {} sets", sets.len()),
        );
    } else {
        let all_stars = stars.iter().all(|s| sets.contains(s));
        run.check("stars_among_max_sets", all_stars, "");
        run.cert.note(format!(
            "v = 2k: {} maximum sets, of which {} are stars; the support argument localizes {} of them. \
             The characterization needs v > 2k.",
            sets.len(),
            stars.len(),
            localized
        ));
    }
    run.stage("set_identities");
    brute_force_stage(run, g, &sets)?;
    run.record_sets(g, &sets);
    Ok(())
}

fn q_pow(q: u32, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn certify_q_kneser(run: &mut Run<'_>, q: u32, v: usize, k: usize, seeds: SeedStrategy) -> Result<(), CertifierError> {
    let (g, spaces) = build_q_kneser(q, v, k)?;
    let m = build_w1k(q, v, k)?.transpose();
    let points = enumerate_subspaces(q, v, 1)?;
    let (q64, v64, k64) = (u64::from(q), v as u64, k as u64);
    let valency = q_pow(q, k * k) * gauss_binomial(q64, v64 - k64, k64);
    let tau = -(q_pow(q, k * (k - 1)) * gauss_binomial(q64, v64 - k64 - 1, k64 - 1));
    let bound = gauss_binomial(q64, v64 - 1, k64 - 1);
    let w = build_w1k(q, v, k)?;
    let col_sums = (0..w.cols()).all(|c| w.column(c).iter().sum::<Rational>() == Rational::from_integer(q_integer(q64, k64)));
    run.check("W_column_sums", col_sums, format!("[k] = {}", q_integer(q64, k64)));
    run.check(
        "vertex_count_gaussian_binomial",
        BigInt::from(spaces.len()) == gauss_binomial(q64, v64, k64),
        spaces.len().to_string(),
    );
    run.stage("construct");
    let complement_rows = complement_of(&spaces[0], &spaces, q, v)?;
    let fam = SubspaceFamily {
        graph: &g,
        m,
        points: points.len(),
        valency_formula: to_i64(&valency)?,
        tau_formula: to_i64(&tau)?,
        bound_formula: to_usize(&bound)?,
        strict: v > 2 * k,
        complement_rows,
    };
    certify_subspace_family(run, fam, seeds)
}

/// Indices of the `k`-spaces inside the coordinate complement of `alpha`.
fn complement_of(alpha: &Subspace, spaces: &[Subspace], q: u32, v: usize) -> Result<Vec<usize>, CertifierError> {
    let pivots: Vec<usize> = alpha
        .basis_rows()
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
        .collect();
    let units: Vec<Vec<u32>> = (0..v)
        .filter(|c| !pivots.contains(c))
        .map(|c| (0..v).map(|i| u32::from(i == c)).collect())
        .collect();
    let b = Subspace::span(q, v, &units)?;
    if b.intersection_dim(alpha) != 0 {
        return Err(ConstructionError::ConstructionFailed("complement meets α".into()).into());
    }
    Ok((0..spaces.len()).filter(|&i| b.contains(&spaces[i])).collect())
}

fn certify_kneser(run: &mut Run<'_>, v: usize, k: usize, seeds: SeedStrategy) -> Result<(), CertifierError> {
    let kn = build_kneser(v, k)?;
    let g = &kn.graph;
    run.stage("construct");
    let alpha = &kn.subsets[0];
    let complement_rows: Vec<usize> = (0..kn.subsets.len())
        .filter(|&i| kn.subsets[i].iter().all(|p| !alpha.contains(p)))
        .collect();
    let tau = if v > k { -(binomial(v - k - 1, k - 1) as i64) } else { 0 };
    let fam = SubspaceFamily {
        graph: g,
        m: kn.m(),
        points: v,
        valency_formula: binomial(v - k, k) as i64,
        tau_formula: tau,
        bound_formula: binomial(v - 1, k - 1),
        strict: v > 2 * k,
        complement_rows,
    };
    certify_subspace_family(run, fam, seeds)
}

fn double_factorial(n: usize) -> usize {
    (1..=n).rev().step_by(2).product::<usize>().max(1)
}

/// Maximum independent sets of `L(K_n)` for even `n`, via the `τ = -2`
/// eigenspace.
fn line_even_sets(run: &Run<'_>, g: &Graph, seeds: SeedStrategy) -> Result<Vec<VertexSet>, CertifierError> {
    let n = g.vertex_count();
    let a = g.adjacency_matrix();
    let eig = nullspace_basis(&a.shift_diagonal(&rat(-2))?);
    let m = ExactMatrix::ones(n, 1).hstack(&eig)?;
    let k = g.valency()? as i64;
    let bound = ratio_bound(n, k, -2)?
        .integral_bound()
        .ok_or_else(|| CertifierError::Mismatch("line graph bound is not integral".into()))?;
    let (sets, _) = enumerate_all_max_independent(g, &m, bound, seeds, None, run.opts.jobs, run.opts.rank_cap)?;
    Ok(sets)
}

fn certify_line(run: &mut Run<'_>, n: usize, seeds: SeedStrategy) -> Result<(), CertifierError> {
    if n < 4 {
        return Err(ConstructionError::DimensionError(format!("line-graph certification needs n >= 4, got {n}")).into());
    }
    let g = build_line_graph_complete(n)?;
    let v = g.vertex_count();
    run.stage("construct");
    let (spectrum, mut ratio) = spectrum_stage(run, &g)?;
    let expected = vec![(2 * (n as i64 - 2), 1), (n as i64 - 4, n - 1), (-2, v - n)];
    run.check("line_graph_spectrum", spectrum.pairs == expected, format!("{:?}", spectrum.pairs));
    let tau = spectrum.least;
    let pairs = combinations(n, 2);
    let sets = if n % 2 == 0 {
        let sets = line_even_sets(run, &g, seeds)?;
        ratio.tight = tightness_all(&g, &sets, tau)?;
        run.check("max_sets_tight", ratio.tight, "");
        run.check(
            "perfect_matching_count",
            sets.len() == double_factorial(n - 1),
            format!("{} = {}!!", sets.len(), n - 1),
        );
        let f = round_robin_one_factorization(n)?;
        let target = Graph::complete(n - 1);
        let map: Vec<usize> = f.colour.iter().map(|c| c - 1).collect();
        run.check(
            "round_robin_homomorphism",
            check_homomorphism(&g, &target, &map),
            format!("L(K_{n}) → K_{}", n - 1),
        );
        let matchings_found = f
            .matchings()
            .iter()
            .all(|mt| sets.contains(&VertexSet::from_indices(v, mt.iter().copied())));
        run.check("one_factors_are_max_sets", matchings_found, "");
        sets
    } else {
        // Not tight: the bound n/2 is fractional. A matching of size (n-1)/2
        // misses some point i, so it is a perfect matching of K_n - i.
        run.cert.note(format!(
            "n odd: bound {} is not an integer; maximum sets are perfect matchings of K_n minus one point, \
             enumerated in each copy of L(K_{})",
            ratio.bound,
            n - 1
        ));
        let mut all = std::collections::BTreeSet::new();
        for i in 0..n {
            let keep: Vec<usize> = (0..pairs.len()).filter(|&x| !pairs[x].contains(&i)).collect();
            let sub = g.induced(&keep);
            for s in line_even_sets(run, &sub, SeedStrategy::Singletons)? {
                all.insert(VertexSet::from_indices(v, s.iter().map(|x| keep[x])));
            }
        }
        let sets: Vec<VertexSet> = all.into_iter().collect();
        let size_ok = sets.iter().all(|s| s.len() == ratio.floor() && is_independent(&g, s));
        run.check("max_sets_floor_bound", size_ok, format!("size {}", ratio.floor()));
        run.check(
            "near_perfect_matching_count",
            sets.len() == n * double_factorial(n - 2),
            format!("{} = {n}·{}!!", sets.len(), n - 2),
        );
        sets
    };
    run.cert.ratio = Some(ratio);
    run.stage("enumerate");
    brute_force_stage(run, &g, &sets)?;
    run.record_sets(&g, &sets);
    Ok(())
}
