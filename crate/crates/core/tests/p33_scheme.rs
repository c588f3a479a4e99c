use std::sync::OnceLock;

use ratiocert::constructions::{build_line_graph_complete, build_p33, build_p33_m, combinations, P33Construction};
use ratiocert::exact_linalg::{frac, rank, rat, ExactMatrix};
use ratiocert::graph::{characteristic_vector, integer_spectrum, is_independent};
use ratiocert::schemes::{eigenmatrix, idempotents, inner_distribution, seidel_check, Eigenmatrix, IdempotentBasis};

fn p33() -> &'static P33Construction {
    static P: OnceLock<P33Construction> = OnceLock::new();
    P.get_or_init(|| build_p33().unwrap())
}

fn eigen() -> &'static (Eigenmatrix, IdempotentBasis) {
    static E: OnceLock<(Eigenmatrix, IdempotentBasis)> = OnceLock::new();
    E.get_or_init(|| {
        let em = eigenmatrix(&p33().scheme).unwrap();
        let basis = idempotents(&p33().scheme, &em).unwrap();
        (em, basis)
    })
}

/// Brute-force meet count used as an oracle for the class structure.
fn meet(a: &str, b: &str) -> usize {
    let cells = |s: &str| -> Vec<Vec<char>> { s.split('|').map(|c| c.chars().collect()).collect() };
    let (ca, cb) = (cells(a), cells(b));
    ca.iter()
        .flat_map(|x| cb.iter().map(move |y| x.iter().any(|p| y.contains(p))))
        .filter(|&m| m)
        .count()
}

#[test]
fn construction_counts_and_valencies() {
    let p = p33();
    assert_eq!(p.graph.vertex_count(), 280);
    assert_eq!(p.graph.valency().unwrap(), 36);
    assert_eq!(p.scheme.valencies(), &[1, 36, 162, 54, 27]);
    let labels = p.graph.labels();
    for (x, y) in [(0, 1), (5, 200), (17, 279), (100, 101)] {
        let m = meet(&labels[x], &labels[y]);
        let class = [3, 9, 7, 6, 5].iter().position(|&c| c == m).unwrap();
        assert_eq!(p.scheme.relation(x, y), class);
    }
}

#[test]
fn mathon_rosa_table() {
    let (em, _) = eigen();
    assert_eq!(em.multiplicities, vec![1, 27, 48, 120, 84]);
    assert_eq!(
        em.modified(),
        vec![
            vec![1, 36, 162, 54, 27],
            vec![27, -12, -6, 6, 11],
            vec![48, 8, -6, -9, 6],
            vec![120, 2, -6, 6, -3],
            vec![84, -4, 12, -6, -3],
        ]
    );
}

#[test]
fn m_identities() {
    let p = p33();
    let m = build_p33_m(&p.partitions);
    assert_eq!(rank(&m), 28);
    let l = build_line_graph_complete(9).unwrap();
    let lhs = m.transpose().mul(&m).unwrap();
    let rhs = ExactMatrix::identity(36)
        .scale(&rat(50))
        .add(&ExactMatrix::ones(36, 36).scale(&rat(20)))
        .unwrap()
        .sub(&l.adjacency_matrix().scale(&rat(10)))
        .unwrap();
    assert_eq!(lhs, rhs);
    // B: 9 × 36 vertex-edge incidence of K_9.
    let pairs = combinations(9, 2);
    let b = ExactMatrix::from_fn(9, 36, |v, e| if pairs[e].contains(&v) { rat(1) } else { rat(0) });
    assert_eq!(m.mul(&b.transpose()).unwrap(), ExactMatrix::ones(280, 9).scale(&rat(2)));
    assert_eq!(integer_spectrum(&l).unwrap().pairs, vec![(14, 1), (5, 8), (-2, 27)]);
}

#[test]
fn mmt_in_the_bose_mesner_algebra() {
    let p = p33();
    let (_, basis) = eigen();
    let m = build_p33_m(&p.partitions);
    let mmt = m.mul(&m.transpose()).unwrap();
    let mut combo = ExactMatrix::identity(280).scale(&rat(9));
    for (i, c) in [(2, 2), (3, 3), (4, 5)] {
        combo = combo.add(&p.scheme.class_matrix(i).scale(&rat(c))).unwrap();
    }
    assert_eq!(mmt, combo);
    let e = &basis.idempotents;
    assert_eq!(e[0], ExactMatrix::ones(280, 280).scale(&frac(1, 280)));
    assert_eq!(mmt, e[0].scale(&rat(630)).add(&e[1].scale(&rat(70))).unwrap());
}

#[test]
fn seidel_for_s12() {
    let p = p33();
    let (em, basis) = eigen();
    let s = p.s_ij(1, 2);
    assert_eq!(s.len(), 70);
    assert!(is_independent(&p.graph, &s));
    let r = seidel_check(&p.scheme, em, basis, &characteristic_vector(&s)).unwrap();
    assert!(r.equal);
    assert_eq!(r.class_coefficients, vec![frac(1, 4), rat(0), frac(1, 18), frac(1, 12), frac(5, 36)]);
    let m = build_p33_m(&p.partitions);
    assert_eq!(r.lhs, m.mul(&m.transpose()).unwrap().scale(&frac(1, 36)));
    assert_eq!(
        inner_distribution(&p.scheme, &s).unwrap(),
        vec![rat(1), rat(0), rat(36), rat(18), rat(15)]
    );
}
