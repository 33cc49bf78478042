use super::*;
use crate::catalog;
use crate::jacobian::TruncatedAlgebra;
use crate::quiver::{b_matrix, quivers_isomorphic};
use crate::random;
use crate::rational::q;
use rand::Rng;

fn arrow_triples(q: &Quiver) -> Vec<(String, String, String)> {
    let mut v: Vec<_> = q
        .arrows()
        .iter()
        .map(|a| (a.name.clone(), q.vertex_name(a.source).to_string(), q.vertex_name(a.target).to_string()))
        .collect();
    v.sort();
    v
}

fn triples(list: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
    let mut v: Vec<_> = list.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect();
    v.sort();
    v
}

fn pot(p: &Qp, terms: &[(i64, &[&str])]) -> Element {
    let t: Vec<(crate::rational::Q, &[&str])> = terms.iter().map(|(c, x)| (q(*c), *x)).collect();
    cyclic_normal_form(&Element::from_terms(p.quiver().clone(), p.truncation(), &t).unwrap()).unwrap()
}

#[test]
fn validation_reports() {
    let r = validate_qp(&catalog::a3(8).unwrap());
    assert!(r.valid && r.reduced);
    let r = validate_qp(&catalog::three_cycle(8).unwrap());
    assert!(r.valid && r.reduced);
    assert!(r.two_cycles.iter().all(|(_, v)| v.is_empty()));
    let qv = catalog::a3(8).unwrap().quiver().clone();
    let single = Element::arrow(qv.clone(), 8, 0);
    assert!(Qp::unfrozen(qv, single).is_err());
    let r = validate_qp(&catalog::two_cycle(8).unwrap());
    assert!(r.valid && !r.reduced);
}

#[test]
fn avoid_vertex_rotation() {
    let p = catalog::three_cycle(8).unwrap();
    let w = normalize_avoid_vertex(&p, 0).unwrap();
    let t = w.terms().keys().next().unwrap();
    assert_ne!(t.start(), 0);
    assert_eq!(cyclic_normal_form(&w).unwrap(), *p.potential());
    let z = catalog::three_cycle_zero(8).unwrap();
    assert!(normalize_avoid_vertex(&z, 1).unwrap().is_zero());
}

#[test]
fn premutation_of_a3() {
    let p = catalog::a3(8).unwrap();
    let m = premutate(&p, 1).unwrap();
    let nq = m.qp.quiver();
    assert_eq!(arrow_triples(nq), triples(&[("[ab]", "1", "3"), ("a*", "2*", "1"), ("b*", "3", "2*")]));
    assert_eq!(*m.qp.potential(), pot(&m.qp, &[(1, &["a*", "[ab]", "b*"])]));
    assert!(m.derivative_case_violations().unwrap().is_empty());

    let m2 = premutate(&m.qp, 1).unwrap();
    let q2 = m2.qp.quiver();
    assert_eq!(
        arrow_triples(q2),
        triples(&[("[ab]", "1", "3"), ("[b*a*]", "3", "1"), ("a", "1", "2"), ("b", "2", "3")])
    );
    assert_eq!(*m2.qp.potential(), pot(&m2.qp, &[(1, &["[ab]", "[b*a*]"]), (1, &["b", "[b*a*]", "a"])]));
    let s = split_reduce(&m2.qp).unwrap();
    assert!(s.verify().unwrap());
    assert!(s.reduced.potential().is_zero());
    assert!(quivers_isomorphic(s.reduced.quiver(), p.quiver()).is_some());
}

#[test]
fn premutation_at_isolated_vertex() {
    let qv = Arc::new(Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2")]).unwrap());
    let p = Qp::zero(qv, 6).unwrap();
    let m = premutate(&p, 2).unwrap();
    assert_eq!(m.qp.quiver().vertex_name(2), "3*");
    assert_eq!(m.qp.quiver().num_arrows(), 1);
    assert!(m.qp.potential().is_zero());
}

#[test]
fn preconditions() {
    let p = catalog::two_cycle(6).unwrap();
    assert!(matches!(premutate(&p, 0), Err(Error::Precondition { .. })));
    let p = catalog::three_cycle(6).unwrap();
    let frozen = Qp::new(p.quiver().clone(), p.potential().clone(), [1].into()).unwrap();
    assert!(matches!(premutate(&frozen, 1), Err(Error::Precondition { .. })));
    assert!(matches!(mutate(&catalog::two_cycle(6).unwrap(), 0), Err(Error::Precondition { .. })));
}

#[test]
fn reduction_example() {
    let p = catalog::reduction_example(8).unwrap();
    let s = split_reduce(&p).unwrap();
    assert_eq!(s.trivial_pair_names(), vec![("c".to_string(), "d".to_string())]);
    assert_eq!(arrow_triples(s.reduced.quiver()), triples(&[("a", "1", "2"), ("b", "2", "3")]));
    assert!(s.reduced.potential().is_zero());
    assert!(s.verify().unwrap());
    assert!(s.equivalence.is_invertible());
}

#[test]
fn reduction_of_plain_two_cycle() {
    let s = split_reduce(&catalog::two_cycle(6).unwrap()).unwrap();
    assert_eq!(s.reduced.quiver().num_vertices(), 2);
    assert_eq!(s.reduced.quiver().num_arrows(), 0);
    assert!(s.verify().unwrap());
}

#[test]
fn reduction_with_scaled_and_mixed_two_cycles() {
    // two arrows each way between 1 and 2, mixed quadratic part, plus cubic terms through a third vertex
    let qv = Arc::new(
        Quiver::from_names(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("a2", "1", "2"), ("b", "2", "1"), ("b2", "2", "1"), ("x", "2", "3"), ("y", "3", "1")],
        )
        .unwrap(),
    );
    let w = Element::from_terms(
        qv.clone(),
        9,
        &[
            (q(2), &["a", "b"]),
            (q(3), &["a", "b2"]),
            (q(1), &["a2", "b"]),
            (q(-1), &["a2", "b2"]),
            (q(1), &["a", "x", "y"]),
            (q(5), &["a2", "x", "y"]),
            (q(1), &["a", "b", "a", "b2"]),
        ],
    )
    .unwrap();
    let p = Qp::unfrozen(qv, w).unwrap();
    let s = split_reduce(&p).unwrap();
    assert_eq!(s.trivial_pairs.len(), 2);
    assert!(s.verify().unwrap());
    assert!(s.reduced.is_reduced());
    assert_eq!(s.reduced.quiver().num_arrows(), 2);
}

#[test]
fn reduced_input_is_fixed() {
    let p = catalog::three_cycle(8).unwrap();
    let s = split_reduce(&p).unwrap();
    assert!(s.trivial_pairs.is_empty());
    assert!(s.equivalence.is_identity());
    assert_eq!(s.reduced, p);
}

#[test]
fn mutation_examples() {
    let p = catalog::a3(8).unwrap();
    let m = mutate(&p, 1).unwrap();
    assert_eq!(m.reduced(), &m.premutation.qp);
    let back = mutate(m.reduced(), 1).unwrap();
    assert!(back.reduced().potential().is_zero());
    assert!(quivers_isomorphic(back.reduced().quiver(), p.quiver()).is_some());

    let t = catalog::three_cycle(8).unwrap();
    let m = mutate(&t, 1).unwrap();
    let r = m.reduced();
    assert_eq!(arrow_triples(r.quiver()), triples(&[("a*", "2*", "1"), ("b*", "3", "2*")]));
    assert!(r.potential().is_zero());
}

#[test]
fn rigidity_examples() {
    assert_eq!(
        is_rigid_truncated(&catalog::a3(8).unwrap()).unwrap(),
        RigidityVerdict::RigidCertified { dim: 6, nilpotency: 3 }
    );
    assert_eq!(
        is_rigid_truncated(&catalog::three_cycle(8).unwrap()).unwrap(),
        RigidityVerdict::RigidCertified { dim: 6, nilpotency: 2 }
    );
    match is_rigid_truncated(&catalog::three_cycle_zero(8).unwrap()).unwrap() {
        RigidityVerdict::NotRigid { witness, degree } => {
            assert_eq!(degree, 3);
            assert_eq!(witness, "a b c");
        }
        other => panic!("unexpected verdict {other:?}"),
    }
}

fn random_reduced_qp(rng: &mut random::TestRng, n: usize) -> Qp {
    let qv = Arc::new(random::random_cyclic_quiver(rng, 4, 2));
    let w = random::random_potential(rng, &qv, n, 4, 3, 5);
    Qp::unfrozen(qv, w).unwrap()
}

fn admissible(p: &Qp) -> Vec<usize> {
    (0..p.quiver().num_vertices()).filter(|&k| p.quiver().two_cycle_through(k).is_none()).collect()
}

#[test]
fn premutated_derivative_cases_on_random_qps() {
    let mut rng = random::rng(11);
    for _ in 0..30 {
        let p = random_reduced_qp(&mut rng, 8);
        let ks = admissible(&p);
        if ks.is_empty() {
            continue;
        }
        let k = ks[rng.gen_range(0..ks.len())];
        let m = premutate(&p, k).unwrap();
        assert_eq!(m.derivative_case_violations().unwrap(), Vec::<String>::new());
    }
}

#[test]
fn double_mutation_and_fz_compatibility() {
    let mut rng = random::rng(5);
    let mut checked = 0;
    for _ in 0..12 {
        let p = random_reduced_qp(&mut rng, 8);
        let ks = admissible(&p);
        if ks.is_empty() {
            continue;
        }
        let k = ks[rng.gen_range(0..ks.len())];
        let once = mutate(&p, k).unwrap();
        let r = once.reduced();
        assert!(r.quiver().two_cycle_through(k).is_none());
        if !p.quiver().has_two_cycles() && !r.quiver().has_two_cycles() {
            assert_eq!(b_matrix(r.quiver()).unwrap().entries, b_matrix(p.quiver()).unwrap().mutate(k).entries);
        }
        if r.quiver().two_cycle_through(k).is_some() {
            continue;
        }
        let twice = mutate(r, k).unwrap();
        let r2 = twice.reduced();
        assert!(quivers_isomorphic(r2.quiver(), p.quiver()).is_some());
        let d1 = TruncatedAlgebra::build(&p.with_truncation(6), 6, false).unwrap();
        let d2 = TruncatedAlgebra::build(&r2.with_truncation(6), 6, false).unwrap();
        assert_eq!(d1.dims_by_degree()[..6], d2.dims_by_degree()[..6]);
        checked += 1;
    }
    assert!(checked > 3);
}

#[test]
fn split_preserves_quotient_dims() {
    let p = catalog::reduction_example(8).unwrap();
    let s = split_reduce(&p).unwrap();
    let a = TruncatedAlgebra::build(&p, 8, false).unwrap();
    let b = TruncatedAlgebra::build(&s.reduced, 8, false).unwrap();
    assert_eq!(a.dims_by_degree(), b.dims_by_degree());
}
