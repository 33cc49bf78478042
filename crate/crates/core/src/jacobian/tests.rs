use super::*;
use super::oracle::brute_force_dims;
use crate::catalog;
use crate::qp::{mutate, split_reduce};
use crate::quiver::Quiver;

fn certify(p: &Qp) -> Finiteness {
    finiteness_certificate(p, p.truncation()).unwrap()
}

#[test]
fn examples_dims() {
    let a3 = catalog::a3(8).unwrap();
    assert_eq!(certify(&a3), Finiteness::Finite { dim: 6, nilpotency: 3 });
    let tri = catalog::three_cycle(8).unwrap();
    assert_eq!(certify(&tri), Finiteness::Finite { dim: 6, nilpotency: 2 });
    let mu = mutate(&a3, 1).unwrap();
    assert!(matches!(certify(mu.reduced()), Finiteness::Finite { dim: 6, .. }));
    let mu = mutate(&tri, 1).unwrap();
    assert!(matches!(certify(mu.reduced()), Finiteness::Finite { dim: 6, .. }));
    match certify(&catalog::three_cycle_zero(8).unwrap()) {
        Finiteness::Inconclusive { dims, .. } => {
            assert_eq!(dims, vec![3; 9]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn against_brute_force() {
    for p in [
        catalog::a3(5).unwrap(),
        catalog::three_cycle(5).unwrap(),
        catalog::reduction_example(5).unwrap(),
        catalog::three_cycle_zero(5).unwrap(),
    ] {
        let full = TruncatedAlgebra::build(&p, 5, false).unwrap();
        assert_eq!(full.dims_by_degree().to_vec(), brute_force_dims(&p, 5));
    }
}

#[test]
fn random_against_brute_force() {
    let mut rng = crate::random::rng(3);
    for _ in 0..8 {
        let q = Arc::new(crate::random::random_cyclic_quiver(&mut rng, 3, 2));
        let w = crate::random::random_potential(&mut rng, &q, 4, 3, 2, 4);
        let p = Qp::unfrozen(q, w).unwrap();
        let full = TruncatedAlgebra::build(&p, 4, false).unwrap();
        assert_eq!(full.dims_by_degree().to_vec(), brute_force_dims(&p, 4));
    }
}

#[test]
fn normal_forms_and_basis() {
    let tri = catalog::three_cycle(8).unwrap();
    let t = truncated_quotient(&tri, 8).unwrap();
    let names: Vec<String> = t.basis_paths().iter().map(|p| p.display(tri.quiver())).collect();
    assert_eq!(names, vec!["e_1", "e_2", "e_3", "a", "b", "c"]);
    let x = Element::from_terms(tri.quiver().clone(), 8, &[(crate::rational::q(1), &["a", "b"])]).unwrap();
    assert!(t.normal_form_element(&x).unwrap().is_zero());
}

#[test]
fn relation_counts() {
    let a3 = catalog::a3(8).unwrap();
    assert_eq!(minimal_relation_dims(&a3, 8).unwrap(), vec![vec![0; 3]; 3]);
    let tri = catalog::three_cycle(8).unwrap();
    // relations bc: 2→1, ca: 3→2, ab: 1→3
    assert_eq!(minimal_relation_dims(&tri, 8).unwrap(), vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    let ex = catalog::reduction_example(8).unwrap();
    let before = minimal_relation_dims(&ex, 8).unwrap();
    assert_eq!(before, vec![vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]]);
    let after = minimal_relation_dims(&split_reduce(&ex).unwrap().reduced, 8).unwrap();
    assert_eq!(after, vec![vec![0; 3]; 3]);
}

#[test]
fn ext_matches_relations() {
    for p in [catalog::a3(8).unwrap(), catalog::three_cycle(8).unwrap(), mutate(&catalog::a3(8).unwrap(), 1).unwrap().reduced().clone()]
    {
        let t = truncated_quotient(&p, 8).unwrap();
        let alg = t.finite_algebra().unwrap();
        let rel = t.minimal_relation_dims();
        assert_eq!(ext_matrix(&alg, 2).unwrap(), rel);
        let e1 = ext_matrix(&alg, 1).unwrap();
        let q = p.quiver();
        for i in 0..q.num_vertices() {
            for j in 0..q.num_vertices() {
                assert_eq!(e1[i][j], q.arrows_between(i, j).len());
            }
        }
    }
    let a3 = truncated_quotient(&catalog::a3(8).unwrap(), 8).unwrap().finite_algebra().unwrap();
    assert!(ext_matrix(&a3, 2).unwrap().iter().flatten().all(|&x| x == 0));
    assert_eq!(ext_dims(&a3, 0, 1, 1).unwrap(), 1);
    assert!(ext_matrix(&a3, 3).is_err());
}

#[test]
fn presentation_complexes() {
    for p in [catalog::three_cycle(8).unwrap(), mutate(&catalog::a3(8).unwrap(), 1).unwrap().reduced().clone(), catalog::a3(8).unwrap()]
    {
        let alg = truncated_quotient(&p, 8).unwrap().finite_algebra().unwrap();
        let rep = verify_presentation_complexes(&p, &alg).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }
    let a3 = catalog::a3(8).unwrap();
    let alg = truncated_quotient(&a3, 8).unwrap().finite_algebra().unwrap();
    let rep = verify_presentation_complexes(&a3, &alg).unwrap();
    assert!(rep.complexes.iter().all(|c| c.middle_zero));
}

#[test]
fn opposite_algebra_is_associative() {
    let alg = truncated_quotient(&catalog::a3(8).unwrap(), 8).unwrap().finite_algebra().unwrap();
    let op = alg.opposite().unwrap();
    let n = op.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = [(i, Q::from_integer(1.into()))];
                let y = [(j, Q::from_integer(1.into()))];
                let z = [(k, Q::from_integer(1.into()))];
                assert_eq!(op.multiply(&op.multiply(&x, &y), &z), op.multiply(&x, &op.multiply(&y, &z)));
            }
        }
    }
}

#[test]
fn two_cy_diagnostic_on_triangle() {
    let alg = truncated_quotient(&catalog::three_cycle(8).unwrap(), 8).unwrap().finite_algebra().unwrap();
    assert!(two_cy_diagnostic(&alg).unwrap().iter().all(|e| e.holds));
}

#[test]
fn full_cycles() {
    let tri = catalog::three_cycle_quiver().unwrap();
    let abc = Path::from_names(&tri, &["a", "b", "c"]).unwrap();
    assert!(is_full_cycle(&tri, &abc).unwrap());
    let chord = Quiver::from_names(
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("d", "1", "3")],
    )
    .unwrap();
    let abc = Path::from_names(&chord, &["a", "b", "c"]).unwrap();
    assert!(!is_full_cycle(&chord, &abc).unwrap());
    let twice = Path::from_names(&tri, &["a", "b", "c", "a", "b", "c"]).unwrap();
    assert!(!is_full_cycle(&tri, &twice).unwrap());
    let open = Path::from_names(&tri, &["a", "b"]).unwrap();
    assert!(is_full_cycle(&tri, &open).is_err());
}

#[test]
fn frozen_vertices_drop_relations() {
    let tri = catalog::three_cycle(8).unwrap();
    let frozen = Qp::new(tri.quiver().clone(), tri.potential().clone(), [0].into()).unwrap();
    // only ∂_b W = ca survives (b: 2→3 avoids vertex 1)
    let gens = jacobian_generators(&frozen).unwrap();
    assert_eq!(gens.len(), 1);
    // survivors: e_i, a, b, c, ab, bc, abc
    assert_eq!(certify(&frozen), Finiteness::Finite { dim: 9, nilpotency: 4 });
}
