use super::*;
use crate::catalog;
use crate::qp::{mutate, premutate, split_reduce};
use crate::random::{self, random_morphism, random_sum};
use proptest::prelude::*;

fn tri() -> Qp {
    catalog::three_cycle(8).unwrap()
}

fn indecomposables(p: &Qp) -> Vec<Representation> {
    catalog::three_cycle_indecomposables(p).unwrap().into_iter().map(|(_, r)| r).collect()
}

fn one() -> Matrix {
    Matrix::from_i64(&[&[1]])
}

#[test]
fn validation() {
    let p = tri();
    let s2 = simple_rep(&p, 1).unwrap();
    assert_eq!(s2.dims(), &[0, 1, 0]);
    assert!(validate_rep(&p, &s2).unwrap().valid);
    let q = p.quiver().clone();
    let all = Representation::from_named(
        q.clone(),
        &[("1", 1), ("2", 1), ("3", 1)],
        &[("a", one()), ("b", one()), ("c", one())],
    )
    .unwrap();
    let r = validate_rep(&p, &all).unwrap();
    assert!(!r.valid);
    assert_eq!(r.nilpotency, None);
    let f = catalog::defect_example(&p).unwrap();
    assert!(validate_rep(&p, f.source()).unwrap().valid);
    assert_eq!(f.source().nilpotency_bound(), Some(2));
    // a nilpotent rep violating a relation: a and b both identity
    let ab = Representation::from_named(q, &[("1", 1), ("2", 1), ("3", 1)], &[("a", one()), ("b", one())]).unwrap();
    let r = validate_rep(&p, &ab).unwrap();
    assert_eq!(r.failing, vec!["c".to_string()]);
    assert!(matches!(validate_rep(&catalog::three_cycle(2).unwrap(), &ab), Err(Error::Precondition { .. })));
}

#[test]
fn shapes_are_checked() {
    let q = tri().quiver().clone();
    let bad = Representation::new(q, vec![1, 1, 0], vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1), Matrix::zeros(1, 0)]);
    assert!(matches!(bad, Err(Error::Structural { .. })));
}

#[test]
fn scaffold_examples() {
    let p = tri();
    let f = catalog::defect_example(&p).unwrap();
    let sc = vertex_scaffold(&p, f.source(), 1, Splitting::Pivot).unwrap();
    // γ is the action of ∂_(a,b)(abc) = c
    assert_eq!(sc.gamma, one());
    assert_eq!(sc.summand_dims(), [0, 1, 0]);
    let sc = vertex_scaffold(&p, &simple_rep(&p, 1).unwrap(), 1, Splitting::Pivot).unwrap();
    assert!(sc.alpha.is_zero() && sc.beta.is_zero() && sc.gamma.is_zero());
    assert_eq!(sc.new_dim(), 0);
    let far = Representation::zero(p.quiver().clone(), vec![0, 0, 0]).unwrap();
    assert_eq!(vertex_scaffold(&p, &far, 1, Splitting::Pivot).unwrap().new_dim(), 0);
}

#[test]
fn example_mutations() {
    let p = tri();
    let f = catalog::defect_example(&p).unwrap();
    let pm = premutate(&p, 1).unwrap();
    let m1 = mutate_rep(&p, f.source(), 1).unwrap();
    assert_eq!(m1.dims(), &[1, 1, 1]);
    let nq = m1.quiver();
    assert!(m1.map(nq.require_arrow("[ab]").unwrap()).is_zero());
    assert_eq!(*m1.map(nq.require_arrow("c").unwrap()), one());
    assert!(validate_rep(&pm.qp, &m1).unwrap().valid);
    let m2 = mutate_rep(&p, f.target(), 1).unwrap();
    assert_eq!(m2.dims(), &[0, 1, 1]);
    let sc = vertex_scaffold(&p, f.target(), 1, Splitting::Pivot).unwrap();
    assert_eq!(sc.summand_dims(), [1, 0, 0]);
    assert!(!m2.map(nq.require_arrow("b*").unwrap()).is_zero());
    assert!(validate_rep(&pm.qp, &m2).unwrap().valid);
}

#[test]
fn simple_at_k_vanishes() {
    for p in [tri(), catalog::a3(8).unwrap()] {
        for k in 0..3 {
            assert!(mutate_rep(&p, &simple_rep(&p, k).unwrap(), k).unwrap().is_zero());
        }
    }
}

#[test]
fn mutated_reps_are_valid_and_split_independent() {
    let p = tri();
    let parts = indecomposables(&p);
    let mut rng = random::rng(21);
    for _ in 0..12 {
        let m = random_sum(&mut rng, &parts, 4);
        for k in 0..3 {
            let pm = premutate(&p, k).unwrap();
            let a = mutate_rep_with(&p, &m, k, Splitting::Pivot).unwrap();
            let b = mutate_rep_with(&p, &m, k, Splitting::Reversed).unwrap();
            assert!(validate_rep(&pm.qp, &a).unwrap().valid);
            assert!(validate_rep(&pm.qp, &b).unwrap().valid);
            assert!(are_isomorphic(&a, &b, 1).unwrap());
            let sc = vertex_scaffold(&p, &m, k, Splitting::Pivot).unwrap();
            let expect = sc.ker_gamma.cols() - sc.im_beta.cols() + sc.ker_alpha.cols();
            assert_eq!(a.dim(k), expect);
            for v in (0..3).filter(|&v| v != k) {
                assert_eq!(a.dim(v), m.dim(v));
            }
        }
    }
}

#[test]
fn reduce_examples() {
    // a source vertex: the premutation is already reduced
    let a3 = catalog::a3(8).unwrap();
    let m = Representation::from_named(a3.quiver().clone(), &[("1", 1), ("2", 1)], &[("a", one())]).unwrap();
    let mt = mutate_rep(&a3, &m, 0).unwrap();
    let split = split_reduce(&premutate(&a3, 0).unwrap().qp).unwrap();
    assert!(split.equivalence.is_identity());
    assert_eq!(reduce_rep(&mt, &split).unwrap().maps(), mt.maps());

    let two = catalog::two_cycle(6).unwrap();
    let m = Representation::zero(two.quiver().clone(), vec![2, 1]).unwrap();
    assert!(validate_rep(&two, &m).unwrap().valid);
    let r = reduce_rep(&m, &split_reduce(&two).unwrap()).unwrap();
    assert_eq!(r.dims(), &[2, 1]);
    assert_eq!(r.quiver().num_arrows(), 0);
}

#[test]
fn reduced_mutation_is_valid() {
    let p = tri();
    let parts = indecomposables(&p);
    let mut rng = random::rng(8);
    for k in 0..3 {
        let mu = mutate(&p, k).unwrap();
        for _ in 0..4 {
            let m = random_sum(&mut rng, &parts, 3);
            let mt = mutate_rep(&p, &m, k).unwrap();
            let r = reduce_rep(&mt, &mu.split).unwrap();
            assert_eq!(r.dims(), mt.dims());
            assert!(validate_rep(mu.reduced(), &r).unwrap().valid);
        }
    }
}

#[test]
fn morphism_mutation_examples() {
    let p = tri();
    let f = catalog::defect_example(&p).unwrap();
    let ft = mutate_morphism(&p, &f, 1, Splitting::Pivot).unwrap();
    assert!(!ft.map(1).is_zero());
    // the componentwise map is zero at k* and fails to commute
    let mut naive = ft.maps().to_vec();
    naive[1] = Matrix::zeros(1, 1);
    assert!(RepMorphism::new(ft.source().clone(), ft.target().clone(), naive).is_err());

    let m = f.source();
    let id = mutate_morphism(&p, &RepMorphism::identity(m), 1, Splitting::Pivot).unwrap();
    assert_eq!(id, RepMorphism::identity(id.source()));
    let z = mutate_morphism(&p, &RepMorphism::zero(m, m).unwrap(), 1, Splitting::Reversed).unwrap();
    assert!(z.is_zero());
}

#[test]
fn functoriality_up_to_simple_at_k() {
    let p = tri();
    let parts = indecomposables(&p);
    let mut rng = random::rng(33);
    for i in 0..15 {
        let k = i % 3;
        let (a, b, c) = (random_sum(&mut rng, &parts, 3), random_sum(&mut rng, &parts, 3), random_sum(&mut rng, &parts, 3));
        let g = random_morphism(&mut rng, &a, &b);
        let f = random_morphism(&mut rng, &b, &c);
        let lhs = mutate_morphism(&p, &f.compose(&g).unwrap(), k, Splitting::Pivot).unwrap();
        let rhs = mutate_morphism(&p, &f, k, Splitting::Pivot)
            .unwrap()
            .compose(&mutate_morphism(&p, &g, k, Splitting::Pivot).unwrap())
            .unwrap();
        let diff = lhs.difference(&rhs).unwrap();
        for v in (0..3).filter(|&v| v != k) {
            assert!(diff.map(v).is_zero());
        }
    }
}

#[test]
fn hom_examples() {
    let p = tri();
    for i in 0..3 {
        let s = simple_rep(&p, i).unwrap();
        assert_eq!(hom_space(&s, &s).unwrap().len(), 1);
    }
    let a3 = catalog::a3(8).unwrap();
    assert!(hom_space(&simple_rep(&a3, 0).unwrap(), &simple_rep(&a3, 2).unwrap()).unwrap().is_empty());
    let f = catalog::defect_example(&p).unwrap();
    assert_eq!(hom_space(f.source(), f.target()).unwrap().len(), 1);
    assert!(hom_space(f.target(), f.source()).unwrap().is_empty());
    for r in indecomposables(&p) {
        assert!(is_brick(&r).unwrap());
    }
}

#[test]
fn isomorphism_examples() {
    let p = tri();
    let parts = indecomposables(&p);
    let s1 = simple_rep(&p, 0).unwrap();
    assert!(are_isomorphic(&s1, &s1, 0).unwrap());
    assert!(!are_isomorphic(&s1, &simple_rep(&p, 1).unwrap(), 0).unwrap());
    let mut rng = random::rng(4);
    let m = random_sum(&mut rng, &parts, 4);
    let g: Vec<Matrix> = m.dims().iter().map(|&d| random::random_invertible(&mut rng, d)).collect();
    assert!(are_isomorphic(&m, &m.conjugate(&g).unwrap(), 9).unwrap());
    // same dimension vector (1,1,1), different modules
    let x = direct_sum_all(&[parts[3].clone(), parts[2].clone()]).unwrap();
    let y = direct_sum_all(&[parts[0].clone(), parts[4].clone()]).unwrap();
    assert_eq!(x.dims(), y.dims());
    assert!(!are_isomorphic(&x, &y, 0).unwrap());
}

#[test]
fn stripping_simples() {
    let p = tri();
    let parts = indecomposables(&p);
    let (z, n) = strip_simple_summands(&simple_rep(&p, 1).unwrap(), 1).unwrap();
    assert!(z.is_zero());
    assert_eq!(n, 1);
    let m = parts[3].clone(); // string along a ends at 2 but b acts by zero on it
    let (m0, n) = strip_simple_summands(&m, 1).unwrap();
    assert_eq!(n, 0);
    assert_eq!(m0, m);
    let c = parts[5].clone();
    let plus = c.direct_sum(&simple_rep(&p, 1).unwrap()).unwrap();
    let (back, n) = strip_simple_summands(&plus, 1).unwrap();
    assert_eq!(n, 1);
    assert!(are_isomorphic(&back, &c, 0).unwrap());
    assert_eq!(strip_simple_summands(&back, 1).unwrap(), (back.clone(), 0));
    // b-string has its top at 2 with β injective there
    let (b0, n) = strip_simple_summands(&parts[4], 1).unwrap();
    assert_eq!((b0, n), (parts[4].clone(), 0));
}

#[test]
fn nearly_morita_on_three_cycle() {
    let p = tri();
    let parts = indecomposables(&p);
    let mut rng = random::rng(17);
    let mut family = parts.clone();
    for _ in 0..4 {
        family.push(random_sum(&mut rng, &parts, 4));
    }
    for k in 0..3 {
        let report = check_nearly_morita(&p, k, &family, 0).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
    }
}

#[test]
fn nearly_morita_on_a3() {
    let p = catalog::a3(8).unwrap();
    let q = p.quiver().clone();
    let family = vec![
        simple_rep(&p, 0).unwrap(),
        simple_rep(&p, 2).unwrap(),
        Representation::from_named(q.clone(), &[("1", 1), ("2", 1)], &[("a", one())]).unwrap(),
        Representation::from_named(q.clone(), &[("2", 1), ("3", 1)], &[("b", one())]).unwrap(),
        Representation::from_named(q, &[("1", 1), ("2", 1), ("3", 1)], &[("a", one()), ("b", one())]).unwrap(),
    ];
    for k in 0..3 {
        let report = check_nearly_morita(&p, k, &family, 0).unwrap();
        assert!(report.passed(), "k = {k}: {:?}", report.failures());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn hom_basis_commutes(seed in any::<u64>()) {
        let p = tri();
        let parts = indecomposables(&p);
        let mut rng = random::rng(seed);
        let m = random_sum(&mut rng, &parts, 3);
        let n = random_sum(&mut rng, &parts, 3);
        for f in hom_space(&m, &n).unwrap() {
            prop_assert!(f.non_commuting().is_empty());
        }
        let id = RepMorphism::identity(&m);
        prop_assert!(id.non_commuting().is_empty());
        prop_assert!(are_isomorphic(&m, &m, seed).unwrap());
    }
}
