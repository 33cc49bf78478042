use super::*;
use crate::random;
use crate::rational::{frac, q};
use proptest::prelude::*;

fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Arc<Quiver> {
    Arc::new(Quiver::from_names(vs, arrows).unwrap())
}

fn a3() -> Arc<Quiver> {
    quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")])
}

fn triangle() -> Arc<Quiver> {
    quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
}

fn el(qv: &Arc<Quiver>, n: usize, terms: &[(i64, &[&str])]) -> Element {
    let t: Vec<(Q, &[&str])> = terms.iter().map(|(c, p)| (q(*c), *p)).collect();
    Element::from_terms(qv.clone(), n, &t).unwrap()
}

fn arrow(qv: &Arc<Quiver>, n: usize, name: &str) -> Element {
    Element::arrow(qv.clone(), n, qv.arrow(name).unwrap())
}

#[test]
fn products() {
    let qa = a3();
    let ab = &arrow(&qa, 5, "a") * &arrow(&qa, 5, "b");
    assert_eq!(ab, el(&qa, 5, &[(1, &["a", "b"])]));
    let e1 = Element::vertex(qa.clone(), 5, 0);
    let e2 = Element::vertex(qa.clone(), 5, 1);
    assert_eq!(&e1 * &arrow(&qa, 5, "a"), arrow(&qa, 5, "a"));
    assert_eq!(&arrow(&qa, 5, "a") * &e2, arrow(&qa, 5, "a"));
    assert!((&arrow(&qa, 5, "b") * &arrow(&qa, 5, "a")).is_zero());
    let t = triangle();
    let ab = &arrow(&t, 2, "a") * &arrow(&t, 2, "b");
    assert!((&ab * &arrow(&t, 2, "c")).is_zero());
}

#[test]
fn mismatched_truncation_is_an_error() {
    let qa = a3();
    let x = arrow(&qa, 3, "a");
    let y = arrow(&qa, 4, "b");
    assert!(matches!(x.multiply(&y), Err(Error::Structural { .. })));
}

#[test]
fn one_sided_derivatives() {
    let qa = a3();
    let ab = el(&qa, 4, &[(1, &["a", "b"])]);
    let (a, b) = (qa.arrow("a").unwrap(), qa.arrow("b").unwrap());
    assert_eq!(right_derivative(b, &ab).unwrap(), arrow(&qa, 4, "a"));
    assert!(right_derivative(a, &ab).unwrap().is_zero());
    assert_eq!(left_derivative(a, &ab).unwrap(), arrow(&qa, 4, "b"));
    let with_constant = &ab + &Element::vertex(qa.clone(), 4, 0);
    assert!(matches!(right_derivative(a, &with_constant), Err(Error::Precondition { .. })));
}

#[test]
fn cyclic_derivatives() {
    let t = triangle();
    let w = el(&t, 6, &[(1, &["a", "b", "c"])]);
    let (a, b, c) = (t.arrow("a").unwrap(), t.arrow("b").unwrap(), t.arrow("c").unwrap());
    assert_eq!(cyclic_derivative(a, &w).unwrap(), el(&t, 6, &[(1, &["b", "c"])]));
    assert_eq!(second_derivative(a, b, &w).unwrap(), arrow(&t, 6, "c"));
    assert_eq!(second_derivative(c, a, &w).unwrap(), arrow(&t, 6, "b"));
    assert!(second_derivative(a, c, &w).unwrap().is_zero());

    let r = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"), ("d", "3", "1")]);
    let w = el(&r, 6, &[(1, &["c", "d"]), (1, &["a", "b", "d"])]);
    let d = r.arrow("d").unwrap();
    assert_eq!(cyclic_derivative(d, &w).unwrap(), el(&r, 6, &[(1, &["c"]), (1, &["a", "b"])]));
    assert_eq!(cyclic_normal_form(&w).unwrap(), w);

    let qa = a3();
    assert!(cyclic_derivative(a, &el(&qa, 4, &[(1, &["a"])])).is_err());
}

#[test]
fn two_cycle_second_derivative_is_a_vertex() {
    let qv = quiver(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]);
    let w = el(&qv, 4, &[(1, &["a", "b"])]);
    let d = second_derivative(0, 1, &w).unwrap();
    assert_eq!(d, Element::vertex(qv.clone(), 4, 0));
}

#[test]
fn normal_forms_and_projection() {
    let t = triangle();
    let bca = el(&t, 6, &[(1, &["b", "c", "a"])]);
    assert_eq!(cyclic_normal_form(&bca).unwrap(), el(&t, 6, &[(1, &["a", "b", "c"])]));
    let diff = el(&t, 6, &[(1, &["a", "b", "c"]), (-1, &["b", "c", "a"])]);
    assert!(cyclic_normal_form(&diff).unwrap().is_zero());
    assert!(cyclic_class_project(&arrow(&t, 6, "a")).is_empty());
    let x = el(&t, 6, &[(2, &["a", "b", "c"]), (1, &["a", "b"])]);
    let proj = cyclic_class_project(&x);
    assert_eq!(proj.len(), 1);
    assert_eq!(proj.values().next().unwrap(), &q(2));
    assert_eq!(cyclic_class_project(&el(&t, 6, &[(1, &["a", "b", "c"])])), cyclic_class_project(&bca));
}

#[test]
fn substitution_examples() {
    // φ(b) = b + ac needs b parallel to ac and ab composable, so a is a loop
    let qv = quiver(&["1", "2"], &[("a", "1", "1"), ("b", "1", "2"), ("c", "1", "2")]);
    let n = 4;
    let images = vec![arrow(&qv, n, "a"), el(&qv, n, &[(1, &["b"]), (1, &["a", "c"])]), arrow(&qv, n, "c")];
    let phi = Substitution::new(qv.clone(), qv.clone(), n, images).unwrap();
    let ab = el(&qv, n, &[(1, &["a", "b"])]);
    assert_eq!(phi.apply(&ab).unwrap(), el(&qv, n, &[(1, &["a", "b"]), (1, &["a", "a", "c"])]));
    let e = Element::vertex(qv.clone(), n, 1);
    assert_eq!(phi.apply(&e).unwrap(), e);
    let id = Substitution::identity(qv.clone(), n);
    assert_eq!(id.apply(&ab).unwrap(), ab);
    assert!(id.is_identity());
}

#[test]
fn substitution_rejects_bad_images() {
    let qa = a3();
    let images = vec![arrow(&qa, 4, "b"), arrow(&qa, 4, "b")];
    assert!(Substitution::new(qa.clone(), qa.clone(), 4, images).is_err());
    let images = vec![&arrow(&qa, 4, "a") + &Element::vertex(qa.clone(), 4, 0), arrow(&qa, 4, "b")];
    assert!(Substitution::new(qa.clone(), qa.clone(), 4, images).is_err());
}

#[test]
fn inverse_of_triangular_substitution() {
    let t = triangle();
    let n = 7;
    let images = vec![
        el(&t, n, &[(2, &["a"])]),
        el(&t, n, &[(1, &["b"]), (1, &["b", "c", "a", "b"])]),
        el(&t, n, &[(-1, &["c"]), (3, &["c", "a", "b", "c"])]),
    ];
    let phi = Substitution::new(t.clone(), t.clone(), n, images).unwrap();
    let psi = phi.inverse().unwrap();
    let round = phi.then(&psi).unwrap();
    assert!(round.is_identity());
    let round = psi.then(&phi).unwrap();
    assert!(round.is_identity());
}

#[test]
fn display_is_readable() {
    let t = triangle();
    let x = Element::from_terms(t.clone(), 4, &[(frac(-3, 2), &["a", "b"]), (q(1), &["c"])]).unwrap();
    assert_eq!(x.display(), "(c) - 3/2·(a b)");
}

fn corpus(seed: u64) -> (Arc<Quiver>, Element) {
    let mut rng = random::rng(seed);
    let qv = Arc::new(random::random_cyclic_quiver(&mut rng, 5, 2));
    let w = random::random_potential(&mut rng, &qv, 8, 6, 2, 6);
    (qv, w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lemma_on_second_derivatives(seed in any::<u64>()) {
        let (qv, w) = corpus(seed);
        for b in 0..qv.num_arrows() {
            let db = cyclic_derivative(b, &w).unwrap();
            let mut left = Element::zero(qv.clone(), 8);
            let mut right = Element::zero(qv.clone(), 8);
            for a in 0..qv.num_arrows() {
                let dab = second_derivative(a, b, &w).unwrap();
                left = &left + &(&dab * &Element::arrow(qv.clone(), 8, a));
                let dba = second_derivative(b, a, &w).unwrap();
                right = &right + &(&Element::arrow(qv.clone(), 8, a) * &dba);
                let da = cyclic_derivative(a, &w).unwrap();
                prop_assert_eq!(&dab, &right_derivative(a, &db).unwrap());
                prop_assert_eq!(&dab, &left_derivative(b, &da).unwrap());
            }
            prop_assert_eq!(&left, &db);
            prop_assert_eq!(&right, &db);
        }
    }

    #[test]
    fn reconstruction(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let qv = Arc::new(random::random_quiver(&mut rng, 5, 3));
        let x = random::random_element(&mut rng, &qv, 6, 8, 6);
        let mut r = Element::zero(qv.clone(), 6);
        let mut l = Element::zero(qv.clone(), 6);
        for a in 0..qv.num_arrows() {
            let ar = Element::arrow(qv.clone(), 6, a);
            r = &r + &(&right_derivative(a, &x).unwrap() * &ar);
            l = &l + &(&ar * &left_derivative(a, &x).unwrap());
        }
        prop_assert_eq!(&r, &x);
        prop_assert_eq!(&l, &x);
    }

    #[test]
    fn derivative_respects_cyclic_equivalence(seed in any::<u64>()) {
        let (qv, w) = corpus(seed);
        let mut rng = random::rng(seed ^ 7);
        // rotate every term by a random offset
        let mut rotated = Element::zero(qv.clone(), 8);
        for (p, c) in w.terms() {
            let off = rand::Rng::gen_range(&mut rng, 0..p.len());
            let r = p.rotate(off);
            let start = qv.source(r.arrow_at(0));
            rotated.add_term(Path::raw(start, start, r.arrows().iter().copied().collect()), c.clone());
        }
        prop_assert_eq!(cyclic_normal_form(&rotated).unwrap(), w.clone());
        for a in 0..qv.num_arrows() {
            prop_assert_eq!(cyclic_derivative(a, &rotated).unwrap(), cyclic_derivative(a, &w).unwrap());
        }
        prop_assert_eq!(cyclic_class_project(&rotated), cyclic_class_project(&w));
    }

    #[test]
    fn substitution_is_multiplicative(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let qv = Arc::new(random::random_cyclic_quiver(&mut rng, 4, 2));
        let n = 6;
        let images: Vec<Element> = (0..qv.num_arrows()).map(|a| {
            let mut img = Element::arrow(qv.clone(), n, a);
            let extra = random::random_element(&mut rng, &qv, n, 3, 4)
                .filter(|p| p.len() >= 2 && p.start() == qv.source(a) && p.end() == qv.target(a));
            img.add_scaled(&extra, &q(1));
            img
        }).collect();
        let phi = Substitution::new(qv.clone(), qv.clone(), n, images).unwrap();
        let x = random::random_element(&mut rng, &qv, n, 4, 3);
        let y = random::random_element(&mut rng, &qv, n, 4, 3);
        let lhs = phi.apply(&(&x * &y)).unwrap();
        let rhs = &phi.apply(&x).unwrap() * &phi.apply(&y).unwrap();
        prop_assert_eq!(lhs, rhs);
        let psi = phi.inverse().unwrap();
        prop_assert!(phi.then(&psi).unwrap().is_identity());
    }
}
