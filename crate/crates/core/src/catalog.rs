//! Small named QPs used throughout the tests, the fixtures and `selftest`.

use std::sync::Arc;

use crate::error::Result;
use crate::linalg::Matrix;
use crate::path_algebra::Element;
use crate::qp::Qp;
use crate::quiver::Quiver;
use crate::representation::{RepMorphism, Representation};
use crate::rational::q;

/// 1 -a-> 2 -b-> 3 with zero potential.
pub fn a3(n: usize) -> Result<Qp> {
    let quiver = Arc::new(Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")])?);
    Qp::zero(quiver, n)
}

pub fn three_cycle_quiver() -> Result<Arc<Quiver>> {
    Ok(Arc::new(Quiver::from_names(
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
    )?))
}

/// The oriented 3-cycle a, b, c with W = abc.
pub fn three_cycle(n: usize) -> Result<Qp> {
    let quiver = three_cycle_quiver()?;
    let w = Element::from_terms(quiver.clone(), n, &[(q(1), &["a", "b", "c"])])?;
    Qp::unfrozen(quiver, w)
}

/// The oriented 3-cycle with zero potential.
pub fn three_cycle_zero(n: usize) -> Result<Qp> {
    Qp::zero(three_cycle_quiver()?, n)
}

/// Arrows a: 1→2, b: 2→3, c: 1→3, d: 3→1 with W = cd + abd.
pub fn reduction_example(n: usize) -> Result<Qp> {
    let quiver = Arc::new(Quiver::from_names(
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"), ("d", "3", "1")],
    )?);
    let w = Element::from_terms(quiver.clone(), n, &[(q(1), &["c", "d"]), (q(1), &["a", "b", "d"])])?;
    Qp::unfrozen(quiver, w)
}

/// a: 1→2, b: 2→1 with W = ab.
pub fn two_cycle(n: usize) -> Result<Qp> {
    let quiver = Arc::new(Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")])?);
    let w = Element::from_terms(quiver.clone(), n, &[(q(1), &["a", "b"])])?;
    Qp::unfrozen(quiver, w)
}

/// Base quiver of the word example: a: 1→2, b: 2→3, c: 3→1.
pub fn coxeter_base() -> Result<Quiver> {
    Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
}

pub const COXETER_WORD: [&str; 11] = ["1", "2", "1", "3", "1", "2", "3", "1", "2", "3", "2"];

fn unit() -> Matrix {
    Matrix::from_i64(&[&[1]])
}

/// The six indecomposables of the 3-cycle algebra with W = abc: the three
/// simples and the strings along a, b and c.
pub fn three_cycle_indecomposables(p: &Qp) -> Result<Vec<(String, Representation)>> {
    let q = p.quiver().clone();
    let one = |v: &str| Representation::from_named(q.clone(), &[(v, 1)], &[]);
    let string = |a: &str, s: &str, t: &str| Representation::from_named(q.clone(), &[(s, 1), (t, 1)], &[(a, unit())]);
    Ok(vec![
        ("S1".into(), one("1")?),
        ("S2".into(), one("2")?),
        ("S3".into(), one("3")?),
        ("a".into(), string("a", "1", "2")?),
        ("b".into(), string("b", "2", "3")?),
        ("c".into(), string("c", "3", "1")?),
    ])
}

/// Over the 3-cycle with W = abc: M with K at 1 and 3 and c the identity,
/// M' = S3, and the morphism M → M' that is the identity at 3.
pub fn defect_example(p: &Qp) -> Result<RepMorphism> {
    let q = p.quiver().clone();
    let m = Representation::from_named(q.clone(), &[("1", 1), ("3", 1)], &[("c", unit())])?;
    let n = Representation::from_named(q.clone(), &[("3", 1)], &[])?;
    let maps = vec![Matrix::zeros(0, 1), Matrix::zeros(0, 0), unit()];
    RepMorphism::new(m, n, maps)
}

/// The 11-vertex word quiver of the example, transcribed from its picture.
/// Left arrows p, q, r of types 1, 2, 3 are named L:type:position.
pub fn coxeter_displayed_quiver() -> Result<Quiver> {
    let vertices = ["1_1", "2_1", "1_2", "3_1", "1_3", "2_2", "3_2", "1_4", "2_3", "3_3", "2_4"];
    Quiver::from_names(
        &vertices,
        &[
            ("a_1", "1_1", "2_1"),
            ("L:1:2", "1_2", "1_1"),
            ("c*_2", "1_2", "3_1"),
            ("L:1:3", "1_3", "1_2"),
            ("a_3", "1_3", "2_2"),
            ("c*_3", "1_3", "3_2"),
            ("L:1:4", "1_4", "1_3"),
            ("a_4", "1_4", "2_4"),
            ("c*_4", "1_4", "3_3"),
            ("a*_1", "2_1", "1_3"),
            ("b_1", "2_1", "3_1"),
            ("L:2:2", "2_2", "2_1"),
            ("a*_2", "2_2", "1_4"),
            ("b_2", "2_2", "3_2"),
            ("L:2:3", "2_3", "2_2"),
            ("b_3", "2_3", "3_3"),
            ("L:2:4", "2_4", "2_3"),
            ("b*_1", "3_1", "2_2"),
            ("c_1", "3_1", "1_3"),
            ("L:3:2", "3_2", "3_1"),
            ("b*_2", "3_2", "2_3"),
            ("c_2", "3_2", "1_4"),
            ("L:3:3", "3_3", "3_2"),
            ("b*_3", "3_3", "2_4"),
        ],
    )
}

/// The displayed potential on the stable quiver of the example.
pub const COXETER_DISPLAYED_W: [(i64, &[&str]); 7] = [
    (1, &["a_1", "a*_1", "L:1:3", "L:1:2"]),
    (-1, &["a*_1", "a_3", "L:2:2"]),
    (1, &["b_1", "b*_1", "L:2:2"]),
    (-1, &["b*_1", "b_2", "L:3:2"]),
    (1, &["b_2", "b*_2", "L:2:3"]),
    (-1, &["c*_2", "c_1", "L:1:3"]),
    (1, &["c_1", "c*_3", "L:3:2"]),
];
