//! Seeded generators for quivers, elements and potentials, shared by the
//! property tests and the self-test corpus.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::path_algebra::{cyclic_normal_form, Element, Path};
use crate::quiver::{Arrow, Quiver};
use crate::rational::{frac, Q};
use crate::representation::{direct_sum_all, hom_space, RepMorphism, Representation};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Loop-free quiver without 2-cycles on 2..=max_vertices vertices, with at
/// most `max_parallel` parallel arrows between any pair.
pub fn random_quiver(rng: &mut TestRng, max_vertices: usize, max_parallel: usize) -> Quiver {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = rng.gen_range(0..=max_parallel);
            let (s, t) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
            for _ in 0..m {
                arrows.push(Arrow { name: format!("x{}", arrows.len()), source: s, target: t });
            }
        }
    }
    Quiver::new(vertices, arrows).expect("random quiver")
}

/// Like [`random_quiver`] but guaranteed to contain an oriented cycle of
/// length 3 through the first three vertices.
pub fn random_cyclic_quiver(rng: &mut TestRng, max_vertices: usize, max_parallel: usize) -> Quiver {
    let n = rng.gen_range(3..=max_vertices.max(3));
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let forced = match (i, j) {
                (0, 1) => Some((0, 1)),
                (1, 2) => Some((1, 2)),
                (0, 2) => Some((2, 0)),
                _ => None,
            };
            let m = if forced.is_some() { rng.gen_range(1..=max_parallel.max(1)) } else { rng.gen_range(0..=max_parallel) };
            let (s, t) = forced.unwrap_or(if rng.gen_bool(0.5) { (i, j) } else { (j, i) });
            for _ in 0..m {
                arrows.push(Arrow { name: format!("x{}", arrows.len()), source: s, target: t });
            }
        }
    }
    Quiver::new(vertices, arrows).expect("random quiver")
}

/// Random walk closing into a cycle of length in [min_len, max_len].
pub fn random_cycle(rng: &mut TestRng, q: &Quiver, min_len: usize, max_len: usize) -> Option<Path> {
    for _ in 0..200 {
        let start = rng.gen_range(0..q.num_vertices());
        let mut v = start;
        let mut arrows = Vec::new();
        while arrows.len() < max_len {
            let outs = q.arrows_from(v);
            let Some(&a) = outs.choose(rng) else { break };
            arrows.push(a);
            v = q.target(a);
            if v == start && arrows.len() >= min_len {
                return Path::from_arrows(q, &arrows).ok();
            }
        }
    }
    None
}

/// Random nonzero rational with small numerator and denominator.
pub fn random_coeff(rng: &mut TestRng) -> Q {
    let mut n = rng.gen_range(1..=4i64);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    frac(n, rng.gen_range(1..=3i64))
}

/// Potential made of up to `terms` random cycles of length in [min_len, max_len].
pub fn random_potential(
    rng: &mut TestRng,
    q: &Arc<Quiver>,
    trunc: usize,
    terms: usize,
    min_len: usize,
    max_len: usize,
) -> Element {
    let mut w = Element::zero(q.clone(), trunc);
    for _ in 0..terms {
        if let Some(c) = random_cycle(rng, q, min_len, max_len) {
            let coeff = random_coeff(rng);
            w.add_term(c, coeff);
        }
    }
    cyclic_normal_form(&w).expect("cycles only")
}

/// Random constant-free element: random walks of length 1..=max_len.
pub fn random_element(rng: &mut TestRng, q: &Arc<Quiver>, trunc: usize, terms: usize, max_len: usize) -> Element {
    let mut x = Element::zero(q.clone(), trunc);
    if q.num_arrows() == 0 {
        return x;
    }
    for _ in 0..terms {
        let len = rng.gen_range(1..=max_len);
        let mut arrows = vec![rng.gen_range(0..q.num_arrows())];
        while arrows.len() < len {
            let outs = q.arrows_from(q.target(*arrows.last().unwrap()));
            match outs.choose(rng) {
                Some(&a) => arrows.push(a),
                None => break,
            }
        }
        let p = Path::from_arrows(q, &arrows).expect("walk composes");
        let coeff = random_coeff(rng);
        x.add_term(p, coeff);
    }
    x
}

/// Invertible integer matrix with small entries: unipotent lower times a
/// signed upper triangular.
pub fn random_invertible(rng: &mut TestRng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = frac(rng.gen_range(-2..=2), 1);
            u[(j, i)] = frac(rng.gen_range(-2..=2), 1);
        }
        if rng.gen_bool(0.5) {
            u[(i, i)] = frac(-1, 1);
        }
    }
    l.mul(&u)
}

/// Direct sum of 1..=max_terms randomly chosen parts, in a random basis.
pub fn random_sum(rng: &mut TestRng, parts: &[Representation], max_terms: usize) -> Representation {
    let count = rng.gen_range(1..=max_terms);
    let chosen: Vec<Representation> = (0..count).map(|_| parts.choose(rng).expect("parts").clone()).collect();
    let sum = direct_sum_all(&chosen).expect("same quiver");
    let g: Vec<Matrix> = sum.dims().iter().map(|&d| random_invertible(rng, d)).collect();
    sum.conjugate(&g).expect("invertible base change")
}

/// Random integer combination of a Hom basis (zero if the space is zero).
pub fn random_morphism(rng: &mut TestRng, m: &Representation, n: &Representation) -> RepMorphism {
    let basis = hom_space(m, n).expect("same quiver");
    if basis.is_empty() {
        return RepMorphism::zero(m, n).expect("zero morphism");
    }
    let coeffs: Vec<Q> = basis.iter().map(|_| frac(rng.gen_range(-3..=3), 1)).collect();
    RepMorphism::combination(&basis, &coeffs).expect("parallel morphisms")
}
