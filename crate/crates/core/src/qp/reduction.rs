use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::One;

use super::Qp;
use crate::error::{Error, Result};
use crate::path_algebra::{cyclic_normal_form, Element, Path, Substitution};
use crate::rational::Q;

/// Splitting of a QP into reduced and trivial parts.
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub input: Qp,
    pub reduced: Qp,
    /// Eliminated pairs (a, b) of input arrows; a starts at the smaller vertex index.
    pub trivial_pairs: Vec<(usize, usize)>,
    /// Right-equivalence from the input quiver to itself (reduced arrows
    /// keep their names) carrying W to Σ ab + W_red.
    pub equivalence: Substitution,
}

impl SplitResult {
    pub fn trivial_pair_names(&self) -> Vec<(String, String)> {
        let q = self.input.quiver();
        self.trivial_pairs
            .iter()
            .map(|&(a, b)| (q.arrow_name(a).to_string(), q.arrow_name(b).to_string()))
            .collect()
    }

    pub fn is_trivial_arrow(&self, a: usize) -> bool {
        self.trivial_pairs.iter().any(|&(x, y)| x == a || y == a)
    }

    /// Σ ab over the trivial pairs plus the reduced potential, over the input quiver.
    pub fn split_potential(&self) -> Result<Element> {
        let q = self.input.quiver();
        let mut w = self.reduced.potential().transport(q)?;
        for &(a, b) in &self.trivial_pairs {
            w.add_term(Path::from_arrows(q, &[a, b])?, Q::one());
        }
        cyclic_normal_form(&w)
    }

    /// Check cnf(φ(W)) = Σ ab + W_red exactly at the truncation degree.
    pub fn verify(&self) -> Result<bool> {
        let image = cyclic_normal_form(&self.equivalence.apply(self.input.potential())?)?;
        Ok(image == self.split_potential()?)
    }
}

fn substitution_from(q: &Arc<crate::quiver::Quiver>, n: usize, changes: BTreeMap<usize, Element>) -> Result<Substitution> {
    let images = (0..q.num_arrows())
        .map(|a| changes.get(&a).cloned().unwrap_or_else(|| Element::arrow(q.clone(), n, a)))
        .collect();
    Substitution::new(q.clone(), q.clone(), n, images)
}

/// Split off the trivial part by Gaussian elimination on the degree-2 part
/// followed by J-adic elimination of higher terms meeting trivial arrows.
pub fn split_reduce(p: &Qp) -> Result<SplitResult> {
    let q = p.quiver().clone();
    let n = p.truncation();
    let mut w = p.potential().clone();
    let mut total = Substitution::identity(q.clone(), n);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut designated: BTreeSet<usize> = BTreeSet::new();

    // Step 1: diagonalize the degree-2 part one pivot at a time.
    loop {
        let pivot = w.terms().iter().find_map(|(path, c)| {
            if path.len() != 2 {
                return None;
            }
            let (x, y) = (path.arrow_at(0), path.arrow_at(1));
            if designated.contains(&x) || designated.contains(&y) {
                return None;
            }
            let (a, b) = if q.source(x) < q.target(x) { (x, y) } else { (y, x) };
            Some((a, b, c.clone()))
        });
        let Some((a, b, lambda)) = pivot else { break };
        let (i, j) = (q.source(a), q.target(a));
        let coeff_of = |x: usize, y: usize| -> Q {
            let p1 = Path::from_arrows(&q, &[x, y]).unwrap();
            let p2 = Path::from_arrows(&q, &[y, x]).unwrap();
            w.coeff(&p1) + w.coeff(&p2)
        };
        // α' = Σ_{a'≠a} λ_{a'b} a',  β' = Σ_{b'≠b} λ_{ab'} b'
        let mut alpha = Element::zero(q.clone(), n);
        for a2 in q.arrows_between(i, j) {
            if a2 != a && !designated.contains(&a2) {
                let c = coeff_of(a2, b);
                alpha.add_term(Path::arrow(&q, a2), c);
            }
        }
        let mut beta = Element::zero(q.clone(), n);
        for b2 in q.arrows_between(j, i) {
            if b2 != b && !designated.contains(&b2) {
                let c = coeff_of(a, b2);
                beta.add_term(Path::arrow(&q, b2), c);
            }
        }
        let inv = lambda.recip();
        let mut img_a = Element::arrow(q.clone(), n, a);
        img_a.add_scaled(&alpha, &-Q::one());
        let img_a = img_a.scale(&inv);
        let mut img_b = Element::arrow(q.clone(), n, b);
        img_b.add_scaled(&beta, &-inv.clone());
        let step = substitution_from(&q, n, BTreeMap::from([(a, img_a), (b, img_b)]))?;
        w = cyclic_normal_form(&step.apply(&w)?)?;
        total = total.then(&step)?;
        designated.insert(a);
        designated.insert(b);
        pairs.push((a, b));
    }

    // Step 2: push terms meeting trivial arrows to ever higher degree.
    let role: BTreeMap<usize, (usize, bool)> = pairs
        .iter()
        .enumerate()
        .flat_map(|(t, &(a, b))| [(a, (t, true)), (b, (t, false))])
        .collect();
    let is_pair_term = |path: &Path| {
        path.len() == 2 && pairs.iter().any(|&(a, b)| path.arrows() == [a as u32, b as u32] || path.arrows() == [b as u32, a as u32])
    };
    for _ in 0..=n + 1 {
        let mut us: Vec<Element> = vec![Element::zero(q.clone(), n); pairs.len()];
        let mut vs: Vec<Element> = vec![Element::zero(q.clone(), n); pairs.len()];
        let mut dirty = false;
        for (path, c) in w.terms() {
            if is_pair_term(path) {
                if !c.is_one() {
                    return Err(Error::structural("trivial pair lost its normalization"));
                }
                continue;
            }
            let Some(pos) = (0..path.len()).find(|&i| role.contains_key(&path.arrow_at(i))) else {
                continue;
            };
            dirty = true;
            let (t, is_a) = role[&path.arrow_at(pos)];
            let rest = remainder(&q, path, pos);
            if is_a {
                us[t].add_term(rest, c.clone());
            } else {
                vs[t].add_term(rest, c.clone());
            }
        }
        if !dirty {
            break;
        }
        let mut changes = BTreeMap::new();
        for (t, &(a, b)) in pairs.iter().enumerate() {
            let mut img_a = Element::arrow(q.clone(), n, a);
            img_a.add_scaled(&vs[t], &-Q::one());
            let mut img_b = Element::arrow(q.clone(), n, b);
            img_b.add_scaled(&us[t], &-Q::one());
            changes.insert(a, img_a);
            changes.insert(b, img_b);
        }
        let step = substitution_from(&q, n, changes)?;
        w = cyclic_normal_form(&step.apply(&w)?)?;
        total = total.then(&step)?;
    }
    let leftover = w.terms().keys().any(|path| !is_pair_term(path) && path.arrows().iter().any(|&x| role.contains_key(&(x as usize))));
    if leftover {
        return Err(Error::structural("reduction did not stabilize within the truncation degree"));
    }

    // Step 3: drop the trivial arrows.
    let rq = Arc::new(q.arrow_subquiver(|a| !designated.contains(&a)));
    let w_red = w.filter(|path| !is_pair_term(path)).transport(&rq)?;
    let reduced = Qp::new(rq, w_red, p.frozen().clone())?;
    let mut trivial_pairs = pairs;
    for pair in trivial_pairs.iter_mut() {
        if q.source(pair.0) > q.source(pair.1) {
            *pair = (pair.1, pair.0);
        }
    }
    Ok(SplitResult { input: p.clone(), reduced, trivial_pairs, equivalence: total })
}

/// The cycle with position `pos` removed, read from the following arrow.
fn remainder(q: &crate::quiver::Quiver, path: &Path, pos: usize) -> Path {
    let m = path.len();
    let seq: crate::path_algebra::ArrowSeq = (1..m).map(|t| path.arrows()[(pos + t) % m]).collect();
    let s = q.source(seq[0] as usize);
    let e = q.target(*seq.last().unwrap() as usize);
    Path::raw(s, e, seq)
}
