//! Coxeter groups attached to quivers, reduced words, and the word quivers
//! with their potentials and frozen vertices.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::path_algebra::{cyclic_normal_form, Element, Path};
use crate::qp::{is_rigid_truncated, Qp, RigidityVerdict};
use crate::quiver::{star, Arrow, Quiver};
use crate::rational::{frac, q, Q};

/// Coxeter matrix entry between distinct generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxeterOrder {
    Two,
    Three,
    Infinite,
}

#[derive(Clone, Debug)]
pub struct CoxeterDatum {
    quiver: Arc<Quiver>,
    orders: Vec<Vec<CoxeterOrder>>,
    form: Matrix,
}

impl CoxeterDatum {
    pub fn new(quiver: Arc<Quiver>) -> Result<CoxeterDatum> {
        if let Some(l) = quiver.loops().first() {
            return Err(Error::precondition("loop in base quiver").with_datum(quiver.arrow_name(*l)));
        }
        let n = quiver.num_vertices();
        let mut orders = vec![vec![CoxeterOrder::Two; n]; n];
        let mut form = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let count = quiver.arrows_between(i, j).len() + quiver.arrows_between(j, i).len();
                let (o, b) = match count {
                    0 => (CoxeterOrder::Two, Q::zero()),
                    1 => (CoxeterOrder::Three, frac(-1, 2)),
                    _ => (CoxeterOrder::Infinite, q(-1)),
                };
                orders[i][j] = o;
                form[(i, j)] = b;
            }
        }
        Ok(CoxeterDatum { quiver, orders, form })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn order(&self, i: usize, j: usize) -> CoxeterOrder {
        self.orders[i][j]
    }

    /// B(α_i, α_j).
    pub fn form(&self) -> &Matrix {
        &self.form
    }

    /// s_i(v) = v − 2B(α_i, v)α_i on root coordinates.
    pub fn reflect(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let b: Q = (0..v.len()).map(|j| &self.form[(i, j)] * &v[j]).sum();
        let mut out = v.to_vec();
        out[i] -= q(2) * b;
        out
    }

    pub fn parse_word(&self, letters: &[&str]) -> Result<Vec<usize>> {
        letters.iter().map(|l| self.quiver.require_vertex(l.trim())).collect()
    }

    /// s_{u_1}⋯s_{u_{t−1}}(α_{u_t}) for each t.
    pub fn word_roots(&self, word: &[usize]) -> Vec<Vec<Q>> {
        let n = self.quiver.num_vertices();
        (0..word.len())
            .map(|t| {
                let mut v = vec![Q::zero(); n];
                v[word[t]] = Q::one();
                for &u in word[..t].iter().rev() {
                    v = self.reflect(u, &v);
                }
                v
            })
            .collect()
    }

    /// Reduced iff every root s_{u_1}⋯s_{u_{t−1}}(α_{u_t}) is positive.
    pub fn is_reduced_word(&self, word: &[usize]) -> bool {
        self.word_roots(word).iter().all(|v| v.iter().all(|c| !c.is_negative()))
    }
}

/// The doubled quiver (a* : j → i for each a : i → j), the element
/// Σ (aa* − a*a) and the signs ε(a) = 1, ε(a*) = −1.
#[derive(Clone, Debug)]
pub struct DoubledQuiver {
    pub quiver: Arc<Quiver>,
    pub relation: Element,
    pub sign: Vec<i64>,
    /// index of the partner arrow (a ↔ a*)
    pub partner: Vec<usize>,
}

pub fn doubled_quiver(q: &Quiver) -> Result<DoubledQuiver> {
    if let Some(l) = q.loops().first() {
        return Err(Error::precondition("loop in base quiver").with_datum(q.arrow_name(*l)));
    }
    let m = q.num_arrows();
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    for a in q.arrows() {
        arrows.push(Arrow { name: star(&a.name), source: a.target, target: a.source });
    }
    let dq = Arc::new(Quiver::new(q.vertices().to_vec(), arrows)?);
    let mut relation = Element::zero(dq.clone(), 2);
    for a in 0..m {
        relation.add_term(Path::from_arrows(&dq, &[a, a + m])?, Q::one());
        relation.add_term(Path::from_arrows(&dq, &[a + m, a])?, -Q::one());
    }
    let sign = (0..2 * m).map(|x| if x < m { 1 } else { -1 }).collect();
    let partner = (0..2 * m).map(|x| if x < m { x + m } else { x - m }).collect();
    Ok(DoubledQuiver { quiver: dq, relation, sign, partner })
}

/// How an arrow of a word quiver arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordArrow {
    /// i_r → i_{r−1}
    Left { vertex_type: usize, occurrence: usize },
    /// image of a doubled-quiver arrow
    Right { doubled: usize, sign: i64 },
}

#[derive(Clone, Debug)]
pub struct WordQuiver {
    pub word: Vec<usize>,
    pub base: Arc<Quiver>,
    pub doubled: DoubledQuiver,
    pub quiver: Arc<Quiver>,
    /// (type, occurrence index starting at 1) per vertex position
    pub typing: Vec<(usize, usize)>,
    pub kinds: Vec<WordArrow>,
    pub frozen: BTreeSet<usize>,
}

fn vertex_label(base: &Quiver, t: usize, occ: usize) -> String {
    format!("{}_{}", base.vertex_name(t), occ)
}

/// Q(u_1,…,u_m): vertices are the positions, typed by their letters.
pub fn word_quiver(c: &CoxeterDatum, word: &[usize]) -> Result<WordQuiver> {
    if !c.is_reduced_word(word) {
        return Err(Error::precondition("word is not reduced"));
    }
    let base = c.quiver().clone();
    let doubled = doubled_quiver(&base)?;
    let mut typing = Vec::new();
    let mut seen = vec![0usize; base.num_vertices()];
    for &u in word {
        seen[u] += 1;
        typing.push((u, seen[u]));
    }
    let names: Vec<String> = typing.iter().map(|&(t, o)| vertex_label(&base, t, o)).collect();
    let mut arrows = Vec::new();
    let mut kinds = Vec::new();
    for (pos, &(t, occ)) in typing.iter().enumerate() {
        if occ >= 2 {
            let prev = (0..pos).rev().find(|&p| typing[p].0 == t).unwrap();
            arrows.push(Arrow { name: format!("L:{}:{}", base.vertex_name(t), occ), source: pos, target: prev });
            kinds.push(WordArrow::Left { vertex_type: t, occurrence: occ });
        }
    }
    let dq = &doubled.quiver;
    for x in 0..dq.num_arrows() {
        let (i, j) = (dq.source(x), dq.target(x));
        for (pos, &(t, occ)) in typing.iter().enumerate() {
            if t != i {
                continue;
            }
            let next_i = (pos + 1..word.len()).find(|&p| typing[p].0 == i).unwrap_or(word.len());
            if let Some(v) = (pos + 1..next_i).rev().find(|&p| typing[p].0 == j) {
                arrows.push(Arrow { name: format!("{}_{}", dq.arrow_name(x), occ), source: pos, target: v });
                kinds.push(WordArrow::Right { doubled: x, sign: doubled.sign[x] });
            }
        }
    }
    let quiver = Arc::new(Quiver::new(names, arrows)?);
    let frozen = (0..base.num_vertices())
        .filter_map(|t| (0..word.len()).rev().find(|&p| typing[p].0 == t))
        .collect();
    Ok(WordQuiver { word: word.to_vec(), base, doubled, quiver, typing, kinds, frozen })
}

impl WordQuiver {
    /// The right arrow of doubled type `x` starting at vertex `v`, if any.
    fn right_arrow_from(&self, v: usize, x: usize) -> Option<usize> {
        self.quiver
            .arrows_from(v)
            .iter()
            .copied()
            .find(|&a| matches!(self.kinds[a], WordArrow::Right { doubled, .. } if doubled == x))
    }

    fn left_arrow_from(&self, v: usize) -> Option<usize> {
        self.quiver.arrows_from(v).iter().copied().find(|&a| matches!(self.kinds[a], WordArrow::Left { .. }))
    }

    /// Σ ε(b)·b·b*·p over right arrows b, with b* the right arrow of the
    /// partner type out of e(b) and p the left path back to s(b).
    pub fn potential(&self, trunc: usize) -> Result<Element> {
        let q = &self.quiver;
        let mut w = Element::zero(q.clone(), trunc);
        for b in 0..q.num_arrows() {
            let WordArrow::Right { doubled, sign } = self.kinds[b] else { continue };
            let Some(bs) = self.right_arrow_from(q.target(b), self.doubled.partner[doubled]) else { continue };
            let mut cycle = vec![b, bs];
            let mut v = q.target(bs);
            while v != q.source(b) {
                let l = self.left_arrow_from(v).ok_or_else(|| {
                    Error::structural("left path does not return to the start of the cycle").with_datum(q.arrow_name(b))
                })?;
                cycle.push(l);
                v = q.target(l);
            }
            w.add_term(Path::from_arrows(q, &cycle)?, crate::rational::q(sign));
        }
        cyclic_normal_form(&w)
    }

    /// The QP with frozen vertices.
    pub fn qp(&self, trunc: usize) -> Result<Qp> {
        Qp::new(self.quiver.clone(), self.potential(trunc)?, self.frozen.clone())
    }

    /// Drop the frozen vertices, their arrows and the cycles through them.
    pub fn stable_qp(&self, trunc: usize) -> Result<Qp> {
        let keep: Vec<bool> = (0..self.quiver.num_vertices()).map(|v| !self.frozen.contains(&v)).collect();
        let sq = Arc::new(self.quiver.full_subquiver(|v| keep[v]));
        let w = self.potential(trunc)?;
        let inside = w.filter(|p| p.arrows().iter().all(|&a| {
            let a = a as usize;
            keep[self.quiver.source(a)] && keep[self.quiver.target(a)]
        }));
        Qp::unfrozen(sq.clone(), inside.transport(&sq)?)
    }

    /// Vertex name ↦ (type name, position in the word, starting at 1).
    pub fn typing_table(&self) -> Vec<(String, String, usize)> {
        self.typing
            .iter()
            .enumerate()
            .map(|(pos, &(t, _))| (self.quiver.vertex_name(pos).to_string(), self.base.vertex_name(t).to_string(), pos + 1))
            .collect()
    }
}

/// Rigidity of the stable QP of a word.
pub fn word_qp_rigidity(c: &CoxeterDatum, word: &[usize], trunc: usize) -> Result<RigidityVerdict> {
    is_rigid_truncated(&word_quiver(c, word)?.stable_qp(trunc)?)
}
