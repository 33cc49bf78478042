//! Truncated Jacobian algebras: the quotient of KQ/J^{N+1} by the ideal
//! generated by the cyclic derivatives, computed by sparse elimination over
//! path ids ordered by (length, generation order).
//!
//! If some layer J^d/J^{d+1} dies in the truncated quotient then J^d lies in
//! the ideal plus J^{d+1}; iterating and using that the Jacobian ideal is
//! closed gives J^d inside the ideal, so the truncated answer is the exact
//! finite-dimensional algebra.

mod algebra;
pub mod oracle;
mod sparse;

pub use algebra::{
    ext_dims, ext_matrix, ext2_regular_vanishes, two_cy_diagnostic, verify_presentation_complexes, ComplexCheck,
    FiniteAlgebra, PresentationReport, TwoCyEntry,
};
pub use sparse::{PathSpace, SVec};

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::path_algebra::{cyclic_derivative, Element, Path};
use crate::qp::Qp;
use crate::quiver::Quiver;
use crate::rational::Q;

/// Outcome of [`finiteness_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite { dim: usize, nilpotency: usize },
    Inconclusive { truncation: usize, dims: Vec<usize> },
}

/// KQ/(J^{N+1} + I) with I generated by the selected cyclic derivatives.
#[derive(Debug)]
pub struct TruncatedAlgebra {
    space: Arc<PathSpace>,
    pivots: Vec<Option<SVec>>,
    nilpotency: Option<usize>,
    /// Paths of length ≥ cutoff are zero in the quotient.
    cutoff: usize,
    dims: Vec<usize>,
}

/// Derivatives ∂_aW for arrows a with neither endpoint frozen.
pub fn jacobian_generators(p: &Qp) -> Result<Vec<Element>> {
    let q = p.quiver();
    let mut out = Vec::new();
    for a in 0..q.num_arrows() {
        if p.is_frozen(q.source(a)) || p.is_frozen(q.target(a)) {
            continue;
        }
        let d = cyclic_derivative(a, p.potential())?;
        if !d.is_zero() {
            out.push(d);
        }
    }
    Ok(out)
}

struct Closure {
    pivots: Vec<Option<SVec>>,
    nilpotency: Option<usize>,
}

/// Echelon basis (by leading path) of the two-sided ideal generated by
/// `gens` inside KQ/J^{N+1}. With `stop_early`, stops once some layer is
/// entirely in the ideal; layers up to that one are then complete.
fn close_ideal(space: &PathSpace, gens: Vec<SVec>, stop_early: bool) -> Closure {
    let q = space.quiver().clone();
    let n = space.truncation();
    let mut pivots: Vec<Option<SVec>> = vec![None; space.len()];
    let mut count = vec![0usize; n + 1];
    let mut store: Vec<Option<SVec>> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u32, usize)>> = BinaryHeap::new();
    let push = |v: SVec, store: &mut Vec<Option<SVec>>, heap: &mut BinaryHeap<Reverse<(u32, usize)>>| {
        if let Some(&(lead, _)) = v.first() {
            heap.push(Reverse((lead, store.len())));
            store.push(Some(v));
        }
    };
    for g in gens {
        push(g, &mut store, &mut heap);
    }
    let layer_full = |d: usize, count: &[usize]| d >= 1 && count[d] == space.level(d).len();
    let mut checked = 0usize;
    while let Some(Reverse((lead, slot))) = heap.pop() {
        let deg = space.degree(lead);
        if stop_early {
            while checked < deg {
                if layer_full(checked, &count) {
                    return Closure { pivots, nilpotency: Some(checked) };
                }
                checked += 1;
            }
        }
        let mut row = store[slot].take().unwrap();
        while let Some((l, c)) = row.first().cloned() {
            match &pivots[l as usize] {
                Some(p) => row = sparse::axpy(&row, &-c, p),
                None => break,
            }
        }
        if row.is_empty() {
            continue;
        }
        sparse::normalize(&mut row);
        let l = row[0].0;
        let path = space.path(l);
        let (s, e) = (path.start(), path.end());
        for &a in q.arrows_from(e) {
            push(space.mul_arrow_right(&row, a), &mut store, &mut heap);
        }
        for &a in q.arrows_into(s) {
            push(space.mul_arrow_left(a, &row), &mut store, &mut heap);
        }
        count[space.degree(l)] += 1;
        pivots[l as usize] = Some(row);
    }
    let nilpotency = (1..=n).find(|&d| layer_full(d, &count));
    Closure { pivots, nilpotency }
}

impl TruncatedAlgebra {
    /// Quotient of the QP's path algebra at truncation `n`. With
    /// `stop_early` the computation ends as soon as finiteness is certified.
    pub fn build(p: &Qp, n: usize, stop_early: bool) -> Result<TruncatedAlgebra> {
        let space = Arc::new(PathSpace::new(p.quiver().clone(), n));
        let w = p.with_truncation(n);
        let gens = jacobian_generators(&w)?.iter().map(|g| space.vector(g)).collect();
        Ok(Self::from_generators(space, gens, stop_early))
    }

    pub fn from_generators(space: Arc<PathSpace>, gens: Vec<SVec>, stop_early: bool) -> TruncatedAlgebra {
        let n = space.truncation();
        let closure = close_ideal(&space, gens, stop_early);
        let cutoff = closure.nilpotency.unwrap_or(n + 1);
        let dims = (0..=n)
            .map(|d| {
                if d >= cutoff {
                    0
                } else {
                    space.level(d).filter(|&id| closure.pivots[id].is_none()).count()
                }
            })
            .collect();
        TruncatedAlgebra { space, pivots: closure.pivots, nilpotency: closure.nilpotency, cutoff, dims }
    }

    pub fn space(&self) -> &Arc<PathSpace> {
        &self.space
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.space.quiver()
    }

    pub fn truncation(&self) -> usize {
        self.space.truncation()
    }

    /// Surviving dimension in each degree 0..=N.
    pub fn dims_by_degree(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn nilpotency(&self) -> Option<usize> {
        self.nilpotency
    }

    pub fn is_certified(&self) -> bool {
        self.nilpotency.is_some()
    }

    pub fn certificate(&self) -> Finiteness {
        match self.nilpotency {
            Some(d) => Finiteness::Finite { dim: self.total_dim(), nilpotency: d },
            None => Finiteness::Inconclusive { truncation: self.truncation(), dims: self.dims.clone() },
        }
    }

    /// Surviving paths, ordered by id.
    pub fn basis(&self) -> Vec<u32> {
        (0..self.space.len() as u32)
            .filter(|&id| self.space.degree(id) < self.cutoff && self.pivots[id as usize].is_none())
            .collect()
    }

    pub fn basis_paths(&self) -> Vec<Path> {
        self.basis().into_iter().map(|id| self.space.path(id).clone()).collect()
    }

    /// Normal form: a combination of surviving paths.
    pub fn normal_form(&self, v: &SVec) -> SVec {
        let mut work: BTreeMap<u32, Q> = v.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((id, c)) = work.pop_first() {
            if c.is_zero() {
                continue;
            }
            if self.space.degree(id) >= self.cutoff {
                break;
            }
            match &self.pivots[id as usize] {
                Some(p) => {
                    for (j, d) in &p[1..] {
                        let e = work.entry(*j).or_insert_with(Q::zero);
                        *e -= &c * d;
                    }
                }
                None => out.push((id, c)),
            }
        }
        out
    }

    pub fn normal_form_element(&self, x: &Element) -> Result<Element> {
        if **x.quiver() != **self.quiver() {
            return Err(Error::structural("element is over a different quiver"));
        }
        Ok(self.space.element(&self.normal_form(&self.space.vector(&x.retruncate(self.truncation())))))
    }

    /// Leading paths of the ideal's echelon basis, with their rows.
    fn pivot_rows(&self, max_degree: usize) -> impl Iterator<Item = &SVec> {
        self.pivots.iter().flatten().filter(move |r| self.space.degree(r[0].0) <= max_degree)
    }

    /// dim e_i (I/(IJ+JI)) e_j for all (i, j).
    pub fn minimal_relation_dims(&self) -> Vec<Vec<usize>> {
        let q = self.quiver();
        let nv = q.num_vertices();
        let top = self.nilpotency.unwrap_or(self.truncation());
        let trunc = |v: SVec| -> SVec { v.into_iter().filter(|(id, _)| self.space.degree(*id) <= top).collect() };
        let mut out = vec![vec![0usize; nv]; nv];
        let mut products: Vec<SVec> = Vec::new();
        for row in self.pivot_rows(top) {
            let p = self.space.path(row[0].0);
            out[p.start()][p.end()] += 1;
            for &a in q.arrows_from(p.end()) {
                products.push(trunc(self.space.mul_arrow_right(row, a)));
            }
            for &a in q.arrows_into(p.start()) {
                products.push(trunc(self.space.mul_arrow_left(a, row)));
            }
        }
        // rank of the products, counted per block
        let mut piv: BTreeMap<u32, SVec> = BTreeMap::new();
        for mut v in products {
            while let Some((l, c)) = v.first().cloned() {
                match piv.get(&l) {
                    Some(p) => v = sparse::axpy(&v, &-c, p),
                    None => break,
                }
            }
            if v.is_empty() {
                continue;
            }
            sparse::normalize(&mut v);
            let p = self.space.path(v[0].0);
            out[p.start()][p.end()] -= 1;
            piv.insert(v[0].0, v);
        }
        out
    }

    /// The finite-dimensional algebra, when certified.
    pub fn finite_algebra(&self) -> Result<FiniteAlgebra> {
        if !self.is_certified() {
            return Err(Error::precondition("Jacobian algebra not certified finite at this truncation"));
        }
        Ok(FiniteAlgebra::from_truncated(self))
    }
}

pub fn truncated_quotient(p: &Qp, n: usize) -> Result<TruncatedAlgebra> {
    TruncatedAlgebra::build(p, n, true)
}

pub fn finiteness_certificate(p: &Qp, n: usize) -> Result<Finiteness> {
    Ok(truncated_quotient(p, n)?.certificate())
}

/// Relation counts; uses the complete ideal up to degree N when not finite.
pub fn minimal_relation_dims(p: &Qp, n: usize) -> Result<Vec<Vec<usize>>> {
    let a = truncated_quotient(p, n)?;
    if a.is_certified() {
        return Ok(a.minimal_relation_dims());
    }
    Ok(TruncatedAlgebra::build(p, n, false)?.minimal_relation_dims())
}

/// Distinct vertices along the cycle, and every arrow between two of its
/// vertices parallel to one of its arrows.
pub fn is_full_cycle(q: &Quiver, cycle: &Path) -> Result<bool> {
    if cycle.is_trivial() || !cycle.is_cycle() {
        return Err(Error::precondition("not a cycle").with_datum(cycle.display(q)));
    }
    let verts: Vec<usize> = cycle.arrows().iter().map(|&a| q.source(a as usize)).collect();
    let set: std::collections::BTreeSet<usize> = verts.iter().copied().collect();
    if set.len() != verts.len() {
        return Ok(false);
    }
    let on_cycle: std::collections::BTreeSet<(usize, usize)> =
        cycle.arrows().iter().map(|&a| (q.source(a as usize), q.target(a as usize))).collect();
    Ok(q
        .arrows()
        .iter()
        .filter(|x| set.contains(&x.source) && set.contains(&x.target))
        .all(|x| on_cycle.contains(&(x.source, x.target))))
}

#[cfg(test)]
mod tests;
