use std::collections::HashSet;
use std::sync::Arc;

use num_traits::One;

use super::Qp;
use crate::error::{Error, Result};
use crate::path_algebra::{cyclic_normal_form, ArrowSeq, Element, Path};
use crate::quiver::{composite_name, fresh_name, star, Arrow, Quiver};
use crate::rational::Q;

/// The premutated QP together with the bookkeeping that relates its arrows
/// to those of the original quiver.
#[derive(Clone, Debug)]
pub struct Premutation {
    pub qp: Qp,
    /// The mutation vertex; it keeps its index and is renamed k*.
    pub vertex: usize,
    /// (old arrow, new arrow) for arrows not incident to k.
    pub kept: Vec<(usize, usize)>,
    /// Arrows a_1..a_s ending at k, in arrow order (old indices).
    pub incoming: Vec<usize>,
    /// Arrows b_1..b_t starting at k, in arrow order (old indices).
    pub outgoing: Vec<usize>,
    /// composite[p][q] is the new arrow [a_p b_q].
    pub composite: Vec<Vec<usize>>,
    /// New arrows a_p*: k* → s(a_p).
    pub star_in: Vec<usize>,
    /// New arrows b_q*: e(b_q) → k*.
    pub star_out: Vec<usize>,
}

impl Premutation {
    /// New index of an arrow of the original quiver not incident to k.
    pub fn kept_image(&self, old: usize) -> Option<usize> {
        self.kept.iter().find(|(o, _)| *o == old).map(|(_, n)| *n)
    }
}

/// Rotate every cycle of the potential so that none starts at k.
pub fn normalize_avoid_vertex(p: &Qp, k: usize) -> Result<Element> {
    let q = p.quiver();
    if let Some(l) = q.loops().into_iter().find(|&l| q.source(l) == k) {
        return Err(Error::precondition("loop at the vertex").with_datum(q.arrow_name(l)));
    }
    let w = p.potential();
    let mut out = Element::zero(q.clone(), w.truncation());
    for (path, c) in w.terms() {
        if path.start() != k {
            out.add_term(path.clone(), c.clone());
            continue;
        }
        let off = (0..path.len()).find(|&i| q.source(path.arrow_at(i)) != k).ok_or_else(|| {
            Error::precondition("cycle lives entirely at the vertex").with_datum(path.display(q))
        })?;
        let r = path.rotate(off);
        let s = q.source(r.arrow_at(0));
        out.add_term(Path::raw(s, s, r.arrows().iter().copied().collect()), c.clone());
    }
    Ok(out)
}

/// μ̃_k: reverse the arrows at k, add composites [ab] for paths a b through
/// k, and replace W by [W] + Σ a*[ab]b*.
pub fn premutate(p: &Qp, k: usize) -> Result<Premutation> {
    let q = p.quiver();
    if k >= q.num_vertices() {
        return Err(Error::structural("mutation vertex out of range"));
    }
    if p.is_frozen(k) {
        return Err(Error::precondition("cannot mutate at a frozen vertex").with_datum(q.vertex_name(k)));
    }
    if let Some(l) = q.loops().into_iter().find(|&l| q.source(l) == k) {
        return Err(Error::precondition("loop at the mutation vertex").with_datum(q.arrow_name(l)));
    }
    if let Some((a, b)) = q.two_cycle_through(k) {
        return Err(Error::precondition("2-cycle through the mutation vertex")
            .with_datum(format!("{} {}", q.arrow_name(a), q.arrow_name(b))));
    }
    let normalized = normalize_avoid_vertex(p, k)?;
    let incoming: Vec<usize> = q.arrows_into(k).to_vec();
    let outgoing: Vec<usize> = q.arrows_from(k).to_vec();

    let mut taken: HashSet<String> = q.arrow_names();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut kept = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        if a.source != k && a.target != k {
            kept.push((i, arrows.len()));
            arrows.push(a.clone());
        }
    }
    let mut composite = vec![vec![0usize; outgoing.len()]; incoming.len()];
    for (pi, &a) in incoming.iter().enumerate() {
        for (qi, &b) in outgoing.iter().enumerate() {
            let name = fresh_name(&taken, &composite_name(q.arrow_name(a), q.arrow_name(b)));
            taken.insert(name.clone());
            composite[pi][qi] = arrows.len();
            arrows.push(Arrow { name, source: q.source(a), target: q.target(b) });
        }
    }
    let reversed_name = |old: usize, taken: &mut HashSet<String>| {
        let mut t = taken.clone();
        t.remove(q.arrow_name(old));
        let name = fresh_name(&t, &star(q.arrow_name(old)));
        taken.insert(name.clone());
        name
    };
    let mut star_in = Vec::new();
    for &a in &incoming {
        star_in.push(arrows.len());
        let name = reversed_name(a, &mut taken);
        arrows.push(Arrow { name, source: k, target: q.source(a) });
    }
    let mut star_out = Vec::new();
    for &b in &outgoing {
        star_out.push(arrows.len());
        let name = reversed_name(b, &mut taken);
        arrows.push(Arrow { name, source: q.target(b), target: k });
    }
    let mut vertices = q.vertices().to_vec();
    let mut vnames: HashSet<String> = vertices.iter().cloned().collect();
    vnames.remove(&vertices[k]);
    vertices[k] = fresh_name(&vnames, &star(&vertices[k]));
    let nq = Arc::new(Quiver::new(vertices, arrows)?);

    let n = p.truncation();
    let mut old_to_new = vec![usize::MAX; q.num_arrows()];
    for &(o, nw) in &kept {
        old_to_new[o] = nw;
    }
    let pos_in = |a: usize| incoming.iter().position(|&x| x == a).unwrap();
    let pos_out = |b: usize| outgoing.iter().position(|&x| x == b).unwrap();
    let mut w = Element::zero(nq.clone(), n);
    for (path, c) in normalized.terms() {
        let mut seq = ArrowSeq::new();
        let mut i = 0;
        while i < path.len() {
            let a = path.arrow_at(i);
            if q.target(a) == k {
                // the cycle does not start at k, so a is followed by an arrow out of k
                let b = path.arrow_at(i + 1);
                seq.push(composite[pos_in(a)][pos_out(b)] as u32);
                i += 2;
            } else {
                seq.push(old_to_new[a] as u32);
                i += 1;
            }
        }
        let s = nq.source(seq[0] as usize);
        w.add_term(Path::raw(s, s, seq), c.clone());
    }
    for pi in 0..incoming.len() {
        for qi in 0..outgoing.len() {
            let cyc = [star_in[pi], composite[pi][qi], star_out[qi]];
            w.add_term(Path::from_arrows(&nq, &cyc)?, Q::one());
        }
    }
    let w = cyclic_normal_form(&w)?;
    let frozen = p.frozen().clone();
    let qp = Qp::new(nq, w, frozen)?;
    Ok(Premutation { qp, vertex: k, kept, incoming, outgoing, composite, star_in, star_out })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Kept,
    Composite(usize, usize),
    StarIn(usize),
    StarOut(usize),
}

impl Premutation {
    fn kind(&self, x: usize) -> Kind {
        for (p, row) in self.composite.iter().enumerate() {
            if let Some(q) = row.iter().position(|&c| c == x) {
                return Kind::Composite(p, q);
            }
        }
        if let Some(p) = self.star_in.iter().position(|&c| c == x) {
            return Kind::StarIn(p);
        }
        if let Some(q) = self.star_out.iter().position(|&c| c == x) {
            return Kind::StarOut(q);
        }
        Kind::Kept
    }

    /// Δ = Σ a*[ab]b*.
    pub fn delta(&self) -> Result<Element> {
        let q = self.qp.quiver();
        let mut d = Element::zero(q.clone(), self.qp.truncation());
        for (pi, row) in self.composite.iter().enumerate() {
            for (qi, &c) in row.iter().enumerate() {
                d.add_term(Path::from_arrows(q, &[self.star_in[pi], c, self.star_out[qi]])?, Q::one());
            }
        }
        cyclic_normal_form(&d)
    }

    /// Pairs (d, d') of new arrows where ∂_{(d,d')}W' differs from what the
    /// case analysis of the premutated potential predicts.
    pub fn derivative_case_violations(&self) -> Result<Vec<String>> {
        use crate::path_algebra::second_derivative;
        let q = self.qp.quiver();
        let n = self.qp.truncation();
        let w = self.qp.potential();
        let bracket = w - &self.delta()?;
        let arrow = |x: usize| Element::arrow(q.clone(), n, x);
        let zero = Element::zero(q.clone(), n);
        let mut out = Vec::new();
        for d in 0..q.num_arrows() {
            for d2 in 0..q.num_arrows() {
                let expected = match (self.kind(d), self.kind(d2)) {
                    (Kind::Kept, Kind::Kept) | (Kind::Kept, Kind::Composite(..)) | (Kind::Composite(..), Kind::Kept) => {
                        second_derivative(d, d2, &bracket)?
                    }
                    (Kind::StarIn(p), Kind::Composite(p2, qq)) if p == p2 => arrow(self.star_out[qq]),
                    (Kind::Composite(p, qq), Kind::StarOut(q2)) if qq == q2 => arrow(self.star_in[p]),
                    (Kind::StarOut(qq), Kind::StarIn(p)) => arrow(self.composite[p][qq]),
                    _ => zero.clone(),
                };
                if second_derivative(d, d2, w)? != expected {
                    out.push(format!("({}, {})", q.arrow_name(d), q.arrow_name(d2)));
                }
            }
        }
        Ok(out)
    }
}
