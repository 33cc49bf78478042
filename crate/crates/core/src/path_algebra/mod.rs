//! The complete path algebra truncated at degree N.
//!
//! Paths compose left to right: `ab` is a followed by b, so e(a) = s(b).

mod substitution;

pub use substitution::Substitution;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::rational::Q;

pub type ArrowSeq = SmallVec<[u32; 8]>;

/// A path in a quiver. Trivial paths (length 0) remember their vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Path {
    start: u32,
    end: u32,
    arrows: ArrowSeq,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.start.cmp(&other.start))
            .then_with(|| self.end.cmp(&other.end))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.start)
        } else {
            write!(f, "{:?}", self.arrows.as_slice())
        }
    }
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { start: v as u32, end: v as u32, arrows: SmallVec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        let mut arrows = SmallVec::new();
        arrows.push(a as u32);
        Path { start: q.source(a) as u32, end: q.target(a) as u32, arrows }
    }

    /// A path from a nonempty arrow sequence; fails if two consecutive arrows do not compose.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::structural("empty arrow sequence needs a vertex"));
        };
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return Err(Error::structural("arrows do not compose")
                    .with_datum(format!("{} {}", q.arrow_name(w[0]), q.arrow_name(w[1]))));
            }
        }
        Ok(Path {
            start: q.source(first) as u32,
            end: q.target(*arrows.last().unwrap()) as u32,
            arrows: arrows.iter().map(|&a| a as u32).collect(),
        })
    }

    /// A path from arrow names, e.g. `["a", "b"]`.
    pub fn from_names(q: &Quiver, names: &[&str]) -> Result<Path> {
        let ids = names.iter().map(|n| q.require_arrow(n)).collect::<Result<Vec<_>>>()?;
        Path::from_arrows(q, &ids)
    }

    /// Internal constructor; the caller guarantees composability.
    pub(crate) fn raw(start: usize, end: usize, arrows: ArrowSeq) -> Path {
        Path { start: start as u32, end: end as u32, arrows }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn start(&self) -> usize {
        self.start as usize
    }

    pub fn end(&self) -> usize {
        self.end as usize
    }

    pub fn arrows(&self) -> &[u32] {
        &self.arrows
    }

    pub fn arrow_at(&self, i: usize) -> usize {
        self.arrows[i] as usize
    }

    pub fn is_cycle(&self) -> bool {
        !self.arrows.is_empty() && self.start == self.end
    }

    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, end: other.end, arrows })
    }

    /// The subpath of arrows [from, to), which must be nonempty or given a vertex.
    pub(crate) fn slice(&self, q: &Quiver, from: usize, to: usize) -> Path {
        if from == to {
            let v = if from == 0 {
                self.start()
            } else {
                q.target(self.arrow_at(from - 1))
            };
            return Path::trivial(v);
        }
        let arrows: ArrowSeq = self.arrows[from..to].iter().copied().collect();
        Path {
            start: q.source(arrows[0] as usize) as u32,
            end: q.target(*arrows.last().unwrap() as usize) as u32,
            arrows,
        }
    }

    /// The cycle read starting from position `offset`.
    pub fn rotate(&self, offset: usize) -> Path {
        let m = self.arrows.len();
        let mut arrows = ArrowSeq::with_capacity(m);
        for i in 0..m {
            arrows.push(self.arrows[(offset + i) % m]);
        }
        let mut p = self.clone();
        p.arrows = arrows;
        p
    }

    pub fn names(&self, q: &Quiver) -> Vec<String> {
        self.arrows.iter().map(|&a| q.arrow_name(a as usize).to_string()).collect()
    }

    /// Human-readable form: arrow names separated by spaces, `e_v` for trivial paths.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex_name(self.start()))
        } else {
            self.names(q).join(" ")
        }
    }

    pub fn contains_arrow(&self, a: usize) -> bool {
        self.arrows.iter().any(|&x| x as usize == a)
    }
}

/// Rotation offset giving the lexicographically least name sequence,
/// ties broken by the smallest offset.
pub fn canonical_offset(q: &Quiver, p: &Path) -> usize {
    let m = p.len();
    let ranks: Vec<u32> = p.arrows.iter().map(|&a| q.name_rank(a as usize)).collect();
    let mut best = 0;
    for off in 1..m {
        for i in 0..m {
            let x = ranks[(off + i) % m];
            let y = ranks[(best + i) % m];
            if x != y {
                if x < y {
                    best = off;
                }
                break;
            }
        }
    }
    best
}

pub fn canonical_rotation(q: &Quiver, p: &Path) -> Path {
    if p.len() <= 1 {
        return p.clone();
    }
    let off = canonical_offset(q, p);
    let r = p.rotate(off);
    let start = q.source(r.arrow_at(0));
    Path { start: start as u32, end: start as u32, arrows: r.arrows }
}

/// A rational combination of paths of length at most N.
#[derive(Clone)]
pub struct Element {
    quiver: Arc<Quiver>,
    trunc: usize,
    terms: BTreeMap<Path, Q>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc
            && (Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
            && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Element {
    pub fn zero(quiver: Arc<Quiver>, trunc: usize) -> Element {
        Element { quiver, trunc, terms: BTreeMap::new() }
    }

    pub fn from_path(quiver: Arc<Quiver>, trunc: usize, path: Path, coeff: Q) -> Element {
        let mut e = Element::zero(quiver, trunc);
        e.add_term(path, coeff);
        e
    }

    pub fn arrow(quiver: Arc<Quiver>, trunc: usize, a: usize) -> Element {
        let p = Path::arrow(&quiver, a);
        Element::from_path(quiver, trunc, p, Q::one())
    }

    pub fn vertex(quiver: Arc<Quiver>, trunc: usize, v: usize) -> Element {
        Element::from_path(quiver, trunc, Path::trivial(v), Q::one())
    }

    /// Sum of coefficient·path given by arrow names; a convenience for tests and fixtures.
    pub fn from_terms(quiver: Arc<Quiver>, trunc: usize, terms: &[(Q, &[&str])]) -> Result<Element> {
        let mut e = Element::zero(quiver.clone(), trunc);
        for (c, names) in terms {
            let p = Path::from_names(&quiver, names)?;
            e.add_term(p, c.clone());
        }
        Ok(e)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Path, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Path, Q> {
        self.terms
    }

    pub fn coeff(&self, p: &Path) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add c·p in place; paths longer than N are dropped.
    pub fn add_term(&mut self, p: Path, c: Q) {
        if c.is_zero() || p.len() > self.trunc {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (p, x) in &other.terms {
            self.add_term(p.clone(), x * c);
        }
    }

    pub fn check_compatible(&self, other: &Element) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::structural("elements have different truncation degrees")
                .with_datum(format!("{} vs {}", self.trunc, other.trunc)));
        }
        if !Arc::ptr_eq(&self.quiver, &other.quiver) && self.quiver != other.quiver {
            return Err(Error::structural("elements live over different quivers"));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Q) -> Element {
        let mut out = Element::zero(self.quiver.clone(), self.trunc);
        out.add_scaled(self, c);
        out
    }

    /// Product with truncation; errors on mismatched quiver or N.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Element) -> Element {
        let mut out = Element::zero(self.quiver.clone(), self.trunc);
        for (p, x) in &self.terms {
            for (r, y) in &other.terms {
                if p.len() + r.len() > self.trunc {
                    // other's terms are sorted by length, nothing later fits
                    break;
                }
                if let Some(pr) = p.concat(r) {
                    out.add_term(pr, x * y);
                }
            }
        }
        out
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        Ok(out)
    }

    /// Part of exact degree d.
    pub fn degree_part(&self, d: usize) -> Element {
        self.filter(|p| p.len() == d)
    }

    pub fn filter(&self, keep: impl Fn(&Path) -> bool) -> Element {
        Element {
            quiver: self.quiver.clone(),
            trunc: self.trunc,
            terms: self.terms.iter().filter(|(p, _)| keep(p)).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.len()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.len()).max()
    }

    pub fn has_constant_part(&self) -> bool {
        self.terms.keys().any(|p| p.is_trivial())
    }

    /// All stored paths share one start and one end vertex.
    pub fn is_basic(&self) -> bool {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return true;
        };
        it.all(|p| p.start() == first.start() && p.end() == first.end())
    }

    /// Endpoints of a nonzero basic element.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        if !self.is_basic() {
            return None;
        }
        self.terms.keys().next().map(|p| (p.start(), p.end()))
    }

    pub fn is_supported_on_cycles(&self) -> bool {
        self.terms.keys().all(|p| p.is_cycle())
    }

    /// Explicit change of truncation degree (dropping terms beyond the new N).
    pub fn retruncate(&self, n: usize) -> Element {
        Element {
            quiver: self.quiver.clone(),
            trunc: n,
            terms: self.terms.iter().filter(|(p, _)| p.len() <= n).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }

    /// The same combination of paths over another quiver with identical
    /// arrow names and endpoints for the arrows used.
    pub fn transport(&self, target: &Arc<Quiver>) -> Result<Element> {
        let q = &self.quiver;
        let mut out = Element::zero(target.clone(), self.trunc);
        for (p, c) in &self.terms {
            let np = if p.is_trivial() {
                Path::trivial(target.require_vertex(q.vertex_name(p.start()))?)
            } else {
                let ids = p
                    .arrows()
                    .iter()
                    .map(|&a| target.require_arrow(q.arrow_name(a as usize)))
                    .collect::<Result<Vec<_>>>()?;
                Path::from_arrows(target, &ids)?
            };
            out.add_term(np, c.clone());
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&crate::rational::format_q(&mag));
                s.push('·');
            }
            s.push_str(&format!("({})", p.display(&self.quiver)));
        }
        s
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("adding incompatible elements")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.check_compatible(rhs).expect("subtracting incompatible elements");
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs).expect("multiplying incompatible elements")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Q::one())
    }
}

fn require_constant_free(x: &Element) -> Result<()> {
    if x.has_constant_part() {
        return Err(Error::precondition("element has a nonzero constant part"));
    }
    Ok(())
}

fn require_cycles(w: &Element) -> Result<()> {
    if let Some(p) = w.terms.keys().find(|p| !p.is_cycle()) {
        return Err(Error::precondition("potential term is not a cycle").with_datum(p.display(&w.quiver)));
    }
    Ok(())
}

/// ∂ʳ_a: strip a final letter a.
pub fn right_derivative(a: usize, x: &Element) -> Result<Element> {
    require_constant_free(x)?;
    let q = x.quiver.clone();
    let mut out = Element::zero(q.clone(), x.trunc);
    for (p, c) in &x.terms {
        if p.arrow_at(p.len() - 1) == a {
            out.add_term(p.slice(&q, 0, p.len() - 1), c.clone());
        }
    }
    Ok(out)
}

/// ∂ˡ_a: strip an initial letter a.
pub fn left_derivative(a: usize, x: &Element) -> Result<Element> {
    require_constant_free(x)?;
    let q = x.quiver.clone();
    let mut out = Element::zero(q.clone(), x.trunc);
    for (p, c) in &x.terms {
        if p.arrow_at(0) == a {
            out.add_term(p.slice(&q, 1, p.len()), c.clone());
        }
    }
    Ok(out)
}

/// Remainder of a cycle after removing positions [i, i+width) cyclically:
/// the path a_{i+width} … a_m a_1 … a_{i−1}.
fn cyclic_remainder(q: &Quiver, p: &Path, i: usize, width: usize) -> Path {
    let m = p.len();
    if width == m {
        return Path::trivial(q.target(p.arrow_at((i + m - 1) % m)));
    }
    let mut arrows = ArrowSeq::with_capacity(m - width);
    for t in width..m {
        arrows.push(p.arrows[(i + t) % m]);
    }
    Path::raw(q.source(arrows[0] as usize), q.target(*arrows.last().unwrap() as usize), arrows)
}

/// ∂_a W: for each occurrence of a in a cycle, the rotated remainder.
pub fn cyclic_derivative(a: usize, w: &Element) -> Result<Element> {
    require_cycles(w)?;
    let q = w.quiver.clone();
    let mut out = Element::zero(q.clone(), w.trunc);
    for (p, c) in &w.terms {
        for i in 0..p.len() {
            if p.arrow_at(i) == a {
                out.add_term(cyclic_remainder(&q, p, i, 1), c.clone());
            }
        }
    }
    Ok(out)
}

/// ∂_{(a,b)} W with cyclic indexing: the pair (a_m, a_1) counts as adjacent.
pub fn second_derivative(a: usize, b: usize, w: &Element) -> Result<Element> {
    require_cycles(w)?;
    let q = w.quiver.clone();
    let mut out = Element::zero(q.clone(), w.trunc);
    if q.target(a) != q.source(b) {
        return Ok(out);
    }
    for (p, c) in &w.terms {
        let m = p.len();
        if m < 2 {
            continue;
        }
        for i in 0..m {
            if p.arrow_at(i) == a && p.arrow_at((i + 1) % m) == b {
                out.add_term(cyclic_remainder(&q, p, i, 2), c.clone());
            }
        }
    }
    Ok(out)
}

/// Replace every cycle by its canonical rotation and merge coefficients.
pub fn cyclic_normal_form(w: &Element) -> Result<Element> {
    require_cycles(w)?;
    let q = w.quiver.clone();
    let mut out = Element::zero(q.clone(), w.trunc);
    for (p, c) in &w.terms {
        out.add_term(canonical_rotation(&q, p), c.clone());
    }
    Ok(out)
}

/// Image in the space of cyclic classes: non-cycles vanish, cycles map to
/// their canonical rotation. Trivial paths are their own classes.
pub fn cyclic_class_project(x: &Element) -> BTreeMap<Path, Q> {
    let q = &x.quiver;
    let mut out: BTreeMap<Path, Q> = BTreeMap::new();
    for (p, c) in &x.terms {
        if p.start() != p.end() {
            continue;
        }
        let key = canonical_rotation(q, p);
        let e = out.entry(key).or_insert_with(Q::zero);
        *e += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[cfg(test)]
mod tests;
