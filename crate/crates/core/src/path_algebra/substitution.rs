use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Element, Path};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::Quiver;
use crate::rational::Q;

/// An algebra morphism between complete path algebras, fixing vertices
/// (matched by name) and given on arrows.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    source: Arc<Quiver>,
    target: Arc<Quiver>,
    trunc: usize,
    vertex_map: Vec<usize>,
    images: Vec<Element>,
}

impl Substitution {
    pub fn new(source: Arc<Quiver>, target: Arc<Quiver>, trunc: usize, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.num_arrows() {
            return Err(Error::structural("substitution needs one image per arrow"));
        }
        let vertex_map = source
            .vertices()
            .iter()
            .map(|v| target.require_vertex(v))
            .collect::<Result<Vec<_>>>()?;
        for (a, img) in images.iter().enumerate() {
            let name = source.arrow_name(a);
            if img.truncation() != trunc {
                return Err(Error::structural("image has a different truncation degree").with_datum(name));
            }
            if !Arc::ptr_eq(img.quiver(), &target) && **img.quiver() != *target {
                return Err(Error::structural("image lives over the wrong quiver").with_datum(name));
            }
            if img.has_constant_part() {
                return Err(Error::structural("image has a nonzero constant part").with_datum(name));
            }
            if !img.is_zero() {
                let want = (vertex_map[source.source(a)], vertex_map[source.target(a)]);
                if img.endpoints() != Some(want) {
                    return Err(Error::structural("image endpoints do not match the arrow").with_datum(name));
                }
            }
        }
        Ok(Substitution { source, target, trunc, vertex_map, images })
    }

    pub fn identity(q: Arc<Quiver>, trunc: usize) -> Self {
        let images = (0..q.num_arrows()).map(|a| Element::arrow(q.clone(), trunc, a)).collect();
        Substitution::new(q.clone(), q, trunc, images).expect("identity substitution")
    }

    pub fn source(&self) -> &Arc<Quiver> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Quiver> {
        &self.target
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn image(&self, a: usize) -> &Element {
        &self.images[a]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        (0..self.images.len()).all(|a| {
            let img = &self.images[a];
            img.num_terms() == 1
                && img.terms().iter().next().is_some_and(|(p, c)| {
                    c.is_one()
                        && p.len() == 1
                        && self.target.arrow_name(p.arrow_at(0)) == self.source.arrow_name(a)
                })
        })
    }

    /// Image of a single path.
    pub fn apply_path(&self, p: &Path) -> Element {
        if p.is_trivial() {
            return Element::vertex(self.target.clone(), self.trunc, self.vertex_map[p.start()]);
        }
        let mut acc = self.images[p.arrow_at(0)].clone();
        for i in 1..p.len() {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul_unchecked(&self.images[p.arrow_at(i)]);
        }
        acc
    }

    /// Apply to an element of the source algebra.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.truncation() != self.trunc {
            return Err(Error::structural("element truncation differs from the substitution's"));
        }
        if !Arc::ptr_eq(x.quiver(), &self.source) && **x.quiver() != *self.source {
            return Err(Error::structural("element is not over the substitution's source quiver"));
        }
        let mut out = Element::zero(self.target.clone(), self.trunc);
        // shared prefixes are common in potentials; cache images of prefixes
        let mut cache: HashMap<Path, Element> = HashMap::new();
        for (p, c) in x.terms() {
            let img = if p.len() <= 1 {
                self.apply_path(p)
            } else {
                let prefix = p.slice(&self.source, 0, p.len() - 1);
                let head = match cache.get(&prefix) {
                    Some(h) => h.clone(),
                    None => {
                        let h = self.apply_path(&prefix);
                        cache.insert(prefix, h.clone());
                        h
                    }
                };
                head.mul_unchecked(&self.images[p.arrow_at(p.len() - 1)])
            };
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    /// First self, then `next`: a ↦ next(self(a)).
    pub fn then(&self, next: &Substitution) -> Result<Substitution> {
        if self.trunc != next.trunc {
            return Err(Error::structural("composing substitutions with different truncation"));
        }
        if *self.target != *next.source {
            return Err(Error::structural("composing substitutions over mismatched quivers"));
        }
        let images = self.images.iter().map(|x| next.apply(&x.retarget(&next.source))).collect::<Result<Vec<_>>>()?;
        Substitution::new(self.source.clone(), next.target.clone(), self.trunc, images)
    }

    /// Coefficient matrix of the degree-one part: entry (t, a) is the
    /// coefficient of target arrow t in the image of source arrow a.
    pub fn linear_part(&self) -> Matrix {
        let mut m = Matrix::zeros(self.target.num_arrows(), self.source.num_arrows());
        for (a, img) in self.images.iter().enumerate() {
            for (p, c) in img.terms() {
                if p.len() == 1 {
                    m[(p.arrow_at(0), a)] = c.clone();
                }
            }
        }
        m
    }

    pub fn is_invertible(&self) -> bool {
        self.linear_part().is_invertible()
    }

    /// Inverse modulo degree N + 1, built degree by degree from the inverse
    /// of the linear part.
    pub fn inverse(&self) -> Result<Substitution> {
        let lin = self.linear_part();
        let inv = lin.inverse().ok_or_else(|| Error::precondition("linear part is not invertible"))?;
        let (src, tgt, n) = (self.source.clone(), self.target.clone(), self.trunc);
        let mut images: Vec<Element> = (0..tgt.num_arrows())
            .map(|t| {
                let mut e = Element::zero(src.clone(), n);
                for a in 0..src.num_arrows() {
                    let c = &inv[(a, t)];
                    if !c.is_zero() {
                        e.add_term(Path::arrow(&src, a), c.clone());
                    }
                }
                e
            })
            .collect();
        let linear_inverse = Substitution::new(tgt.clone(), src.clone(), n, images.clone())?;
        for d in 1..n {
            let candidate = Substitution::new(tgt.clone(), src.clone(), n, images.clone())?;
            let composite = candidate.then(self)?;
            let mut changed = false;
            for (t, img) in composite.images.iter().enumerate() {
                let mut err = img.clone();
                err.add_term(Path::arrow(&tgt, t), -Q::one());
                let e = err.degree_part(d + 1);
                if e.is_zero() {
                    continue;
                }
                let delta = linear_inverse.apply(&e)?;
                images[t].add_scaled(&delta, &-Q::one());
                changed = true;
            }
            if !changed && composite.images.iter().enumerate().all(|(t, img)| {
                let mut err = img.clone();
                err.add_term(Path::arrow(&tgt, t), -Q::one());
                err.is_zero()
            }) {
                break;
            }
        }
        Substitution::new(tgt, src, n, images)
    }
}

impl Element {
    /// Same element viewed over an equal quiver held in another allocation.
    pub(crate) fn retarget(&self, q: &Arc<Quiver>) -> Element {
        let mut e = self.clone();
        e.quiver = q.clone();
        e
    }
}
