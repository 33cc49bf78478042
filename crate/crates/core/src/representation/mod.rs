//! Finite-dimensional nilpotent representations of Jacobian algebras, their
//! mutation at a vertex, morphisms and isomorphism testing.
//!
//! A representation assigns to each arrow a: i → j a matrix M_a of shape
//! dim j × dim i acting on column vectors, so the path a₁a₂ acts as
//! M_{a₂}·M_{a₁}.

mod morita;
mod mutation;

pub use morita::{check_nearly_morita, strip_simple_summands, NearlyMoritaEntry, NearlyMoritaReport};
pub use mutation::{mutate_morphism, mutate_rep, mutate_rep_with, reduce_rep, vertex_scaffold, Splitting, VertexScaffold};

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::path_algebra::{cyclic_derivative, Element, Path};
use crate::qp::Qp;
use crate::quiver::Quiver;
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() {
            return Err(Error::structural("one dimension per vertex expected"));
        }
        if maps.len() != quiver.num_arrows() {
            return Err(Error::structural("one matrix per arrow expected"));
        }
        for (a, m) in maps.iter().enumerate() {
            let want = (dims[quiver.target(a)], dims[quiver.source(a)]);
            if (m.rows(), m.cols()) != want {
                return Err(Error::structural("matrix shape does not match the vertex dimensions").with_datum(
                    format!("{}: {}x{}, expected {}x{}", quiver.arrow_name(a), m.rows(), m.cols(), want.0, want.1),
                ));
            }
        }
        Ok(Representation { quiver, dims, maps })
    }

    /// All arrows act by zero.
    pub fn zero(quiver: Arc<Quiver>, dims: Vec<usize>) -> Result<Self> {
        let maps = quiver.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        Representation::new(quiver, dims, maps)
    }

    /// Dimensions and matrices given by vertex and arrow names; arrows not
    /// listed act by zero.
    pub fn from_named(quiver: Arc<Quiver>, dims: &[(&str, usize)], maps: &[(&str, Matrix)]) -> Result<Self> {
        let mut d = vec![0; quiver.num_vertices()];
        for (v, n) in dims {
            d[quiver.require_vertex(v)?] = *n;
        }
        let mut rep = Representation::zero(quiver.clone(), d)?;
        for (a, m) in maps {
            let a = quiver.require_arrow(a)?;
            rep.maps[a] = m.clone();
        }
        Representation::new(quiver, rep.dims, rep.maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    fn same_quiver(&self, other: &Representation) -> Result<()> {
        if Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver {
            Ok(())
        } else {
            Err(Error::structural("representations live over different quivers"))
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.same_quiver(other)?;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = (0..self.quiver.num_arrows())
            .map(|a| block_diag(&[&self.maps[a], &other.maps[a]]))
            .collect();
        Representation::new(self.quiver.clone(), dims, maps)
    }

    /// The isomorphic representation g·M·g⁻¹ for invertible g_v.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Representation> {
        if g.len() != self.dims.len() {
            return Err(Error::structural("one base change per vertex expected"));
        }
        let mut inv = Vec::new();
        for (v, m) in g.iter().enumerate() {
            if m.rows() != self.dims[v] {
                return Err(Error::structural("base change has the wrong size").with_datum(self.quiver.vertex_name(v)));
            }
            inv.push(m.inverse().ok_or_else(|| {
                Error::precondition("base change is not invertible").with_datum(self.quiver.vertex_name(v))
            })?);
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, x)| g[x.target].mul(&self.maps[a]).mul(&inv[x.source]))
            .collect();
        Representation::new(self.quiver.clone(), self.dims.clone(), maps)
    }

    /// Action of a path: the composite of its arrow maps in order.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.start()]);
        for &a in p.arrows() {
            m = self.maps[a as usize].mul(&m);
        }
        m
    }

    /// Action of the (s, e) block of an element, as a dim e × dim s matrix.
    pub fn evaluate(&self, x: &Element, s: usize, e: usize) -> Matrix {
        let mut out = Matrix::zeros(self.dims[e], self.dims[s]);
        if out.rows() == 0 || out.cols() == 0 {
            return out;
        }
        let bound = self.nilpotency_bound();
        for (p, c) in x.terms() {
            if p.start() != s || p.end() != e || bound.is_some_and(|b| p.len() >= b) {
                continue;
            }
            out = out.add(&self.path_action(p).scale(c));
        }
        out
    }

    /// Least L such that every path of length L acts by zero, if any.
    pub fn nilpotency_bound(&self) -> Option<usize> {
        let q = &self.quiver;
        // images of all paths of length t, vertex by vertex
        let mut spaces: Vec<Matrix> = self.dims.iter().map(|&d| Matrix::identity(d)).collect();
        for t in 0..=self.total_dim() {
            if spaces.iter().all(|s| s.cols() == 0) {
                return Some(t);
            }
            let mut next: Vec<Vec<Matrix>> = vec![Vec::new(); self.dims.len()];
            for (a, x) in q.arrows().iter().enumerate() {
                next[x.target].push(self.maps[a].mul(&spaces[x.source]));
            }
            spaces = next
                .into_iter()
                .enumerate()
                .map(|(v, parts)| {
                    let refs: Vec<&Matrix> = parts.iter().collect();
                    Matrix::hstack(&refs, self.dims[v]).image()
                })
                .collect();
        }
        None
    }
}

pub(crate) fn block_diag(parts: &[&Matrix]) -> Matrix {
    let rows = parts.iter().map(|p| p.rows()).sum();
    let cols = parts.iter().map(|p| p.cols()).sum();
    let mut out = Matrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for p in parts {
        out.set_block(r, c, p);
        r += p.rows();
        c += p.cols();
    }
    out
}

/// S_k: one-dimensional at k, zero elsewhere.
pub fn simple_rep(p: &Qp, k: usize) -> Result<Representation> {
    let q = p.quiver();
    if k >= q.num_vertices() {
        return Err(Error::structural("vertex out of range"));
    }
    let mut dims = vec![0; q.num_vertices()];
    dims[k] = 1;
    Representation::zero(q.clone(), dims)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepReport {
    pub valid: bool,
    pub nilpotency: Option<usize>,
    /// Arrows a whose derivative ∂_aW does not act by zero.
    pub failing: Vec<String>,
    pub issues: Vec<String>,
}

/// Check nilpotency and that every relation ∂_aW acts by zero. Frozen
/// arrows (an endpoint frozen) impose no relation.
pub fn validate_rep(p: &Qp, m: &Representation) -> Result<RepReport> {
    let q = p.quiver();
    if **q != *m.quiver {
        return Err(Error::structural("representation is over a different quiver"));
    }
    let Some(bound) = m.nilpotency_bound() else {
        return Ok(RepReport {
            valid: false,
            nilpotency: None,
            failing: vec![],
            issues: vec!["representation is not nilpotent".into()],
        });
    };
    if bound > p.truncation() {
        return Err(Error::precondition("truncation is below the nilpotency bound; raise N")
            .with_datum(format!("N = {}, bound = {bound}", p.truncation())));
    }
    let mut failing = Vec::new();
    for a in 0..q.num_arrows() {
        if p.is_frozen(q.source(a)) || p.is_frozen(q.target(a)) {
            continue;
        }
        let d = cyclic_derivative(a, p.potential())?;
        if !m.evaluate(&d, q.target(a), q.source(a)).is_zero() {
            failing.push(q.arrow_name(a).to_string());
        }
    }
    let issues = failing.iter().map(|a| format!("relation for arrow {a} does not vanish")).collect();
    Ok(RepReport { valid: failing.is_empty(), nilpotency: Some(bound), failing, issues })
}

/// A morphism M → M' given by one matrix f_v: M_v → M'_v per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl RepMorphism {
    /// Checks shapes and that every square commutes.
    pub fn new(source: Representation, target: Representation, maps: Vec<Matrix>) -> Result<Self> {
        let f = Self::unchecked(source, target, maps)?;
        if let Some(a) = f.non_commuting().first() {
            return Err(Error::precondition("morphism does not commute with an arrow").with_datum(a.clone()));
        }
        Ok(f)
    }

    fn unchecked(source: Representation, target: Representation, maps: Vec<Matrix>) -> Result<Self> {
        source.same_quiver(&target)?;
        if maps.len() != source.dims.len() {
            return Err(Error::structural("one matrix per vertex expected"));
        }
        for (v, m) in maps.iter().enumerate() {
            if (m.rows(), m.cols()) != (target.dims[v], source.dims[v]) {
                return Err(
                    Error::structural("morphism matrix has the wrong shape").with_datum(source.quiver.vertex_name(v))
                );
            }
        }
        Ok(RepMorphism { source, target, maps })
    }

    pub fn identity(m: &Representation) -> RepMorphism {
        let maps = m.dims.iter().map(|&d| Matrix::identity(d)).collect();
        RepMorphism { source: m.clone(), target: m.clone(), maps }
    }

    pub fn zero(m: &Representation, n: &Representation) -> Result<RepMorphism> {
        let maps = m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect();
        Self::new(m.clone(), n.clone(), maps)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Arrows whose square fails to commute.
    pub fn non_commuting(&self) -> Vec<String> {
        let q = &self.source.quiver;
        q.arrows()
            .iter()
            .enumerate()
            .filter(|(a, x)| {
                self.target.maps[*a].mul(&self.maps[x.source]) != self.maps[x.target].mul(&self.source.maps[*a])
            })
            .map(|(_, x)| x.name.clone())
            .collect()
    }

    /// self ∘ g: first g, then self.
    pub fn compose(&self, g: &RepMorphism) -> Result<RepMorphism> {
        if g.target != self.source {
            return Err(Error::structural("morphisms are not composable"));
        }
        let maps = self.maps.iter().zip(&g.maps).map(|(f, g)| f.mul(g)).collect();
        Ok(RepMorphism { source: g.source.clone(), target: self.target.clone(), maps })
    }

    /// Componentwise difference of two parallel morphisms.
    pub fn difference(&self, other: &RepMorphism) -> Result<RepMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::structural("morphisms are not parallel"));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| f.sub(g)).collect();
        Ok(RepMorphism { source: self.source.clone(), target: self.target.clone(), maps })
    }

    /// Σ c_i f_i over parallel morphisms.
    pub fn combination(basis: &[RepMorphism], coeffs: &[Q]) -> Result<RepMorphism> {
        let first = basis.first().ok_or_else(|| Error::structural("empty combination"))?;
        let mut maps: Vec<Matrix> = first.maps.iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
        for (f, c) in basis.iter().zip(coeffs) {
            for (acc, m) in maps.iter_mut().zip(&f.maps) {
                *acc = acc.add(&m.scale(c));
            }
        }
        Ok(RepMorphism { source: first.source.clone(), target: first.target.clone(), maps })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }
}

/// Basis of Hom(M, N): the solutions of N_a f_s = f_e M_a for all arrows.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<RepMorphism>> {
    m.same_quiver(n)?;
    let q = &m.quiver;
    let nv = m.dims.len();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = offset[nv];
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.dims[v] + j;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (a, x) in q.arrows().iter().enumerate() {
        let (s, e) = (x.source, x.target);
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        for i in 0..n.dims[e] {
            for j in 0..m.dims[s] {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..n.dims[s] {
                    row[var(s, k, j)] += &na[(i, k)];
                }
                for k in 0..m.dims[e] {
                    row[var(e, i, k)] -= &ma[(k, j)];
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() { Matrix::identity(unknowns) } else { Matrix::from_rows(rows, unknowns).kernel() };
    (0..kernel.cols())
        .map(|c| {
            let maps = (0..nv)
                .map(|v| Matrix::from_fn(n.dims[v], m.dims[v], |i, j| kernel[(var(v, i, j), c)].clone()))
                .collect();
            RepMorphism::unchecked(m.clone(), n.clone(), maps)
        })
        .collect()
}

/// Is some combination of a Hom basis invertible at every vertex? With
/// total dimension D the determinant product is a polynomial of degree D in
/// the coefficients, so a grid {0..D}^h decides exactly; larger Hom spaces
/// are sampled with growing integer ranges.
pub fn are_isomorphic(m: &Representation, n: &Representation, seed: u64) -> Result<bool> {
    m.same_quiver(n)?;
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(false);
    }
    let d = m.total_dim() as i64;
    let h = basis.len();
    let mut rng = crate::random::rng(seed);
    let trials = 64.max(8 * h);
    for t in 0..trials {
        let range = (d + 1) << (t / 8).min(20);
        let coeffs: Vec<Q> = (0..h).map(|_| Q::from_integer(rng.gen_range(-range..=range).into())).collect();
        if RepMorphism::combination(&basis, &coeffs)?.is_isomorphism() {
            return Ok(true);
        }
    }
    if h <= 4 {
        let mut point = vec![0i64; h];
        loop {
            let coeffs: Vec<Q> = point.iter().map(|&x| Q::from_integer(x.into())).collect();
            if RepMorphism::combination(&basis, &coeffs)?.is_isomorphism() {
                return Ok(true);
            }
            let mut i = 0;
            while i < h && point[i] == d {
                point[i] = 0;
                i += 1;
            }
            if i == h {
                return Ok(false);
            }
            point[i] += 1;
        }
    }
    Ok(false)
}

/// End(M) is one-dimensional (a brick).
pub fn is_brick(m: &Representation) -> Result<bool> {
    Ok(hom_space(m, m)?.len() == 1)
}

/// Direct sum of copies, for building test families.
pub fn direct_sum_all(parts: &[Representation]) -> Result<Representation> {
    let mut it = parts.iter();
    let first = it.next().ok_or_else(|| Error::structural("empty direct sum"))?;
    it.try_fold(first.clone(), |acc, r| acc.direct_sum(r))
}

#[cfg(test)]
mod tests;
