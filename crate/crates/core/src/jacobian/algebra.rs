//! Finite-dimensional quotients as structure-constant algebras, minimal
//! projective resolutions of simples, and the presentation complexes.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::TruncatedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{extend_basis, Matrix};
use crate::path_algebra::{second_derivative, Element, Path};
use crate::qp::Qp;
use crate::quiver::{Arrow, Quiver};
use crate::rational::Q;

type Sparse = Vec<(usize, Q)>;

/// A basic algebra given by a path basis and structure constants. Right
/// modules e_vA are spanned by basis paths starting at v.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    quiver: Arc<Quiver>,
    paths: Vec<Path>,
    start: Vec<usize>,
    end: Vec<usize>,
    table: Vec<Vec<Sparse>>,
    arrows: Vec<Sparse>,
    vertex: Vec<usize>,
    /// basis indices starting (resp. ending) at each vertex, and positions within those lists
    from_v: Vec<Vec<usize>>,
    into_v: Vec<Vec<usize>>,
    pos_from: Vec<usize>,
    pos_into: Vec<usize>,
}

fn from_columns(cols: &[Vec<Q>], rows: usize) -> Matrix {
    Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
}

impl FiniteAlgebra {
    pub(super) fn from_truncated(t: &TruncatedAlgebra) -> FiniteAlgebra {
        let space = t.space();
        let basis = t.basis();
        let index: HashMap<u32, usize> = basis.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let to_local = |v: super::SVec| -> Sparse { v.into_iter().map(|(id, c)| (index[&id], c)).collect() };
        let n = basis.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if let Some(id) = space.concat(basis[i], basis[j]) {
                    table[i][j] = to_local(t.normal_form(&vec![(id, Q::one())]));
                }
            }
        }
        let q = t.quiver().clone();
        let arrows = (0..q.num_arrows())
            .map(|a| {
                let id = space.id(&Path::arrow(&q, a)).expect("truncation is at least 1");
                to_local(t.normal_form(&vec![(id, Q::one())]))
            })
            .collect();
        let paths: Vec<Path> = basis.iter().map(|&id| space.path(id).clone()).collect();
        let start = paths.iter().map(|p| p.start()).collect();
        let end = paths.iter().map(|p| p.end()).collect();
        let vertex = (0..q.num_vertices()).map(|v| index[&space.id(&Path::trivial(v)).unwrap()]).collect();
        Self::assemble(q, paths, start, end, table, arrows, vertex)
    }

    fn assemble(
        quiver: Arc<Quiver>,
        paths: Vec<Path>,
        start: Vec<usize>,
        end: Vec<usize>,
        table: Vec<Vec<Sparse>>,
        arrows: Vec<Sparse>,
        vertex: Vec<usize>,
    ) -> FiniteAlgebra {
        let nv = quiver.num_vertices();
        let mut from_v = vec![Vec::new(); nv];
        let mut into_v = vec![Vec::new(); nv];
        let mut pos_from = vec![0; paths.len()];
        let mut pos_into = vec![0; paths.len()];
        for i in 0..paths.len() {
            pos_from[i] = from_v[start[i]].len();
            from_v[start[i]].push(i);
            pos_into[i] = into_v[end[i]].len();
            into_v[end[i]].push(i);
        }
        FiniteAlgebra { quiver, paths, start, end, table, arrows, vertex, from_v, into_v, pos_from, pos_into }
    }

    /// The opposite algebra, over the opposite quiver (arrows keep their names).
    pub fn opposite(&self) -> Result<FiniteAlgebra> {
        let q = &self.quiver;
        let arrows: Vec<Arrow> =
            q.arrows().iter().map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source }).collect();
        let qop = Arc::new(Quiver::new(q.vertices().to_vec(), arrows)?);
        let paths = self
            .paths
            .iter()
            .map(|p| {
                if p.is_trivial() {
                    p.clone()
                } else {
                    let rev: Vec<usize> = p.arrows().iter().rev().map(|&a| a as usize).collect();
                    Path::from_arrows(&qop, &rev).expect("reversed path")
                }
            })
            .collect();
        let n = self.dim();
        let table = (0..n).map(|i| (0..n).map(|j| self.table[j][i].clone()).collect()).collect();
        Ok(Self::assemble(
            qop,
            paths,
            self.end.clone(),
            self.start.clone(),
            table,
            self.arrows.clone(),
            self.vertex.clone(),
        ))
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn basis_paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.table[i][j]
    }

    pub fn arrow(&self, a: usize) -> &[(usize, Q)] {
        &self.arrows[a]
    }

    pub fn vertex_element(&self, v: usize) -> Sparse {
        vec![(self.vertex[v], Q::one())]
    }

    pub fn multiply(&self, x: &[(usize, Q)], y: &[(usize, Q)]) -> Sparse {
        let mut acc = vec![Q::zero(); self.dim()];
        for (i, c) in x {
            for (j, d) in y {
                for (k, e) in &self.table[*i][*j] {
                    acc[*k] += c * d * e;
                }
            }
        }
        acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Image of a path-algebra element (over the same quiver) in the algebra.
    pub fn element(&self, x: &Element) -> Result<Sparse> {
        if **x.quiver() != *self.quiver {
            return Err(Error::structural("element is over a different quiver"));
        }
        let mut acc = vec![Q::zero(); self.dim()];
        for (p, c) in x.terms() {
            let mut cur = self.vertex_element(p.start());
            for &a in p.arrows() {
                cur = self.multiply(&cur, &self.arrows[a as usize]);
                if cur.is_empty() {
                    break;
                }
            }
            for (k, e) in cur {
                acc[k] += c * e;
            }
        }
        Ok(acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// x ↦ x·r as a map Γe_v → Γe_w (r ∈ e_v Γ e_w).
    fn right_mult(&self, v: usize, r: &[(usize, Q)], w: usize) -> Matrix {
        let (src, tgt) = (&self.into_v[v], &self.into_v[w]);
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (col, &b) in src.iter().enumerate() {
            for (k, c) in self.multiply(&[(b, Q::one())], r) {
                debug_assert_eq!(self.end[k], w);
                m[(self.pos_into[k], col)] += c;
            }
        }
        m
    }

    /// x ↦ r·x as a map e_vΓ → e_wΓ (r ∈ e_w Γ e_v).
    fn left_mult(&self, r: &[(usize, Q)], v: usize, w: usize) -> Matrix {
        let (src, tgt) = (&self.from_v[v], &self.from_v[w]);
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (col, &b) in src.iter().enumerate() {
            for (k, c) in self.multiply(r, &[(b, Q::one())]) {
                debug_assert_eq!(self.start[k], w);
                m[(self.pos_from[k], col)] += c;
            }
        }
        m
    }
}

/// ⊕_t e_{v_t} A in coordinates over the basis paths.
struct Free {
    comps: Vec<usize>,
    offset: Vec<usize>,
    dim: usize,
}

impl Free {
    fn new(alg: &FiniteAlgebra, comps: Vec<usize>) -> Free {
        let mut offset = Vec::new();
        let mut dim = 0;
        for &v in &comps {
            offset.push(dim);
            dim += alg.from_v[v].len();
        }
        Free { comps, offset, dim }
    }

    /// x·r for a vector x of the free module.
    fn act(&self, alg: &FiniteAlgebra, x: &[Q], r: &[(usize, Q)]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (t, &v) in self.comps.iter().enumerate() {
            for (p, &b) in alg.from_v[v].iter().enumerate() {
                let c = &x[self.offset[t] + p];
                if c.is_zero() {
                    continue;
                }
                for (j, d) in r {
                    for (k, e) in &alg.table[b][*j] {
                        out[self.offset[t] + alg.pos_from[*k]] += c * d * e;
                    }
                }
            }
        }
        out
    }
}

fn columns(m: &Matrix) -> Vec<Vec<Q>> {
    (0..m.cols()).map(|j| (0..m.rows()).map(|i| m[(i, j)].clone()).collect()).collect()
}

struct Syzygy {
    /// generators of the top, with their vertices
    gens: Vec<(usize, Vec<Q>)>,
}

/// Projective cover data of a submodule K (columns of `k`) of `free`.
fn cover(alg: &FiniteAlgebra, free: &Free, k: &Matrix) -> Syzygy {
    let kc = columns(k);
    let mut kj = Vec::new();
    for x in &kc {
        for a in 0..alg.quiver.num_arrows() {
            let y = free.act(alg, x, &alg.arrows[a]);
            if y.iter().any(|c| !c.is_zero()) {
                kj.push(y);
            }
        }
    }
    let mut gens = Vec::new();
    for v in 0..alg.quiver.num_vertices() {
        let ev = alg.vertex_element(v);
        let kv: Vec<Vec<Q>> = kc.iter().map(|x| free.act(alg, x, &ev)).collect();
        let kjv: Vec<Vec<Q>> = kj.iter().map(|x| free.act(alg, x, &ev)).collect();
        let base = from_columns(&kjv, free.dim).image();
        let top = extend_basis(&base, &from_columns(&kv, free.dim).image());
        for g in columns(&top) {
            gens.push((v, g));
        }
    }
    Syzygy { gens }
}

/// Map ⊕ e_{v_u}A → free sending the u-th generator to g_u, and its domain.
fn cover_map(alg: &FiniteAlgebra, free: &Free, gens: &[(usize, Vec<Q>)]) -> (Free, Matrix) {
    let dom = Free::new(alg, gens.iter().map(|(v, _)| *v).collect());
    let mut cols = Vec::with_capacity(dom.dim);
    for (v, g) in gens {
        for &b in &alg.from_v[*v] {
            cols.push(free.act(alg, g, &[(b, Q::one())]));
        }
    }
    (dom, from_columns(&cols, free.dim))
}

/// Minimal projective resolution of S_i up to the second syzygy.
struct Resolution {
    f1: Free,
    gens1: Vec<(usize, Vec<Q>)>,
    f2: Free,
    gens2: Vec<(usize, Vec<Q>)>,
    /// kernel of F2 → F1, columns in F2 coordinates
    ker2: Matrix,
}

fn resolve(alg: &FiniteAlgebra, i: usize) -> Resolution {
    let f0 = Free::new(alg, vec![i]);
    // Ω¹ = e_i J: basis paths from i of positive length
    let rad: Vec<Vec<Q>> = alg.from_v[i]
        .iter()
        .enumerate()
        .filter(|(_, &b)| !alg.paths[b].is_trivial())
        .map(|(p, _)| {
            let mut v = vec![Q::zero(); f0.dim];
            v[p] = Q::one();
            v
        })
        .collect();
    let omega1 = from_columns(&rad, f0.dim);
    let gens1 = cover(alg, &f0, &omega1).gens;
    let (f1, d1) = cover_map(alg, &f0, &gens1);
    let omega2 = d1.kernel();
    let gens2 = cover(alg, &f1, &omega2).gens;
    let (f2, d2) = cover_map(alg, &f1, &gens2);
    let ker2 = d2.kernel();
    Resolution { f1, gens1, f2, gens2, ker2 }
}

fn count_by_vertex(nv: usize, gens: &[(usize, Vec<Q>)]) -> Vec<usize> {
    let mut out = vec![0; nv];
    for (v, _) in gens {
        out[*v] += 1;
    }
    out
}

/// dim Ext^n(S_i, S_j) for n ∈ {1, 2}, from a minimal projective resolution.
pub fn ext_dims(alg: &FiniteAlgebra, i: usize, j: usize, n: usize) -> Result<usize> {
    Ok(ext_matrix(alg, n)?[i][j])
}

pub fn ext_matrix(alg: &FiniteAlgebra, n: usize) -> Result<Vec<Vec<usize>>> {
    if n != 1 && n != 2 {
        return Err(Error::precondition("only Ext^1 and Ext^2 are supported"));
    }
    let nv = alg.quiver.num_vertices();
    Ok((0..nv)
        .map(|i| {
            let r = resolve(alg, i);
            count_by_vertex(nv, if n == 1 { &r.gens1 } else { &r.gens2 })
        })
        .collect())
}

/// Whether Ext²(S_i, A) = 0, for each vertex i.
pub fn ext2_regular_vanishes(alg: &FiniteAlgebra) -> Vec<bool> {
    (0..alg.quiver.num_vertices()).map(|i| ext2_regular(alg, i) == 0).collect()
}

/// dim Ext²(S_i, A) = dim {maps F2 → A vanishing on Ω³} − dim {maps factoring through F1}.
fn ext2_regular(alg: &FiniteAlgebra, i: usize) -> usize {
    let r = resolve(alg, i);
    let n = alg.dim();
    // Hom(e_jA, A) ≅ A e_j
    let hom_cols: Vec<(usize, usize)> =
        r.gens2.iter().enumerate().flat_map(|(u, (v, _))| alg.into_v[*v].iter().map(move |&c| (u, c))).collect();
    let mut z = Matrix::zeros(r.ker2.cols() * n, hom_cols.len());
    for kcol in 0..r.ker2.cols() {
        for (col, &(u, c)) in hom_cols.iter().enumerate() {
            let v = r.f2.comps[u];
            for (p, &b) in alg.from_v[v].iter().enumerate() {
                let kc = &r.ker2[(r.f2.offset[u] + p, kcol)];
                if kc.is_zero() {
                    continue;
                }
                for (m, e) in &alg.table[c][b] {
                    z[(kcol * n + m, col)] += kc * e;
                }
            }
        }
    }
    let z_dim = hom_cols.len() - z.rank();
    // image of Hom(F1, A): z_t ↦ (Σ_t z_t r_{tu})_u
    let col_index: HashMap<(usize, usize), usize> = hom_cols.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut b_cols = Vec::new();
    for (t, &w) in r.f1.comps.iter().enumerate() {
        for &c in &alg.into_v[w] {
            let mut img = vec![Q::zero(); hom_cols.len()];
            for (u, (_, g)) in r.gens2.iter().enumerate() {
                for (p, &b) in alg.from_v[w].iter().enumerate() {
                    let gc = &g[r.f1.offset[t] + p];
                    if gc.is_zero() {
                        continue;
                    }
                    for (m, e) in &alg.table[c][b] {
                        img[col_index[&(u, *m)]] += gc * e;
                    }
                }
            }
            b_cols.push(img);
        }
    }
    let b_rank = from_columns(&b_cols, hom_cols.len()).rank();
    z_dim - b_rank
}

/// One of the two complexes at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexCheck {
    pub vertex: String,
    /// "left-modules" for Γe_i, "right-modules" for e_iΓ
    pub side: String,
    pub is_complex: bool,
    pub exact_at_third: bool,
    pub onto_radical: bool,
    /// whether the middle map is zero (as happens for W = 0)
    pub middle_zero: bool,
}

impl ComplexCheck {
    pub fn passed(&self) -> bool {
        self.is_complex && self.exact_at_third && self.onto_radical
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub complexes: Vec<ComplexCheck>,
    /// per vertex name: Ext²(S, Γ) = 0 for Γ and for Γ^op
    pub ext2_regular: Vec<(String, bool, bool)>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.complexes.iter().all(|c| c.passed()) && self.ext2_regular.iter().all(|(_, a, b)| *a && *b)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.complexes {
            if !c.passed() {
                out.push(format!("complex of {} at vertex {}", c.side, c.vertex));
            }
        }
        for (v, a, b) in &self.ext2_regular {
            if !a {
                out.push(format!("Ext2(S, Γ) ≠ 0 at vertex {v}"));
            }
            if !b {
                out.push(format!("Ext2(S, Γ^op) ≠ 0 at vertex {v}"));
            }
        }
        out
    }
}

fn block_matrix(blocks: &[Vec<Matrix>], row_dims: &[usize], col_dims: &[usize]) -> Matrix {
    let rows: usize = row_dims.iter().sum();
    let cols: usize = col_dims.iter().sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for (bi, row) in blocks.iter().enumerate() {
        let mut c0 = 0;
        for (bj, b) in row.iter().enumerate() {
            m.set_block(r0, c0, b);
            c0 += col_dims[bj];
        }
        r0 += row_dims[bi];
    }
    m
}

fn check(vertex: &str, side: &str, d0: &Matrix, d1: &Matrix, d2: &Matrix, radical_dim: usize) -> ComplexCheck {
    let is_complex = d1.mul(d0).is_zero() && d2.mul(d1).is_zero();
    let exact_at_third = d1.rank() == d2.cols() - d2.rank();
    ComplexCheck {
        vertex: vertex.to_string(),
        side: side.to_string(),
        is_complex,
        exact_at_third,
        onto_radical: d2.rank() == radical_dim,
        middle_zero: d1.is_zero(),
    }
}

/// Materialize both complexes at every vertex and check them, together
/// with Ext²(S, Γ) = 0 on both sides.
pub fn verify_presentation_complexes(p: &Qp, alg: &FiniteAlgebra) -> Result<PresentationReport> {
    let q = p.quiver();
    if **q != *alg.quiver {
        return Err(Error::structural("algebra is not over the QP's quiver"));
    }
    let w = p.potential();
    let mut d2w: HashMap<(usize, usize), Sparse> = HashMap::new();
    for a in 0..q.num_arrows() {
        for &b in q.arrows_from(q.target(a)) {
            d2w.insert((a, b), alg.element(&second_derivative(a, b, w)?)?);
        }
    }
    let mut complexes = Vec::new();
    for i in 0..q.num_vertices() {
        let outs = q.arrows_from(i);
        let ins = q.arrows_into(i);
        let name = q.vertex_name(i);
        // Γe_i → ⊕ Γe_{e(b)} → ⊕ Γe_{s(a)} → J e_i
        let n_into = |v: usize| alg.into_v[v].len();
        let c0 = [n_into(i)];
        let c1: Vec<usize> = outs.iter().map(|&b| n_into(q.target(b))).collect();
        let c2: Vec<usize> = ins.iter().map(|&a| n_into(q.source(a))).collect();
        let d0 = block_matrix(&outs.iter().map(|&b| vec![alg.right_mult(i, &alg.arrows[b], q.target(b))]).collect::<Vec<_>>(), &c1, &c0);
        let d1 = block_matrix(
            &ins.iter()
                .map(|&a| outs.iter().map(|&b| alg.right_mult(q.target(b), &d2w[&(a, b)], q.source(a))).collect())
                .collect::<Vec<_>>(),
            &c2,
            &c1,
        );
        let d2 = block_matrix(&[ins.iter().map(|&a| alg.right_mult(q.source(a), &alg.arrows[a], i)).collect()], &c0, &c2);
        complexes.push(check(name, "left-modules", &d0, &d1, &d2, n_into(i) - 1));

        // e_iΓ → ⊕ e_{s(a)}Γ → ⊕ e_{e(b)}Γ → e_i J
        let n_from = |v: usize| alg.from_v[v].len();
        let e0 = [n_from(i)];
        let e1: Vec<usize> = ins.iter().map(|&a| n_from(q.source(a))).collect();
        let e2: Vec<usize> = outs.iter().map(|&b| n_from(q.target(b))).collect();
        let d0 = block_matrix(&ins.iter().map(|&a| vec![alg.left_mult(&alg.arrows[a], i, q.source(a))]).collect::<Vec<_>>(), &e1, &e0);
        let d1 = block_matrix(
            &outs
                .iter()
                .map(|&b| ins.iter().map(|&a| alg.left_mult(&d2w[&(a, b)], q.source(a), q.target(b))).collect())
                .collect::<Vec<_>>(),
            &e2,
            &e1,
        );
        let d2 = block_matrix(&[outs.iter().map(|&b| alg.left_mult(&alg.arrows[b], q.target(b), i)).collect()], &e0, &e2);
        complexes.push(check(name, "right-modules", &d0, &d1, &d2, n_from(i) - 1));
    }
    let op = alg.opposite()?;
    let left = ext2_regular_vanishes(alg);
    let right = ext2_regular_vanishes(&op);
    let ext2_regular =
        (0..q.num_vertices()).map(|i| (q.vertex_name(i).to_string(), left[i], right[i])).collect();
    Ok(PresentationReport { complexes, ext2_regular })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCyEntry {
    pub from: String,
    pub to: String,
    pub ext2: usize,
    pub ext1_reversed: usize,
    pub holds: bool,
}

/// dim Ext²(S_i,S_j) ≤ dim Ext¹(S_j,S_i), reported per pair.
pub fn two_cy_diagnostic(alg: &FiniteAlgebra) -> Result<Vec<TwoCyEntry>> {
    let e1 = ext_matrix(alg, 1)?;
    let e2 = ext_matrix(alg, 2)?;
    let q = &alg.quiver;
    let nv = q.num_vertices();
    let mut out = Vec::new();
    for i in 0..nv {
        for j in 0..nv {
            out.push(TwoCyEntry {
                from: q.vertex_name(i).to_string(),
                to: q.vertex_name(j).to_string(),
                ext2: e2[i][j],
                ext1_reversed: e1[j][i],
                holds: e2[i][j] <= e1[j][i],
            });
        }
    }
    Ok(out)
}
