use super::{block_diag, validate_rep, RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::linalg::{extend_basis, Matrix};
use crate::path_algebra::second_derivative;
use crate::qp::{premutate, Premutation, Qp, SplitResult};
use crate::rational::{one, zero};

/// How complements are chosen. `Pivot` takes reduced-echelon pivot
/// columns; `Reversed` runs the same reductions on reversed coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Splitting {
    #[default]
    Pivot,
    Reversed,
}

fn reversal(n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { one() } else { zero() })
}

impl Splitting {
    fn kernel(self, m: &Matrix) -> Matrix {
        match self {
            Splitting::Pivot => m.kernel(),
            Splitting::Reversed => {
                let r = reversal(m.cols());
                r.mul(&m.mul(&r).kernel())
            }
        }
    }

    fn image(self, m: &Matrix) -> Matrix {
        match self {
            Splitting::Pivot => m.image(),
            Splitting::Reversed => m.mul(&reversal(m.cols())).image(),
        }
    }

    /// Complement of span(base) inside span(base) + span(candidates).
    fn complement(self, base: &Matrix, candidates: &Matrix) -> Matrix {
        match self {
            Splitting::Pivot => extend_basis(base, candidates),
            Splitting::Reversed => extend_basis(base, &candidates.mul(&reversal(candidates.cols()))),
        }
    }
}

/// The local data at k: α: M_in → M_k, β: M_k → M_out, γ: M_out → M_in with
/// M_in = ⊕ M_{s(a_p)} and M_out = ⊕ M_{e(b_q)}, plus chosen splittings.
///
/// M_out = Im β ⊕ C₁ ⊕ D with Ker γ = Im β ⊕ C₁, and Ker α = Im γ ⊕ C₃.
/// The new space at k* is C₁ ⊕ Im γ ⊕ C₃ ≅ Ker γ/Im β ⊕ Im γ ⊕ Ker α/Im γ.
#[derive(Clone, Debug)]
pub struct VertexScaffold {
    pub vertex: usize,
    pub incoming: Vec<usize>,
    pub outgoing: Vec<usize>,
    pub in_offsets: Vec<usize>,
    pub out_offsets: Vec<usize>,
    pub alpha: Matrix,
    pub beta: Matrix,
    pub gamma: Matrix,
    pub ker_gamma: Matrix,
    pub im_beta: Matrix,
    pub im_gamma: Matrix,
    pub ker_alpha: Matrix,
    pub c1: Matrix,
    pub d: Matrix,
    pub c3: Matrix,
    out_inverse: Matrix,
}

impl VertexScaffold {
    /// Dimensions of Ker γ/Im β, Im γ and Ker α/Im γ.
    pub fn summand_dims(&self) -> [usize; 3] {
        [self.c1.cols(), self.im_gamma.cols(), self.c3.cols()]
    }

    pub fn new_dim(&self) -> usize {
        self.summand_dims().iter().sum()
    }

    fn in_dim(&self) -> usize {
        self.alpha.cols()
    }

    fn out_dim(&self) -> usize {
        self.beta.rows()
    }

    /// C₁-coordinates of vectors of M_out (the ρπ of the construction).
    fn c1_coords(&self, x: &Matrix) -> Matrix {
        let rb = self.im_beta.cols();
        self.out_inverse.mul(x).block(rb, 0, self.c1.cols(), x.cols())
    }

    /// Coordinates in the Im γ basis of vectors lying in Im γ.
    fn ig_coords(&self, y: &Matrix) -> Matrix {
        self.im_gamma.solve(y).expect("vector lies in Im γ")
    }

    /// (Im γ part, C₃ part) of vectors of Ker α.
    fn ker_alpha_parts(&self, y: &Matrix) -> (Matrix, Matrix) {
        let basis = Matrix::hstack(&[&self.im_gamma, &self.c3], self.in_dim());
        let z = basis.solve(y).expect("vector lies in Ker α");
        let g = self.im_gamma.cols();
        (z.block(0, 0, g, y.cols()), z.block(g, 0, self.c3.cols(), y.cols()))
    }

    /// The map M_out → M̃_k: x ↦ (−ρπ x, −γ x, 0).
    fn out_to_new(&self) -> Matrix {
        let top = self.c1_coords(&Matrix::identity(self.out_dim())).neg();
        let mid = self.ig_coords(&self.gamma).neg();
        let bottom = Matrix::zeros(self.c3.cols(), self.out_dim());
        Matrix::vstack(&[&top, &mid, &bottom], self.out_dim())
    }

    /// The map M̃_k → M_in: (t, y, s) ↦ ι y + σ s.
    fn new_to_in(&self) -> Matrix {
        let zero = Matrix::zeros(self.in_dim(), self.c1.cols());
        Matrix::hstack(&[&zero, &self.im_gamma, &self.c3], self.in_dim())
    }
}

/// α, β, γ at k and the splittings of the chosen strategy.
pub fn vertex_scaffold(p: &Qp, m: &Representation, k: usize, splitting: Splitting) -> Result<VertexScaffold> {
    let q = p.quiver();
    if k >= q.num_vertices() {
        return Err(Error::structural("vertex out of range"));
    }
    if !q.arrows_between(k, k).is_empty() {
        return Err(Error::precondition("loop at the vertex").with_datum(q.vertex_name(k)));
    }
    let report = validate_rep(p, m)?;
    if !report.valid {
        return Err(Error::precondition("invalid representation").with_datum(report.issues.join("; ")));
    }
    let incoming = q.arrows_into(k).to_vec();
    let outgoing = q.arrows_from(k).to_vec();
    let mut in_offsets = vec![0];
    for &a in &incoming {
        in_offsets.push(in_offsets.last().unwrap() + m.dim(q.source(a)));
    }
    let mut out_offsets = vec![0];
    for &b in &outgoing {
        out_offsets.push(out_offsets.last().unwrap() + m.dim(q.target(b)));
    }
    let (din, dout, dk) = (*in_offsets.last().unwrap(), *out_offsets.last().unwrap(), m.dim(k));
    let alpha_parts: Vec<&Matrix> = incoming.iter().map(|&a| m.map(a)).collect();
    let alpha = Matrix::hstack(&alpha_parts, dk);
    let beta_parts: Vec<&Matrix> = outgoing.iter().map(|&b| m.map(b)).collect();
    let beta = Matrix::vstack(&beta_parts, dk);
    let mut gamma = Matrix::zeros(din, dout);
    for (pi, &a) in incoming.iter().enumerate() {
        for (qi, &b) in outgoing.iter().enumerate() {
            let d = second_derivative(a, b, p.potential())?;
            gamma.set_block(in_offsets[pi], out_offsets[qi], &m.evaluate(&d, q.target(b), q.source(a)));
        }
    }
    if !gamma.mul(&beta).is_zero() || !alpha.mul(&gamma).is_zero() {
        return Err(Error::precondition("relations at the vertex fail: β then γ or γ then α is nonzero")
            .with_datum(q.vertex_name(k)));
    }
    let s = splitting;
    let ker_gamma = s.kernel(&gamma);
    let im_beta = s.image(&beta);
    let im_gamma = s.image(&gamma);
    let ker_alpha = s.kernel(&alpha);
    let c1 = s.complement(&im_beta, &ker_gamma);
    let d = s.complement(&ker_gamma, &Matrix::identity(dout));
    let c3 = s.complement(&im_gamma, &ker_alpha);
    let out_basis = Matrix::hstack(&[&im_beta, &c1, &d], dout);
    let out_inverse = out_basis.inverse().expect("Im β ⊕ C₁ ⊕ D spans M_out");
    Ok(VertexScaffold {
        vertex: k,
        incoming,
        outgoing,
        in_offsets,
        out_offsets,
        alpha,
        beta,
        gamma,
        ker_gamma,
        im_beta,
        im_gamma,
        ker_alpha,
        c1,
        d,
        c3,
        out_inverse,
    })
}

fn build(pm: &Premutation, sc: &VertexScaffold, m: &Representation) -> Result<Representation> {
    let old = m.quiver();
    let nq = pm.qp.quiver();
    let k = pm.vertex;
    let mut dims = m.dims().to_vec();
    dims[k] = sc.new_dim();
    let mut maps = vec![Matrix::zeros(0, 0); nq.num_arrows()];
    for &(o, n) in &pm.kept {
        maps[n] = m.map(o).clone();
    }
    for (pi, &a) in pm.incoming.iter().enumerate() {
        for (qi, &b) in pm.outgoing.iter().enumerate() {
            maps[pm.composite[pi][qi]] = m.map(b).mul(m.map(a));
        }
    }
    let out_to_new = sc.out_to_new();
    for (qi, &b) in pm.outgoing.iter().enumerate() {
        let cols: Vec<usize> = (sc.out_offsets[qi]..sc.out_offsets[qi] + m.dim(old.target(b))).collect();
        maps[pm.star_out[qi]] = out_to_new.select_columns(&cols);
    }
    let new_to_in = sc.new_to_in();
    for (pi, &a) in pm.incoming.iter().enumerate() {
        let rows: Vec<usize> = (sc.in_offsets[pi]..sc.in_offsets[pi] + m.dim(old.source(a))).collect();
        maps[pm.star_in[pi]] = new_to_in.select_rows(&rows);
    }
    Representation::new(nq.clone(), dims, maps)
}

/// M̃ over the premutated QP μ̃_k P, with pivot splittings.
pub fn mutate_rep(p: &Qp, m: &Representation, k: usize) -> Result<Representation> {
    mutate_rep_with(p, m, k, Splitting::Pivot)
}

pub fn mutate_rep_with(p: &Qp, m: &Representation, k: usize, splitting: Splitting) -> Result<Representation> {
    let pm = premutate(p, k)?;
    apply_premutation(&pm, p, m, splitting)
}

pub(crate) fn apply_premutation(pm: &Premutation, p: &Qp, m: &Representation, splitting: Splitting) -> Result<Representation> {
    let sc = vertex_scaffold(p, m, pm.vertex, splitting)?;
    build(pm, &sc, m)
}

/// Transport a representation of the premutated QP along the inverse of the
/// splitting equivalence and restrict to the reduced arrows.
pub fn reduce_rep(m: &Representation, split: &SplitResult) -> Result<Representation> {
    let q = split.input.quiver();
    if **m.quiver() != **q {
        return Err(Error::structural("representation is not over the QP that was split"));
    }
    let bound = m.nilpotency_bound().ok_or_else(|| Error::precondition("representation is not nilpotent"))?;
    if bound > split.input.truncation() {
        return Err(Error::precondition("truncation is below the nilpotency bound; raise N")
            .with_datum(format!("N = {}, bound = {bound}", split.input.truncation())));
    }
    let inverse = if split.equivalence.is_identity() { None } else { Some(split.equivalence.inverse()?) };
    let rq = split.reduced.quiver();
    let vertex: Vec<usize> = rq.vertices().iter().map(|v| q.require_vertex(v)).collect::<Result<_>>()?;
    let dims = vertex.iter().map(|&v| m.dim(v)).collect();
    let mut maps = Vec::new();
    for c in 0..rq.num_arrows() {
        let a = q.require_arrow(rq.arrow_name(c))?;
        maps.push(match &inverse {
            None => m.map(a).clone(),
            Some(psi) => m.evaluate(psi.image(a), q.source(a), q.target(a)),
        });
    }
    Representation::new(rq.clone(), dims, maps)
}

/// f̃: M̃ → M̃' agreeing with f away from k. At k* the blocks, written as
/// maps applied right to left with rows indexing the target summands, are
///
/// ```text
/// [ ρ̃' f_out ĩ   ρ̃' f_out j   0         ]
/// [ 0            ε' f_in ι    ε' f_in σ ]
/// [ 0            0            φ' f_in σ ]
/// ```
pub fn mutate_morphism(p: &Qp, f: &RepMorphism, k: usize, splitting: Splitting) -> Result<RepMorphism> {
    if let Some(a) = f.non_commuting().first() {
        return Err(Error::precondition("morphism does not commute with an arrow").with_datum(a.clone()));
    }
    let pm = premutate(p, k)?;
    let (m, n) = (f.source(), f.target());
    let sc = vertex_scaffold(p, m, k, splitting)?;
    let sn = vertex_scaffold(p, n, k, splitting)?;
    let mt = build(&pm, &sc, m)?;
    let nt = build(&pm, &sn, n)?;
    let q = p.quiver();
    let in_parts: Vec<&Matrix> = sc.incoming.iter().map(|&a| f.map(q.source(a))).collect();
    let out_parts: Vec<&Matrix> = sc.outgoing.iter().map(|&b| f.map(q.target(b))).collect();
    let f_in = block_diag(&in_parts);
    let f_out = block_diag(&out_parts);

    let [m1, m2, m3] = sc.summand_dims();
    let [n1, n2, n3] = sn.summand_dims();
    let mut fk = Matrix::zeros(n1 + n2 + n3, m1 + m2 + m3);
    fk.set_block(0, 0, &sn.c1_coords(&f_out.mul(&sc.c1)));
    if m2 > 0 {
        // j: Im γ → Cok β realized inside D, through the inverse of γ restricted to D
        let lift = sc.gamma.mul(&sc.d).solve(&sc.im_gamma).expect("γ maps D onto Im γ");
        fk.set_block(0, m1, &sn.c1_coords(&f_out.mul(&sc.d).mul(&lift)));
        let (g, _) = sn.ker_alpha_parts(&f_in.mul(&sc.im_gamma));
        fk.set_block(n1, m1, &g);
    }
    let (g, s) = sn.ker_alpha_parts(&f_in.mul(&sc.c3));
    fk.set_block(n1, m1 + m2, &g);
    fk.set_block(n1 + n2, m1 + m2, &s);

    let mut maps = f.maps().to_vec();
    maps[k] = fk;
    RepMorphism::new(mt, nt, maps)
}
