use std::sync::Arc;

use num_traits::One;

use super::mutation::{apply_premutation, reduce_rep, Splitting};
use super::{are_isomorphic, validate_rep, Representation};
use crate::error::{Error, Result};
use crate::linalg::{extend_basis, intersection, Matrix};
use crate::path_algebra::{cyclic_normal_form, Element, Path, Substitution};
use crate::qp::{mutate, Qp};
use crate::quiver::{quivers_isomorphic_with, Quiver};
use crate::rational::Q;

/// Split off the summands isomorphic to S_k: M_k = D ⊕ C where C is a
/// complement of Ker β ∩ Im α in Ker β and D ⊇ Im α. Returns M restricted to
/// D at k and the multiplicity dim C.
pub fn strip_simple_summands(m: &Representation, k: usize) -> Result<(Representation, usize)> {
    let q = m.quiver();
    if k >= q.num_vertices() {
        return Err(Error::structural("vertex out of range"));
    }
    let dk = m.dim(k);
    let into: Vec<&Matrix> = q.arrows_into(k).iter().map(|&a| m.map(a)).collect();
    let im_alpha = Matrix::hstack(&into, dk).image();
    let out: Vec<&Matrix> = q.arrows_from(k).iter().map(|&b| m.map(b)).collect();
    let ker_beta = Matrix::vstack(&out, dk).kernel();
    let common = intersection(&ker_beta, &im_alpha);
    let c = extend_basis(&common, &ker_beta);
    if c.cols() == 0 {
        return Ok((m.clone(), 0));
    }
    let spanned = Matrix::hstack(&[&im_alpha, &ker_beta], dk);
    let e = extend_basis(&spanned, &Matrix::identity(dk));
    let d = Matrix::hstack(&[&im_alpha, &e], dk);
    let mut dims = m.dims().to_vec();
    dims[k] = d.cols();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, x)| {
            let mut mat = m.map(a).clone();
            if x.target == k {
                mat = d.solve(&mat).expect("arrows into k land in Im α");
            }
            if x.source == k {
                mat = mat.mul(&d);
            }
            mat
        })
        .collect();
    Ok((Representation::new(q.clone(), dims, maps)?, c.cols()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearlyMoritaEntry {
    pub index: usize,
    pub dims: Vec<usize>,
    /// Multiplicity of S_k removed before mutating.
    pub stripped: usize,
    /// Dimension vector after one mutation and reduction.
    pub mutated_dims: Vec<usize>,
    pub mutated_valid: bool,
    pub off_k_preserved: bool,
    pub isomorphic: bool,
    pub note: Option<String>,
}

impl NearlyMoritaEntry {
    pub fn passed(&self) -> bool {
        self.mutated_valid && self.off_k_preserved && self.isomorphic && self.note.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearlyMoritaReport {
    pub vertex: String,
    pub entries: Vec<NearlyMoritaEntry>,
}

impl NearlyMoritaReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(NearlyMoritaEntry::passed)
    }

    pub fn failures(&self) -> Vec<&NearlyMoritaEntry> {
        self.entries.iter().filter(|e| !e.passed()).collect()
    }
}

/// A quiver isomorphism from `from` to `to` fixing vertex names, with ±1
/// arrow signs, carrying the potential of `from` to that of `to` in cyclic
/// normal form. Returns (arrow map, signs).
fn identify(from: &Qp, to: &Qp) -> Result<Option<(Vec<usize>, Vec<Q>)>> {
    let (qa, qb) = (from.quiver(), to.quiver());
    let Some(iso) = quivers_isomorphic_with(qa, qb, |v, w| qa.vertex_name(v) == qb.vertex_name(w)) else {
        return Ok(None);
    };
    let m = qa.num_arrows();
    if m > 16 {
        return Err(Error::precondition("too many arrows for the sign search").with_datum(m.to_string()));
    }
    let n = from.truncation().min(to.truncation());
    let target = cyclic_normal_form(&to.potential().retruncate(n))?;
    let source = from.potential().retruncate(n);
    for mask in 0u32..(1 << m) {
        let signs: Vec<Q> = (0..m).map(|a| if mask >> a & 1 == 1 { -Q::one() } else { Q::one() }).collect();
        let images = (0..m)
            .map(|a| Element::from_path(qb.clone(), n, Path::arrow(qb, iso.arrow_map[a]), signs[a].clone()))
            .collect();
        let sub = Substitution::new(qa.clone(), qb.clone(), n, images)?;
        if cyclic_normal_form(&sub.apply(&source)?)? == target {
            return Ok(Some((iso.arrow_map, signs)));
        }
    }
    Ok(None)
}

fn transport(m: &Representation, to: &Arc<Quiver>, arrow_map: &[usize], signs: &[Q]) -> Result<Representation> {
    let from = m.quiver();
    let mut dims = vec![0; to.num_vertices()];
    for v in 0..from.num_vertices() {
        dims[to.require_vertex(from.vertex_name(v))?] = m.dim(v);
    }
    let mut maps = vec![Matrix::zeros(0, 0); to.num_arrows()];
    for a in 0..from.num_arrows() {
        maps[arrow_map[a]] = m.map(a).scale(&signs[a]);
    }
    Representation::new(to.clone(), dims, maps)
}

/// For each M: strip S_k, mutate and reduce, strip S_k*, mutate back and
/// reduce, identify μ_k*μ_k P with P, and compare with the stripped M.
pub fn check_nearly_morita(p: &Qp, k: usize, reps: &[Representation], seed: u64) -> Result<NearlyMoritaReport> {
    let q = p.quiver();
    if k >= q.num_vertices() {
        return Err(Error::structural("vertex out of range"));
    }
    if !p.is_reduced() {
        return Err(Error::precondition("QP is not reduced"));
    }
    let once = mutate(p, k)?;
    let mid = once.reduced().clone();
    if let Some((a, b)) = mid.quiver().two_cycle_through(k) {
        return Err(Error::precondition("mutated QP has a 2-cycle through the vertex")
            .with_datum(format!("{} {}", mid.quiver().arrow_name(a), mid.quiver().arrow_name(b))));
    }
    let twice = mutate(&mid, k)?;
    let back = twice.reduced();
    let ident = identify(back, p)?;
    let mut entries = Vec::new();
    for (index, m) in reps.iter().enumerate() {
        let report = validate_rep(p, m)?;
        if !report.valid {
            return Err(Error::precondition("invalid representation in the family").with_datum(index.to_string()));
        }
        let (m0, stripped) = strip_simple_summands(m, k)?;
        let n1 = reduce_rep(&apply_premutation(&once.premutation, p, &m0, Splitting::Pivot)?, &once.split)?;
        let mutated_valid = validate_rep(&mid, &n1)?.valid;
        let off_k_preserved = (0..q.num_vertices()).filter(|&v| v != k).all(|v| n1.dim(v) == m0.dim(v));
        let (n1s, _) = strip_simple_summands(&n1, k)?;
        let n2 = reduce_rep(&apply_premutation(&twice.premutation, &mid, &n1s, Splitting::Pivot)?, &twice.split)?;
        let (isomorphic, note) = match &ident {
            Some((map, signs)) => {
                let n2p = transport(&n2, q, map, signs)?;
                (are_isomorphic(&m0, &n2p, seed.wrapping_add(index as u64))?, None)
            }
            None => (false, Some("no signed vertex-fixing identification of μμP with P".to_string())),
        };
        entries.push(NearlyMoritaEntry {
            index,
            dims: m.dims().to_vec(),
            stripped,
            mutated_dims: n1.dims().to_vec(),
            mutated_valid,
            off_k_preserved,
            isomorphic,
            note,
        });
    }
    Ok(NearlyMoritaReport { vertex: q.vertex_name(k).to_string(), entries })
}
