//! Quivers with potentials: validation, premutation, reduction, mutation
//! and the truncated rigidity test.

mod premutation;
mod reduction;
mod rigidity;

pub use premutation::{normalize_avoid_vertex, premutate, Premutation};
pub use reduction::{split_reduce, SplitResult};
pub use rigidity::{is_rigid_truncated, RigidityVerdict};

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::path_algebra::{cyclic_normal_form, Element};
use crate::quiver::Quiver;

pub const DEFAULT_TRUNCATION: usize = 12;

/// A quiver, a potential in cyclic normal form and a set of frozen vertices.
/// The truncation degree is the potential's.
#[derive(Clone, Debug, PartialEq)]
pub struct Qp {
    quiver: Arc<Quiver>,
    potential: Element,
    frozen: BTreeSet<usize>,
}

/// Outcome of [`validate_qp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpReport {
    pub valid: bool,
    pub reduced: bool,
    pub issues: Vec<String>,
    /// Per vertex name, the 2-cycles (pairs of arrow names) through it.
    pub two_cycles: Vec<(String, Vec<(String, String)>)>,
}

/// Check a quiver, potential and frozen set for use as a QP.
pub fn validate_parts(quiver: &Quiver, potential: &Element, frozen: &BTreeSet<usize>) -> QpReport {
    let mut issues = Vec::new();
    for l in quiver.loops() {
        issues.push(format!("loop at vertex {}: arrow {}", quiver.vertex_name(quiver.source(l)), quiver.arrow_name(l)));
    }
    if **potential.quiver() != *quiver {
        issues.push("potential is not over the given quiver".to_string());
    }
    for p in potential.terms().keys() {
        if !p.is_cycle() {
            issues.push(format!("potential term is not a cycle: {}", p.display(quiver)));
        } else if p.len() < 2 {
            issues.push(format!("potential term has length < 2: {}", p.display(quiver)));
        }
    }
    if issues.is_empty() {
        if let Ok(nf) = cyclic_normal_form(potential) {
            if nf != *potential {
                issues.push("potential is not in cyclic normal form".to_string());
            }
        }
    }
    for &v in frozen {
        if v >= quiver.num_vertices() {
            issues.push(format!("frozen vertex index {v} out of range"));
        }
    }
    let reduced = potential.terms().keys().all(|p| p.len() >= 3);
    let mut two_cycles = Vec::new();
    for k in 0..quiver.num_vertices() {
        let mut pairs = Vec::new();
        for &a in quiver.arrows_from(k) {
            for &b in quiver.arrows_from(quiver.target(a)) {
                if quiver.target(b) == k && quiver.target(a) != k {
                    pairs.push((quiver.arrow_name(a).to_string(), quiver.arrow_name(b).to_string()));
                }
            }
        }
        two_cycles.push((quiver.vertex_name(k).to_string(), pairs));
    }
    QpReport { valid: issues.is_empty(), reduced, issues, two_cycles }
}

pub fn validate_qp(p: &Qp) -> QpReport {
    validate_parts(&p.quiver, &p.potential, &p.frozen)
}

impl Qp {
    /// Bring the potential to cyclic normal form and validate.
    pub fn new(quiver: Arc<Quiver>, potential: Element, frozen: BTreeSet<usize>) -> Result<Qp> {
        if !potential.is_supported_on_cycles() {
            let bad = potential.terms().keys().find(|p| !p.is_cycle()).unwrap();
            return Err(Error::structural("potential term is not a cycle").with_datum(bad.display(&quiver)));
        }
        let potential = cyclic_normal_form(&potential)?.retarget(&quiver);
        let report = validate_parts(&quiver, &potential, &frozen);
        if !report.valid {
            return Err(Error::structural("invalid quiver with potential").with_datum(report.issues.join("; ")));
        }
        Ok(Qp { quiver, potential, frozen })
    }

    pub fn unfrozen(quiver: Arc<Quiver>, potential: Element) -> Result<Qp> {
        Qp::new(quiver, potential, BTreeSet::new())
    }

    /// The QP with zero potential.
    pub fn zero(quiver: Arc<Quiver>, trunc: usize) -> Result<Qp> {
        let w = Element::zero(quiver.clone(), trunc);
        Qp::new(quiver, w, BTreeSet::new())
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn potential(&self) -> &Element {
        &self.potential
    }

    pub fn frozen(&self) -> &BTreeSet<usize> {
        &self.frozen
    }

    pub fn truncation(&self) -> usize {
        self.potential.truncation()
    }

    pub fn is_reduced(&self) -> bool {
        self.potential.terms().keys().all(|p| p.len() >= 3)
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.frozen.contains(&v)
    }

    /// Same QP with the potential re-truncated at `n`.
    pub fn with_truncation(&self, n: usize) -> Qp {
        Qp { quiver: self.quiver.clone(), potential: self.potential.retruncate(n), frozen: self.frozen.clone() }
    }
}

/// Full mutation: premutation followed by reduction.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub premutation: Premutation,
    pub split: SplitResult,
}

impl Mutation {
    pub fn reduced(&self) -> &Qp {
        &self.split.reduced
    }
}

/// μ_k. The input must be reduced; the returned data keep the premutated
/// QP and the right-equivalence used to split it.
pub fn mutate(p: &Qp, k: usize) -> Result<Mutation> {
    if !p.is_reduced() {
        return Err(Error::precondition("mutation needs a reduced QP; reduce it first"));
    }
    let premutation = premutate(p, k)?;
    let split = split_reduce(&premutation.qp)?;
    Ok(Mutation { premutation, split })
}

#[cfg(test)]
mod tests;
