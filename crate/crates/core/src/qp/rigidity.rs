use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::Qp;
use crate::error::Result;
use crate::jacobian::{jacobian_generators, truncated_quotient, Finiteness, PathSpace};
use crate::path_algebra::{canonical_rotation, Path};
use crate::rational::Q;

/// Result of the truncated rigidity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidityVerdict {
    /// Some cyclic class of length ≤ N is not in the Jacobian ideal plus commutators.
    NotRigid { witness: String, degree: usize },
    /// All classes up to N are covered and the Jacobian algebra is certified finite.
    RigidCertified { dim: usize, nilpotency: usize },
    /// All classes up to N are covered; finiteness not certified at N.
    RigidUpToN { truncation: usize },
}

impl RigidityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            RigidityVerdict::NotRigid { .. } => "NOT_RIGID",
            RigidityVerdict::RigidCertified { .. } => "RIGID_CERTIFIED",
            RigidityVerdict::RigidUpToN { .. } => "RIGID_UP_TO_N",
        }
    }

    pub fn is_rigid(&self) -> bool {
        !matches!(self, RigidityVerdict::NotRigid { .. })
    }
}

/// Compare the span of the classes of ∂_aW·x (x a path closing the
/// derivative to a cycle, total length ≤ N) with all cyclic classes of
/// length 1..N.
pub fn is_rigid_truncated(p: &Qp) -> Result<RigidityVerdict> {
    let n = p.truncation();
    let q = p.quiver().clone();
    let space = PathSpace::new(Arc::clone(&q), n);
    let mut classes: BTreeMap<Path, usize> = BTreeMap::new();
    for id in 0..space.len() as u32 {
        let path = space.path(id);
        if !path.is_trivial() && path.is_cycle() {
            classes.entry(canonical_rotation(&q, path)).or_insert(0);
        }
    }
    for (i, v) in classes.values_mut().enumerate() {
        *v = i;
    }
    let mut pivots: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
    let reduce = |mut v: Vec<(usize, Q)>, pivots: &BTreeMap<usize, Vec<(usize, Q)>>| {
        while let Some((l, c)) = v.first().cloned() {
            match pivots.get(&l) {
                Some(row) => v = axpy(&v, &-c, row),
                None => break,
            }
        }
        v
    };
    for d in jacobian_generators(p)? {
        let (s, e) = match d.terms().keys().next() {
            Some(t) => (t.end(), t.start()),
            None => continue,
        };
        let m = d.min_degree().unwrap_or(0);
        for id in 0..space.len() as u32 {
            let x = space.path(id);
            if x.len() + m > n {
                break;
            }
            if x.start() != s || x.end() != e {
                continue;
            }
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (t, c) in d.terms() {
                if t.len() + x.len() > n {
                    continue;
                }
                if let Some(cyc) = t.concat(x) {
                    if let Some(&k) = classes.get(&canonical_rotation(&q, &cyc)) {
                        *acc.entry(k).or_insert_with(Q::zero) += c;
                    }
                }
            }
            let v: Vec<(usize, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            let mut v = reduce(v, &pivots);
            if let Some((l, c)) = v.first().cloned() {
                let inv = c.recip();
                for (_, x) in v.iter_mut() {
                    *x *= &inv;
                }
                pivots.insert(l, v);
            }
        }
    }
    if pivots.len() < classes.len() {
        for (class, &k) in &classes {
            if !reduce(vec![(k, Q::from_integer(1.into()))], &pivots).is_empty() {
                return Ok(RigidityVerdict::NotRigid { witness: class.display(&q), degree: class.len() });
            }
        }
    }
    Ok(match truncated_quotient(p, n)?.certificate() {
        Finiteness::Finite { dim, nilpotency } if nilpotency <= n => RigidityVerdict::RigidCertified { dim, nilpotency },
        _ => RigidityVerdict::RigidUpToN { truncation: n },
    })
}

fn axpy(x: &[(usize, Q)], c: &Q, y: &[(usize, Q)]) -> Vec<(usize, Q)> {
    let mut out: BTreeMap<usize, Q> = x.iter().cloned().collect();
    for (i, v) in y {
        *out.entry(*i).or_insert_with(Q::zero) += c * v;
    }
    out.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}
