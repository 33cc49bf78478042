//! Dense reference computation of truncated quotient dimensions, kept
//! independent of the sparse elimination in the parent module.

use num_traits::Zero;

use super::{jacobian_generators, PathSpace};
use crate::linalg::Matrix;
use crate::qp::Qp;
use crate::rational::Q;

/// Independent oracle: dense row reduction of all p·∂W·q spanning vectors
/// inside KQ/J^{N+1}, returning surviving counts per degree.
pub fn brute_force_dims(p: &Qp, n: usize) -> Vec<usize> {
    let space = PathSpace::new(p.quiver().clone(), n);
    let gens = jacobian_generators(&p.with_truncation(n)).unwrap();
    let total = space.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for g in &gens {
        for l in 0..total as u32 {
            for r in 0..total as u32 {
                let (lp, rp) = (space.path(l), space.path(r));
                let mut v = vec![Q::zero(); total];
                let mut any = false;
                for (t, c) in g.terms() {
                    if lp.end() != t.start() || t.end() != rp.start() {
                        continue;
                    }
                    let Some(x) = space.concat(l, space.id(t).unwrap()) else { continue };
                    let Some(y) = space.concat(x, r) else { continue };
                    v[y as usize] += c;
                    any = true;
                }
                if any {
                    rows.push(v);
                }
            }
        }
    }
    let m = Matrix::from_rows(rows, total);
    // dim (I ∩ J^d) = rank I − rank of I restricted to paths of degree < d
    let low_rank = |d: usize| -> usize {
        let cols: Vec<usize> = (0..total).filter(|&i| space.degree(i as u32) < d).collect();
        m.select_columns(&cols).rank()
    };
    (0..=n).map(|d| space.level(d).len() - (low_rank(d + 1) - low_rank(d))).collect()
}

