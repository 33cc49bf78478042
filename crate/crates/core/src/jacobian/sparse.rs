//! Sparse rational vectors indexed by path ids, and a path enumeration
//! with multiplication tables.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::path_algebra::{Element, Path};
use crate::quiver::Quiver;
use crate::rational::Q;

/// Sorted (id, coefficient) pairs with nonzero coefficients.
pub type SVec = Vec<(u32, Q)>;

/// x + c·y
pub fn axpy(x: &SVec, c: &Q, y: &SVec) -> SVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, c * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + c * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn normalize(x: &mut SVec) {
    if let Some((_, lead)) = x.first() {
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, v) in x.iter_mut() {
                *v *= &inv;
            }
        }
    }
}

fn from_unsorted(mut v: Vec<(u32, Q)>) -> SVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// All paths of length ≤ N, numbered by (length, generation order), with
/// tables for multiplying by an arrow on either side.
#[derive(Debug)]
pub struct PathSpace {
    quiver: Arc<Quiver>,
    n: usize,
    paths: Vec<Path>,
    index: HashMap<Path, u32>,
    level_start: Vec<usize>,
    right: Vec<Vec<(u32, u32)>>,
    left: Vec<Vec<(u32, u32)>>,
}

impl PathSpace {
    pub fn new(quiver: Arc<Quiver>, n: usize) -> PathSpace {
        let q = &quiver;
        let mut paths: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
        let mut level_start = vec![0, paths.len()];
        let mut right: Vec<Vec<(u32, u32)>> = vec![Vec::new(); paths.len()];
        for len in 0..n {
            let (lo, hi) = (level_start[len], level_start[len + 1]);
            for pid in lo..hi {
                let end = paths[pid].end();
                for &a in q.arrows_from(end) {
                    let np = if len == 0 { Path::arrow(q, a) } else { paths[pid].concat(&Path::arrow(q, a)).unwrap() };
                    right[pid].push((a as u32, paths.len() as u32));
                    paths.push(np);
                    right.push(Vec::new());
                }
            }
            level_start.push(paths.len());
        }
        let index: HashMap<Path, u32> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let mut left: Vec<Vec<(u32, u32)>> = vec![Vec::new(); paths.len()];
        for (pid, p) in paths.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            let a = p.arrow_at(0);
            let suffix = p.slice(q, 1, p.len());
            let sid = index[&suffix];
            left[sid as usize].push((a as u32, pid as u32));
        }
        PathSpace { quiver, n, paths, index, level_start, right, left }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn path(&self, id: u32) -> &Path {
        &self.paths[id as usize]
    }

    pub fn id(&self, p: &Path) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn degree(&self, id: u32) -> usize {
        self.paths[id as usize].len()
    }

    /// Ids of paths of length d.
    pub fn level(&self, d: usize) -> std::ops::Range<usize> {
        if d > self.n {
            return 0..0;
        }
        self.level_start[d]..self.level_start[d + 1]
    }

    pub fn times_arrow(&self, id: u32, a: usize) -> Option<u32> {
        self.right[id as usize].iter().find(|(x, _)| *x as usize == a).map(|(_, p)| *p)
    }

    pub fn arrow_times(&self, a: usize, id: u32) -> Option<u32> {
        self.left[id as usize].iter().find(|(x, _)| *x as usize == a).map(|(_, p)| *p)
    }

    /// v·a, dropping paths that would exceed the truncation.
    pub fn mul_arrow_right(&self, v: &SVec, a: usize) -> SVec {
        from_unsorted(v.iter().filter_map(|(id, c)| self.times_arrow(*id, a).map(|p| (p, c.clone()))).collect())
    }

    /// a·v, dropping paths that would exceed the truncation.
    pub fn mul_arrow_left(&self, a: usize, v: &SVec) -> SVec {
        from_unsorted(v.iter().filter_map(|(id, c)| self.arrow_times(a, *id).map(|p| (p, c.clone()))).collect())
    }

    /// Id of the concatenation p·r if it exists within the truncation.
    pub fn concat(&self, p: u32, r: u32) -> Option<u32> {
        let pp = &self.paths[p as usize];
        let rp = &self.paths[r as usize];
        if pp.end() != rp.start() || pp.len() + rp.len() > self.n {
            return None;
        }
        let mut id = p;
        for &a in rp.arrows() {
            id = self.times_arrow(id, a as usize)?;
        }
        Some(id)
    }

    pub fn vector(&self, x: &Element) -> SVec {
        from_unsorted(
            x.terms()
                .iter()
                .filter_map(|(p, c)| self.index.get(p).map(|&id| (id, c.clone())))
                .collect(),
        )
    }

    pub fn element(&self, v: &SVec) -> Element {
        let mut e = Element::zero(self.quiver.clone(), self.n);
        for (id, c) in v {
            e.add_term(self.paths[*id as usize].clone(), c.clone());
        }
        e
    }
}
