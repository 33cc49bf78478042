//! Quivers, b-matrices and Fomin–Zelevinsky mutation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph with named vertices and arrows.
/// Vertices and arrows are addressed by their position.
#[derive(Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    // position of each arrow in the name-sorted order; drives canonical rotations
    name_rank: Vec<u32>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}:{}->{}", a.name, self.vertices[a.source], self.vertices[a.target]))
            .collect();
        write!(f, "Quiver{{vertices: {:?}, arrows: [{}]}}", self.vertices, arrows.join(", "))
    }
}

/// Flip the star decoration of a name: `a` ↦ `a*`, `a*` ↦ `a`.
pub fn star(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

pub fn composite_name(a: &str, b: &str) -> String {
    format!("[{a}{b}]")
}

/// `base`, or `base` followed by primes until it is not in `taken`.
pub fn fresh_name(taken: &HashSet<String>, base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::structural("duplicate vertex").with_datum(v.clone()));
            }
        }
        let mut arrow_index = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::structural("arrow endpoint is not a vertex").with_datum(a.name.clone()));
            }
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(Error::structural("duplicate arrow name").with_datum(a.name.clone()));
            }
        }
        let mut order: Vec<usize> = (0..arrows.len()).collect();
        order.sort_by(|&x, &y| arrows[x].name.cmp(&arrows[y].name));
        let mut name_rank = vec![0u32; arrows.len()];
        for (r, &a) in order.iter().enumerate() {
            name_rank[a] = r as u32;
        }
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        let mut in_arrows = vec![Vec::new(); vertices.len()];
        for (i, a) in arrows.iter().enumerate() {
            out_arrows[a.source].push(i);
            in_arrows[a.target].push(i);
        }
        Ok(Quiver { vertices, arrows, vertex_index, arrow_index, name_rank, out_arrows, in_arrows })
    }

    /// Build from vertex names and (name, from, to) triples of names.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let idx: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut out = Vec::new();
        for (n, s, t) in arrows {
            let source = *idx.get(s).ok_or_else(|| Error::structural("unknown vertex").with_datum(*s))?;
            let target = *idx.get(t).ok_or_else(|| Error::structural("unknown vertex").with_datum(*t))?;
            out.push(Arrow { name: n.to_string(), source, target });
        }
        Quiver::new(vs, out)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<usize> {
        self.vertex(name).ok_or_else(|| Error::structural("unknown vertex").with_datum(name))
    }

    pub fn require_arrow(&self, name: &str) -> Result<usize> {
        self.arrow(name).ok_or_else(|| Error::structural("unknown arrow").with_datum(name))
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    pub fn name_rank(&self, a: usize) -> u32 {
        self.name_rank[a]
    }

    /// Arrows leaving `v`, in arrow order.
    pub fn arrows_from(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    /// Arrows entering `v`, in arrow order.
    pub fn arrows_into(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    pub fn arrows_between(&self, i: usize, j: usize) -> Vec<usize> {
        self.out_arrows[i].iter().copied().filter(|&a| self.arrows[a].target == j).collect()
    }

    pub fn arrow_names(&self) -> HashSet<String> {
        self.arrows.iter().map(|a| a.name.clone()).collect()
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == self.arrows[a].target).collect()
    }

    pub fn has_loops(&self) -> bool {
        !self.loops().is_empty()
    }

    /// Some pair (a, b) with a: k→j, b: j→k, if k lies on a 2-cycle.
    pub fn two_cycle_through(&self, k: usize) -> Option<(usize, usize)> {
        for &a in &self.out_arrows[k] {
            let j = self.arrows[a].target;
            if j == k {
                continue;
            }
            if let Some(&b) = self.out_arrows[j].iter().find(|&&b| self.arrows[b].target == k) {
                return Some((a, b));
            }
        }
        None
    }

    pub fn has_two_cycles(&self) -> bool {
        (0..self.vertices.len()).any(|k| self.two_cycle_through(k).is_some())
    }

    /// Subquiver on the vertices accepted by `keep`, with all arrows between them.
    pub fn full_subquiver(&self, keep: impl Fn(usize) -> bool) -> Quiver {
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut vs = Vec::new();
        for v in 0..self.vertices.len() {
            if keep(v) {
                map[v] = vs.len();
                vs.push(self.vertices[v].clone());
            }
        }
        let arrows = self
            .arrows
            .iter()
            .filter(|a| map[a.source] != usize::MAX && map[a.target] != usize::MAX)
            .map(|a| Arrow { name: a.name.clone(), source: map[a.source], target: map[a.target] })
            .collect();
        Quiver::new(vs, arrows).expect("subquiver of a valid quiver")
    }

    /// Same vertices, only the arrows accepted by `keep`.
    pub fn arrow_subquiver(&self, keep: impl Fn(usize) -> bool) -> Quiver {
        let arrows = (0..self.arrows.len()).filter(|&a| keep(a)).map(|a| self.arrows[a].clone()).collect();
        Quiver::new(self.vertices.clone(), arrows).expect("subquiver of a valid quiver")
    }

    pub fn with_vertex_renamed(&self, v: usize, name: &str) -> Result<Quiver> {
        let mut vs = self.vertices.clone();
        vs[v] = name.to_string();
        Quiver::new(vs, self.arrows.clone())
    }
}

/// Antisymmetric integer matrix b_ij = #(i→j) − #(j→i), indexed like the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BMatrix {
    pub vertices: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl BMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == -self.entries[j][i]))
    }

    /// The mutation formula applied entrywise, independent of any quiver.
    pub fn mutate(&self, k: usize) -> BMatrix {
        let n = self.size();
        let b = &self.entries;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        let mut vertices = self.vertices.clone();
        vertices[k] = star(&vertices[k]);
        BMatrix { vertices, entries: out }
    }

    /// The quiver without 2-cycles whose b-matrix is self. Arrows i→j are
    /// named `x_<i>_<j>_<m>` with m counting parallel copies from 1.
    pub fn to_quiver(&self) -> Quiver {
        let n = self.size();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for m in 0..self.entries[i][j].max(0) {
                    arrows.push(Arrow {
                        name: format!("x_{}_{}_{}", self.vertices[i], self.vertices[j], m + 1),
                        source: i,
                        target: j,
                    });
                }
            }
        }
        Quiver::new(self.vertices.clone(), arrows).expect("b-matrix quiver")
    }
}

pub fn b_matrix(q: &Quiver) -> Result<BMatrix> {
    if let Some(&l) = q.loops().first() {
        return Err(Error::structural("quiver has a loop").with_datum(q.arrow_name(l)));
    }
    let n = q.num_vertices();
    let mut entries = vec![vec![0i64; n]; n];
    for a in q.arrows() {
        entries[a.source][a.target] += 1;
        entries[a.target][a.source] -= 1;
    }
    Ok(BMatrix { vertices: q.vertices().to_vec(), entries })
}

/// Fomin–Zelevinsky mutation at `k`. Arrows at k are reversed and starred,
/// each path a: i→k, b: k→j contributes an arrow `[ab]`: i→j, and the
/// 2-cycles formed by new composites against existing arrows are removed.
/// Vertex k is renamed `k*`.
pub fn fz_mutate(q: &Quiver, k: usize) -> Result<Quiver> {
    if let Some(&l) = q.loops().first() {
        return Err(Error::structural("quiver has a loop").with_datum(q.arrow_name(l)));
    }
    if let Some((a, b)) = q.two_cycle_through(k) {
        return Err(Error::precondition("2-cycle through the mutation vertex")
            .with_datum(format!("{} {}", q.arrow_name(a), q.arrow_name(b))));
    }
    let mut taken: HashSet<String> = q.arrow_names();
    let mut kept: Vec<Arrow> = Vec::new();
    for a in q.arrows() {
        if a.source != k && a.target != k {
            kept.push(a.clone());
        }
    }
    let mut composites: Vec<Arrow> = Vec::new();
    for &a in q.arrows_into(k) {
        for &b in q.arrows_from(k) {
            let name = fresh_name(&taken, &composite_name(q.arrow_name(a), q.arrow_name(b)));
            taken.insert(name.clone());
            composites.push(Arrow { name, source: q.source(a), target: q.target(b) });
        }
    }
    // cancel composites against opposite arrows, last ones first
    let mut cancel_kept: HashSet<usize> = HashSet::new();
    let mut cancel_comp: HashSet<usize> = HashSet::new();
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (c, arr) in composites.iter().enumerate() {
        groups.entry((arr.source, arr.target)).or_default().push(c);
    }
    for ((i, j), comps) in &groups {
        let opposite: Vec<usize> =
            (0..kept.len()).filter(|&x| kept[x].source == *j && kept[x].target == *i).collect();
        let m = comps.len().min(opposite.len());
        for t in 0..m {
            cancel_comp.insert(comps[comps.len() - 1 - t]);
            cancel_kept.insert(opposite[opposite.len() - 1 - t]);
        }
    }
    let mut arrows: Vec<Arrow> = kept
        .into_iter()
        .enumerate()
        .filter(|(x, _)| !cancel_kept.contains(x))
        .map(|(_, a)| a)
        .collect();
    arrows.extend(composites.into_iter().enumerate().filter(|(c, _)| !cancel_comp.contains(c)).map(|(_, a)| a));
    for a in q.arrows() {
        if a.target == k || a.source == k {
            let mut t = taken.clone();
            t.remove(&a.name);
            let name = fresh_name(&t, &star(&a.name));
            taken.insert(name.clone());
            arrows.push(Arrow { name, source: a.target, target: a.source });
        }
    }
    let mut vertices = q.vertices().to_vec();
    let mut vnames: HashSet<String> = vertices.iter().cloned().collect();
    vnames.remove(&vertices[k]);
    vertices[k] = fresh_name(&vnames, &star(&vertices[k]));
    Quiver::new(vertices, arrows)
}

/// A vertex and arrow bijection between two quivers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverIso {
    /// vertex_map[v] is the image of vertex v of the first quiver.
    pub vertex_map: Vec<usize>,
    /// arrow_map[a] is the image of arrow a of the first quiver.
    pub arrow_map: Vec<usize>,
}

pub fn quivers_isomorphic(q1: &Quiver, q2: &Quiver) -> Option<QuiverIso> {
    quivers_isomorphic_with(q1, q2, |_, _| true)
}

/// Backtracking search for an isomorphism whose vertex map only pairs
/// vertices accepted by `allowed`.
pub fn quivers_isomorphic_with(
    q1: &Quiver,
    q2: &Quiver,
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<QuiverIso> {
    let n = q1.num_vertices();
    if n != q2.num_vertices() || q1.num_arrows() != q2.num_arrows() {
        return None;
    }
    let count = |q: &Quiver| {
        let m = q.num_vertices();
        let mut c = vec![vec![0usize; m]; m];
        for a in q.arrows() {
            c[a.source][a.target] += 1;
        }
        c
    };
    let c1 = count(q1);
    let c2 = count(q2);
    let signature = |c: &Vec<Vec<usize>>, v: usize| {
        let mut outs: Vec<usize> = c[v].iter().copied().filter(|&x| x > 0).collect();
        let mut ins: Vec<usize> = c.iter().map(|r| r[v]).filter(|&x| x > 0).collect();
        outs.sort_unstable();
        ins.sort_unstable();
        (outs, ins, c[v][v])
    };
    let sig1: Vec<_> = (0..n).map(|v| signature(&c1, v)).collect();
    let sig2: Vec<_> = (0..n).map(|v| signature(&c2, v)).collect();
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|v| (0..n).filter(|&w| sig1[v] == sig2[w] && allowed(v, w)).collect()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| candidates[v].len());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn search(
        depth: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        c1: &[Vec<usize>],
        c2: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for &w in &candidates[v] {
            if used[w] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                c1[v][u] == c2[w][map[u]] && c1[u][v] == c2[map[u]][w]
            }) && c1[v][v] == c2[w][w];
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if search(depth + 1, order, candidates, c1, c2, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }

    if !search(0, &order, &candidates, &c1, &c2, &mut map, &mut used) {
        return None;
    }
    let mut arrow_map = vec![usize::MAX; q1.num_arrows()];
    let mut pools: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (b, arr) in q2.arrows().iter().enumerate() {
        pools.entry((arr.source, arr.target)).or_default().push(b);
    }
    for pool in pools.values_mut() {
        pool.reverse();
    }
    for (a, arr) in q1.arrows().iter().enumerate() {
        let pool = pools.get_mut(&(map[arr.source], map[arr.target]))?;
        arrow_map[a] = pool.pop()?;
    }
    Some(QuiverIso { vertex_map: map, arrow_map })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a3() -> Quiver {
        Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap()
    }

    fn triangle() -> Quiver {
        Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]).unwrap()
    }

    #[test]
    fn b_matrices() {
        assert_eq!(b_matrix(&a3()).unwrap().entries, vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]);
        assert_eq!(b_matrix(&triangle()).unwrap().entries, vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]);
        let empty = Quiver::from_names(&["1", "2"], &[]).unwrap();
        assert_eq!(b_matrix(&empty).unwrap().entries, vec![vec![0, 0], vec![0, 0]]);
        let lp = Quiver::from_names(&["1"], &[("l", "1", "1")]).unwrap();
        assert!(b_matrix(&lp).is_err());
    }

    #[test]
    fn mutation_of_a3_at_middle() {
        let m = fz_mutate(&a3(), 1).unwrap();
        let names: Vec<_> = m.arrows().iter().map(|a| (a.name.clone(), m.vertex_name(a.source).to_string(), m.vertex_name(a.target).to_string())).collect();
        assert_eq!(
            names,
            vec![
                ("[ab]".to_string(), "1".to_string(), "3".to_string()),
                ("a*".to_string(), "2*".to_string(), "1".to_string()),
                ("b*".to_string(), "3".to_string(), "2*".to_string()),
            ]
        );
        assert_eq!(b_matrix(&m).unwrap(), b_matrix(&a3()).unwrap().mutate(1));
    }

    #[test]
    fn mutation_cancels_two_cycles() {
        let m = fz_mutate(&triangle(), 1).unwrap();
        assert_eq!(m.num_arrows(), 2);
        assert_eq!(b_matrix(&m).unwrap(), b_matrix(&triangle()).unwrap().mutate(1));
        let back = fz_mutate(&m, 1).unwrap();
        assert_eq!(b_matrix(&back).unwrap().entries, b_matrix(&triangle()).unwrap().entries);
        assert_eq!(back.vertex_name(1), "2");
    }

    #[test]
    fn two_cycle_rejected() {
        let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        assert!(matches!(fz_mutate(&q, 0), Err(Error::Precondition { .. })));
    }

    #[test]
    fn isomorphism_search() {
        let rev = Quiver::from_names(&["1", "2", "3"], &[("a", "3", "2"), ("b", "2", "1")]).unwrap();
        let iso = quivers_isomorphic(&a3(), &rev).unwrap();
        assert_eq!(iso.vertex_map, vec![2, 1, 0]);
        let id = quivers_isomorphic(&a3(), &a3()).unwrap();
        assert_eq!(id.vertex_map, vec![0, 1, 2]);
        assert!(quivers_isomorphic(&triangle(), &a3()).is_none());
    }

    #[test]
    fn star_collapses() {
        assert_eq!(star("a"), "a*");
        assert_eq!(star("a*"), "a");
        assert_eq!(star(&star("2")), "2");
    }
}
