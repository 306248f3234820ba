//! Automorphism groups and canonical forms by individualization and
//! equitable refinement.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graphcore::Graph;
use crate::hatcore::{transitivity, HatError, TransitivityReport};
use crate::perm::{PermGroup, Permutation};

pub const DEFAULT_VERTEX_BOUND: usize = 10_000;

#[derive(Debug, Error)]
pub enum AutError {
    #[error("graph has {vertices} vertices, above the search bound {bound}")]
    TooLarge { vertices: usize, bound: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Hat(#[from] HatError),
}

#[derive(Debug, Clone)]
pub struct AutResult {
    pub generators: Vec<Permutation>,
    pub group: PermGroup,
    pub order: BigUint,
    /// Maps each vertex to its canonical label.
    pub canonical_labeling: Permutation,
    pub canonical_form: Vec<u8>,
}

impl AutResult {
    pub fn certificate(&self) -> String {
        hex::encode(Sha256::digest(&self.canonical_form))
    }
}

fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Ordered partition: `lab` lists vertices cell by cell; `start[i]` is the
/// first position of the cell containing position `i`; `end[s]` closes the
/// cell starting at `s`.
#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    pos: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        Partition {
            lab: (0..n).collect(),
            pos: (0..n).collect(),
            start: vec![0; n],
            end: vec![n; n.max(1)],
            cells: usize::from(n > 0),
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// First smallest non-singleton cell, as `(start, end)`.
    fn target_cell(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let e = self.end[s];
            if e - s > 1 && best.map_or(true, |(bs, be)| e - s < be - bs) {
                best = Some((s, e));
            }
            s = e;
        }
        best
    }

    /// Splits `v` off the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let p = self.pos[v];
        let s = self.start[p];
        let e = self.end[s];
        let first = self.lab[s];
        self.lab.swap(s, p);
        self.pos[first] = p;
        self.pos[v] = s;
        self.end[s] = s + 1;
        self.end[s + 1] = e;
        for i in s + 1..e {
            self.start[i] = s + 1;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition below the current one,
    /// starting from the given splitter cells; returns a trace hash.
    fn refine(&mut self, g: &Graph, splitters: &[usize], scratch: &mut Vec<u32>) -> u64 {
        let n = self.lab.len();
        let mut queue: BTreeSet<usize> = splitters.iter().copied().collect();
        let mut trace = 0u64;
        let mut touched_vertices: Vec<usize> = Vec::new();
        while let Some(w) = queue.pop_first() {
            if self.is_discrete() {
                break;
            }
            let we = self.end[w];
            for i in w..we {
                for &x in g.neighbors(self.lab[i]) {
                    let x = x as usize;
                    if scratch[x] == 0 {
                        touched_vertices.push(x);
                    }
                    scratch[x] += 1;
                }
            }
            let mut cells: Vec<usize> = touched_vertices.iter().map(|&x| self.start[self.pos[x]]).collect();
            cells.sort_unstable();
            cells.dedup();
            for &s in &cells {
                let e = self.end[s];
                if e - s == 1 {
                    continue;
                }
                let mut members: Vec<(u32, usize)> = (s..e).map(|i| (scratch[self.lab[i]], self.lab[i])).collect();
                if members.iter().all(|m| m.0 == members[0].0) {
                    continue;
                }
                members.sort_unstable();
                let in_queue = queue.contains(&s);
                let mut frags: Vec<(usize, usize)> = Vec::new();
                let mut i = 0;
                while i < members.len() {
                    let mut j = i + 1;
                    while j < members.len() && members[j].0 == members[i].0 {
                        j += 1;
                    }
                    frags.push((s + i, s + j));
                    trace = mix(trace, ((w as u64) << 40) ^ ((s as u64) << 20) ^ u64::from(members[i].0));
                    trace = mix(trace, (j - i) as u64);
                    i = j;
                }
                for (k, &(_, v)) in members.iter().enumerate() {
                    self.lab[s + k] = v;
                    self.pos[v] = s + k;
                }
                for &(fs, fe) in &frags {
                    self.end[fs] = fe;
                    for p in fs..fe {
                        self.start[p] = fs;
                    }
                }
                self.cells += frags.len() - 1;
                let largest = frags
                    .iter()
                    .enumerate()
                    .max_by(|a, b| (a.1 .1 - a.1 .0).cmp(&(b.1 .1 - b.1 .0)).then(b.0.cmp(&a.0)))
                    .map(|(k, _)| k)
                    .unwrap_or(0);
                for (k, &(fs, _)) in frags.iter().enumerate() {
                    if in_queue || k != largest {
                        queue.insert(fs);
                    }
                }
            }
            for &x in &touched_vertices {
                scratch[x] = 0;
            }
            touched_vertices.clear();
        }
        mix(trace, self.cells as u64 ^ ((n as u64) << 32))
    }
}

struct Leaf {
    trace: Vec<u64>,
    lab: Vec<usize>,
    edges: Vec<(u32, u32)>,
}

fn leaf_edges(g: &Graph, p: &Partition) -> Vec<(u32, u32)> {
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (p.pos[u] as u32, p.pos[v] as u32);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Lexicographic comparison of a node trace against a full leaf trace;
/// `None` when the node trace is a proper prefix.
fn prefix_cmp(node: &[u64], leaf: &[u64]) -> Option<Ordering> {
    for (a, b) in node.iter().zip(leaf) {
        match a.cmp(b) {
            Ordering::Equal => {}
            o => return Some(o),
        }
    }
    if node.len() > leaf.len() {
        Some(Ordering::Greater)
    } else {
        None
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

enum Flow {
    Continue,
    /// A leaf equivalent to the first leaf was found; unwind to the first path.
    Jump,
}

struct Search<'a> {
    g: &'a Graph,
    scratch: Vec<u32>,
    zeta: Leaf,
    best: Leaf,
    generators: Vec<Permutation>,
    orbits: UnionFind,
}

impl Search<'_> {
    fn record(&mut self, from: &[usize], to: &[usize]) {
        let n = from.len();
        let mut images = vec![0usize; n];
        for i in 0..n {
            images[from[i]] = to[i];
        }
        let gamma = Permutation::from_images(images).expect("leaf labelings are bijections");
        if gamma.is_identity() || self.generators.contains(&gamma) {
            return;
        }
        debug_assert!(self.g.is_automorphism(&gamma));
        for v in 0..n {
            self.orbits.union(v, gamma.apply(v));
        }
        self.generators.push(gamma);
    }

    fn explore(&mut self, p: Partition, trace: Vec<u64>) -> Flow {
        let d = trace.len();
        let eq_zeta = d <= self.zeta.trace.len() && trace[..] == self.zeta.trace[..d];
        let vs_best = prefix_cmp(&trace, &self.best.trace);
        if !eq_zeta && vs_best == Some(Ordering::Less) {
            return Flow::Continue;
        }
        if p.is_discrete() {
            let edges = leaf_edges(self.g, &p);
            if trace == self.zeta.trace && edges == self.zeta.edges {
                let zlab = self.zeta.lab.clone();
                self.record(&zlab, &p.lab);
                return Flow::Jump;
            }
            let key = (&trace, &edges).cmp(&(&self.best.trace, &self.best.edges));
            match key {
                Ordering::Equal => {
                    let blab = self.best.lab.clone();
                    self.record(&blab, &p.lab);
                }
                Ordering::Greater => self.best = Leaf { trace, lab: p.lab, edges },
                Ordering::Less => {}
            }
            return Flow::Continue;
        }
        let (s, e) = p.target_cell().expect("non-discrete partition");
        let cell: Vec<usize> = p.lab[s..e].to_vec();
        for w in cell {
            let (child, t) = self.child(&p, w, s, e);
            let mut ct = trace.clone();
            ct.push(t);
            if let Flow::Jump = self.explore(child, ct) {
                return Flow::Jump;
            }
        }
        Flow::Continue
    }

    fn child(&mut self, p: &Partition, w: usize, s: usize, e: usize) -> (Partition, u64) {
        let mut c = p.clone();
        let at = c.individualize(w);
        let t = c.refine(self.g, &[at], &mut self.scratch);
        (c, mix(t, ((s as u64) << 32) ^ (e - s) as u64))
    }
}

pub fn automorphism_group(g: &Graph) -> Result<AutResult, AutError> {
    automorphism_group_bounded(g, DEFAULT_VERTEX_BOUND)
}

pub fn automorphism_group_bounded(g: &Graph, bound: usize) -> Result<AutResult, AutError> {
    let n = g.vertex_count();
    if n > bound {
        return Err(AutError::TooLarge { vertices: n, bound });
    }
    let mut scratch = vec![0u32; n];
    let mut root = Partition::unit(n);
    let t0 = if n > 0 { root.refine(g, &[0], &mut scratch) } else { 0 };

    // first path
    let mut path: Vec<(Partition, Vec<u64>, usize, usize)> = Vec::new();
    let mut node = root;
    let mut trace = vec![t0];
    let mut search_scratch = scratch;
    while let Some((s, e)) = node.target_cell() {
        let mut child = node.clone();
        let at = child.individualize(node.lab[s]);
        let t = child.refine(g, &[at], &mut search_scratch);
        path.push((node, trace.clone(), s, e));
        trace.push(mix(t, ((s as u64) << 32) ^ (e - s) as u64));
        node = child;
    }
    let zeta = Leaf { trace: trace.clone(), edges: leaf_edges(g, &node), lab: node.lab.clone() };
    let best = Leaf { trace, edges: zeta.edges.clone(), lab: zeta.lab.clone() };
    let mut search = Search {
        g,
        scratch: search_scratch,
        zeta,
        best,
        generators: Vec::new(),
        orbits: UnionFind((0..n).collect()),
    };

    let mut order = BigUint::from(1u32);
    for (p, tr, s, e) in path.iter().rev() {
        let chosen = p.lab[*s];
        let mut explored = vec![chosen];
        for &w in &p.lab[*s + 1..*e] {
            let rw = search.orbits.find(w);
            if explored.iter().any(|&x| search.orbits.find(x) == rw) {
                continue;
            }
            let (child, t) = search.child(p, w, *s, *e);
            let mut ct = tr.clone();
            ct.push(t);
            search.explore(child, ct);
            explored.push(w);
        }
        let root = search.orbits.find(chosen);
        let size = (0..n).filter(|&v| search.orbits.find(v) == root).count();
        order *= size;
    }

    let generators = search.generators;
    let group = PermGroup::with_degree(n, generators.clone()).map_err(|e| AutError::Inconsistent(e.to_string()))?;
    if group.order() != order {
        return Err(AutError::Inconsistent(format!(
            "orbit product {order} disagrees with the chain order {}",
            group.order()
        )));
    }

    let mut images = vec![0usize; n];
    for (i, &v) in search.best.lab.iter().enumerate() {
        images[v] = i;
    }
    let canonical_labeling = Permutation::from_images(images).expect("labeling is a bijection");
    let mut form = Vec::with_capacity(8 + 8 * search.best.edges.len());
    form.extend_from_slice(&(n as u32).to_le_bytes());
    form.extend_from_slice(&(search.best.edges.len() as u32).to_le_bytes());
    for &(a, b) in &search.best.edges {
        form.extend_from_slice(&a.to_le_bytes());
        form.extend_from_slice(&b.to_le_bytes());
    }
    Ok(AutResult { generators, group, order, canonical_labeling, canonical_form: form })
}

pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, AutError> {
    Ok(automorphism_group(g)?.canonical_form)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, AutError> {
    Ok(a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a)? == canonical_form(b)?)
}

/// Computes the full automorphism group and classifies its action.
pub fn is_half_arc_transitive_graph(g: &Graph) -> Result<(bool, AutResult, TransitivityReport), AutError> {
    let aut = automorphism_group(g)?;
    let t = transitivity(&aut.group, g)?;
    Ok((t.half_arc_transitive, aut, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn pentagon_is_dihedral() {
        let r = automorphism_group(&cycle(5)).unwrap();
        assert_eq!(r.order, BigUint::from(10u32));
        assert!(r.generators.iter().all(|s| cycle(5).is_automorphism(s)));
    }

    #[test]
    fn small_graphs() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(automorphism_group(&k4).unwrap().order, BigUint::from(24u32));
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(automorphism_group(&path).unwrap().order, BigUint::from(2u32));
        let empty = Graph::from_edges(3, &[]).unwrap();
        assert_eq!(automorphism_group(&empty).unwrap().order, BigUint::from(6u32));
        let none = Graph::from_edges(0, &[]).unwrap();
        assert_eq!(automorphism_group(&none).unwrap().order, BigUint::from(1u32));
    }

    #[test]
    fn relabeled_pentagons_agree() {
        let a = cycle(5);
        let b = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert!(!is_isomorphic(&a, &cycle(6)).unwrap());
    }

    #[test]
    fn size_guard() {
        assert!(matches!(automorphism_group_bounded(&cycle(5), 4), Err(AutError::TooLarge { .. })));
    }
}
