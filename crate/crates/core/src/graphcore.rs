//! Simple undirected graphs, cycles, and their text formats.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::perm::Permutation;

/// Largest cycle length `cycles_of_length` will enumerate.
pub const MAX_CYCLE_LENGTH: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("cycle length {0} outside supported range 3..={MAX_CYCLE_LENGTH}")]
    UnsupportedCycleLength(usize),
    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),
    #[error("HATGRAPH parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Finite simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0] as usize;
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Graph { adjacency, edge_count: edges.len() })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Degree sequence, sorted ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regularity(&self) -> Option<usize> {
        let first = self.adjacency.first()?.len();
        self.adjacency.iter().all(|l| l.len() == first).then_some(first)
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if u < v as usize {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    /// Arcs `(u, v)` in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.edge_count);
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().map(|&v| (u, v as usize)));
        }
        out
    }

    /// Index of edge `{u, v}` in [`edges`](Self::edges) order, if present.
    pub fn edge_index(&self) -> EdgeIndex {
        EdgeIndex::new(self)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v as usize);
                }
            }
        }
        count == n
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best = usize::MAX;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            let mut touched = vec![root];
            dist[root] = 0;
            queue.clear();
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                // a cycle through root found at this depth cannot beat best
                if 2 * dist[u] as usize + 1 >= best {
                    break;
                }
                for &v in self.neighbors(u) {
                    let v = v as usize;
                    if dist[v] == u32::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u as u32;
                        touched.push(v);
                        queue.push_back(v);
                    } else if parent[u] != v as u32 {
                        let len = (dist[u] + dist[v] + 1) as usize;
                        if len < best {
                            best = len;
                        }
                        if best == 3 {
                            break 'bfs;
                        }
                    }
                }
            }
            for &t in &touched {
                dist[t] = u32::MAX;
                parent[t] = u32::MAX;
            }
            if best == 3 {
                break;
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// True when the graph has no cycle of length below `k`.
    pub fn girth_at_least(&self, k: usize) -> bool {
        self.girth().map_or(true, |g| g >= k)
    }

    /// Every cycle of length `k`, canonical and sorted.
    ///
    /// Rooted at its least vertex; the second vertex is smaller than the last,
    /// which is exactly the lexicographically least rotation/reflection.
    pub fn cycles_of_length(&self, k: usize) -> Result<Vec<Cycle>, GraphError> {
        if !(3..=MAX_CYCLE_LENGTH).contains(&k) {
            return Err(GraphError::UnsupportedCycleLength(k));
        }
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(k);
        let mut on_path = vec![false; self.vertex_count()];
        for root in 0..self.vertex_count() {
            path.clear();
            path.push(root as u32);
            on_path[root] = true;
            self.extend_cycles(root as u32, k, &mut path, &mut on_path, &mut out);
            on_path[root] = false;
        }
        out.sort_unstable();
        Ok(out)
    }

    fn extend_cycles(&self, root: u32, k: usize, path: &mut Vec<u32>, on_path: &mut [bool], out: &mut Vec<Cycle>) {
        let last = *path.last().expect("non-empty path") as usize;
        if path.len() == k {
            if self.has_edge(last, root as usize) && path[1] < path[k - 1] {
                out.push(Cycle { vertices: path.clone() });
            }
            return;
        }
        for &w in self.neighbors(last) {
            if w <= root || on_path[w as usize] {
                continue;
            }
            path.push(w);
            on_path[w as usize] = true;
            self.extend_cycles(root, k, path, on_path, out);
            on_path[w as usize] = false;
            path.pop();
        }
    }

    /// Image of the graph under a vertex relabeling `v -> perm(v)`.
    pub fn relabel(&self, perm: &Permutation) -> Graph {
        let edges: Vec<(usize, usize)> =
            self.edges().into_iter().map(|(u, v)| (perm.apply(u), perm.apply(v))).collect();
        Graph::from_edges(self.vertex_count(), &edges).expect("relabeling preserves simplicity")
    }

    /// True when `perm` maps edges to edges.
    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        perm.degree() == self.vertex_count()
            && self.edges().iter().all(|&(u, v)| self.has_edge(perm.apply(u), perm.apply(v)))
    }
}

/// Dense lookup from an edge to its position in `Graph::edges()` order.
#[derive(Debug, Clone)]
pub struct EdgeIndex {
    offsets: Vec<usize>,
    adjacency: Vec<Vec<u32>>,
    ids: Vec<u32>,
}

impl EdgeIndex {
    fn new(g: &Graph) -> Self {
        let mut offsets = Vec::with_capacity(g.vertex_count() + 1);
        let mut total = 0;
        for u in 0..g.vertex_count() {
            offsets.push(total);
            total += g.degree(u);
        }
        offsets.push(total);
        let mut ids = vec![0u32; total];
        for (id, (u, v)) in g.edges().into_iter().enumerate() {
            let pu = g.neighbors(u).binary_search(&(v as u32)).unwrap();
            let pv = g.neighbors(v).binary_search(&(u as u32)).unwrap();
            ids[offsets[u] + pu] = id as u32;
            ids[offsets[v] + pv] = id as u32;
        }
        EdgeIndex { offsets, adjacency: g.adjacency.clone(), ids }
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        let pos = self.adjacency[u].binary_search(&(v as u32)).ok()?;
        Some(self.ids[self.offsets[u] + pos] as usize)
    }

    /// Index of arc `(u, v)` in `Graph::arcs()` order.
    pub fn arc(&self, u: usize, v: usize) -> Option<usize> {
        let pos = self.adjacency[u].binary_search(&(v as u32)).ok()?;
        Some(self.offsets[u] + pos)
    }

    pub fn arc_count(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }
}

/// A cycle stored in canonical form: the lexicographically least of its
/// rotations and reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<u32>,
}

impl Cycle {
    /// Canonicalizes a vertex sequence; checks it is a cycle of `g`.
    pub fn new(g: &Graph, vertices: &[usize]) -> Result<Cycle, GraphError> {
        let k = vertices.len();
        let describe = || format!("{vertices:?}");
        if k < 3 {
            return Err(GraphError::NotACycle(describe()));
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.last().map_or(false, |&x| x >= g.vertex_count()) {
            return Err(GraphError::NotACycle(describe()));
        }
        if (0..k).any(|i| !g.has_edge(vertices[i], vertices[(i + 1) % k])) {
            return Err(GraphError::NotACycle(describe()));
        }
        Ok(Self::canonical(vertices))
    }

    /// Canonical form without adjacency checks; input must be distinct vertices.
    pub fn canonical(vertices: &[usize]) -> Cycle {
        let k = vertices.len();
        let (start, _) = vertices.iter().enumerate().min_by_key(|(_, &v)| v).expect("non-empty");
        let next = vertices[(start + 1) % k];
        let prev = vertices[(start + k - 1) % k];
        let seq: Vec<u32> = if next <= prev {
            (0..k).map(|i| vertices[(start + i) % k] as u32).collect()
        } else {
            (0..k).map(|i| vertices[(start + k - i) % k] as u32).collect()
        };
        Cycle { vertices: seq }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().map(|&v| v as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.vertices().collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs `(v_i, v_{i+1})`, cyclically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i] as usize, self.vertices[(i + 1) % k] as usize))
    }

    /// Image under a vertex permutation, re-canonicalized.
    pub fn image(&self, perm: &Permutation) -> Cycle {
        let mapped: Vec<usize> = self.vertices().map(|v| perm.apply(v)).collect();
        Self::canonical(&mapped)
    }
}

pub const GRAPH_HEADER: &str = "HATGRAPH v1";

/// HATGRAPH v1 text: header, `n m`, then sorted `u v` lines with `u < v`.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{GRAPH_HEADER}");
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_graph(text: &str) -> Result<Graph, GraphError> {
    let err = |line: usize, msg: &str| GraphError::Parse { line: line + 1, msg: msg.to_string() };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim_end() == GRAPH_HEADER => {}
        _ => return Err(err(0, "missing header")),
    }
    let (ln, l) = lines.next().ok_or_else(|| err(1, "missing size line"))?;
    let nums: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
    let (n, m) = match nums.as_deref() {
        Ok([n, m]) => (*n, *m),
        _ => return Err(err(ln, "expected `n m`")),
    };
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        let nums: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
        match nums.as_deref() {
            Ok([u, v]) => edges.push((*u, *v)),
            _ => return Err(err(ln, "expected `u v`")),
        }
    }
    if edges.len() != m {
        return Err(err(ln, &format!("declared {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges)
}

/// Undirected DOT, or a digraph when `arcs` (one per edge) is supplied.
pub fn write_dot(g: &Graph, arcs: Option<&[(usize, usize)]>) -> String {
    let mut out = String::new();
    match arcs {
        None => {
            out.push_str("graph G {\n");
            for v in 0..g.vertex_count() {
                let _ = writeln!(out, "  {v};");
            }
            for (u, v) in g.edges() {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
        Some(arcs) => {
            out.push_str("digraph G {\n");
            for v in 0..g.vertex_count() {
                let _ = writeln!(out, "  {v};");
            }
            let mut sorted = arcs.to_vec();
            sorted.sort_unstable();
            for (u, v) in sorted {
                let _ = writeln!(out, "  {u} -> {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn validation_errors_are_distinct() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::EndpointOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn pentagon_basics() {
        let g = pentagon();
        assert_eq!(g.degrees(), vec![2; 5]);
        assert!(g.is_connected());
        assert_eq!(g.girth(), Some(5));
        assert_eq!(g.cycles_of_length(5).unwrap().len(), 1);
        assert!(g.cycles_of_length(3).unwrap().is_empty());
    }

    #[test]
    fn disconnected_and_forest() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.girth(), Some(3));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
    }

    #[test]
    fn cycle_length_guard() {
        assert_eq!(pentagon().cycles_of_length(2), Err(GraphError::UnsupportedCycleLength(2)));
        assert_eq!(pentagon().cycles_of_length(9), Err(GraphError::UnsupportedCycleLength(9)));
    }

    #[test]
    fn canonical_cycle_form() {
        let g = pentagon();
        let c = Cycle::new(&g, &[3, 2, 1, 0, 4]).unwrap();
        assert_eq!(c.to_vec(), vec![0, 1, 2, 3, 4]);
        assert!(Cycle::new(&g, &[0, 2, 4, 1, 3]).is_err());
    }

    #[test]
    fn graph_file_round_trip() {
        let g = pentagon();
        let text = write_graph(&g);
        assert_eq!(text, "HATGRAPH v1\n5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
        assert_eq!(read_graph(&text).unwrap(), g);
        assert!(read_graph("HATGRAPH v1\n5 2\n0 1\n").is_err());
    }

    #[test]
    fn dot_output() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(write_dot(&g, None), "graph G {\n  0;\n  1;\n  2;\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n");
        let d = write_dot(&g, Some(&[(1, 0), (2, 1), (0, 2)]));
        assert!(d.starts_with("digraph G {") && d.contains("  1 -> 0;"));
    }
}
