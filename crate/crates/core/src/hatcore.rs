//! Transitivity of a group action on a graph, the orientation induced by a
//! half-arc-transitive action, and its alternating cycles.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graphcore::{Cycle, EdgeIndex, Graph};
use crate::perm::{PermError, PermGroup, PointTupleConstraint};

#[derive(Debug, Error)]
pub enum HatError {
    #[error("group has degree {group} but the graph has {vertices} vertices")]
    DegreeMismatch { group: usize, vertices: usize },
    #[error("generator {0} is not an automorphism of the graph")]
    NotAnAutomorphism(usize),
    #[error("({0}, {1}) is not an arc of the graph")]
    NotAnArc(usize, usize),
    #[error("the action is arc-transitive: the orbit of ({0}, {1}) contains both arcs of an edge")]
    ArcTransitive(usize, usize),
    #[error("the action is not edge-transitive")]
    NotEdgeTransitive,
    #[error("orientation is not 2-in/2-out at vertex {0}")]
    Unbalanced(usize),
    #[error("alternating cycle invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// `true` iff every generator maps edges to edges.
pub fn check_action(group: &PermGroup, g: &Graph) -> Result<bool, HatError> {
    ensure_degree(group, g)?;
    Ok(group.generators().iter().all(|s| g.is_automorphism(s)))
}

fn ensure_degree(group: &PermGroup, g: &Graph) -> Result<(), HatError> {
    if group.degree() != g.vertex_count() {
        return Err(HatError::DegreeMismatch { group: group.degree(), vertices: g.vertex_count() });
    }
    Ok(())
}

fn ensure_action(group: &PermGroup, g: &Graph) -> Result<(), HatError> {
    ensure_degree(group, g)?;
    match group.generators().iter().position(|s| !g.is_automorphism(s)) {
        Some(i) => Err(HatError::NotAnAutomorphism(i)),
        None => Ok(()),
    }
}

/// Orbit of an arc under the group, as sorted arc indices (see [`Graph::arcs`]).
pub fn arc_orbit(group: &PermGroup, g: &Graph, idx: &EdgeIndex, arc: (usize, usize)) -> Result<Vec<usize>, HatError> {
    let start = idx.arc(arc.0, arc.1).ok_or(HatError::NotAnArc(arc.0, arc.1))?;
    let arcs = g.arcs();
    let mut seen = vec![false; arcs.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut orbit = vec![start];
    while let Some(a) = queue.pop_front() {
        let (u, v) = arcs[a];
        for s in group.generators() {
            let b = idx.arc(s.apply(u), s.apply(v)).expect("generators are automorphisms");
            if !seen[b] {
                seen[b] = true;
                orbit.push(b);
                queue.push_back(b);
            }
        }
    }
    orbit.sort_unstable();
    Ok(orbit)
}

/// Partition of the arc set into orbits, each sorted, ordered by least arc.
pub fn arc_orbits(group: &PermGroup, g: &Graph) -> Result<Vec<Vec<usize>>, HatError> {
    ensure_action(group, g)?;
    let idx = g.edge_index();
    let arcs = g.arcs();
    let mut assigned = vec![false; arcs.len()];
    let mut out = Vec::new();
    for a in 0..arcs.len() {
        if assigned[a] {
            continue;
        }
        let orbit = arc_orbit(group, g, &idx, arcs[a])?;
        for &b in &orbit {
            assigned[b] = true;
        }
        out.push(orbit);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    pub half_arc_transitive: bool,
    pub vertex_stabilizer_order: u64,
}

pub fn transitivity(group: &PermGroup, g: &Graph) -> Result<TransitivityReport, HatError> {
    ensure_action(group, g)?;
    let n = g.vertex_count();
    let orbit0 = if n == 0 { 0 } else { group.orbit(0)?.len() };
    let vertex_transitive = n > 0 && orbit0 == n;
    let vertex_stabilizer_order = if n == 0 {
        0
    } else {
        let order = group.order();
        let q = &order / orbit0;
        u64::try_from(&q).unwrap_or(u64::MAX)
    };

    let (edge_transitive, arc_transitive) = if g.edge_count() == 0 {
        (false, false)
    } else {
        let idx = g.edge_index();
        let arcs = g.arcs();
        let orbit = arc_orbit(group, g, &idx, arcs[0])?;
        let mut covered = vec![false; g.edge_count()];
        for &a in &orbit {
            let (u, v) = arcs[a];
            covered[idx.get(u, v).expect("arc of the graph")] = true;
        }
        (covered.iter().all(|&c| c), orbit.len() == arcs.len())
    };

    Ok(TransitivityReport {
        vertex_transitive,
        edge_transitive,
        arc_transitive,
        half_arc_transitive: vertex_transitive && edge_transitive && !arc_transitive,
        vertex_stabilizer_order,
    })
}

/// One arc per edge, with per-vertex in/out adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<(u32, u32)>,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    seed: (usize, usize),
}

impl Orientation {
    /// Builds an orientation from a list of arcs covering every edge exactly once.
    pub fn from_arcs(g: &Graph, arcs: &[(usize, usize)], seed: (usize, usize)) -> Result<Orientation, HatError> {
        let idx = g.edge_index();
        let mut covered = vec![false; g.edge_count()];
        let mut out = vec![Vec::new(); g.vertex_count()];
        let mut inn = vec![Vec::new(); g.vertex_count()];
        let mut list = Vec::with_capacity(arcs.len());
        for &(u, v) in arcs {
            let e = idx.get(u, v).ok_or(HatError::NotAnArc(u, v))?;
            if covered[e] {
                return Err(HatError::ArcTransitive(seed.0, seed.1));
            }
            covered[e] = true;
            out[u].push(v as u32);
            inn[v].push(u as u32);
            list.push((u as u32, v as u32));
        }
        if !covered.iter().all(|&c| c) {
            return Err(HatError::NotEdgeTransitive);
        }
        for l in out.iter_mut().chain(inn.iter_mut()) {
            l.sort_unstable();
        }
        list.sort_unstable();
        Ok(Orientation { arcs: list, out, inn, seed })
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    pub fn arc_list(&self) -> Vec<(usize, usize)> {
        self.arcs().collect()
    }

    pub fn seed(&self) -> (usize, usize) {
        self.seed
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.out.get(u).is_some_and(|o| o.binary_search(&(v as u32)).is_ok())
    }

    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        &self.inn[v]
    }

    /// The paired orientation.
    pub fn reversed(&self) -> Orientation {
        let mut arcs: Vec<(u32, u32)> = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        arcs.sort_unstable();
        Orientation { arcs, out: self.inn.clone(), inn: self.out.clone(), seed: (self.seed.1, self.seed.0) }
    }

    pub fn is_balanced(&self) -> bool {
        self.out.iter().zip(&self.inn).all(|(o, i)| o.len() == 2 && i.len() == 2)
    }

    /// `true` iff every generator maps the orientation onto itself.
    pub fn is_invariant_under(&self, group: &PermGroup) -> bool {
        group
            .generators()
            .iter()
            .all(|s| self.arcs().all(|(u, v)| self.contains(s.apply(u), s.apply(v))))
    }
}

/// The orientation given by the orbit of `seed` (default: the least arc).
pub fn induced_orientation(group: &PermGroup, g: &Graph, seed: Option<(usize, usize)>) -> Result<Orientation, HatError> {
    ensure_action(group, g)?;
    let arcs = g.arcs();
    let seed = match seed {
        Some(s) => s,
        None => *arcs.first().ok_or(HatError::NotEdgeTransitive)?,
    };
    let idx = g.edge_index();
    let orbit = arc_orbit(group, g, &idx, seed)?;
    let list: Vec<(usize, usize)> = orbit.iter().map(|&a| arcs[a]).collect();
    Orientation::from_arcs(g, &list, seed)
}

/// `true` iff no group element swaps the ends of an edge.
pub fn no_adjacent_swap(group: &PermGroup, g: &Graph) -> Result<bool, HatError> {
    let arcs = g.arcs();
    for orbit in arc_orbits(group, g)? {
        let (u, v) = arcs[orbit[0]];
        let c = PointTupleConstraint::new(vec![u, v], vec![v, u])?;
        if group.find_element(&c)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltCycleReport {
    pub cycles: Vec<Cycle>,
    pub radius: usize,
    pub attachment: usize,
    pub tightly_attached: bool,
    /// Sizes of all nonempty pairwise intersections, sorted.
    pub pairwise_intersection_sizes: Vec<usize>,
}

/// Walks the alternating cycle containing the arc `(u, v)`: after a forward
/// step the next edge is the other in-arc of the head, traversed backwards;
/// after a backward step it is the other out-arc of the tail.
fn alternating_walk(o: &Orientation, u: usize, v: usize) -> Vec<usize> {
    let other = |pair: &[u32], x: usize| -> usize {
        if pair[0] as usize == x {
            pair[1] as usize
        } else {
            pair[0] as usize
        }
    };
    let mut walk = vec![u];
    let (mut prev, mut cur, mut forward) = (u, v, true);
    loop {
        walk.push(cur);
        let next = if forward { other(o.in_neighbors(cur), prev) } else { other(o.out_neighbors(cur), prev) };
        forward = !forward;
        prev = cur;
        cur = next;
        if forward && prev == u && cur == v {
            walk.pop();
            return walk;
        }
    }
}

pub fn alternating_cycles(o: &Orientation) -> Result<AltCycleReport, HatError> {
    if let Some(v) = (0..o.vertex_count()).find(|&v| o.out[v].len() != 2 || o.inn[v].len() != 2) {
        return Err(HatError::Unbalanced(v));
    }
    let n = o.vertex_count();
    let mut used = std::collections::HashSet::new();
    let mut cycles = Vec::new();
    for (u, v) in o.arcs() {
        if used.contains(&(u, v)) {
            continue;
        }
        let walk = alternating_walk(o, u, v);
        for i in 0..walk.len() {
            let (a, b) = (walk[i], walk[(i + 1) % walk.len()]);
            if i % 2 == 0 {
                used.insert((a, b));
            } else {
                used.insert((b, a));
            }
        }
        let mut sorted = walk.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != walk.len() {
            return Err(HatError::InvariantViolation(format!(
                "alternating walk from ({u}, {v}) of length {} revisits a vertex",
                walk.len()
            )));
        }
        cycles.push(Cycle::canonical(&walk));
    }
    cycles.sort();

    let len = cycles[0].len();
    if let Some(c) = cycles.iter().find(|c| c.len() != len) {
        return Err(HatError::InvariantViolation(format!("alternating cycles of lengths {len} and {}", c.len())));
    }

    let mut on = vec![Vec::with_capacity(2); n];
    for (id, c) in cycles.iter().enumerate() {
        for v in c.vertices() {
            on[v].push(id);
        }
    }
    let mut meet: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (v, ids) in on.iter().enumerate() {
        if ids.len() != 2 {
            return Err(HatError::InvariantViolation(format!("vertex {v} lies on {} alternating cycles", ids.len())));
        }
        *meet.entry((ids[0].min(ids[1]), ids[0].max(ids[1]))).or_default() += 1;
    }
    let mut sizes: Vec<usize> = meet.values().copied().collect();
    sizes.sort_unstable();
    let attachment = sizes[0];
    if sizes.iter().any(|&s| s != attachment) {
        return Err(HatError::InvariantViolation(format!(
            "intersection sizes {} and {} differ",
            attachment,
            sizes[sizes.len() - 1]
        )));
    }
    let radius = len / 2;
    Ok(AltCycleReport { cycles, radius, attachment, tightly_attached: attachment == radius, pairwise_intersection_sizes: sizes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{r12_special_package, xo, XoParams};

    #[test]
    fn trivial_group_is_an_action() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(check_action(&PermGroup::trivial(3), &g).unwrap());
        assert!(check_action(&PermGroup::trivial(4), &g).is_err());
    }

    #[test]
    fn r12_groups() {
        let pkg = r12_special_package();
        let g = &pkg.graph.graph;
        let aut = PermGroup::new(pkg.aut_generators()).unwrap();
        let t = transitivity(&aut, g).unwrap();
        assert!(t.arc_transitive && !t.half_arc_transitive);
        assert!(!no_adjacent_swap(&aut, g).unwrap());
        assert!(matches!(induced_orientation(&aut, g, None), Err(HatError::ArcTransitive(..))));

        let g1 = PermGroup::new(pkg.g1_generators()).unwrap();
        let t1 = transitivity(&g1, g).unwrap();
        assert!(t1.half_arc_transitive);
        assert_eq!(t1.vertex_stabilizer_order, 2);
        assert!(no_adjacent_swap(&g1, g).unwrap());
        let o = induced_orientation(&g1, g, None).unwrap();
        assert!(o.is_balanced());
        assert!(o.is_invariant_under(&g1));
    }

    #[test]
    fn xo_orientation_and_cycles() {
        let p = XoParams::new(5, 11, 3).unwrap();
        let lab = xo(p).unwrap();
        let grp = PermGroup::new(p.half_arc_group_generators().unwrap()).unwrap();
        let seed = (p.vertex(0, 0), p.vertex(1, 1));
        let o = induced_orientation(&grp, &lab.graph, Some(seed)).unwrap();
        let mut standard = p.standard_arcs();
        standard.sort_unstable();
        assert_eq!(o.arc_list(), standard);
        let rev = induced_orientation(&grp, &lab.graph, Some((seed.1, seed.0))).unwrap();
        assert_eq!(rev.arc_list(), o.reversed().arc_list());

        let r = alternating_cycles(&o).unwrap();
        assert_eq!((r.radius, r.attachment, r.tightly_attached), (11, 11, true));
        let total: usize = r.cycles.iter().map(Cycle::len).sum();
        assert_eq!(total, lab.graph.edge_count());
    }
}
