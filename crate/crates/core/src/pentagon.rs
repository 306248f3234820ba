//! 5-cycles relative to an orientation: types, incidence counts, consistent
//! cycles with their shunts, and the R+ reachability relation.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::graphcore::{Cycle, Graph, GraphError};
use crate::hatcore::{HatError, Orientation};
use crate::perm::{PermError, PermGroup, Permutation, PointTupleConstraint};

/// Default bound on arc-stabilizer enumeration in [`consistent_cycles`].
pub const DEFAULT_MAX_GROUP_ENUM: u64 = 100_000;

#[derive(Debug, Error)]
pub enum PentagonError {
    #[error("graph has girth {0}, but 5-cycle analysis needs girth at least 5")]
    GirthTooSmall(usize),
    #[error("({0}, {1}) is not an edge")]
    NotAWalk(usize, usize),
    #[error("arc stabilizer of order {order} exceeds enumeration bound {bound}")]
    GroupTooLarge { order: u64, bound: u64 },
    #[error("R+ partition unstable below cap {0}")]
    Unstable(usize),
    #[error("orientation has no arcs")]
    EmptyOrientation,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Hat(#[from] HatError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveCycleRecord {
    pub cycle: Cycle,
    /// 2, 3, 4, or 5 (directed).
    pub kind: u8,
    /// The maximal directed subpath, in arc direction; empty for type 5.
    pub s_arc: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiveCycleIncidence {
    /// Indexed by edge id (see [`Graph::edges`]).
    pub per_edge: Vec<u32>,
    /// Directed 2-arcs `u -> v -> w`.
    pub per_two_arc: HashMap<(u32, u32, u32), u32>,
    /// Undirected 3-paths, stored with the smaller end first.
    pub per_three_path: HashMap<(u32, u32, u32, u32), u32>,
    /// Counts of types 2, 3, 4, 5 at indices 0..4.
    pub totals: [usize; 4],
}

impl FiveCycleIncidence {
    pub fn per_edge_range(&self) -> (u32, u32) {
        let min = self.per_edge.iter().copied().min().unwrap_or(0);
        let max = self.per_edge.iter().copied().max().unwrap_or(0);
        (min, max)
    }

    pub fn max_per_two_arc(&self) -> u32 {
        self.per_two_arc.values().copied().max().unwrap_or(0)
    }

    pub fn max_per_three_path(&self) -> u32 {
        self.per_three_path.values().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.totals.iter().sum()
    }

    pub fn count_of_type(&self, kind: u8) -> usize {
        self.totals[(kind - 2) as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveCycleAnalysis {
    pub records: Vec<FiveCycleRecord>,
    pub incidence: FiveCycleIncidence,
}

impl FiveCycleAnalysis {
    pub fn all_directed(&self) -> bool {
        self.records.iter().all(|r| r.kind == 5)
    }

    pub fn type_of(&self) -> HashMap<&Cycle, u8> {
        self.records.iter().map(|r| (&r.cycle, r.kind)).collect()
    }

    /// `true` iff every generator maps each 5-cycle to one of the same type.
    pub fn types_preserved_by(&self, group: &PermGroup) -> bool {
        let types = self.type_of();
        group.generators().iter().all(|s| {
            self.records.iter().all(|r| types.get(&r.cycle.image(s)) == Some(&r.kind))
        })
    }
}

/// Classifies a cycle by its longest run of consistently directed edges.
pub fn classify_cycle(o: &Orientation, cycle: &Cycle) -> (u8, Vec<usize>) {
    let v = cycle.to_vec();
    let k = v.len();
    let forward: Vec<bool> = (0..k).map(|i| o.contains(v[i], v[(i + 1) % k])).collect();
    if forward.iter().all(|&f| f == forward[0]) {
        return (k as u8, Vec::new());
    }
    // start at a direction change so runs do not wrap
    let start = (0..k).find(|&i| forward[i] != forward[(i + k - 1) % k]).expect("mixed directions");
    let (mut best_len, mut best_start) = (0, start);
    let mut i = 0;
    while i < k {
        let s = (start + i) % k;
        let mut len = 1;
        while i + len < k && forward[(start + i + len) % k] == forward[s] {
            len += 1;
        }
        if len > best_len {
            best_len = len;
            best_start = s;
        }
        i += len;
    }
    let path: Vec<usize> = (0..=best_len).map(|j| v[(best_start + j) % k]).collect();
    let path = if forward[best_start] { path } else { path.into_iter().rev().collect() };
    (best_len as u8, path)
}

pub fn classify_five_cycles(g: &Graph, o: &Orientation) -> Result<FiveCycleAnalysis, PentagonError> {
    if let Some(girth) = g.girth() {
        if girth < 5 {
            return Err(PentagonError::GirthTooSmall(girth));
        }
    }
    let idx = g.edge_index();
    let mut inc = FiveCycleIncidence { per_edge: vec![0; g.edge_count()], ..Default::default() };
    let mut records = Vec::new();
    for cycle in g.cycles_of_length(5)? {
        let (kind, s_arc) = classify_cycle(o, &cycle);
        let v = cycle.to_vec();
        for (a, b) in cycle.edges() {
            inc.per_edge[idx.get(a, b).expect("cycle edge")] += 1;
        }
        for i in 0..5 {
            let (a, b, c, d) = (v[i], v[(i + 1) % 5], v[(i + 2) % 5], v[(i + 3) % 5]);
            if o.contains(a, b) && o.contains(b, c) {
                *inc.per_two_arc.entry((a as u32, b as u32, c as u32)).or_default() += 1;
            }
            if o.contains(c, b) && o.contains(b, a) {
                *inc.per_two_arc.entry((c as u32, b as u32, a as u32)).or_default() += 1;
            }
            let key = if a < d { (a, b, c, d) } else { (d, c, b, a) };
            *inc.per_three_path.entry((key.0 as u32, key.1 as u32, key.2 as u32, key.3 as u32)).or_default() += 1;
        }
        inc.totals[(kind - 2) as usize] += 1;
        records.push(FiveCycleRecord { cycle, kind, s_arc });
    }
    Ok(FiveCycleAnalysis { records, incidence: inc })
}

pub fn assert_no_type2(records: &[FiveCycleRecord]) -> bool {
    records.iter().all(|r| r.kind != 2)
}

/// Size of the closed neighbourhood of a cycle's vertex set.
pub fn closed_neighbourhood_size(g: &Graph, cycle: &Cycle) -> usize {
    let mut set: HashSet<usize> = cycle.vertices().collect();
    for v in cycle.vertices() {
        set.extend(g.neighbors(v).iter().map(|&w| w as usize));
    }
    set.len()
}

/// Forward arcs minus backward arcs along a walk.
pub fn walk_weight(o: &Orientation, walk: &[usize]) -> Result<i64, PentagonError> {
    let mut w = 0;
    for pair in walk.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if o.contains(a, b) {
            w += 1;
        } else if o.contains(b, a) {
            w -= 1;
        } else {
            return Err(PentagonError::NotAWalk(a, b));
        }
    }
    Ok(w)
}

/// `true` iff `shunt` rotates the cycle by one step in either direction.
pub fn is_shunt(cycle: &Cycle, shunt: &Permutation) -> bool {
    let v = cycle.to_vec();
    let k = v.len();
    (0..k).all(|i| shunt.apply(v[i]) == v[(i + 1) % k]) || (0..k).all(|i| shunt.apply(v[(i + 1) % k]) == v[i])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistentCycleRecord {
    pub cycle: Cycle,
    pub shunt: Permutation,
    pub orbit_id: usize,
}

#[derive(Debug, Clone)]
pub struct ConsistentCycles {
    /// One record per distinct consistent cycle through the base arc.
    pub records: Vec<ConsistentCycleRecord>,
    /// Cycle length of each orbit, in orbit-id order.
    pub orbit_lengths: Vec<usize>,
    /// Number of cycles in each orbit.
    pub orbit_sizes: Vec<usize>,
    members: HashSet<Cycle>,
}

impl ConsistentCycles {
    pub fn orbit_count(&self) -> usize {
        self.orbit_lengths.len()
    }

    pub fn contains(&self, cycle: &Cycle) -> bool {
        self.members.contains(cycle)
    }

    /// Sorted multiset of orbit lengths.
    pub fn lengths(&self) -> Vec<usize> {
        let mut l = self.orbit_lengths.clone();
        l.sort_unstable();
        l
    }
}

fn cycle_orbit(group: &PermGroup, start: &Cycle) -> HashSet<Cycle> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(c) = queue.pop_front() {
        for s in group.generators() {
            let d = c.image(s);
            if seen.insert(d.clone()) {
                queue.push_back(d);
            }
        }
    }
    seen
}

/// Consistent cycles through the least arc `(u, v)` of the orientation, found as
/// vertex trajectories of elements mapping `(u, v)` to `(v, w)`, grouped into
/// G-orbits.
pub fn consistent_cycles(
    group: &PermGroup,
    o: &Orientation,
    max_group_enum: u64,
) -> Result<ConsistentCycles, PentagonError> {
    let (u, v) = o.arcs().next().ok_or(PentagonError::EmptyOrientation)?;
    let stab = group.pointwise_stabilizer(&[u, v])?;
    let order = stab.order_u64();
    if order > max_group_enum {
        return Err(PentagonError::GroupTooLarge { order, bound: max_group_enum });
    }
    let stab_elems = stab.enumerate_elements(max_group_enum)?;

    let mut records: Vec<ConsistentCycleRecord> = Vec::new();
    let mut orbit_of: HashMap<Cycle, usize> = HashMap::new();
    let mut orbit_lengths = Vec::new();
    let mut orbit_sizes = Vec::new();
    for &w in o.out_neighbors(v) {
        let c = PointTupleConstraint::new(vec![u, v], vec![v, w as usize])?;
        let Some(g0) = group.find_element(&c)? else { continue };
        for k in &stab_elems {
            let h = k.then(&g0);
            let mut traj = vec![u];
            let mut x = h.apply(u);
            while x != u {
                traj.push(x);
                x = h.apply(x);
            }
            let cycle = Cycle::canonical(&traj);
            if records.iter().any(|r| r.cycle == cycle) {
                continue;
            }
            let orbit_id = match orbit_of.get(&cycle) {
                Some(&id) => id,
                None => {
                    let id = orbit_lengths.len();
                    let orbit = cycle_orbit(group, &cycle);
                    orbit_lengths.push(cycle.len());
                    orbit_sizes.push(orbit.len());
                    orbit_of.extend(orbit.into_iter().map(|c| (c, id)));
                    id
                }
            };
            records.push(ConsistentCycleRecord { cycle, shunt: h, orbit_id });
        }
    }
    let members = orbit_of.into_keys().collect();
    Ok(ConsistentCycles { records, orbit_lengths, orbit_sizes, members })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityReport {
    /// Classes of R+, each sorted, ordered by least vertex.
    pub classes: Vec<Vec<usize>>,
    pub alter_perimeter: usize,
    pub alter_complete: bool,
    pub stabilization_depth: usize,
}

/// Class label per vertex for the relation "joined by a weight-0 walk whose
/// prefix weights stay within `[0, cap]`".
fn capped_partition(o: &Orientation, cap: usize) -> Vec<usize> {
    let n = o.vertex_count();
    let width = cap + 1;
    let mut label = vec![usize::MAX; n];
    let mut seen = vec![false; n * width];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        for &i in &touched {
            seen[i] = false;
        }
        touched.clear();
        seen[s * width] = true;
        touched.push(s * width);
        queue.push_back((s, 0usize));
        while let Some((x, wt)) = queue.pop_front() {
            if wt == 0 {
                label[x] = s;
            }
            let forward = o.out_neighbors(x).iter().filter(|_| wt < cap).map(|&y| (y as usize, wt + 1));
            let backward = o.in_neighbors(x).iter().filter(|_| wt > 0).map(|&y| (y as usize, wt.wrapping_sub(1)));
            for (y, nw) in forward.chain(backward) {
                let i = y * width + nw;
                if !seen[i] {
                    seen[i] = true;
                    touched.push(i);
                    queue.push_back((y, nw));
                }
            }
        }
    }
    label
}

pub fn reachability(o: &Orientation) -> Result<ReachabilityReport, PentagonError> {
    let n = o.vertex_count();
    let hard_cap = (2 * n).max(2);
    let mut prev = capped_partition(o, 1);
    let mut k = 1;
    loop {
        if k + 1 > hard_cap {
            return Err(PentagonError::Unstable(hard_cap));
        }
        let next = capped_partition(o, k + 1);
        if next == prev {
            break;
        }
        prev = next;
        k += 1;
    }
    let mut by_label: HashMap<usize, Vec<usize>> = HashMap::new();
    for (v, &l) in prev.iter().enumerate() {
        by_label.entry(l).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = by_label.into_values().collect();
    classes.sort();
    let alter_perimeter = classes.len();
    Ok(ReachabilityReport { classes, alter_perimeter, alter_complete: alter_perimeter == 1, stabilization_depth: k })
}

impl ReachabilityReport {
    /// `true` iff every generator maps each class onto a class.
    pub fn classes_are_blocks(&self, group: &PermGroup) -> bool {
        let mut class_of = vec![0; group.degree()];
        for (i, c) in self.classes.iter().enumerate() {
            for &v in c {
                class_of[v] = i;
            }
        }
        group.generators().iter().all(|s| {
            self.classes.iter().all(|c| {
                let target = class_of[s.apply(c[0])];
                c.iter().all(|&v| class_of[s.apply(v)] == target)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{xo, XoParams};
    use crate::hatcore::induced_orientation;

    fn directed_cycle(n: usize) -> (Graph, Orientation) {
        let arcs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_edges(n, &arcs).unwrap();
        let o = Orientation::from_arcs(&g, &arcs, arcs[0]).unwrap();
        (g, o)
    }

    #[test]
    fn classify_runs() {
        let (_, o) = directed_cycle(5);
        let c = Cycle::canonical(&[0, 1, 2, 3, 4]);
        assert_eq!(classify_cycle(&o, &c).0, 5);

        // 0->1->2->3->4, 0->4: a 4-arc
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let o = Orientation::from_arcs(&g, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], (0, 1)).unwrap();
        assert_eq!(classify_cycle(&o, &c), (4, vec![0, 1, 2, 3, 4]));

        // 0->1->2->3 and 0->4->3
        let o = Orientation::from_arcs(&g, &[(0, 1), (1, 2), (2, 3), (4, 3), (0, 4)], (0, 1)).unwrap();
        assert_eq!(classify_cycle(&o, &c), (3, vec![0, 1, 2, 3]));

        // runs of lengths 2, 1, 1, 1
        let o = Orientation::from_arcs(&g, &[(0, 1), (1, 2), (3, 2), (3, 4), (0, 4)], (0, 1)).unwrap();
        assert_eq!(classify_cycle(&o, &c), (2, vec![0, 1, 2]));
        assert!(!assert_no_type2(&classify_five_cycles(&g, &o).unwrap().records));
        assert!(assert_no_type2(&[]));
    }

    #[test]
    fn weights() {
        let (_, o) = directed_cycle(5);
        assert_eq!(walk_weight(&o, &[0, 1, 2, 3]).unwrap(), 3);
        assert_eq!(walk_weight(&o, &[0, 1, 0, 1, 0]).unwrap(), 0);
        assert_eq!(walk_weight(&o, &[0, 1, 2, 3, 4, 0]).unwrap(), 5);
        assert_eq!(walk_weight(&o, &[0, 4, 3, 2, 1, 0]).unwrap(), -5);
        assert!(walk_weight(&o, &[0, 2]).is_err());
    }

    #[test]
    fn directed_four_cycle_perimeter() {
        let (_, o) = directed_cycle(4);
        let r = reachability(&o).unwrap();
        assert_eq!(r.alter_perimeter, 4);
        assert!(!r.alter_complete);
    }

    #[test]
    fn xo_five_eleven() {
        let p = XoParams::new(5, 11, 3).unwrap();
        let lab = xo(p).unwrap();
        let grp = PermGroup::new(p.half_arc_group_generators().unwrap()).unwrap();
        let o = induced_orientation(&grp, &lab.graph, None).unwrap();
        let a = classify_five_cycles(&lab.graph, &o).unwrap();
        assert!(a.all_directed());
        assert_eq!(a.incidence.per_edge_range(), (1, 1));
        assert!(a.types_preserved_by(&grp));
        let cc = consistent_cycles(&grp, &o, DEFAULT_MAX_GROUP_ENUM).unwrap();
        assert_eq!(cc.lengths(), vec![5, 10]);
        assert!(a.records.iter().all(|r| cc.contains(&r.cycle)));
        assert!(cc.records.iter().all(|r| is_shunt(&r.cycle, &r.shunt)));
        let r = reachability(&o).unwrap();
        assert!(!r.alter_complete);
        assert!(r.classes_are_blocks(&grp));
    }
}
