//! Fixtures and brute-force oracles shared by the integration tests. The
//! oracles use nothing from the engine beyond adjacency queries.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use hat_core::families::{r12_special_package, rose_window, xo, RoseWindowParams, XoParams};
use hat_core::graphcore::Graph;
use hat_core::perm::{PermGroup, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("fixture is a simple graph")
}

pub fn cycle_graph(n: usize) -> Graph {
    graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    graph(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    graph(a + b, &edges)
}

pub fn circulant(n: usize, jumps: &[usize]) -> Graph {
    let mut set = BTreeSet::new();
    for i in 0..n {
        for &s in jumps {
            let j = (i + s) % n;
            if i != j {
                set.insert((i.min(j), i.max(j)));
            }
        }
    }
    graph(n, &set.into_iter().collect::<Vec<_>>())
}

pub fn petersen() -> Graph {
    let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    e.extend((0..5).map(|i| (i, i + 5)));
    e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    graph(10, &e)
}

pub fn hypercube(d: usize) -> Graph {
    let n = 1 << d;
    let edges: Vec<_> = (0..n).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b)))).filter(|(u, v)| u < v).collect();
    graph(n, &edges)
}

pub fn prism(n: usize) -> Graph {
    let mut e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    e.extend((0..n).map(|i| (n + i, n + (i + 1) % n)));
    e.extend((0..n).map(|i| (i, n + i)));
    graph(2 * n, &e)
}

/// Erdős–Rényi graph with a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let kept: Vec<_> = edges.into_iter().filter(|_| rng.gen_bool(p)).collect();
    graph(n, &kept)
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_images(images).expect("shuffle is a bijection")
}

/// Named graphs with at most 30 vertices.
pub fn small_fixtures() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("K4".into(), complete(4)),
        ("K5".into(), complete(5)),
        ("K6".into(), complete(6)),
        ("K3,3".into(), complete_bipartite(3, 3)),
        ("K4,4".into(), complete_bipartite(4, 4)),
        ("C7".into(), cycle_graph(7)),
        ("C12".into(), cycle_graph(12)),
        ("petersen".into(), petersen()),
        ("Q3".into(), hypercube(3)),
        ("Q4".into(), hypercube(4)),
        ("prism5".into(), prism(5)),
        ("prism9".into(), prism(9)),
        ("C13(1,5)".into(), circulant(13, &[1, 5])),
        ("C16(1,4)".into(), circulant(16, &[1, 4])),
        ("C30(1,7)".into(), circulant(30, &[1, 7])),
        ("C11(1,2,4)".into(), circulant(11, &[1, 2, 4])),
    ];
    out.push(("X_o(3,9;4)".into(), xo(XoParams::new(3, 9, 4).unwrap()).unwrap().graph));
    out.push(("X_o(3,7;2)".into(), xo(XoParams::new(3, 7, 2).unwrap()).unwrap().graph));
    out.push(("R_12(5,2)".into(), r12_special_package().graph.graph));
    for (n, a, r) in [(6, 1, 1), (8, 3, 3), (12, 5, 2), (10, 2, 3), (15, 4, 7)] {
        if let Ok(p) = RoseWindowParams::new(n, a, r) {
            if let Ok(l) = rose_window(p) {
                out.push((format!("R_{n}({a},{r})"), l.graph));
            }
        }
    }
    for (i, (n, p)) in [(8, 0.4), (12, 0.3), (16, 0.25), (20, 0.2), (25, 0.18), (30, 0.15)].into_iter().enumerate() {
        out.push((format!("gnp({n},{p})"), random_graph(n, p, 1000 + i as u64)));
    }
    out
}

/// Canonical rotation/reflection of a closed vertex sequence, as the least
/// of all `2k` readings.
pub fn cycle_key(vs: &[usize]) -> Vec<usize> {
    let k = vs.len();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..k {
        for dir in [1isize, -1] {
            let r: Vec<usize> = (0..k as isize).map(|i| vs[(s as isize + dir * i).rem_euclid(k as isize) as usize]).collect();
            if best.as_ref().map_or(true, |b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

/// All `k`-cycles by extending every simple path from every start vertex,
/// with duplicates removed afterwards.
pub fn naive_cycles(g: &Graph, k: usize) -> BTreeSet<Vec<usize>> {
    fn go(g: &Graph, k: usize, path: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() == k {
            if g.has_edge(last, path[0]) {
                out.insert(cycle_key(path));
            }
            return;
        }
        for w in 0..g.vertex_count() {
            if g.has_edge(last, w) && !path.contains(&w) {
                path.push(w);
                go(g, k, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for v in 0..g.vertex_count() {
        go(g, k, &mut vec![v], &mut out);
    }
    out
}

/// Every automorphism, by trying every bijection that respects adjacency to
/// the already-assigned vertices. Only for tiny graphs.
pub fn brute_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    fn go(g: &Graph, img: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let v = img.len();
        let n = g.vertex_count();
        if v == n {
            out.push(img.clone());
            return;
        }
        for w in 0..n {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(img[u], w)) {
                img.push(w);
                used[w] = true;
                go(g, img, used, out);
                used[w] = false;
                img.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut Vec::new(), &mut vec![false; g.vertex_count()], &mut out);
    out
}

/// Group closure by breadth-first multiplication; `None` once more than
/// `bound` elements have been seen.
pub fn closure(gens: &[Permutation], degree: usize, bound: usize) -> Option<HashSet<Vec<usize>>> {
    let id: Vec<usize> = (0..degree).collect();
    let gens: Vec<Vec<usize>> = gens.iter().map(|g| (0..degree).map(|i| g.apply(i)).collect()).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

/// Arc orbits of a group on a graph, by brute-force closure of the arc set.
pub fn brute_arc_orbits(g: &Graph, gens: &[Permutation]) -> Vec<BTreeSet<(usize, usize)>> {
    let mut remaining: BTreeSet<(usize, usize)> = g.arcs().into_iter().collect();
    let mut out = Vec::new();
    while let Some(&a) = remaining.iter().next() {
        let mut orbit = BTreeSet::from([a]);
        let mut queue = vec![a];
        while let Some((u, v)) = queue.pop() {
            for p in gens {
                let b = (p.apply(u), p.apply(v));
                if orbit.insert(b) {
                    queue.push(b);
                }
            }
        }
        remaining.retain(|x| !orbit.contains(x));
        out.push(orbit);
    }
    out
}

/// Half-arc-transitive instances of girth 5 from `X_o`, as
/// `(label, graph, generators)`.
pub fn xo_girth5_instances(ms: &[i64], r_max: i64) -> Vec<(String, Graph, Vec<Permutation>)> {
    let mut out = Vec::new();
    for &m in ms {
        for r in (3..=r_max).step_by(2) {
            for q in 2..r - 1 {
                let Ok(p) = XoParams::new(m, r, q) else { continue };
                let Ok(gens) = p.half_arc_group_generators() else { continue };
                let Ok(l) = xo(p) else { continue };
                if l.graph.girth() != Some(5) {
                    continue;
                }
                let grp = PermGroup::new(gens.clone()).unwrap();
                let orbits = brute_arc_orbits(&l.graph, &gens);
                let split = orbits.len() == 2 && orbits[0].iter().all(|&(u, v)| !orbits[0].contains(&(v, u)));
                if grp.is_transitive() && split {
                    out.push((format!("X_o({m},{r};{q})"), l.graph, gens));
                }
            }
        }
    }
    out
}
