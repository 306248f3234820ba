//! Constructors for the tetravalent graph families used throughout the crate.
//!
//! Vertex numbering is part of the public contract:
//! * `X_o(m, r; q)` and `X_IV(m, n; ...)`: `u_i^j` is vertex `i * r + j` (resp. `i * n + j`);
//! * `R_n(a, r)`: `x_i` is vertex `i`, `y_i` is vertex `n + i`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graphcore::{Graph, GraphError};
use crate::perm::{PermError, PermGroup, Permutation, DEFAULT_ENUMERATION_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate Rose window parameters: {0}")]
    Degenerate(String),
    #[error("connection set is not closed under inversion")]
    NotInverseClosed,
    #[error("connection set contains the identity")]
    IdentityInConnectionSet,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn pow_mod(base: i64, mut exp: u64, modulus: i64) -> i64 {
    let m = modulus as i128;
    let mut b = (base as i128).rem_euclid(m);
    let mut acc: i128 = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as i64
}

/// A constructed graph together with its vertex names.
#[derive(Debug, Clone, Serialize)]
pub struct Labeled {
    #[serde(skip)]
    pub graph: Graph,
    pub family: String,
    pub params: serde_json::Value,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct XoParams {
    pub m: i64,
    pub r: i64,
    pub q: i64,
}

impl XoParams {
    pub fn new(m: i64, r: i64, q: i64) -> Result<Self, FamilyError> {
        if m < 3 {
            return Err(FamilyError::InvalidParams(format!("m = {m} must be at least 3")));
        }
        if r < 3 || r % 2 == 0 {
            return Err(FamilyError::InvalidParams(format!("r = {r} must be odd and at least 3")));
        }
        let q = q.rem_euclid(r);
        let qm = pow_mod(q, m as u64, r);
        if qm != 1 && qm != r - 1 {
            return Err(FamilyError::InvalidParams(format!("q^m = {qm} is not +-1 in Z_{r}")));
        }
        Ok(XoParams { m, r, q })
    }

    pub fn vertex(&self, i: i64, j: i64) -> usize {
        (i.rem_euclid(self.m) * self.r + j.rem_euclid(self.r)) as usize
    }

    fn step(&self, i: i64) -> i64 {
        pow_mod(self.q, i as u64, self.r)
    }

    /// The arcs `u_i^j -> u_{i+1}^{j +- q^i}`.
    pub fn standard_arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::with_capacity((2 * self.m * self.r) as usize);
        for i in 0..self.m {
            let s = self.step(i);
            for j in 0..self.r {
                arcs.push((self.vertex(i, j), self.vertex(i + 1, j + s)));
                arcs.push((self.vertex(i, j), self.vertex(i + 1, j - s)));
            }
        }
        arcs
    }

    /// Generators `rho: u_i^j -> u_i^{j+1}` and `sigma: u_i^j -> u_{i+1}^{qj}` of a
    /// regular subgroup; requires `q^m = 1`.
    pub fn regular_subgroup_generators(&self) -> Result<Vec<Permutation>, FamilyError> {
        if pow_mod(self.q, self.m as u64, self.r) != 1 {
            return Err(FamilyError::InvalidParams("regular subgroup needs q^m = 1".into()));
        }
        let n = (self.m * self.r) as usize;
        let mut rho = vec![0usize; n];
        let mut sigma = vec![0usize; n];
        for i in 0..self.m {
            for j in 0..self.r {
                rho[self.vertex(i, j)] = self.vertex(i, j + 1);
                sigma[self.vertex(i, j)] = self.vertex(i + 1, self.q * j);
            }
        }
        Ok(vec![Permutation::from_images(rho)?, Permutation::from_images(sigma)?])
    }

    /// `rho`, `sigma` and `tau: u_i^j -> u_i^{-j}`; they preserve the standard
    /// orientation and act transitively on its arcs.
    pub fn half_arc_group_generators(&self) -> Result<Vec<Permutation>, FamilyError> {
        let n = (self.m * self.r) as usize;
        let mut rho = vec![0usize; n];
        let mut sigma = vec![0usize; n];
        let mut tau = vec![0usize; n];
        for i in 0..self.m {
            for j in 0..self.r {
                rho[self.vertex(i, j)] = self.vertex(i, j + 1);
                sigma[self.vertex(i, j)] = self.vertex(i + 1, self.q * j);
                tau[self.vertex(i, j)] = self.vertex(i, -j);
            }
        }
        Ok(vec![
            Permutation::from_images(rho)?,
            Permutation::from_images(sigma)?,
            Permutation::from_images(tau)?,
        ])
    }
}

/// `X_o(m, r; q)`: `u_i^j ~ u_{i+1}^{j +- q^i}`.
pub fn xo(p: XoParams) -> Result<Labeled, FamilyError> {
    let edges = p.standard_arcs();
    let graph = Graph::from_edges((p.m * p.r) as usize, &edges)?;
    let labels = (0..p.m).flat_map(|i| (0..p.r).map(move |j| format!("u_{i}^{j}"))).collect();
    Ok(Labeled {
        graph,
        family: "xo".into(),
        params: serde_json::json!({"m": p.m, "r": p.r, "q": p.q}),
        labels,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RoseWindowParams {
    pub n: i64,
    pub a: i64,
    pub r: i64,
}

impl RoseWindowParams {
    pub fn new(n: i64, a: i64, r: i64) -> Result<Self, FamilyError> {
        if n < 3 {
            return Err(FamilyError::InvalidParams(format!("n = {n} must be at least 3")));
        }
        if !(1..n).contains(&a) {
            return Err(FamilyError::InvalidParams(format!("a = {a} must lie in 1..={}", n - 1)));
        }
        if r < 1 || 2 * r >= n {
            return Err(FamilyError::InvalidParams(format!("r = {r} must satisfy 1 <= r < n/2")));
        }
        if (2 * r) % n == 0 {
            return Err(FamilyError::Degenerate(format!("2r = {} vanishes mod {n}", 2 * r)));
        }
        if a % n == 0 {
            return Err(FamilyError::Degenerate("a vanishes mod n".into()));
        }
        Ok(RoseWindowParams { n, a, r })
    }

    pub fn x(&self, i: i64) -> usize {
        i.rem_euclid(self.n) as usize
    }

    pub fn y(&self, i: i64) -> usize {
        (self.n + i.rem_euclid(self.n)) as usize
    }
}

/// Edge families of a Rose window graph, in the order rim, hub, spoke, spoke.
pub fn rose_window_edge_classes(p: RoseWindowParams) -> [Vec<(usize, usize)>; 4] {
    let mut rim = Vec::new();
    let mut hub = Vec::new();
    let mut spoke = Vec::new();
    let mut twisted = Vec::new();
    for i in 0..p.n {
        rim.push((p.x(i), p.x(i + 1)));
        hub.push((p.y(i), p.y(i + p.r)));
        spoke.push((p.x(i), p.y(i)));
        twisted.push((p.x(i), p.y(i - p.a)));
    }
    [rim, hub, spoke, twisted]
}

/// `R_n(a, r)`.
pub fn rose_window(p: RoseWindowParams) -> Result<Labeled, FamilyError> {
    let edges: Vec<(usize, usize)> = rose_window_edge_classes(p).concat();
    let graph = Graph::from_edges((2 * p.n) as usize, &edges).map_err(|e| match e {
        GraphError::DuplicateEdge(u, v) => FamilyError::Degenerate(format!("edge {{{u}, {v}}} repeats")),
        other => FamilyError::Graph(other),
    })?;
    let labels = (0..p.n).map(|i| format!("x_{i}")).chain((0..p.n).map(|i| format!("y_{i}"))).collect();
    Ok(Labeled {
        graph,
        family: "rw".into(),
        params: serde_json::json!({"n": p.n, "a": p.a, "r": p.r}),
        labels,
    })
}

/// `R_12(5, 2)` with the automorphisms `rho`, `mu`, `sigma` and the two
/// half-arc-transitive generating sets.
#[derive(Debug, Clone)]
pub struct R12Package {
    pub graph: Labeled,
    pub rho: Permutation,
    pub mu: Permutation,
    pub sigma: Permutation,
}

impl R12Package {
    pub fn aut_generators(&self) -> Vec<Permutation> {
        vec![self.rho.clone(), self.mu.clone(), self.sigma.clone()]
    }

    /// `G_1 = <rho, sigma>`.
    pub fn g1_generators(&self) -> Vec<Permutation> {
        vec![self.rho.clone(), self.sigma.clone()]
    }

    /// `G_2 = <rho^2, sigma rho, mu>`; `sigma rho` applies `sigma` first.
    pub fn g2_generators(&self) -> Vec<Permutation> {
        vec![self.rho.pow(2), self.sigma.then(&self.rho), self.mu.clone()]
    }
}

pub fn r12_special_package() -> R12Package {
    let p = RoseWindowParams::new(12, 5, 2).expect("valid parameters");
    let graph = rose_window(p).expect("R_12(5,2) is simple");
    let n = 24;
    let x = |i: i64| p.x(i);
    let y = |i: i64| p.y(i);

    let rho = Permutation::from_cycles(n, &[(0..12).map(x).collect(), (0..12).map(y).collect()])
        .expect("rho");

    let mut mu = vec![0usize; n];
    for i in 0..12 {
        mu[x(i)] = x(-i);
        mu[y(i)] = y(-i - 5);
    }
    let mu = Permutation::from_images(mu).expect("mu");

    let pairs = [
        (x(1), y(0)),
        (x(2), y(10)),
        (x(4), y(3)),
        (x(5), y(1)),
        (x(7), y(6)),
        (x(8), y(4)),
        (x(10), y(9)),
        (x(11), y(7)),
        (y(2), y(8)),
        (y(5), y(11)),
    ];
    let sigma = Permutation::from_cycles(n, &pairs.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>())
        .expect("sigma");

    for g in [&rho, &mu, &sigma] {
        assert!(graph.graph.is_automorphism(g), "R_12(5,2) generator is not an automorphism");
    }
    R12Package { graph, rho, mu, sigma }
}

/// A group with an enumerable element list and a connection set given as
/// indices into [`PermGroup::enumerate_elements`] order.
#[derive(Debug, Clone)]
pub struct CayleyParams {
    pub group: PermGroup,
    pub connection: Vec<usize>,
}

/// `Cay(H, S)`: vertices are the elements of `H` in enumeration order, and `h ~ s h`
/// (`s` applied first).
pub fn cayley(p: &CayleyParams) -> Result<Graph, FamilyError> {
    let elements = p.group.enumerate_elements(DEFAULT_ENUMERATION_BOUND)?;
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut conn = p.connection.clone();
    conn.sort_unstable();
    if conn.windows(2).any(|w| w[0] == w[1]) {
        return Err(FamilyError::InvalidParams("repeated element in connection set".into()));
    }
    let mut s = Vec::with_capacity(conn.len());
    for &c in &conn {
        let e = elements
            .get(c)
            .ok_or_else(|| FamilyError::InvalidParams(format!("element index {c} out of range")))?;
        if e.is_identity() {
            return Err(FamilyError::IdentityInConnectionSet);
        }
        if conn.binary_search(&index[&e.inverse()]).is_err() {
            return Err(FamilyError::NotInverseClosed);
        }
        s.push(e);
    }
    let mut edges = Vec::new();
    for (hi, h) in elements.iter().enumerate() {
        for sv in &s {
            let nb = index[&sv.then(h)];
            if hi < nb {
                edges.push((hi, nb));
            }
        }
    }
    Ok(Graph::from_edges(elements.len(), &edges)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct XivParams {
    pub m: i64,
    pub n: i64,
    pub r: i64,
    pub t: i64,
    pub p: i64,
    pub a: i64,
    pub q: i64,
    pub b: i64,
}

impl XivParams {
    /// Argument order follows the family name `X_IV(m, n; r, t; p, a; q, b)`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(m: i64, n: i64, r: i64, t: i64, p: i64, a: i64, q: i64, b: i64) -> Result<Self, FamilyError> {
        let bad = |s: String| Err(FamilyError::InvalidParams(s));
        if m < 5 {
            return bad(format!("m = {m} must be at least 5"));
        }
        if n < 3 {
            return bad(format!("n = {n} must be at least 3"));
        }
        if !(1 <= p && p < q && 2 * q < m) {
            return bad(format!("need 1 <= p < q < m/2, got p = {p}, q = {q}, m = {m}"));
        }
        let (r, t, a, b) = (r.rem_euclid(n), t.rem_euclid(n), a.rem_euclid(n), b.rem_euclid(n));
        if gcd(gcd(p, q), m) != 1 {
            return bad("gcd(p, q, m) != 1".into());
        }
        if gcd(gcd(gcd(a, b), t), n) != 1 {
            return bad("gcd(a, b, t, n) != 1".into());
        }
        if gcd(t, n) == 1 {
            return bad("gcd(t, n) = 1".into());
        }
        if pow_mod(r, m as u64, n) != 1 {
            return bad(format!("r^m != 1 in Z_{n}"));
        }
        if (t * (r - 1)).rem_euclid(n) != 0 {
            return bad("t(r - 1) != 0".into());
        }
        Ok(XivParams { m, n, r, t, p, a, q, b })
    }

    pub fn vertex(&self, i: i64, j: i64) -> usize {
        (i.rem_euclid(self.m) * self.n + j.rem_euclid(self.n)) as usize
    }

    /// `(p_edges, q_edges)`, each listed from `u_i^j` to its forward neighbor.
    pub fn edge_classes(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let mut pe = Vec::new();
        let mut qe = Vec::new();
        for i in 0..self.m {
            let ri = pow_mod(self.r, i as u64, self.n);
            let (tp, tq) = if i < self.m - self.q {
                (0, 0)
            } else if i < self.m - self.p {
                (0, self.t)
            } else {
                (self.t, self.t)
            };
            for j in 0..self.n {
                pe.push((self.vertex(i, j), self.vertex(i + self.p, j + self.a * ri + tp)));
                qe.push((self.vertex(i, j), self.vertex(i + self.q, j + self.b * ri + tq)));
            }
        }
        (pe, qe)
    }
}

/// `X_IV(m, n; r, t; p, a; q, b)` with its p-edges and q-edges.
#[derive(Debug, Clone)]
pub struct XivGraph {
    pub labeled: Labeled,
    pub p_edges: Vec<(usize, usize)>,
    pub q_edges: Vec<(usize, usize)>,
}

pub fn xiv(p: XivParams) -> Result<XivGraph, FamilyError> {
    let (pe, qe) = p.edge_classes();
    let edges: Vec<(usize, usize)> = pe.iter().chain(&qe).copied().collect();
    let graph = Graph::from_edges((p.m * p.n) as usize, &edges)?;
    let labels = (0..p.m).flat_map(|i| (0..p.n).map(move |j| format!("u_{i}^{j}"))).collect();
    Ok(XivGraph {
        labeled: Labeled {
            graph,
            family: "xiv".into(),
            params: serde_json::to_value(p).expect("plain struct"),
            labels,
        },
        p_edges: pe,
        q_edges: qe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xo_doyle_holt_shape() {
        let g = xo(XoParams::new(3, 9, 4).unwrap()).unwrap().graph;
        assert_eq!(g.vertex_count(), 27);
        assert_eq!(g.edge_count(), 54);
        assert_eq!(g.regularity(), Some(4));
        assert!(g.is_connected());
        assert_eq!(g.girth(), Some(5));
    }

    #[test]
    fn xo_rejects_bad_params() {
        assert!(XoParams::new(3, 8, 4).is_err());
        assert!(XoParams::new(2, 9, 4).is_err());
        assert!(XoParams::new(3, 9, 3).is_err());
        // q^m = -1 is admitted
        assert!(XoParams::new(3, 9, 8).is_ok());
    }

    #[test]
    fn xo_standard_orientation_is_balanced() {
        let p = XoParams::new(5, 11, 3).unwrap();
        let mut out = vec![0; 55];
        let mut inn = vec![0; 55];
        for (u, v) in p.standard_arcs() {
            out[u] += 1;
            inn[v] += 1;
        }
        assert!(out.iter().chain(&inn).all(|&d| d == 2));
    }

    #[test]
    fn xo_regular_subgroup() {
        let p = XoParams::new(5, 11, 3).unwrap();
        let g = xo(p).unwrap().graph;
        let gens = p.regular_subgroup_generators().unwrap();
        assert!(gens.iter().all(|s| g.is_automorphism(s)));
        let h = PermGroup::new(gens).unwrap();
        assert_eq!(h.order_u64(), 55);
        assert!(h.is_transitive());
    }

    #[test]
    fn rose_window_shapes() {
        let g = rose_window(RoseWindowParams::new(12, 5, 2).unwrap()).unwrap().graph;
        assert_eq!((g.vertex_count(), g.edge_count(), g.girth()), (24, 48, Some(5)));
        let g = rose_window(RoseWindowParams::new(12, 1, 4).unwrap()).unwrap().graph;
        assert_eq!(g.girth(), Some(3));
        let g = rose_window(RoseWindowParams::new(6, 1, 2).unwrap()).unwrap().graph;
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.regularity(), Some(4));
        let classes = rose_window_edge_classes(RoseWindowParams::new(12, 5, 2).unwrap());
        assert!(classes.iter().all(|c| c.len() == 12));
    }

    #[test]
    fn rose_window_rejects_out_of_range() {
        assert!(RoseWindowParams::new(12, 0, 2).is_err());
        assert!(RoseWindowParams::new(12, 5, 6).is_err());
        assert!(RoseWindowParams::new(2, 1, 1).is_err());
    }

    #[test]
    fn r12_generators() {
        let pkg = r12_special_package();
        assert_eq!(pkg.mu.apply(0), 0);
        assert_eq!(pkg.mu.apply(12 + 2), 12 + 5);
        assert_eq!(PermGroup::new(pkg.aut_generators()).unwrap().order_u64(), 96);
        assert_eq!(PermGroup::new(pkg.g1_generators()).unwrap().order_u64(), 48);
    }

    #[test]
    fn cayley_small_cases() {
        let z5 = PermGroup::new(vec![Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap()]).unwrap();
        let els = z5.enumerate_elements(10).unwrap();
        let g = &els.iter().position(|e| e.apply(0) == 1).unwrap();
        let g_inv = &els.iter().position(|e| e.apply(0) == 4).unwrap();
        let pent = cayley(&CayleyParams { group: z5.clone(), connection: vec![*g, *g_inv] }).unwrap();
        assert_eq!(pent.degrees(), vec![2; 5]);
        assert_eq!(pent.girth(), Some(5));
        let all: Vec<usize> = (0..5).filter(|&i| !els[i].is_identity()).collect();
        let k5 = cayley(&CayleyParams { group: z5.clone(), connection: all }).unwrap();
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.girth(), Some(3));
        assert_eq!(
            cayley(&CayleyParams { group: z5.clone(), connection: vec![*g] }),
            Err(FamilyError::NotInverseClosed)
        );
        let id = els.iter().position(Permutation::is_identity).unwrap();
        assert_eq!(
            cayley(&CayleyParams { group: z5, connection: vec![id] }),
            Err(FamilyError::IdentityInConnectionSet)
        );
    }

    #[test]
    fn xiv_is_tetravalent_and_has_p_pentagon() {
        let p = XivParams::new(5, 11, 3, 0, 1, 0, 2, 1).unwrap();
        let x = xiv(p).unwrap();
        assert_eq!(x.labeled.graph.vertex_count(), 55);
        assert_eq!(x.labeled.graph.regularity(), Some(4));
        let path: Vec<usize> = (0..5).map(|i| p.vertex(i, 0)).collect();
        for i in 0..5 {
            let (u, v) = (path[i], path[(i + 1) % 5]);
            assert!(x.p_edges.contains(&(u, v)));
        }
    }

    #[test]
    fn xiv_rejects_invalid() {
        assert!(XivParams::new(5, 11, 3, 1, 1, 0, 2, 1).is_err()); // gcd(t, n) = 1
        assert!(XivParams::new(5, 11, 2, 0, 1, 0, 2, 1).is_err()); // r^5 != 1
        assert!(XivParams::new(4, 11, 3, 0, 1, 0, 2, 1).is_err());
        assert!(XivParams::new(5, 11, 3, 0, 1, 0, 3, 1).is_err()); // q >= m/2
    }
}
