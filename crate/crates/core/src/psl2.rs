//! PSL(2, p) for small primes `p = 1 (mod 10)` and the double coset graph
//! `Cos(G, <A>, {B, B^-1})` it acts on half-arc-transitively.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::graphcore::Graph;
use crate::perm::{PermGroup, Permutation};

/// Default upper bound on `p` for [`coset_graph`].
pub const DEFAULT_PRIME_BOUND: u64 = 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Psl2Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("p = {0} is not 1 mod 10")]
    NoFifthRoot(u64),
    #[error("p = {p} exceeds the configured bound {bound}")]
    PrimeTooLarge { p: u64, bound: u64 },
    #[error("matrix has determinant {0}, expected 1")]
    NotSpecial(u64),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Element of `Z_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    p: u64,
    value: u64,
}

impl Fp {
    pub fn new(p: u64, value: i64) -> Fp {
        Fp { p, value: value.rem_euclid(p as i64) as u64 }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { p: self.p, value: 1 % self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Fp> {
        (!self.is_zero()).then(|| self.pow(self.p - 2))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { p: self.p, value: (self.value + o.value) % self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { p: self.p, value: (self.value + self.p - o.value) % self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p);
        Fp { p: self.p, value: self.value * o.value % self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { p: self.p, value: (self.p - self.value) % self.p }
    }
}

/// Least `xi` in `[2, p-1]` with `xi^5 = 1`.
pub fn fifth_root(p: u64) -> Result<Fp, Psl2Error> {
    if !is_odd_prime(p) {
        return Err(Psl2Error::NotPrime(p));
    }
    if p % 10 != 1 {
        return Err(Psl2Error::NoFifthRoot(p));
    }
    (2..p)
        .map(|x| Fp::new(p, x as i64))
        .find(|x| x.pow(5).value == 1)
        .ok_or_else(|| Psl2Error::Inconsistent(format!("no fifth root of unity mod {p}")))
}

/// A 2x2 matrix over `Z_p`, row-major `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Fp,
    pub b: Fp,
    pub c: Fp,
    pub d: Fp,
}

impl Mat2 {
    pub fn new(p: u64, a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2 { a: Fp::new(p, a), b: Fp::new(p, b), c: Fp::new(p, c), d: Fp::new(p, d) }
    }

    pub fn from_fp(a: Fp, b: Fp, c: Fp, d: Fp) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity(p: u64) -> Mat2 {
        Mat2::new(p, 1, 0, 0, 1)
    }

    pub fn modulus(&self) -> u64 {
        self.a.p
    }

    pub fn det(&self) -> Fp {
        self.a * self.d - self.b * self.c
    }

    pub fn entries(&self) -> [u64; 4] {
        [self.a.value, self.b.value, self.c.value, self.d.value]
    }

    pub fn adjugate(&self) -> Mat2 {
        Mat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn scale(&self, s: Fp) -> Mat2 {
        Mat2 { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    pub fn neg(&self) -> Mat2 {
        self.scale(Fp::new(self.modulus(), -1))
    }

    pub fn pow(&self, mut e: u64) -> Mat2 {
        let mut base = *self;
        let mut acc = Mat2::identity(self.modulus());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Nonzero scalar matrix, i.e. the identity of PGL(2, p).
    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && !self.a.is_zero()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.a, self.b, self.c, self.d)
    }
}

/// Element of PSL(2, p): the representative of `{M, -M}` whose first nonzero
/// entry (row-major) lies in `[1, (p-1)/2]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Psl2Element {
    m: Mat2,
}

impl PartialOrd for Psl2Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Psl2Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.m.entries().cmp(&other.m.entries())
    }
}

pub fn normalize(m: Mat2) -> Mat2 {
    let half = (m.modulus() - 1) / 2;
    let first = m.entries().into_iter().find(|&x| x != 0).unwrap_or(0);
    if first > half {
        m.neg()
    } else {
        m
    }
}

impl Psl2Element {
    pub fn new(m: Mat2) -> Result<Psl2Element, Psl2Error> {
        let det = m.det();
        if det.value != 1 {
            return Err(Psl2Error::NotSpecial(det.value));
        }
        Ok(Psl2Element { m: normalize(m) })
    }

    pub fn identity(p: u64) -> Psl2Element {
        Psl2Element { m: Mat2::identity(p) }
    }

    pub fn matrix(&self) -> Mat2 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.m.modulus()
    }

    pub fn inverse(&self) -> Psl2Element {
        Psl2Element { m: normalize(self.m.adjugate()) }
    }

    pub fn pow(&self, e: u64) -> Psl2Element {
        Psl2Element { m: normalize(self.m.pow(e)) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Psl2Element::identity(self.modulus())
    }

    /// Least `k >= 1` with `M^k = 1` in PSL(2, p).
    pub fn element_order(&self) -> u64 {
        let mut acc = *self;
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc * *self;
            k += 1;
        }
        k
    }

    /// Action on the projective line: point `i < p` is `(i : 1)`, point `p` is
    /// infinity, and `x -> (a x + c) / (b x + d)` (row vectors times the matrix),
    /// so products map to left-to-right composition.
    pub fn as_projective_permutation(&self) -> Permutation {
        projective_action(&self.m)
    }

    /// Packed key whose numeric order is the lexicographic entry order.
    fn key(&self) -> u64 {
        let p = self.modulus();
        let [a, b, c, d] = self.m.entries();
        ((a * p + b) * p + c) * p + d
    }
}

pub(crate) fn projective_action(m: &Mat2) -> Permutation {
    let p = m.modulus();
    let inf = p as usize;
    let image = |x: Fp, y: Fp| -> usize {
        // (x : y) * M = (a x + c y : b x + d y)
        let nx = m.a * x + m.c * y;
        let ny = m.b * x + m.d * y;
        match ny.inv() {
            Some(inv) => (nx * inv).value as usize,
            None => inf,
        }
    };
    let one = Fp::new(p, 1);
    let zero = Fp::new(p, 0);
    let mut images: Vec<usize> = (0..p).map(|i| image(Fp::new(p, i as i64), one)).collect();
    images.push(image(one, zero));
    Permutation::from_images(images).expect("invertible matrices act bijectively")
}

impl Mul for Psl2Element {
    type Output = Psl2Element;
    fn mul(self, o: Psl2Element) -> Psl2Element {
        Psl2Element { m: normalize(self.m * o.m) }
    }
}

impl fmt::Debug for Psl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Psl2Params {
    pub p: u64,
    pub xi: Fp,
}

impl Psl2Params {
    pub fn new(p: u64) -> Result<Psl2Params, Psl2Error> {
        Ok(Psl2Params { p, xi: fifth_root(p)? })
    }
}

/// `A = [[0, 1], [-1, 0]]` and `B = [[xi, xi + xi^-1], [0, xi^-1]]`.
pub fn standard_generators(params: &Psl2Params) -> (Psl2Element, Psl2Element) {
    let p = params.p;
    let xi = params.xi;
    let xi_inv = xi.inv().expect("xi is a unit");
    let a = Psl2Element::new(Mat2::new(p, 0, 1, -1, 0)).expect("det A = 1");
    let b = Psl2Element::new(Mat2::from_fp(xi, xi + xi_inv, Fp::new(p, 0), xi_inv)).expect("det B = 1");
    (a, b)
}

/// All elements of PSL(2, p), sorted by entries.
pub fn all_elements(p: u64) -> Vec<Psl2Element> {
    let half = (p - 1) / 2;
    let mut out = Vec::with_capacity((p * (p * p - 1) / 2) as usize);
    let one = Fp::new(p, 1);
    for a in 0..p {
        for b in 0..p {
            let (fa, fb) = (Fp::new(p, a as i64), Fp::new(p, b as i64));
            let first = if a != 0 { a } else { b };
            if first == 0 || first > half {
                continue;
            }
            if a != 0 {
                let a_inv = fa.inv().unwrap();
                for c in 0..p {
                    let fc = Fp::new(p, c as i64);
                    let d = (one + fb * fc) * a_inv;
                    out.push(Psl2Element { m: Mat2::from_fp(fa, fb, fc, d) });
                }
            } else {
                let c = -(fb.inv().unwrap());
                for d in 0..p {
                    out.push(Psl2Element { m: Mat2::from_fp(fa, fb, c, Fp::new(p, d as i64)) });
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// `Cos(PSL(2, p), <A>, {B, B^-1})` with the right-multiplication action.
#[derive(Debug, Clone)]
pub struct CosetGraph {
    pub params: Psl2Params,
    pub graph: Graph,
    /// Right multiplication by `A` and by `B`, as permutations of the cosets.
    pub group: PermGroup,
    pub a: Psl2Element,
    pub b: Psl2Element,
    elements: Vec<Psl2Element>,
    keys: Vec<u64>,
    coset_of: Vec<u32>,
    representatives: Vec<Psl2Element>,
}

impl CosetGraph {
    pub fn vertex_count(&self) -> usize {
        self.representatives.len()
    }

    /// Coset `H g` as a vertex id.
    pub fn coset(&self, g: &Psl2Element) -> usize {
        let idx = self.keys.binary_search(&g.key()).expect("element of PSL(2,p)");
        self.coset_of[idx] as usize
    }

    /// Least member of a coset.
    pub fn representative(&self, v: usize) -> Psl2Element {
        self.representatives[v]
    }

    pub fn elements(&self) -> &[Psl2Element] {
        &self.elements
    }

    /// Right multiplication by `x` as a permutation of the cosets.
    pub fn right_multiplication(&self, x: &Psl2Element) -> Permutation {
        let images = self.representatives.iter().map(|g| self.coset(&(*g * *x))).collect();
        Permutation::from_images(images).expect("right multiplication permutes cosets")
    }

    /// Conjugation `Hg -> H c^-1 g c` by a PGL(2, p) matrix normalizing `H`.
    pub fn conjugation(&self, c: &Mat2) -> Result<Permutation, Psl2Error> {
        let det_inv = c.det().inv().ok_or_else(|| Psl2Error::Inconsistent("singular matrix".into()))?;
        let conj = |g: &Psl2Element| -> Result<Psl2Element, Psl2Error> {
            Psl2Element::new((c.adjugate() * g.matrix() * *c).scale(det_inv))
        };
        if conj(&self.a)? != self.a {
            return Err(Psl2Error::Inconsistent("conjugating matrix does not normalize <A>".into()));
        }
        let mut images = Vec::with_capacity(self.vertex_count());
        for g in &self.representatives {
            images.push(self.coset(&conj(g)?));
        }
        Permutation::from_images(images).map_err(|e| Psl2Error::Inconsistent(e.to_string()))
    }
}

pub fn coset_graph(p: u64) -> Result<CosetGraph, Psl2Error> {
    coset_graph_bounded(p, DEFAULT_PRIME_BOUND)
}

pub fn coset_graph_bounded(p: u64, bound: u64) -> Result<CosetGraph, Psl2Error> {
    if p > bound {
        return Err(Psl2Error::PrimeTooLarge { p, bound });
    }
    let params = Psl2Params::new(p)?;
    let (a, b) = standard_generators(&params);
    let elements = all_elements(p);
    let keys: Vec<u64> = elements.iter().map(Psl2Element::key).collect();
    let lookup = |g: &Psl2Element| keys.binary_search(&g.key()).expect("element");

    let mut coset_of = vec![u32::MAX; elements.len()];
    let mut representatives = Vec::with_capacity(elements.len() / 2);
    for (i, g) in elements.iter().enumerate() {
        if coset_of[i] != u32::MAX {
            continue;
        }
        let id = representatives.len() as u32;
        coset_of[i] = id;
        coset_of[lookup(&(a * *g))] = id;
        representatives.push(*g);
    }

    let connectors = [b, b.inverse(), b * a, b.inverse() * a];
    let mut edges = Vec::with_capacity(2 * representatives.len());
    for (v, g) in representatives.iter().enumerate() {
        for s in &connectors {
            let w = coset_of[lookup(&(*s * *g))] as usize;
            if v < w {
                edges.push((v, w));
            } else if v == w {
                return Err(Psl2Error::Inconsistent("loop in coset graph".into()));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::from_edges(representatives.len(), &edges)
        .map_err(|e| Psl2Error::Inconsistent(e.to_string()))?;

    let mut cg = CosetGraph {
        params,
        graph,
        group: PermGroup::trivial(1),
        a,
        b,
        elements,
        keys,
        coset_of,
        representatives,
    };
    let gens = vec![cg.right_multiplication(&a), cg.right_multiplication(&b)];
    cg.group = PermGroup::new(gens).map_err(|e| Psl2Error::Inconsistent(e.to_string()))?;
    let expected = p * (p * p - 1) / 2;
    if cg.group.order_u64() != expected {
        return Err(Psl2Error::Inconsistent(format!(
            "<A, B> acting on cosets has order {}, expected {expected}",
            cg.group.order_u64()
        )));
    }
    Ok(cg)
}

/// `C = [[1, k], [k, -1]]` with `k = -1 - 2 xi - 2 xi^2`, an element of PGL(2, p).
pub fn arc_reversing_witness(params: &Psl2Params) -> Result<Mat2, Psl2Error> {
    let p = params.p;
    let xi = params.xi;
    let one = Fp::new(p, 1);
    let two = Fp::new(p, 2);
    let k = -one - two * xi - two * xi * xi;
    let c = Mat2::from_fp(one, k, k, -one);
    if c.det().is_zero() {
        return Err(Psl2Error::Inconsistent("C is singular".into()));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifth_roots() {
        assert_eq!(fifth_root(11).unwrap().value(), 3);
        assert_eq!(fifth_root(31).unwrap().value(), 2);
        assert_eq!(fifth_root(7), Err(Psl2Error::NoFifthRoot(7)));
        assert_eq!(fifth_root(21), Err(Psl2Error::NotPrime(21)));
        for p in [11, 31, 41, 61, 71] {
            let xi = fifth_root(p).unwrap();
            let s = (0..5).fold(Fp::new(p, 0), |acc, k| acc + xi.pow(k));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn normalization() {
        let m = Mat2::new(11, 10, 1, 10, 0); // det = 0*10 - 1*10 = -10 = 1
        let e = Psl2Element::new(m).unwrap();
        assert_eq!(e.matrix().entries(), [1, 10, 1, 0]);
        assert_eq!(normalize(normalize(m)), normalize(m));
        assert_eq!(normalize(m.neg()), normalize(m));
        assert!(Psl2Element::new(Mat2::new(11, 2, 0, 0, 2)).is_err());
    }

    #[test]
    fn element_count() {
        assert_eq!(all_elements(11).len(), 660);
    }

    #[test]
    fn identity_acts_trivially() {
        assert!(Psl2Element::identity(11).as_projective_permutation().is_identity());
        assert_eq!(Psl2Element::identity(11).element_order(), 1);
    }

    #[test]
    fn out_of_range_prime() {
        assert!(matches!(coset_graph(41), Err(Psl2Error::PrimeTooLarge { .. })));
        assert!(matches!(coset_graph(13), Err(Psl2Error::NoFifthRoot(13))));
    }
}
