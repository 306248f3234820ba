//! Permutations and permutation groups with a deterministic stabilizer chain.
//!
//! Products are read left to right: `p.then(&q)` maps `i` to `q(p(i))`. This
//! matches the exponential notation `v^(pq) = (v^p)^q` used for group actions
//! on graphs, and every module in this crate relies on it.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

/// Default refusal threshold for [`PermGroup::enumerate_elements`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection on 0..{degree}")]
    NotBijection { degree: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed constraint: {0}")]
    MalformedConstraint(String),
    #[error("group order {order} exceeds enumeration bound {bound}")]
    EnumerationRefused { order: BigUint, bound: u64 },
    #[error("a permutation group needs at least one generator")]
    NoGenerators,
    #[error("HATPERMS parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A permutation of `{0, .., n-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijection { degree: n });
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(PermError::NotBijection { degree });
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Left-to-right product: first `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.then(other))
    }

    /// Unchecked variant of [`compose`](Self::compose) for equal degrees.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// "Map `sources[i]` to `targets[i]` for every `i`."
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointTupleConstraint {
    sources: Vec<usize>,
    targets: Vec<usize>,
}

impl PointTupleConstraint {
    pub fn new(sources: Vec<usize>, targets: Vec<usize>) -> Result<Self, PermError> {
        if sources.len() != targets.len() {
            return Err(PermError::MalformedConstraint(format!(
                "{} sources but {} targets",
                sources.len(),
                targets.len()
            )));
        }
        for (name, list) in [("sources", &sources), ("targets", &targets)] {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(PermError::MalformedConstraint(format!("repeated point in {name}")));
            }
        }
        Ok(PointTupleConstraint { sources, targets })
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }
}

/// One level of the stabilizer chain. `gens` generate the stabilizer of all
/// earlier base points; the transversal is a Schreier vector over `gens`.
#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    inv: Vec<Permutation>,
    orbit: Vec<u32>,
    // (parent, generator index) per point; base carries (base, NO_PARENT)
    tree: Vec<Option<(u32, u32)>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut tree = vec![None; degree];
        tree[base] = Some((base as u32, NO_PARENT));
        Level { base: base as u32, gens: Vec::new(), inv: Vec::new(), orbit: vec![base as u32], tree }
    }

    #[inline]
    fn contains(&self, point: usize) -> bool {
        self.tree[point].is_some()
    }

    /// Coset representative mapping the base point to `point`.
    fn representative(&self, point: usize) -> Permutation {
        let mut word = Vec::new();
        let mut u = point as u32;
        while let Some((parent, g)) = self.tree[u as usize] {
            if g == NO_PARENT {
                break;
            }
            word.push(g);
            u = parent;
        }
        let mut rep = Permutation::identity(self.tree.len());
        for &g in word.iter().rev() {
            rep = rep.then(&self.gens[g as usize]);
        }
        rep
    }

    /// `g * rep(g(base))^-1`, assuming `g(base)` lies in the orbit.
    fn divide(&self, mut g: Permutation) -> Permutation {
        let mut u = g.apply(self.base as usize) as u32;
        while u != self.base {
            let (parent, s) = self.tree[u as usize].expect("point in orbit");
            g = g.then(&self.inv[s as usize]);
            u = parent;
        }
        g
    }
}

/// Stabilizer chain built by the deterministic Schreier–Sims algorithm.
#[derive(Debug, Clone)]
struct Chain {
    degree: usize,
    levels: Vec<Level>,
}

impl Chain {
    fn build(degree: usize, generators: &[Permutation], base_prefix: &[usize]) -> Chain {
        let mut chain = Chain { degree, levels: base_prefix.iter().map(|&b| Level::new(b, degree)).collect() };
        for g in generators {
            chain.insert(0, g.clone());
        }
        chain
    }

    fn strip(&self, mut g: Permutation, from: usize) -> (usize, Permutation) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let u = g.apply(level.base as usize);
            if !level.contains(u) {
                return (i, g);
            }
            g = level.divide(g);
        }
        (self.levels.len(), g)
    }

    fn insert(&mut self, k: usize, g: Permutation) {
        let (j, r) = self.strip(g, k);
        if r.is_identity() {
            return;
        }
        if j == self.levels.len() {
            let b = r.smallest_moved_point().expect("non-identity residue");
            self.levels.push(Level::new(b, self.degree));
        }
        for i in (k..=j).rev() {
            self.add_generator(i, r.clone());
        }
    }

    fn add_generator(&mut self, i: usize, r: Permutation) {
        let new_gen = {
            let level = &mut self.levels[i];
            level.inv.push(r.inverse());
            level.gens.push(r);
            level.gens.len() - 1
        };
        let old_len = self.levels[i].orbit.len();
        let mut idx = 0;
        while idx < self.levels[i].orbit.len() {
            let u = self.levels[i].orbit[idx] as usize;
            let range = if idx < old_len { new_gen..new_gen + 1 } else { 0..self.levels[i].gens.len() };
            for s in range {
                let v = self.levels[i].gens[s].apply(u);
                if !self.levels[i].contains(v) {
                    let level = &mut self.levels[i];
                    level.tree[v] = Some((u as u32, s as u32));
                    level.orbit.push(v as u32);
                } else {
                    let level = &self.levels[i];
                    let schreier = level.divide(level.representative(u).then(&level.gens[s]));
                    if !schreier.is_identity() {
                        self.insert(i + 1, schreier);
                    }
                }
            }
            idx += 1;
        }
    }

    fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g.clone(), 0).1.is_identity()
    }

    fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }
}

/// A permutation group given by generators, with its stabilizer chain
/// computed on construction. Immutable afterwards.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Chain,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, PermError> {
        let degree = generators.first().ok_or(PermError::NoGenerators)?.degree();
        Self::with_degree(degree, generators)
    }

    /// Like [`new`](Self::new) but accepts an empty generator list (trivial group).
    pub fn with_degree(degree: usize, mut generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        if generators.is_empty() {
            generators.push(Permutation::identity(degree));
        }
        let chain = Chain::build(degree, &generators, &[]);
        Ok(PermGroup { degree, generators, chain })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::with_degree(degree, Vec::new()).expect("identity has the right degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base as usize).collect()
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    /// Order as `u64`; desk-scale groups always fit.
    pub fn order_u64(&self) -> u64 {
        u64::try_from(self.order()).expect("group order fits in 64 bits")
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    fn check_point(&self, point: usize) -> Result<(), PermError> {
        if point >= self.degree {
            Err(PermError::PointOutOfRange { point, degree: self.degree })
        } else {
            Ok(())
        }
    }

    /// Orbit of `point`, ascending.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>, PermError> {
        self.check_point(point)?;
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut out = vec![point];
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Partition of all points into orbits, each ascending, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orbit = self.orbit(p).expect("in range");
                for &x in &orbit {
                    seen[x] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    fn chain_with_base(&self, prefix: &[usize]) -> Chain {
        let chain = Chain::build(self.degree, &self.chain.strong_generators(), prefix);
        debug_assert_eq!(chain.order(), self.order());
        chain
    }

    /// Pointwise stabilizer of `point`.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup, PermError> {
        self.pointwise_stabilizer(&[point])
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup, PermError> {
        for &p in points {
            self.check_point(p)?;
        }
        let chain = self.chain_with_base(points);
        let gens = chain.levels.get(points.len()).map(|l| l.gens.clone()).unwrap_or_default();
        PermGroup::with_degree(self.degree, gens)
    }

    /// Some element mapping each source to its target, or `None`.
    ///
    /// The constraint points become a base prefix; the answer is the unique
    /// product of transversal elements along that prefix, with the identity
    /// taken in the deeper stabilizer.
    pub fn find_element(&self, c: &PointTupleConstraint) -> Result<Option<Permutation>, PermError> {
        for &p in c.sources().iter().chain(c.targets()) {
            self.check_point(p)?;
        }
        let chain = self.chain_with_base(c.sources());
        let mut prefix = Permutation::identity(self.degree);
        let mut prefix_inv = prefix.clone();
        for (level, &target) in chain.levels.iter().zip(c.targets()) {
            let x = prefix_inv.apply(target);
            if !level.contains(x) {
                return Ok(None);
            }
            let t = level.representative(x);
            prefix = t.then(&prefix);
            prefix_inv = prefix.inverse();
        }
        debug_assert!(c.sources().iter().zip(c.targets()).all(|(&s, &t)| prefix.apply(s) == t));
        Ok(Some(prefix))
    }

    /// All elements, sorted lexicographically by image table.
    pub fn enumerate_elements(&self, bound: u64) -> Result<Vec<Permutation>, PermError> {
        let order = self.order();
        if order > BigUint::from(bound) {
            return Err(PermError::EnumerationRefused { order, bound });
        }
        let mut elements = vec![Permutation::identity(self.degree)];
        for level in self.chain.levels.iter().rev() {
            let reps: Vec<Permutation> =
                level.orbit.iter().map(|&u| level.representative(u as usize)).collect();
            let mut next = Vec::with_capacity(elements.len() * reps.len());
            for x in &elements {
                for t in &reps {
                    next.push(x.then(t));
                }
            }
            elements = next;
        }
        elements.sort_unstable();
        Ok(elements)
    }

    /// Subgroup test by generator membership.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Derived subgroup `[G, G]`, as the normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut sub = PermGroup::trivial(self.degree);
        let mut pending: Vec<Permutation> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                pending.push(commutator(a, b));
            }
        }
        while let Some(h) = pending.pop() {
            if sub.contains(&h) {
                continue;
            }
            gens.push(h.clone());
            sub = PermGroup::with_degree(self.degree, gens.clone()).expect("same degree");
            for g in &self.generators {
                pending.push(g.inverse().then(&h).then(g));
            }
        }
        sub
    }

    /// Solvability via the derived series.
    pub fn is_solvable(&self) -> bool {
        let mut current = self.clone();
        loop {
            if current.order() == BigUint::from(1u32) {
                return true;
            }
            let next = current.derived_subgroup();
            if next.order() == current.order() {
                return false;
            }
            current = next;
        }
    }

    /// Same set of elements.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }
}

fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.inverse().then(&b.inverse()).then(a).then(b)
}

pub const PERMS_HEADER: &str = "HATPERMS v1";

/// Serializes permutations in the HATPERMS v1 format.
pub fn write_perms(degree: usize, perms: &[Permutation]) -> String {
    let mut out = String::new();
    out.push_str(PERMS_HEADER);
    out.push('\n');
    out.push_str(&degree.to_string());
    out.push('\n');
    for p in perms {
        let line: Vec<String> = p.images().iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a HATPERMS v1 file into `(degree, permutations)`.
pub fn read_perms(text: &str) -> Result<(usize, Vec<Permutation>), PermError> {
    let mut lines = text.lines().enumerate();
    let err = |line: usize, msg: &str| PermError::Parse { line: line + 1, msg: msg.to_string() };
    match lines.next() {
        Some((_, l)) if l.trim_end() == PERMS_HEADER => {}
        _ => return Err(err(0, "missing header")),
    }
    let (ln, l) = lines.next().ok_or_else(|| err(1, "missing degree"))?;
    let degree: usize = l.trim().parse().map_err(|_| err(ln, "degree is not an integer"))?;
    let mut perms = Vec::new();
    for (ln, l) in lines {
        if l.trim().is_empty() {
            continue;
        }
        let images: Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
        let images = images.map_err(|_| err(ln, "non-integer image"))?;
        if images.len() != degree {
            return Err(err(ln, &format!("expected {degree} images, found {}", images.len())));
        }
        perms.push(Permutation::from_images(images).map_err(|e| err(ln, &e.to_string()))?);
    }
    Ok((degree, perms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[usize]) -> Permutation {
        Permutation::from_cycles(n, &[c.to_vec()]).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        let p = cyc(3, &[0, 1, 2]);
        assert_eq!(p.compose(&p).unwrap(), cyc(3, &[0, 2, 1]));
        let a = cyc(3, &[0, 1]);
        let b = cyc(3, &[1, 2]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(
            Permutation::identity(5).compose(&Permutation::identity(5)).unwrap(),
            Permutation::identity(5)
        );
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let e = Permutation::identity(3).compose(&Permutation::identity(4)).unwrap_err();
        assert_eq!(e, PermError::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn s3_order_and_enumeration() {
        let g = PermGroup::new(vec![cyc(3, &[0, 1]), cyc(3, &[0, 1, 2])]).unwrap();
        assert_eq!(g.order_u64(), 6);
        assert_eq!(g.enumerate_elements(100).unwrap().len(), 6);
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::trivial(7);
        assert_eq!(g.order_u64(), 1);
        assert_eq!(g.orbit(3).unwrap(), vec![3]);
        assert_eq!(g.enumerate_elements(1).unwrap(), vec![Permutation::identity(7)]);
    }

    #[test]
    fn cyclic_group_stabilizer_and_search() {
        let g = PermGroup::new(vec![cyc(5, &[0, 1, 2, 3, 4])]).unwrap();
        assert_eq!(g.orbit(0).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(g.stabilizer(0).unwrap().order_u64(), 1);
        let c = PointTupleConstraint::new(vec![0, 1], vec![1, 2]).unwrap();
        assert_eq!(g.find_element(&c).unwrap(), Some(cyc(5, &[0, 1, 2, 3, 4])));
        let c = PointTupleConstraint::new(vec![0, 1], vec![1, 0]).unwrap();
        assert_eq!(g.find_element(&c).unwrap(), None);
    }

    #[test]
    fn singleton_orbit_constraint() {
        let g = PermGroup::new(vec![cyc(5, &[1, 2, 3])]).unwrap();
        let c = PointTupleConstraint::new(vec![0], vec![0]).unwrap();
        let found = g.find_element(&c).unwrap().unwrap();
        assert_eq!(found.apply(0), 0);
    }

    #[test]
    fn out_of_range_and_malformed() {
        let g = PermGroup::trivial(4);
        assert!(matches!(g.orbit(4), Err(PermError::PointOutOfRange { .. })));
        assert!(matches!(g.stabilizer(9), Err(PermError::PointOutOfRange { .. })));
        assert!(PointTupleConstraint::new(vec![0, 1], vec![1]).is_err());
        assert!(PointTupleConstraint::new(vec![0, 0], vec![1, 2]).is_err());
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let s4 = PermGroup::new(vec![cyc(4, &[0, 1]), cyc(4, &[0, 1, 2, 3])]).unwrap();
        assert!(matches!(s4.enumerate_elements(23), Err(PermError::EnumerationRefused { .. })));
        let els = s4.enumerate_elements(24).unwrap();
        assert_eq!(els.len(), 24);
        assert!(els.windows(2).all(|w| w[0].images() < w[1].images()));
    }

    #[test]
    fn solvability() {
        let s4 = PermGroup::new(vec![cyc(4, &[0, 1]), cyc(4, &[0, 1, 2, 3])]).unwrap();
        assert!(s4.is_solvable());
        let a5 = PermGroup::new(vec![cyc(5, &[0, 1, 2]), cyc(5, &[0, 1, 2, 3, 4])]).unwrap();
        assert_eq!(a5.order_u64(), 60);
        assert!(!a5.is_solvable());
    }

    #[test]
    fn perms_file_round_trip() {
        let text = "HATPERMS v1\n4\n1 2 3 0\n0 1 3 2\n";
        let (n, perms) = read_perms(text).unwrap();
        assert_eq!(n, 4);
        assert_eq!(write_perms(n, &perms), text);
        assert!(read_perms("HATPERMS v2\n1\n0\n").is_err());
        assert!(read_perms("HATPERMS v1\n3\n0 1\n").is_err());
    }
}
