//! Finite permutation groups given by generators.

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::chain::StabilizerChain;
use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("degree mismatch: group has degree {expected}, element has degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group order {order} exceeds the limit {limit}")]
    TooLarge { order: u128, limit: u128 },
    #[error("generator {index} of the subgroup is not in the group")]
    NotSubgroup { index: usize },
}

/// A permutation group with a lazily built stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_hint: Vec<usize>,
    chain: OnceLock<StabilizerChain>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            base_hint: Vec::new(),
            chain: OnceLock::new(),
        })
    }

    /// Parses each generator in cycle notation on `degree` points.
    pub fn from_cycle_strings<S: AsRef<str>>(
        degree: usize,
        generators: &[S],
    ) -> Result<Self, GroupError> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse(s.as_ref(), Some(degree)))
            .collect::<Result<Vec<_>, _>>()?;
        if gens.is_empty() {
            return Ok(Self::trivial(degree)?);
        }
        Self::new(gens)
    }

    pub fn trivial(degree: usize) -> Result<Self, PermError> {
        Ok(PermGroup {
            degree,
            generators: vec![Permutation::identity(degree)?],
            base_hint: Vec::new(),
            chain: OnceLock::new(),
        })
    }

    /// Group generated by `generators`, or the trivial group when the list
    /// is empty.
    pub(crate) fn generated_by(degree: usize, generators: Vec<Permutation>) -> Self {
        if generators.is_empty() {
            Self::trivial(degree).expect("positive degree")
        } else {
            Self::new(generators).expect("same degree")
        }
    }

    /// Base points (1-based) the cached chain starts with.
    pub fn with_base_hint(mut self, hint: Vec<usize>) -> Self {
        self.base_hint = hint;
        self.chain = OnceLock::new();
        self
    }

    fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabilizerChain) -> Self {
        let group = Self::generated_by(degree, generators);
        let _ = group.chain.set(chain);
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The cached stabilizer chain, built on first use.
    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators, &self.base_hint))
    }

    /// A fresh chain whose base starts with `base_hint`; not cached.
    pub fn build_chain(&self, base_hint: &[usize]) -> StabilizerChain {
        StabilizerChain::build(self.degree, &self.generators, base_hint)
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    fn check_degree(&self, p: &Permutation) -> Result<(), GroupError> {
        if p.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(())
    }

    fn check_point(&self, point: usize) -> Result<(), GroupError> {
        if point == 0 || point > self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        self.check_degree(p)?;
        Ok(self.chain().contains(p))
    }

    /// Orbit of a 1-based point, breadth-first in generator order.
    pub fn orbit(&self, point: usize) -> Result<Orbit, GroupError> {
        self.check_point(point)?;
        let mut points = vec![point - 1];
        let mut reps = vec![Permutation::identity_unchecked(self.degree)];
        let mut seen = vec![false; self.degree];
        seen[point - 1] = true;
        let mut head = 0;
        while head < points.len() {
            let x = points[head];
            let ux = reps[head].clone();
            head += 1;
            for g in &self.generators {
                let y = g.image0(x);
                if !seen[y] {
                    seen[y] = true;
                    points.push(y);
                    reps.push(ux.then(g));
                }
            }
        }
        Ok(Orbit {
            base: point,
            points: points.into_iter().map(|p| p + 1).collect(),
            representatives: reps,
        })
    }

    pub fn orbit_len(&self, point: usize) -> Result<usize, GroupError> {
        Ok(self.orbit(point)?.len())
    }

    /// The stabilizer of a 1-based point, carrying the tail of a chain based
    /// at that point.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup, GroupError> {
        self.check_point(point)?;
        let mut hint = vec![point];
        hint.extend(self.base_hint.iter().copied().filter(|&b| b != point));
        let chain = self.build_chain(&hint);
        let gens = chain
            .levels()
            .get(1)
            .map(|l| l.generators().to_vec())
            .unwrap_or_default();
        let tail = chain.tail(1);
        Ok(PermGroup::with_chain(self.degree, gens, tail))
    }

    /// The pointwise stabilizer of the first `depth` base points of the
    /// cached chain.
    pub fn chain_subgroup(&self, depth: usize) -> PermGroup {
        let chain = self.chain();
        if depth == 0 {
            return self.clone();
        }
        let gens = chain
            .levels()
            .get(depth)
            .map(|l| l.generators().to_vec())
            .unwrap_or_default();
        PermGroup::with_chain(self.degree, gens, chain.tail(depth))
    }

    /// Every element exactly once.The order is the mixed-radix order of the
    /// chain's transversals with the first level most significant; element
    /// `(d_1, .., d_k)` is `u_k[d_k] * .. * u_1[d_1]`.
    pub fn enumerate_elements(&self, limit: u128) -> Result<Elements, GroupError> {
        let order = self.order();
        if order > limit {
            return Err(GroupError::TooLarge { order, limit });
        }
        Ok(Elements::new(self.degree, self.chain()))
    }

    /// True iff every conjugate of an `h` generator by a `self` generator
    /// lies in `h`.
    pub fn is_normal(&self, h: &PermGroup) -> Result<bool, GroupError> {
        self.check_subgroup(h)?;
        for x in h.generators() {
            for y in &self.generators {
                if !h.chain().contains(&x.conjugate_by(y)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn check_subgroup(&self, h: &PermGroup) -> Result<(), GroupError> {
        if h.degree != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: h.degree,
            });
        }
        for (index, x) in h.generators().iter().enumerate() {
            if !self.chain().contains(x) {
                return Err(GroupError::NotSubgroup { index });
            }
        }
        Ok(())
    }

    /// Same element set: generators contained both ways.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && other.generators.iter().all(|g| self.chain().contains(g))
            && self.generators.iter().all(|g| other.chain().contains(g))
    }

    /// Uniform element from one seed.
    pub fn random_element(&self, seed: u64) -> Permutation {
        self.random_elements(seed).next().expect("infinite stream")
    }

    /// Independent uniform elements from a seeded ChaCha stream.
    pub fn random_elements(&self, seed: u64) -> RandomElements<'_> {
        RandomElements {
            chain: self.chain(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Elements by enumeration when the order is at most `enumerate_limit`,
    /// otherwise `draws` seeded random elements.
    pub fn candidate_stream(
        &self,
        enumerate_limit: u128,
        draws: usize,
        seed: u64,
    ) -> Box<dyn Iterator<Item = Permutation> + '_> {
        match self.enumerate_elements(enumerate_limit) {
            Ok(it) => Box::new(it),
            Err(_) => Box::new(self.random_elements(seed).take(draws)),
        }
    }
}

/// Orbit points with a representative mapping the start point to each.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub base: usize,
    /// 1-based points in breadth-first order.
    pub points: Vec<usize>,
    /// `representatives[i]` maps `base` to `points[i]`.
    pub representatives: Vec<Permutation>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: usize) -> bool {
        self.points.contains(&point)
    }

    pub fn point_set(&self) -> HashSet<usize> {
        self.points.iter().copied().collect()
    }
}

pub struct RandomElements<'a> {
    chain: &'a StabilizerChain,
    rng: ChaCha8Rng,
}

impl Iterator for RandomElements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let mut g = Permutation::identity_unchecked(self.chain.degree());
        for level in self.chain.levels().iter().rev() {
            let t = level.transversal();
            let x = t.orbit0()[self.rng.gen_range(0..t.len())];
            g = g.then(&t.representative0(x).expect("orbit point"));
        }
        Some(g)
    }
}

/// Odometer over the chain's transversals.
pub struct Elements {
    reps: Vec<Vec<Permutation>>,
    digits: Vec<usize>,
    /// `partial[j] = u_{j}[d_j] * .. * u_1[d_1]` (0-based levels).
    partial: Vec<Permutation>,
    done: bool,
    degree: usize,
}

impl Elements {
    fn new(degree: usize, chain: &StabilizerChain) -> Self {
        let reps: Vec<Vec<Permutation>> =
            chain.levels().iter().map(|l| l.representatives()).collect();
        let mut it = Elements {
            digits: vec![0; reps.len()],
            partial: Vec::with_capacity(reps.len()),
            reps,
            done: false,
            degree,
        };
        it.rebuild_from(0);
        it
    }

    fn rebuild_from(&mut self, from: usize) {
        self.partial.truncate(from);
        for j in from..self.reps.len() {
            let u = &self.reps[j][self.digits[j]];
            let next = match j {
                0 => u.clone(),
                _ => u.then(&self.partial[j - 1]),
            };
            self.partial.push(next);
        }
    }

    fn current(&self) -> Permutation {
        self.partial
            .last()
            .cloned()
            .unwrap_or_else(|| Permutation::identity_unchecked(self.degree))
    }
}

impl Iterator for Elements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.current();
        let mut j = self.reps.len();
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            self.digits[j] += 1;
            if self.digits[j] < self.reps[j].len() {
                self.rebuild_from(j);
                break;
            }
            self.digits[j] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    /// Closure by breadth-first multiplication, independent of the chain.
    fn closure(g: &PermGroup) -> HashSet<Permutation> {
        let id = Permutation::identity(g.degree()).unwrap();
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for s in g.generators() {
                let y = x.then(s);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn orbits() {
        let c3 = group(3, &["(1,2,3)"]);
        assert_eq!(c3.orbit(1).unwrap().point_set(), HashSet::from([1, 2, 3]));
        let c2 = group(3, &["(1,2)"]);
        assert_eq!(c2.orbit(3).unwrap().points, vec![3]);
        assert!(c2.orbit(4).is_err());
        let o = c3.orbit(2).unwrap();
        for (x, u) in o.points.iter().zip(&o.representatives) {
            assert_eq!(u.apply(2).unwrap(), *x);
        }
    }

    #[test]
    fn orders_match_closure() {
        let a5 = group(5, &["(1,2,3,4,5)", "(3,4,5)"]);
        assert_eq!(a5.order(), 60);
        assert_eq!(closure(&a5).len(), 60);
        assert_eq!(group(4, &["()"]).order(), 1);
        assert_eq!(group(2, &["(1,2)"]).order(), 2);
    }

    #[test]
    fn membership() {
        let a4 = group(4, &["(1,2,3)", "(2,3,4)"]);
        assert!(!a4.contains(&p("(1,2)", 4)).unwrap());
        assert!(a4.contains(&p("(1,2)(3,4)", 4)).unwrap());
        assert!(a4.contains(&p("(1,2)", 5)).is_err());
    }

    #[test]
    fn stabilizers() {
        let c3 = group(3, &["(1,2,3)"]);
        assert_eq!(c3.point_stabilizer(1).unwrap().order(), 1);
        let s4 = group(4, &["(1,2,3,4)", "(1,2)"]);
        let h = s4.point_stabilizer(4).unwrap();
        assert_eq!(h.order(), 6);
        assert!(h.generators().iter().all(|g| g.apply(4).unwrap() == 4));
    }

    #[test]
    fn enumeration() {
        let c3 = group(3, &["(1,2,3)"]);
        assert_eq!(c3.enumerate_elements(10).unwrap().count(), 3);
        let a5 = group(5, &["(1,2,3,4,5)", "(3,4,5)"]);
        let elems: Vec<_> = a5.enumerate_elements(100).unwrap().collect();
        let set: HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(elems.len(), 60);
        assert_eq!(set, closure(&a5));
        assert!(matches!(
            a5.enumerate_elements(59),
            Err(GroupError::TooLarge {
                order: 60,
                limit: 59
            })
        ));
        let trivial = PermGroup::trivial(3).unwrap();
        assert_eq!(trivial.enumerate_elements(1).unwrap().count(), 1);
    }

    #[test]
    fn normality() {
        let s3 = group(3, &["(1,2,3)", "(1,2)"]);
        assert!(s3.is_normal(&group(3, &["(1,2,3)"])).unwrap());
        assert!(!s3.is_normal(&group(3, &["(1,2)"])).unwrap());
        let a4 = group(4, &["(1,2,3)", "(2,3,4)"]);
        assert!(a4
            .is_normal(&group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]))
            .unwrap());
        assert!(matches!(
            a4.is_normal(&group(4, &["(1,2)"])),
            Err(GroupError::NotSubgroup { index: 0 })
        ));
    }

    #[test]
    fn random_elements_are_deterministic_and_uniform() {
        let trivial = PermGroup::trivial(4).unwrap();
        assert!(trivial.random_element(7).is_identity());
        let s3 = group(3, &["(1,2,3)", "(1,2)"]);
        assert_eq!(s3.random_element(42), s3.random_element(42));

        let mut counts = std::collections::HashMap::new();
        for g in s3.random_elements(0).take(6000) {
            *counts.entry(g).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 6);
        // Binomial(6000, 1/6): sigma = sqrt(6000 * 1/6 * 5/6).
        let sigma = (6000.0f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
        for &c in counts.values() {
            assert!((c as f64 - 1000.0).abs() < 5.0 * sigma, "count {c}");
        }
    }
}
