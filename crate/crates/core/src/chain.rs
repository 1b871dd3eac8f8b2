//! Stabilizer chains built by a deterministic Schreier–Sims procedure.
//!
//! Level `j` holds base point `b_j`, the strong generators fixing
//! `b_1..b_{j-1}` and a transversal of the orbit of `b_j` under them.
//! Every representative `u_x` maps `b_j` to `x`, so any element `g` of the
//! level group factors as `g = h * u_x` with `x = b_j^g` and `h` fixing `b_j`.

use crate::perm::Permutation;

/// Orbits longer than this keep a Schreier vector instead of explicit
/// representatives.
pub const EXPLICIT_TRANSVERSAL_LIMIT: usize = 4096;

const NOT_IN_ORBIT: u32 = u32::MAX;

#[derive(Debug, Clone)]
enum Reps {
    /// `reps[i]` maps the base point to `orbit[i]`.
    Explicit(Vec<Permutation>),
    /// `via[i]` is the index of the generator that reached `orbit[i]` from
    /// its parent in the breadth-first tree (unused for the base point).
    Schreier {
        via: Vec<u32>,
        inverses: Vec<Permutation>,
    },
}

/// Orbit of one point plus a coset representative for every orbit point.
#[derive(Debug, Clone)]
pub struct Transversal {
    base: usize,
    orbit: Vec<usize>,
    index_of: Vec<u32>,
    reps: Reps,
}

impl Transversal {
    /// Breadth-first orbit of a 0-based point; deterministic in generator
    /// order.
    pub(crate) fn build(degree: usize, base: usize, generators: &[Permutation]) -> Self {
        let mut orbit = vec![base];
        let mut index_of = vec![NOT_IN_ORBIT; degree];
        index_of[base] = 0;
        let mut via = vec![u32::MAX];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for (gi, g) in generators.iter().enumerate() {
                let y = g.image0(x);
                if index_of[y] == NOT_IN_ORBIT {
                    index_of[y] = orbit.len() as u32;
                    orbit.push(y);
                    via.push(gi as u32);
                }
            }
        }

        let reps = if orbit.len() <= EXPLICIT_TRANSVERSAL_LIMIT {
            let mut reps: Vec<Permutation> = Vec::with_capacity(orbit.len());
            reps.push(Permutation::identity_unchecked(degree));
            for i in 1..orbit.len() {
                let g = &generators[via[i] as usize];
                let parent = g.inverse().image0(orbit[i]);
                let rep = reps[index_of[parent] as usize].then(g);
                reps.push(rep);
            }
            Reps::Explicit(reps)
        } else {
            Reps::Schreier {
                via,
                inverses: generators.iter().map(Permutation::inverse).collect(),
            }
        };
        Transversal {
            base,
            orbit,
            index_of,
            reps,
        }
    }

    /// 0-based base point.
    pub fn base0(&self) -> usize {
        self.base
    }

    /// Orbit points (0-based) in breadth-first order.
    pub fn orbit0(&self) -> &[usize] {
        &self.orbit
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn contains0(&self, point: usize) -> bool {
        self.index_of[point] != NOT_IN_ORBIT
    }

    /// Representative mapping the base point to the 0-based `point`.
    pub fn representative0(&self, point: usize) -> Option<Permutation> {
        let idx = self.index_of[point];
        if idx == NOT_IN_ORBIT {
            return None;
        }
        match &self.reps {
            Reps::Explicit(reps) => Some(reps[idx as usize].clone()),
            Reps::Schreier { .. } => {
                let degree = self.index_of.len();
                Some(
                    self.strip0(Permutation::identity_unchecked(degree), point)
                        .inverse(),
                )
            }
        }
    }

    /// `g * u_x^-1` where `x` is in the orbit.
    fn strip0(&self, g: Permutation, point: usize) -> Permutation {
        match &self.reps {
            Reps::Explicit(reps) => g.then(&reps[self.index_of[point] as usize].inverse()),
            Reps::Schreier { via, inverses } => {
                let mut g = g;
                let mut x = point;
                while x != self.base {
                    let gi = via[self.index_of[x] as usize] as usize;
                    g = g.then(&inverses[gi]);
                    x = inverses[gi].image0(x);
                }
                g
            }
        }
    }

    fn explicit_inverses(&self) -> Option<Vec<Permutation>> {
        match &self.reps {
            Reps::Explicit(reps) => Some(reps.iter().map(Permutation::inverse).collect()),
            Reps::Schreier { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub(crate) generators: Vec<Permutation>,
    pub(crate) transversal: Transversal,
    /// Cached inverses of explicit representatives, for sifting.
    rep_inverses: Option<Vec<Permutation>>,
}

impl ChainLevel {
    fn new(degree: usize, base: usize, generators: Vec<Permutation>) -> Self {
        let transversal = Transversal::build(degree, base, &generators);
        let rep_inverses = transversal.explicit_inverses();
        ChainLevel {
            generators,
            transversal,
            rep_inverses,
        }
    }

    fn rebuild(&mut self, degree: usize) {
        *self = ChainLevel::new(
            degree,
            self.transversal.base,
            std::mem::take(&mut self.generators),
        );
    }

    /// 1-based base point.
    pub fn base_point(&self) -> usize {
        self.transversal.base + 1
    }

    /// Strong generators of this level's group.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn orbit_len(&self) -> usize {
        self.transversal.len()
    }

    /// Orbit points (1-based) in breadth-first order.
    pub fn orbit(&self) -> Vec<usize> {
        self.transversal.orbit.iter().map(|p| p + 1).collect()
    }

    #[inline]
    fn strip(&self, g: Permutation, point: usize) -> Permutation {
        match &self.rep_inverses {
            Some(inv) => g.then(&inv[self.transversal.index_of[point] as usize]),
            None => self.transversal.strip0(g, point),
        }
    }

    /// Representatives in orbit order.
    pub(crate) fn representatives(&self) -> Vec<Permutation> {
        self.transversal
            .orbit
            .iter()
            .map(|&x| self.transversal.representative0(x).expect("orbit point"))
            .collect()
    }
}

/// Base, strong generators and transversals of a permutation group.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    /// Runs Schreier–Sims on `generators`. Base points come from `base_hint`
    /// (1-based, kept even when fixed by the group) and then from the first
    /// point moved by each new strong generator.
    pub fn build(degree: usize, generators: &[Permutation], base_hint: &[usize]) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();

        let mut base: Vec<usize> = Vec::new();
        for &b in base_hint {
            if b >= 1 && b <= degree && !base.contains(&(b - 1)) {
                base.push(b - 1);
            }
        }
        for g in &gens {
            if base.iter().all(|&b| g.image0(b) == b) {
                base.push(g.first_moved0().expect("non-identity"));
            }
        }

        let mut levels: Vec<ChainLevel> = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let level_gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&p| g.image0(p) == p))
                .cloned()
                .collect();
            levels.push(ChainLevel::new(degree, b, level_gens));
        }

        let mut chain = StabilizerChain { degree, levels };
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            match self.find_missing_generator(i) {
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = h.first_moved0().expect("non-identity residue");
                        self.levels
                            .push(ChainLevel::new(self.degree, b, Vec::new()));
                    }
                    for l in i + 1..=j {
                        self.levels[l].generators.push(h.clone());
                        self.levels[l].rebuild(self.degree);
                    }
                    i = j;
                }
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
    }

    /// Sifts every Schreier generator of level `i` through the levels
    /// below; returns the first non-trivial residue and the level where it
    /// dropped out.
    fn find_missing_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        let t = &level.transversal;
        for &x in &t.orbit {
            let ux = t.representative0(x).expect("orbit point");
            for s in &level.generators {
                let xs = s.image0(x);
                let sg = level.strip(ux.then(s), xs);
                if sg.is_identity() {
                    continue;
                }
                let (h, j) = self.sift_from(sg, i + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Strips `g` through levels `from..`; returns the residue and the index
    /// of the level whose orbit missed (or `levels.len()` when all matched).
    pub(crate) fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let b = level.transversal.base;
            let x = g.image0(b);
            if !level.transversal.contains0(x) {
                return (g, j);
            }
            g = level.strip(g, x);
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    /// 1-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(ChainLevel::base_point).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit_len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    /// The chain of the stabilizer of the first `depth` base points.
    pub fn tail(&self, depth: usize) -> StabilizerChain {
        StabilizerChain {
            degree: self.degree,
            levels: self.levels[depth.min(self.levels.len())..].to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn a5_order_and_membership() {
        let gens = [p("(1,2,3,4,5)", 5), p("(3,4,5)", 5)];
        let chain = StabilizerChain::build(5, &gens, &[]);
        assert_eq!(chain.order(), 60);
        assert!(chain.contains(&p("(1,2)(3,4)", 5)));
        assert!(!chain.contains(&p("(1,2)", 5)));
    }

    #[test]
    fn representatives_map_base_to_point() {
        let gens = [p("(1,2,3,4,5,6)", 6), p("(1,2)", 6)];
        let chain = StabilizerChain::build(6, &gens, &[4]);
        assert_eq!(chain.order(), 720);
        assert_eq!(chain.base()[0], 4);
        for level in chain.levels() {
            for &x in level.transversal().orbit0() {
                let u = level.transversal().representative0(x).unwrap();
                assert_eq!(u.image0(level.transversal().base0()), x);
            }
        }
    }

    #[test]
    fn schreier_vector_transversal_matches_explicit() {
        let n = EXPLICIT_TRANSVERSAL_LIMIT + 3;
        let mut images: Vec<u32> = (1..n as u32).collect();
        images.push(0);
        let cycle = Permutation::from_zero_based(images);
        let t = Transversal::build(n, 0, std::slice::from_ref(&cycle));
        assert!(matches!(t.reps, Reps::Schreier { .. }));
        for x in [1usize, 17, n - 1] {
            let u = t.representative0(x).unwrap();
            assert_eq!(u, cycle.power(x as i64));
            assert!(t.strip0(u, x).is_identity());
        }
    }
}
