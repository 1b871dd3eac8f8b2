//! Test oracles on plain 1-based image vectors. Nothing here calls the
//! library's composition, chain or word code.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use ogs_core::{OrderedGeneratingSystem, Permutation};

pub type Images = Vec<usize>;

pub fn images(p: &Permutation) -> Images {
    p.images_one_based()
}

pub fn identity(n: usize) -> Images {
    (1..=n).collect()
}

/// `p` then `q`: `x -> q(p(x))`.
pub fn then(p: &[usize], q: &[usize]) -> Images {
    p.iter().map(|&x| q[x - 1]).collect()
}

pub fn power(p: &[usize], k: u64) -> Images {
    let mut out = identity(p.len());
    for _ in 0..k {
        out = then(&out, p);
    }
    out
}

/// Every element of the group generated by `gens`, by breadth-first
/// closure under right multiplication.
pub fn closure(degree: usize, gens: &[Images]) -> HashSet<Images> {
    let start = identity(degree);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = then(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn group_closure(ogs_group: &ogs_core::PermGroup) -> HashSet<Images> {
    let gens: Vec<Images> = ogs_group.generators().iter().map(images).collect();
    closure(ogs_group.degree(), &gens)
}

/// `a_1^e_1 * .. * a_n^e_n`, leftmost acting first.
pub fn word(ogs: &OrderedGeneratingSystem, e: &[u64]) -> Images {
    let mut out = identity(ogs.degree());
    for (item, &k) in ogs.items().iter().zip(e) {
        out = then(&out, &power(&images(&item.perm), k));
    }
    out
}

/// Mixed-radix digits of `rank`, first digit most significant.
pub fn digits(bounds: &[u64], mut rank: u128) -> Vec<u64> {
    let mut out = vec![0; bounds.len()];
    for (d, &m) in out.iter_mut().zip(bounds).rev() {
        *d = (rank % m as u128) as u64;
        rank /= m as u128;
    }
    out
}

/// The set of all words, when every exponent vector gives a new element.
pub fn distinct_words(ogs: &OrderedGeneratingSystem) -> Option<HashSet<Images>> {
    let bounds = ogs.bounds();
    let total: u128 = bounds.iter().map(|&m| m as u128).product();
    let mut seen = HashSet::with_capacity(total as usize);
    for r in 0..total {
        if !seen.insert(word(ogs, &digits(&bounds, r))) {
            return None;
        }
    }
    Some(seen)
}

pub fn cycles_lcm(p: &[usize]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut l = 1u64;
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] - 1;
            len += 1;
        }
        if len > 0 {
            l = lcm(l, len);
        }
    }
    l
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

/// A small deterministic generator for test sampling (SplitMix64).
pub struct Mix(pub u64);

impl Mix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u128) -> u128 {
        let wide = ((self.next() as u128) << 64) | self.next() as u128;
        wide % n
    }
}

pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Images {
    (1..=n).map(f).collect()
}

/// Disjoint cycles on consecutive points, starting at 1.
pub fn cycles_of(lengths: &[usize]) -> Images {
    let n = lengths.iter().sum();
    let mut out = identity(n);
    let mut start = 0;
    for &l in lengths {
        for i in 0..l {
            out[start + i] = start + (i + 1) % l + 1;
        }
        start += l;
    }
    out
}

pub struct Fixture {
    pub name: &'static str,
    pub degree: usize,
    pub gens: Vec<Images>,
    pub order: u128,
}

fn affine_line(p: usize, mult: usize) -> Vec<Images> {
    vec![
        from_fn(p, |x| x % p + 1),
        from_fn(p, |x| (x - 1) * mult % p + 1),
    ]
}

/// Points `(a, b)` of `F_3^2` numbered `3a + b + 1`.
fn plane3(f: impl Fn(usize, usize) -> (usize, usize)) -> Images {
    from_fn(9, |x| {
        let (a, b) = f((x - 1) / 3, (x - 1) % 3);
        3 * (a % 3) + b % 3 + 1
    })
}

/// Non-zero vectors of `F_3^2`, in the order of `plane3` minus the origin.
fn gl23(m: [usize; 4]) -> Images {
    let pts: Vec<(usize, usize)> = (1..9).map(|x| (x / 3, x % 3)).collect();
    from_fn(8, |x| {
        let (a, b) = pts[x - 1];
        let img = ((m[0] * a + m[1] * b) % 3, (m[2] * a + m[3] * b) % 3);
        pts.iter().position(|&p| p == img).unwrap() + 1
    })
}

/// `F_8 = F_2[t]/(t^3 + t + 1)`, elements as bit masks, point `x + 1`.
fn gf8_mul(a: usize, b: usize) -> usize {
    let mut r = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    for i in (3..5).rev() {
        if r >> i & 1 == 1 {
            r ^= 0b1011 << (i - 3);
        }
    }
    r
}

/// Solvable groups of order at most 2000 with their known orders.
pub fn solvable_fixtures() -> Vec<Fixture> {
    let fx = |name, gens: Vec<Images>, order| Fixture {
        name,
        degree: gens[0].len(),
        gens,
        order,
    };
    let reflection = |n: usize| from_fn(n, |x| (n + 1 - x) % n + 1);
    vec![
        fx("C7", vec![cycles_of(&[7])], 7),
        fx("C12", vec![cycles_of(&[12])], 12),
        fx("C35", vec![cycles_of(&[5, 7])], 35),
        fx(
            "C2^3",
            vec![
                cycles_of(&[2, 1, 1, 1, 1]),
                from_fn(6, |x| [1, 2, 4, 3, 5, 6][x - 1]),
                from_fn(6, |x| [1, 2, 3, 4, 6, 5][x - 1]),
            ],
            8,
        ),
        fx("S3", vec![cycles_of(&[3]), cycles_of(&[2, 1])], 6),
        fx("D5", vec![cycles_of(&[5]), reflection(5)], 10),
        fx("D8", vec![cycles_of(&[8]), reflection(8)], 16),
        fx("D12", vec![cycles_of(&[12]), reflection(12)], 24),
        fx(
            "Q8",
            vec![
                from_fn(8, |x| [2, 3, 4, 1, 6, 7, 8, 5][x - 1]),
                from_fn(8, |x| [5, 8, 7, 6, 3, 2, 1, 4][x - 1]),
            ],
            8,
        ),
        fx(
            "A4",
            vec![
                from_fn(4, |x| [2, 3, 1, 4][x - 1]),
                from_fn(4, |x| [1, 3, 4, 2][x - 1]),
            ],
            12,
        ),
        fx("S4", vec![cycles_of(&[4]), cycles_of(&[2, 1, 1])], 24),
        fx("F20", affine_line(5, 2), 20),
        fx(
            "F21",
            vec![cycles_of(&[7]), from_fn(7, |x| (x - 1) * 2 % 7 + 1)],
            21,
        ),
        fx("AGL(1,7)", affine_line(7, 3), 42),
        fx("AGL(1,11)", affine_line(11, 2), 110),
        fx("AGL(1,13)", affine_line(13, 2), 156),
        fx(
            "C3 wr C2",
            vec![cycles_of(&[3, 1, 1, 1]), from_fn(6, |x| (x + 2) % 6 + 1)],
            18,
        ),
        fx(
            "S3 x S3",
            vec![
                cycles_of(&[3, 1, 1, 1]),
                cycles_of(&[2, 1, 1, 1, 1]),
                from_fn(6, |x| [1, 2, 3, 5, 6, 4][x - 1]),
                from_fn(6, |x| [1, 2, 3, 5, 4, 6][x - 1]),
            ],
            36,
        ),
        fx(
            "S4 wr C2",
            vec![
                cycles_of(&[4, 1, 1, 1, 1]),
                cycles_of(&[2, 1, 1, 1, 1, 1, 1]),
                from_fn(8, |x| (x + 3) % 8 + 1),
            ],
            1152,
        ),
        fx(
            "GL(2,3)",
            vec![gl23([1, 1, 0, 1]), gl23([0, 2, 1, 0]), gl23([2, 0, 0, 1])],
            48,
        ),
        fx(
            "ASL(2,3)",
            vec![
                plane3(|a, b| (a + 1, b)),
                plane3(|a, b| (a + b, b)),
                plane3(|a, b| (2 * b, a)),
            ],
            216,
        ),
        fx(
            "AGammaL(1,8)",
            vec![
                from_fn(8, |x| ((x - 1) ^ 1) + 1),
                from_fn(8, |x| gf8_mul(x - 1, 2) + 1),
                from_fn(8, |x| gf8_mul(x - 1, x - 1) + 1),
            ],
            168,
        ),
    ]
}

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images(images).expect("fixture images are bijective")
}
