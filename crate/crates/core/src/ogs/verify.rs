//! The two verifiers: exhaustive enumeration of the exponent box, and a
//! level-by-level structural check that never enumerates the group.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    segment_words, unrank_digits, ExponentVector, Item, OgsError, OrderedGeneratingSystem, Side,
};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// 512 MiB of fingerprints.
pub const DEFAULT_MEMORY_BUDGET: u128 = 512 * 1024 * 1024;

/// Largest number of words a single level may have for structural checks.
pub const STRUCTURAL_LEVEL_LIMIT: u128 = 1 << 16;

/// Degrees up to this value fingerprint into a `u128` Lehmer code
/// (34! < 2^128).
const COMPACT_DEGREE: usize = 34;

const CHUNK: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Structural,
    Exhaustive,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Structural => "structural",
            Method::Exhaustive => "exhaustive",
        })
    }
}

/// Why a system failed, with enough data to reproduce the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    OrderMismatch {
        bounds_product: u128,
        order: u128,
    },
    /// Two exponent vectors evaluate to the same element.
    Collision {
        first: Vec<u64>,
        second: Vec<u64>,
    },
    /// Two words of a level send the base point to the same place.
    ImageCollision {
        level: usize,
        first: Vec<u64>,
        second: Vec<u64>,
        point: usize,
    },
    /// Two words of a level lie in the same coset of the inner subgroup.
    CosetCollision {
        level: usize,
        first: Vec<u64>,
        second: Vec<u64>,
    },
    OrbitSizeMismatch {
        level: usize,
        words: u128,
        orbit: usize,
    },
    MovesBasePoint {
        level: usize,
        item: usize,
        point: usize,
    },
    SubgroupOrderMismatch {
        level: usize,
        expected: u128,
        found: u128,
    },
    LevelTooLarge {
        level: usize,
        words: u128,
    },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |x: &[u64]| ExponentVector(x.to_vec()).to_string();
        match self {
            Failure::OrderMismatch {
                bounds_product,
                order,
            } => write!(
                f,
                "product of bounds {bounds_product} differs from group order {order}"
            ),
            Failure::Collision { first, second } => write!(
                f,
                "exponent vectors {} and {} give the same element",
                v(first),
                v(second)
            ),
            Failure::ImageCollision {
                level,
                first,
                second,
                point,
            } => write!(
                f,
                "level {level}: words {} and {} both give base-point key {point}",
                v(first),
                v(second)
            ),
            Failure::CosetCollision {
                level,
                first,
                second,
            } => write!(
                f,
                "level {level}: words {} and {} lie in the same coset",
                v(first),
                v(second)
            ),
            Failure::OrbitSizeMismatch {
                level,
                words,
                orbit,
            } => write!(
                f,
                "level {level}: {words} words but the base point orbit has {orbit} points"
            ),
            Failure::MovesBasePoint { level, item, point } => {
                write!(
                    f,
                    "level {level}: inner item {item} moves base point {point}"
                )
            }
            Failure::SubgroupOrderMismatch {
                level,
                expected,
                found,
            } => write!(
                f,
                "level {level}: inner items generate a group of order {found}, expected {expected}"
            ),
            Failure::LevelTooLarge { level, words } => {
                write!(f, "level {level}: {words} words is too many to check")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub method: Method,
    pub ok: bool,
    pub group_order: u128,
    pub words_checked: u128,
    pub failure: Option<Failure>,
}

impl VerificationReport {
    fn pass(method: Method, group_order: u128, words_checked: u128) -> Self {
        VerificationReport {
            method,
            ok: true,
            group_order,
            words_checked,
            failure: None,
        }
    }

    fn fail(method: Method, group_order: u128, words_checked: u128, failure: Failure) -> Self {
        VerificationReport {
            method,
            ok: false,
            group_order,
            words_checked,
            failure: Some(failure),
        }
    }
}

/// Incremental evaluation of consecutive words: `prefix[k]` is the product
/// of the first `k + 1` factors, so advancing the last digit costs one
/// product.
struct Odometer<'a> {
    powers: &'a [Vec<Permutation>],
    digits: Vec<usize>,
    prefix: Vec<Permutation>,
    identity: Permutation,
}

impl<'a> Odometer<'a> {
    fn new(powers: &'a [Vec<Permutation>], degree: usize, rank: u128) -> Self {
        let bounds: Vec<u64> = powers.iter().map(|p| p.len() as u64).collect();
        let digits = unrank_digits(&bounds, rank)
            .into_iter()
            .map(|d| d as usize)
            .collect();
        let identity = Permutation::identity_unchecked(degree);
        let mut od = Odometer {
            powers,
            digits,
            prefix: vec![identity.clone(); powers.len()],
            identity,
        };
        od.refresh(0);
        od
    }

    fn refresh(&mut self, from: usize) {
        for k in from..self.powers.len() {
            let pw = &self.powers[k][self.digits[k]];
            if k == 0 {
                self.prefix[0] = pw.clone();
            } else {
                let (done, rest) = self.prefix.split_at_mut(k);
                done[k - 1].then_into(pw, &mut rest[0]);
            }
        }
    }

    fn current(&self) -> &Permutation {
        self.prefix.last().unwrap_or(&self.identity)
    }

    fn advance(&mut self) {
        let mut k = self.powers.len();
        while k > 0 {
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < self.powers[k].len() {
                self.refresh(k);
                return;
            }
            self.digits[k] = 0;
        }
        self.refresh(0);
    }
}

fn power_table(items: &[Item]) -> Vec<Vec<Permutation>> {
    items
        .iter()
        .map(|item| {
            let mut pows = Vec::with_capacity(item.bound as usize);
            let mut acc = Permutation::identity_unchecked(item.perm.degree());
            for _ in 0..item.bound {
                pows.push(acc.clone());
                acc = acc.then(&item.perm);
            }
            pows
        })
        .collect()
}

/// Lehmer code of the image sequence; injective for degree <= 34.
fn lehmer_code(p: &Permutation) -> u128 {
    let n = p.degree();
    let mut unused: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut code: u128 = 0;
    for (i, &x) in p.images().iter().enumerate() {
        let below = unused & ((1u64 << x) - 1);
        code = code * (n - i) as u128 + below.count_ones() as u128;
        unused &= !(1u64 << x);
    }
    code
}

impl OrderedGeneratingSystem {
    /// Evaluates every word, fingerprints it, and checks all fingerprints
    /// are distinct. Work is split across the rayon pool; the result does
    /// not depend on the number of threads.
    pub fn verify_exhaustive(&self, memory_budget: u128) -> Result<VerificationReport, OgsError> {
        let order = self.group.order();
        let product = self.bounds_product();
        if product != order {
            return Ok(VerificationReport::fail(
                Method::Exhaustive,
                order,
                0,
                Failure::OrderMismatch {
                    bounds_product: product,
                    order,
                },
            ));
        }
        let degree = self.degree();
        let per_word: u128 = if degree <= COMPACT_DEGREE {
            16
        } else {
            16 + 4 * degree as u128
        };
        let required = product.saturating_mul(per_word);
        if required > memory_budget || product > usize::MAX as u128 {
            return Err(OgsError::BudgetExceeded {
                required,
                budget: memory_budget,
            });
        }
        let total = product as usize;
        let powers = power_table(&self.items);

        let duplicate = if degree <= COMPACT_DEGREE {
            let mut codes = vec![0u128; total];
            codes
                .par_chunks_mut(CHUNK)
                .enumerate()
                .for_each(|(ci, chunk)| {
                    let mut od = Odometer::new(&powers, degree, (ci * CHUNK) as u128);
                    for slot in chunk.iter_mut() {
                        *slot = lehmer_code(od.current());
                        od.advance();
                    }
                });
            codes.par_sort_unstable();
            codes
                .windows(2)
                .find(|w| w[0] == w[1])
                .map(|w| w[0])
                .map(|code| self.find_collision(&powers, |p| lehmer_code(p) == code))
        } else {
            let mut words: Vec<Box<[u32]>> = (0..total.div_ceil(CHUNK))
                .into_par_iter()
                .flat_map_iter(|ci| {
                    let start = ci * CHUNK;
                    let len = CHUNK.min(total - start);
                    let mut od = Odometer::new(&powers, degree, start as u128);
                    (0..len)
                        .map(|_| {
                            let out: Box<[u32]> = od.current().images().into();
                            od.advance();
                            out
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            words.par_sort_unstable();
            words
                .windows(2)
                .find(|w| w[0] == w[1])
                .map(|w| w[0].clone())
                .map(|img| self.find_collision(&powers, |p| p.images() == &img[..]))
        };

        Ok(match duplicate {
            None => VerificationReport::pass(Method::Exhaustive, order, product),
            Some((first, second)) => VerificationReport::fail(
                Method::Exhaustive,
                order,
                product,
                Failure::Collision { first, second },
            ),
        })
    }

    /// The two smallest exponent vectors whose words satisfy `hit`.
    fn find_collision(
        &self,
        powers: &[Vec<Permutation>],
        hit: impl Fn(&Permutation) -> bool,
    ) -> (Vec<u64>, Vec<u64>) {
        let bounds = self.bounds();
        let mut od = Odometer::new(powers, self.degree(), 0);
        let mut found = Vec::with_capacity(2);
        let total = self.bounds_product();
        let mut r = 0u128;
        while r < total && found.len() < 2 {
            if hit(od.current()) {
                found.push(unrank_digits(&bounds, r));
            }
            od.advance();
            r += 1;
        }
        let second = found.pop().expect("duplicate seen twice");
        let first = found.pop().expect("duplicate seen twice");
        (first, second)
    }

    /// Checks each level's transversal claim and the order of the subgroup
    /// generated by the items inside it, from the outermost level in.
    pub fn verify_structural(&self) -> Result<VerificationReport, OgsError> {
        let levels = self.levels.as_ref().ok_or(OgsError::MissingLevels)?;
        let order = self.group.order();
        let product = self.bounds_product();
        let fail = |words, failure| {
            Ok(VerificationReport::fail(
                Method::Structural,
                order,
                words,
                failure,
            ))
        };
        if product != order {
            return fail(
                0,
                Failure::OrderMismatch {
                    bounds_product: product,
                    order,
                },
            );
        }

        let degree = self.degree();
        let mut current: PermGroup = (*self.group).clone();
        let mut current_order = order;
        let (mut lo, mut hi) = (0usize, self.items.len());
        let mut checked: u128 = 0;

        for (li, level) in levels.iter().enumerate() {
            match level.side {
                Side::Left => lo = level.to,
                Side::Right => hi = level.from,
            }
            let segment = &self.items[level.from..level.to];
            let count: u128 = segment.iter().map(|i| i.bound as u128).product();
            if count > STRUCTURAL_LEVEL_LIMIT {
                return fail(
                    checked,
                    Failure::LevelTooLarge {
                        level: li,
                        words: count,
                    },
                );
            }
            let words = segment_words(segment, degree);
            checked += count;
            let inner_items = &self.items[lo..hi];
            let inner = PermGroup::generated_by(
                degree,
                inner_items
                    .iter()
                    .map(|i| i.perm.clone())
                    .filter(|p| !p.is_identity())
                    .collect(),
            );

            match level.base_point {
                Some(b) => {
                    let b0 = b - 1;
                    let mut seen: HashMap<usize, usize> = HashMap::new();
                    for (wi, (e, w)) in words.iter().enumerate() {
                        let key = coset_key(w, b0, level.side);
                        if let Some(&prev) = seen.get(&key) {
                            return fail(
                                checked,
                                Failure::ImageCollision {
                                    level: li,
                                    first: words[prev].0.clone(),
                                    second: e.clone(),
                                    point: key + 1,
                                },
                            );
                        }
                        seen.insert(key, wi);
                    }
                    let orbit = current.orbit_len(b)?;
                    if count != orbit as u128 {
                        return fail(
                            checked,
                            Failure::OrbitSizeMismatch {
                                level: li,
                                words: count,
                                orbit,
                            },
                        );
                    }
                    for (k, item) in inner_items.iter().enumerate() {
                        if item.perm.image0(b0) != b0 {
                            return fail(
                                checked,
                                Failure::MovesBasePoint {
                                    level: li,
                                    item: lo + k,
                                    point: b,
                                },
                            );
                        }
                    }
                }
                None => {
                    if let Some((i, j)) = first_coset_collision(&words, &inner, level.side) {
                        return fail(
                            checked,
                            Failure::CosetCollision {
                                level: li,
                                first: words[i].0.clone(),
                                second: words[j].0.clone(),
                            },
                        );
                    }
                }
            }

            let inner_order = inner.order();
            if inner_order.checked_mul(count) != Some(current_order) {
                return fail(
                    checked,
                    Failure::SubgroupOrderMismatch {
                        level: li,
                        expected: current_order / count.max(1),
                        found: inner_order,
                    },
                );
            }
            current = inner;
            current_order = inner_order;
        }
        Ok(VerificationReport::pass(Method::Structural, order, checked))
    }
}

/// Point identifying the coset of a point stabilizer containing `w`:
/// `b^w` for right cosets `Hw`, `b^(w^-1)` for left cosets `wH`.
pub(crate) fn coset_key(w: &Permutation, b0: usize, side: Side) -> usize {
    match side {
        Side::Right => w.image0(b0),
        Side::Left => w
            .images()
            .iter()
            .position(|&x| x as usize == b0)
            .expect("bijection"),
    }
}

/// First pair of words in the same coset of `h`, by membership tests.
pub(crate) fn first_coset_collision(
    words: &[(Vec<u64>, Permutation)],
    h: &PermGroup,
    side: Side,
) -> Option<(usize, usize)> {
    let chain = h.chain();
    let inverses: Vec<Permutation> = words.iter().map(|(_, w)| w.inverse()).collect();
    for j in 1..words.len() {
        for i in 0..j {
            let q = match side {
                Side::Right => words[i].1.then(&inverses[j]),
                Side::Left => inverses[j].then(&words[i].1),
            };
            if chain.contains(&q) {
                return Some((i, j));
            }
        }
    }
    None
}
