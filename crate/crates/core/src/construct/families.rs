//! Systems for standard families of groups.

use std::collections::HashSet;
use std::sync::Arc;

use super::series::{is_prime, solvable_ogs, COMPOSITION_ORDER_LIMIT};
use super::{
    attach_level, certify, extend_by_quotient, power_cover_search, trivial_ogs, ConstructError,
    SearchConfig, TransversalRecipe, ENUMERATION_LIMIT, RANDOM_DRAWS,
};
use crate::group::PermGroup;
use crate::ogs::verify::coset_key;
use crate::ogs::{segment_words, Item, Level, OrderedGeneratingSystem, Side};
use crate::perm::Permutation;

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(degree, &[points.into_iter().collect()]).expect("valid cycle")
}

/// `A_n` on `n` points, generated by `(1,2,3)` and an `n`- or `(n-1)`-cycle.
pub fn alternating_group(n: usize) -> Result<PermGroup, ConstructError> {
    if n < 3 {
        return Ok(PermGroup::trivial(n.max(1)).map_err(crate::group::GroupError::from)?);
    }
    let mut gens = vec![cycle(n, 1..=3)];
    if n > 3 {
        gens.push(if n % 2 == 1 {
            cycle(n, 1..=n)
        } else {
            cycle(n, 2..=n)
        });
    }
    Ok(PermGroup::new(gens)?)
}

/// Items of the level moving `m` in `A_m`: the `m`-cycle for odd `m`; for
/// `m = 2k+2` two disjoint `(k+1)`-cycles followed by an involution.
fn alternating_level(n: usize, m: usize) -> Vec<Item> {
    if m % 2 == 1 {
        return vec![Item::new(cycle(n, 1..=m), m as u64)];
    }
    let k = (m - 2) / 2;
    let a = Permutation::from_cycles(n, &[(1..=k + 1).collect(), (k + 2..=2 * k + 2).collect()])
        .expect("disjoint cycles");
    let b = Permutation::from_cycles(n, &[vec![k + 1, 2 * k + 2], vec![1, 2 * k + 1]])
        .expect("disjoint transpositions");
    vec![Item::new(a, k as u64 + 1), Item::new(b, 2)]
}

/// Checks that the left keys of a level's words are exactly `1..=m`.
fn check_level_keys(items: &[Item], n: usize, m: usize) -> Result<(), ConstructError> {
    let words = segment_words(items, n);
    let mut seen = std::collections::HashMap::new();
    for (e, w) in &words {
        let key = coset_key(w, m - 1, Side::Left);
        if key >= m {
            return Err(ConstructError::Certification(format!(
                "word {e:?} sends {} outside 1..={m}",
                key + 1
            )));
        }
        if let Some(prev) = seen.insert(key, e.clone()) {
            return Err(ConstructError::CosetCollision {
                first: prev,
                second: e.clone(),
            });
        }
    }
    if seen.len() != m {
        return Err(ConstructError::IndexMismatch {
            expected: m as u128,
            found: seen.len() as u128,
        });
    }
    Ok(())
}

/// `A_n` as left levels with base points `n, n-1, .., 4` over `A_3`.
pub fn ogs_alternating(n: usize) -> Result<OrderedGeneratingSystem, ConstructError> {
    if n == 0 {
        return Err(ConstructError::Invalid("degree must be positive".into()));
    }
    let name = format!("A{n}");
    if n < 3 {
        return Ok(trivial_ogs(n)?.with_group_name(name));
    }
    let group = Arc::new(alternating_group(n)?);
    let mut items = Vec::new();
    let mut levels = Vec::new();
    let mut push = |segment: Vec<Item>, base: Option<usize>, items: &mut Vec<Item>| {
        levels.push(Level {
            from: items.len(),
            to: items.len() + segment.len(),
            base_point: base,
            side: Side::Left,
        });
        items.extend(segment);
    };
    for m in (4..=n).rev() {
        let level = alternating_level(n, m);
        match check_level_keys(&level, n, m) {
            Ok(()) => push(level, Some(m), &mut items),
            Err(e) if m != 4 => return Err(e),
            Err(_) => {
                // A_4 is solvable: fall back to its composition series.
                let a4 = Arc::new(PermGroup::new(vec![cycle(n, 1..=3), cycle(n, 2..=4)])?);
                let inner = solvable_ogs(a4, "A4")?;
                let shift = items.len();
                for l in inner.levels().unwrap_or_default() {
                    levels.push(Level {
                        from: l.from + shift,
                        to: l.to + shift,
                        ..*l
                    });
                }
                items.extend_from_slice(inner.items());
                let ogs =
                    OrderedGeneratingSystem::new(group, name, items, Some(levels), "alternating")?;
                return certify(ogs);
            }
        }
    }
    push(vec![Item::new(cycle(n, 1..=3), 3)], Some(3), &mut items);
    let ogs = OrderedGeneratingSystem::new(group, name, items, Some(levels), "alternating")?;
    certify(ogs)
}

/// `S_n` as the quotient level `(1,2)` in front of the system of `A_n`.
pub fn ogs_symmetric(n: usize) -> Result<OrderedGeneratingSystem, ConstructError> {
    if n == 0 {
        return Err(ConstructError::Invalid("degree must be positive".into()));
    }
    let name = format!("S{n}");
    if n == 1 {
        return Ok(trivial_ogs(1)?.with_group_name(name));
    }
    let t = cycle(n, [1, 2]);
    let gens = if n == 2 {
        vec![t.clone()]
    } else {
        vec![t.clone(), cycle(n, 1..=n)]
    };
    let g = Arc::new(PermGroup::new(gens)?);
    let a = ogs_alternating(n)?;
    let h = a.group().clone();
    let ogs = extend_by_quotient(&g, &h, &a, vec![Item::new(t, 2)])?;
    Ok(certify(ogs)?.with_group_name(name))
}

/// `C_n` generated by the `n`-cycle, one right level at point 1.
pub fn ogs_cyclic(n: usize) -> Result<OrderedGeneratingSystem, ConstructError> {
    if n == 0 {
        return Err(ConstructError::Invalid("order must be positive".into()));
    }
    let name = format!("C{n}");
    if n == 1 {
        return Ok(trivial_ogs(1)?.with_group_name(name));
    }
    let c = cycle(n, 1..=n);
    let g = Arc::new(PermGroup::new(vec![c.clone()])?);
    let level = Level {
        from: 0,
        to: 1,
        base_point: Some(1),
        side: Side::Right,
    };
    let ogs = OrderedGeneratingSystem::new(
        g,
        name,
        vec![Item::new(c, n as u64)],
        Some(vec![level]),
        "cyclic",
    )?;
    certify(ogs)
}

/// One right or left level per stabilizer-chain level, each found by
/// [`power_cover_search`]. When a level has no cover with
/// `config.max_items` items (a regular elementary abelian orbit, say) and
/// the remaining stabilizer is small and solvable, that whole tail comes
/// from its composition series instead.
pub fn ogs_from_chain(
    g: Arc<PermGroup>,
    name: &str,
    config: SearchConfig,
) -> Result<OrderedGeneratingSystem, ConstructError> {
    let chain = g.chain();
    let mut segments: Vec<TransversalRecipe> = Vec::new();
    let mut tail: Option<OrderedGeneratingSystem> = None;
    for (depth, level) in chain.levels().iter().enumerate() {
        if level.orbit_len() == 1 {
            continue;
        }
        let sub = g.chain_subgroup(depth);
        let level_config = SearchConfig {
            seed: config.seed.wrapping_add(depth as u64),
            ..config
        };
        match power_cover_search(&sub, level.base_point(), level_config) {
            Ok(r) => segments.push(r),
            Err(ConstructError::NotFound(msg)) => {
                if sub.order() > COMPOSITION_ORDER_LIMIT {
                    return Err(ConstructError::NotFound(msg));
                }
                tail = Some(solvable_ogs(Arc::new(sub), name).map_err(|e| {
                    ConstructError::NotFound(format!("{msg}; composition series fallback: {e}"))
                })?);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let tail_items = tail.as_ref().map_or(&[][..], |t| t.items());
    let tail_levels = tail.as_ref().and_then(|t| t.levels()).unwrap_or_default();
    let seg_total: usize = segments.iter().map(|r| r.elements.len()).sum();
    let mut levels = Vec::with_capacity(segments.len() + tail_levels.len());
    let mut items = Vec::with_capacity(seg_total + tail_items.len());
    match config.side {
        Side::Left => {
            for r in &segments {
                levels.push(Level {
                    from: items.len(),
                    to: items.len() + r.elements.len(),
                    base_point: r.base_point,
                    side: Side::Left,
                });
                items.extend_from_slice(&r.elements);
            }
            levels.extend(tail_levels.iter().map(|l| Level {
                from: l.from + seg_total,
                to: l.to + seg_total,
                ..*l
            }));
            items.extend_from_slice(tail_items);
        }
        Side::Right => {
            let mut end = tail_items.len() + seg_total;
            for r in &segments {
                levels.push(Level {
                    from: end - r.elements.len(),
                    to: end,
                    base_point: r.base_point,
                    side: Side::Right,
                });
                end -= r.elements.len();
            }
            levels.extend_from_slice(tail_levels);
            items.extend_from_slice(tail_items);
            for r in segments.iter().rev() {
                items.extend_from_slice(&r.elements);
            }
        }
    }
    let mut provenance = format!(
        "power-cover(seed={}, budget={})",
        config.seed, config.budget
    );
    if tail.is_some() {
        provenance.push_str(" + composition-series tail");
    }
    certify(OrderedGeneratingSystem::new(
        g,
        name,
        items,
        Some(levels),
        provenance,
    )?)
}

/// How the point stabilizer of `PSL(2,q)` gets its system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubgroupStrategy {
    /// Composition series when small enough, otherwise the triangular chain.
    #[default]
    Auto,
    CompositionSeries,
    /// Scalings `x -> s x` over translations `x -> x + t`.
    TriangularChain,
}

fn mod_pow(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

fn primitive_root(q: u64) -> u64 {
    let mut factors = Vec::new();
    let mut n = q - 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..q)
        .find(|&g| factors.iter().all(|&f| mod_pow(g, (q - 1) / f, q) != 1))
        .expect("prime modulus")
}

/// `x -> (a x + b) / (c x + d)` on the points `1..=q` (field elements
/// `0..q`) and `q+1` (infinity).
fn mobius(q: u64, [a, b, c, d]: [u64; 4]) -> Permutation {
    let inf = q;
    let inv = |x: u64| mod_pow(x, q - 2, q);
    let images: Vec<usize> = (0..=q)
        .map(|x| {
            let y = if x == inf {
                if c == 0 {
                    inf
                } else {
                    a * inv(c) % q
                }
            } else {
                let den = (c * x + d) % q;
                if den == 0 {
                    inf
                } else {
                    (a * x + b) % q * inv(den) % q
                }
            };
            y as usize + 1
        })
        .collect();
    Permutation::from_images(&images).expect("Möbius maps are bijective")
}

/// `PSL(2,q)` on the projective line, generated by `x -> x+1`,
/// `x -> g^2 x` and `x -> -1/x`. Infinity is point `q+1`.
pub fn psl2_group(q: u64) -> Result<PermGroup, ConstructError> {
    if q < 5 || !is_prime(q as u128) {
        return Err(ConstructError::Invalid(format!(
            "q = {q} must be a prime of at least 5"
        )));
    }
    let g = primitive_root(q);
    let t = mobius(q, [1, 1, 0, 1]);
    let d = mobius(q, [g, 0, 0, mod_pow(g, q - 2, q)]);
    let w = mobius(q, [0, q - 1, 1, 0]);
    Ok(PermGroup::new(vec![t, d, w])?.with_base_hint(vec![q as usize + 1]))
}

pub fn ogs_psl2(q: u64) -> Result<OrderedGeneratingSystem, ConstructError> {
    ogs_psl2_with(q, SubgroupStrategy::Auto, 0)
}

/// `PSL(2,q)`: a left level `A^i B^j` at infinity, with `A` of order
/// `(q+1)/2` and `B` an involution, over the stabilizer of infinity.
pub fn ogs_psl2_with(
    q: u64,
    strategy: SubgroupStrategy,
    seed: u64,
) -> Result<OrderedGeneratingSystem, ConstructError> {
    let name = format!("PSL2_{q}");
    let g = Arc::new(psl2_group(q)?);
    let expected = q as u128 * (q as u128 * q as u128 - 1) / 2;
    if g.order() != expected {
        return Err(ConstructError::Certification(format!(
            "group order {} differs from q(q^2-1)/2 = {expected}",
            g.order()
        )));
    }
    let inf = q as usize + 1;
    let h = g.point_stabilizer(inf)?;
    let (t, d) = (g.generators()[0].clone(), g.generators()[1].clone());
    let triangular = PermGroup::new(vec![t.clone(), d.clone()])?;
    if h.order() != q as u128 * (q as u128 - 1) / 2 || !h.same_group(&triangular) {
        return Err(ConstructError::Certification(
            "stabilizer of infinity is not the triangular subgroup".into(),
        ));
    }
    let h = Arc::new(triangular);
    let use_series = match strategy {
        SubgroupStrategy::Auto => h.order() <= COMPOSITION_ORDER_LIMIT,
        SubgroupStrategy::CompositionSeries => true,
        SubgroupStrategy::TriangularChain => false,
    };
    let inner = if use_series {
        solvable_ogs(h, "B")?
    } else {
        let items = vec![Item::new(d, (q - 1) / 2), Item::new(t, q)];
        let levels = vec![
            Level {
                from: 1,
                to: 2,
                base_point: Some(1),
                side: Side::Right,
            },
            Level {
                from: 0,
                to: 1,
                base_point: Some(2),
                side: Side::Right,
            },
        ];
        certify(OrderedGeneratingSystem::new(
            h,
            "B",
            items,
            Some(levels),
            "triangular",
        )?)?
    };

    let m = q.div_ceil(2);
    let inf0 = inf - 1;
    let a = g
        .candidate_stream(ENUMERATION_LIMIT, RANDOM_DRAWS, seed)
        .find_map(|x| {
            let ord = x.order();
            let y = (ord % m == 0).then(|| x.power((ord / m) as i64))?;
            (y.cycle_len0(inf0) == m as usize).then_some(y)
        })
        .ok_or_else(|| {
            ConstructError::NotFound(format!("no element of order {m} moving infinity"))
        })?;
    let b = g
        .candidate_stream(ENUMERATION_LIMIT, RANDOM_DRAWS, seed.wrapping_add(1))
        .find_map(|x| {
            let ord = x.order();
            let y = (ord % 2 == 0).then(|| x.power((ord / 2) as i64))?;
            let items = [Item::new(a.clone(), m), Item::new(y.clone(), 2)];
            let keys: HashSet<usize> = segment_words(&items, inf)
                .iter()
                .map(|(_, w)| coset_key(w, inf0, Side::Left))
                .collect();
            (keys.len() == inf).then_some(y)
        })
        .ok_or_else(|| {
            ConstructError::NotFound("no involution completing the transversal".into())
        })?;
    let recipe = TransversalRecipe {
        elements: vec![Item::new(a, m), Item::new(b, 2)],
        side: Side::Left,
        base_point: Some(inf),
        certified: false,
    };
    let provenance = format!("psl2(seed={seed}) + {}", inner.provenance());
    let ogs = attach_level(g, &recipe, &inner, provenance)?;
    Ok(certify(ogs)?.with_group_name(name))
}
