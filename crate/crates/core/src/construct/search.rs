//! Element searches for transversals of subgroups.

use std::sync::Arc;

use super::series::{is_prime, solvable_ogs};
use super::{
    ConstructError, TransversalRecipe, ENUMERATION_LIMIT, POWER_COVER_BUDGET, RANDOM_DRAWS,
};
use crate::group::PermGroup;
use crate::ogs::verify::first_coset_collision;
use crate::ogs::{segment_words, Item, Side};
use crate::perm::{gcd, Permutation};

/// Cyclic transversal for a subgroup of index coprime to its order: an
/// element `a` of order equal to the index, so the powers `a^i` lie in
/// distinct cosets.
pub fn coprime_cyclic_transversal(
    g: &PermGroup,
    h: &PermGroup,
    seed: u64,
) -> Result<TransversalRecipe, ConstructError> {
    g.check_subgroup(h)?;
    let (order, sub) = (g.order(), h.order());
    let index = order / sub;
    if order % sub != 0 {
        return Err(ConstructError::Invalid(
            "subgroup order does not divide the group order".into(),
        ));
    }
    if gcd(index as u64, sub as u64) != 1 {
        return Err(ConstructError::Hypothesis(format!(
            "index {index} is not coprime to the subgroup order {sub}"
        )));
    }
    if index == 1 {
        return Ok(TransversalRecipe::empty(Side::Left));
    }
    let m = index as u64;
    let a = g
        .candidate_stream(ENUMERATION_LIMIT, RANDOM_DRAWS, seed)
        .find_map(|x| {
            let ord = x.order();
            (ord % m == 0).then(|| x.power((ord / m) as i64))
        })
        .ok_or_else(|| ConstructError::NotFound(format!("no element of order {index}")))?;
    // Powers of a coprime-order element avoid h; checked anyway.
    let mut x = a.clone();
    for k in 1..m {
        if h.chain().contains(&x) {
            return Err(ConstructError::Certification(format!(
                "a^{k} lies in the subgroup"
            )));
        }
        x = x.then(&a);
    }
    Ok(TransversalRecipe {
        elements: vec![Item::new(a, m)],
        side: Side::Left,
        base_point: None,
        certified: true,
    })
}

/// Parameters for [`power_cover_search`].
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub max_items: usize,
    /// Candidate tuples tested before giving up.
    pub budget: usize,
    pub seed: u64,
    pub side: Side,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_items: 3,
            budget: POWER_COVER_BUDGET,
            seed: 0,
            side: Side::Right,
        }
    }
}

const POOL_SIZE: usize = 384;
const POOL_DRAWS: usize = 4 * POOL_SIZE;

/// Candidate elements: generators first, then seeded random elements and
/// their proper powers, without repeats.
fn candidate_pool(g: &PermGroup, seed: u64) -> Vec<Permutation> {
    let mut seen = std::collections::HashSet::new();
    let mut pool = Vec::new();
    let mut push = |x: Permutation, pool: &mut Vec<Permutation>| {
        if !x.is_identity() && seen.insert(x.clone()) {
            pool.push(x);
        }
    };
    for x in g.generators() {
        push(x.clone(), &mut pool);
    }
    for x in g.random_elements(seed).take(POOL_DRAWS) {
        if pool.len() >= POOL_SIZE {
            break;
        }
        let ord = x.order();
        push(x.clone(), &mut pool);
        for d in (2..ord).filter(|d| ord % d == 0) {
            push(x.power(d as i64), &mut pool);
        }
    }
    pool.truncate(POOL_SIZE);
    pool
}

/// Ordered factorizations of `n` into exactly `k` factors greater than one,
/// smaller leading factors first. A small first item leaves the last one to
/// spread a few points over its long cycles, which most elements of a
/// suitable order do.
fn splits(n: u64, k: usize) -> Vec<Vec<u64>> {
    if k == 1 {
        return if n > 1 { vec![vec![n]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for d in (2..n).filter(|d| n.is_multiple_of(*d)) {
        for mut rest in splits(n / d, k - 1) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

struct Cover<'a> {
    pool: &'a [Permutation],
    orders: Vec<u64>,
    degree: usize,
    ticks: usize,
    budget: usize,
}

impl Cover<'_> {
    /// Extends the image set `q` by `c^j` for `j < m`; `None` on overlap.
    fn extend(
        &self,
        q: &[usize],
        taken: &mut [bool],
        c: &Permutation,
        m: u64,
    ) -> Option<Vec<usize>> {
        let mut out = q.to_vec();
        let mut cur = q.to_vec();
        for _ in 1..m {
            for x in cur.iter_mut() {
                *x = c.image0(*x);
                if taken[*x] {
                    for &y in &out[q.len()..] {
                        taken[y] = false;
                    }
                    return None;
                }
                taken[*x] = true;
                out.push(*x);
            }
        }
        Some(out)
    }

    fn search(
        &mut self,
        q: &[usize],
        taken: &mut [bool],
        split: &[u64],
        chosen: &mut Vec<usize>,
    ) -> Option<bool> {
        let Some((&m, rest)) = split.split_first() else {
            return Some(true);
        };
        for (i, c) in self.pool.iter().enumerate() {
            // Fewer than m distinct powers.
            if self.orders[i] < m {
                continue;
            }
            self.ticks += 1;
            if self.ticks > self.budget {
                return None;
            }
            if let Some(next) = self.extend(q, taken, c, m) {
                chosen.push(i);
                match self.search(&next, taken, rest, chosen)? {
                    true => return Some(true),
                    false => {
                        chosen.pop();
                        for &y in &next[q.len()..] {
                            taken[y] = false;
                        }
                    }
                }
            }
        }
        Some(false)
    }
}

/// Up to `max_items` elements `c_1..c_k` with bounds `m_1..m_k` whose words
/// send the base point to distinct points, covering its orbit. This is a
/// transversal of the point stabilizer on the requested side.
pub fn power_cover_search(
    g: &PermGroup,
    base_point: usize,
    config: SearchConfig,
) -> Result<TransversalRecipe, ConstructError> {
    let orbit = g.orbit_len(base_point)? as u64;
    let mut recipe = TransversalRecipe {
        elements: Vec::new(),
        side: config.side,
        base_point: Some(base_point),
        certified: true,
    };
    if orbit == 1 {
        return Ok(recipe);
    }
    let pool = candidate_pool(g, config.seed);
    let b0 = base_point - 1;
    let mut cover = Cover {
        orders: pool.iter().map(Permutation::order).collect(),
        pool: &pool,
        degree: g.degree(),
        ticks: 0,
        budget: config.budget,
    };
    let mut found = None;
    'outer: for k in 1..=config.max_items {
        for split in splits(orbit, k) {
            if split.iter().any(|&m| cover.orders.iter().all(|&o| o < m)) {
                continue;
            }
            let mut taken = vec![false; cover.degree];
            taken[b0] = true;
            let mut chosen = Vec::new();
            match cover.search(&[b0], &mut taken, &split, &mut chosen) {
                Some(true) => {
                    found = Some((split, chosen));
                    break 'outer;
                }
                Some(false) => {}
                None => break 'outer,
            }
        }
    }
    let (split, chosen) = found.ok_or_else(|| {
        ConstructError::NotFound(format!(
            "no cover of the orbit of {base_point} ({orbit} points) within {} candidate tuples",
            config.budget
        ))
    })?;
    let mut items: Vec<Item> = chosen
        .iter()
        .zip(&split)
        .map(|(&i, &m)| Item::new(pool[i].clone(), m))
        .collect();
    // Left cosets: b^(w^-1) distinct for w = a_1^i_1..a_k^i_k, which is a
    // right cover by the inverses in reverse order.
    if config.side == Side::Left {
        items.reverse();
        for item in &mut items {
            item.perm = item.perm.inverse();
        }
    }
    recipe.elements = items;
    Ok(recipe)
}

/// Transversal of a subgroup of prime-power index coprime to its order,
/// given by an OGS of a Sylow subgroup. When `p_subgroup` is `None` one is
/// found by random search.
pub fn sylow_transversal(
    g: &PermGroup,
    h: &PermGroup,
    p_subgroup: Option<&PermGroup>,
    seed: u64,
) -> Result<TransversalRecipe, ConstructError> {
    g.check_subgroup(h)?;
    let (order, sub) = (g.order(), h.order());
    let index = order / sub;
    if order % sub != 0 {
        return Err(ConstructError::Invalid(
            "subgroup order does not divide the group order".into(),
        ));
    }
    if index == 1 {
        return Ok(TransversalRecipe::empty(Side::Left));
    }
    let p = (2..=index).find(|d| index % d == 0).expect("index > 1");
    let mut rest = index;
    while rest % p == 0 {
        rest /= p;
    }
    if !is_prime(p) || rest != 1 {
        return Err(ConstructError::Hypothesis(format!(
            "index {index} is not a prime power"
        )));
    }
    if sub % p == 0 {
        return Err(ConstructError::Hypothesis(format!(
            "index {index} is not coprime to the subgroup order {sub}"
        )));
    }
    let p_group = match p_subgroup {
        Some(s) => {
            g.check_subgroup(s)?;
            if s.order() != index {
                return Err(ConstructError::Hypothesis(format!(
                    "given subgroup has order {}, expected {index}",
                    s.order()
                )));
            }
            s.clone()
        }
        None => find_p_subgroup(g, p as u64, index, seed)?,
    };
    let p_ogs = solvable_ogs(Arc::new(p_group), "P")?;
    let elements = p_ogs.items().to_vec();
    let words = segment_words(&elements, g.degree());
    if let Some((i, j)) = first_coset_collision(&words, h, Side::Left) {
        return Err(ConstructError::CosetCollision {
            first: words[i].0.clone(),
            second: words[j].0.clone(),
        });
    }
    Ok(TransversalRecipe {
        elements,
        side: Side::Left,
        base_point: None,
        certified: true,
    })
}

/// Grows a `p`-subgroup of order `target` from `p`-parts of random
/// elements; an element is kept when the enlarged group is still a
/// `p`-group.
fn find_p_subgroup(
    g: &PermGroup,
    p: u64,
    target: u128,
    seed: u64,
) -> Result<PermGroup, ConstructError> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order = 1u128;
    for x in g.random_elements(seed).take(RANDOM_DRAWS) {
        let mut q = x.order();
        while q % p == 0 {
            q /= p;
        }
        let y = x.power(q as i64);
        if y.is_identity() {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(y);
        let candidate = PermGroup::new(trial.clone())?;
        let n = candidate.order();
        if n > order && is_power_of(n, p as u128) && n <= target {
            gens = trial;
            order = n;
            if order == target {
                return Ok(candidate);
            }
        }
    }
    Err(ConstructError::NotFound(format!(
        "no subgroup of order {target}"
    )))
}

fn is_power_of(mut n: u128, p: u128) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::attach_level;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn split_order() {
        assert_eq!(
            splits(12, 2),
            vec![vec![2, 6], vec![3, 4], vec![4, 3], vec![6, 2]]
        );
        assert_eq!(splits(8, 3), vec![vec![2, 2, 2]]);
        assert!(splits(7, 2).is_empty());
    }

    #[test]
    fn coprime_cyclic_in_a4() {
        let a4 = group(4, &["(1,2,3)", "(2,3,4)"]);
        let v4 = group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let r = coprime_cyclic_transversal(&a4, &v4, 0).unwrap();
        assert_eq!(r.bounds(), vec![3]);
        assert_eq!(r.elements[0].perm.order(), 3);

        let s4 = group(4, &["(1,2,3,4)", "(1,2)"]);
        let s3 = group(4, &["(1,2,3)", "(1,2)"]);
        assert!(matches!(
            coprime_cyclic_transversal(&s4, &s3, 0),
            Err(ConstructError::Hypothesis(_))
        ));
    }

    #[test]
    fn power_cover_both_sides() {
        let a6 = group(6, &["(1,2,3)", "(2,3,4,5,6)"]);
        for side in [Side::Left, Side::Right] {
            let r = power_cover_search(
                &a6,
                6,
                SearchConfig {
                    side,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(r.size(), 6);
            let words = segment_words(&r.elements, 6);
            let mut keys: Vec<usize> = words
                .iter()
                .map(|(_, w)| crate::ogs::verify::coset_key(w, 5, side))
                .collect();
            keys.sort();
            assert_eq!(keys, (0..6).collect::<Vec<_>>());
        }
        // Regular orbit of a cyclic group: one element suffices.
        let c7 = group(7, &["(1,2,3,4,5,6,7)"]);
        let r = power_cover_search(&c7, 3, SearchConfig::default()).unwrap();
        assert_eq!(r.bounds(), vec![7]);
        let r = power_cover_search(&group(3, &["(1,2)"]), 3, SearchConfig::default()).unwrap();
        assert!(r.elements.is_empty());
    }

    #[test]
    fn power_cover_gives_up_on_budget() {
        let s6 = group(6, &["(1,2)", "(1,2,3,4,5,6)"]);
        let config = SearchConfig {
            budget: 0,
            ..Default::default()
        };
        assert!(matches!(
            power_cover_search(&s6, 1, config),
            Err(ConstructError::NotFound(_))
        ));
    }

    #[test]
    fn sylow_transversal_in_a5() {
        let a5 = group(5, &["(1,2,3,4,5)", "(1,2,3)"]);
        let a4 = group(5, &["(1,2,3)", "(2,3,4)"]);
        let r = sylow_transversal(&a5, &a4, None, 1).unwrap();
        assert_eq!(r.size(), 5);
        let c5 = group(5, &["(1,2,3,4,5)"]);
        let r2 = sylow_transversal(&a5, &a4, Some(&c5), 1).unwrap();
        assert_eq!(r2.elements[0].perm, c5.generators()[0]);
        let inner = solvable_ogs(Arc::new(a4), "A4").unwrap();
        let ogs = attach_level(Arc::new(a5), &r, &inner, "").unwrap();
        assert!(ogs.verify_exhaustive(1 << 20).unwrap().ok);
    }
}
