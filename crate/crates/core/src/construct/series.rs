//! Composition series of small groups by element tables, and systems built
//! from them by repeated quotient extension.

use std::collections::HashMap;
use std::sync::Arc;

use super::{certify, extend_by_quotient, rebase, trivial_ogs, ConstructError};
use crate::group::PermGroup;
use crate::ogs::{Item, OrderedGeneratingSystem};
use crate::perm::Permutation;

/// Largest group order handled by [`brute_force_composition_series`].
pub const COMPOSITION_ORDER_LIMIT: u128 = 10_000;

/// `G = subgroups[0] > subgroups[1] > .. > 1`, each normal in the previous
/// one with simple quotient.
#[derive(Debug, Clone)]
pub struct CompositionSeries {
    pub subgroups: Vec<PermGroup>,
    pub factor_orders: Vec<u128>,
}

impl CompositionSeries {
    pub fn is_solvable(&self) -> bool {
        self.factor_orders.iter().all(|&m| is_prime(m))
    }
}

pub(crate) fn is_prime(n: u128) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// All elements of a group with a product lookup.
struct Table {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
}

/// A subgroup as a membership mask plus generating indices.
#[derive(Clone)]
struct Sub {
    gens: Vec<u32>,
    mask: Vec<bool>,
    size: usize,
}

impl Table {
    fn new(g: &PermGroup, limit: u128) -> Result<Self, ConstructError> {
        let elements: Vec<Permutation> = g.enumerate_elements(limit)?.collect();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        let inverse = elements.iter().map(|x| index[&x.inverse()]).collect();
        Ok(Table {
            elements,
            index,
            inverse,
        })
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&self.elements[a as usize].then(&self.elements[b as usize])]
    }

    fn identity(&self) -> u32 {
        let id = Permutation::identity_unchecked(self.elements[0].degree());
        self.index[&id]
    }

    fn closure(&self, gens: Vec<u32>) -> Sub {
        let mut mask = vec![false; self.elements.len()];
        let id = self.identity();
        mask[id as usize] = true;
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in &gens {
                let y = self.mul(x, s);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        Sub {
            gens,
            size: queue.len(),
            mask,
        }
    }

    /// Conjugacy classes of `k` under its own generators, each sorted, in
    /// order of first element.
    fn classes(&self, k: &Sub) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.elements.len()];
        let mut out = Vec::new();
        for x in 0..self.elements.len() as u32 {
            if !k.mask[x as usize] || seen[x as usize] {
                continue;
            }
            seen[x as usize] = true;
            let mut class = vec![x];
            let mut head = 0;
            while head < class.len() {
                let y = class[head];
                head += 1;
                for &s in &k.gens {
                    let z = self.mul(self.mul(self.inverse[s as usize], y), s);
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        class.push(z);
                    }
                }
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }

    /// Subgroup generated by `base` and the elements of `extra`.
    fn join(&self, base: &Sub, extra: &[u32]) -> Sub {
        let mut cur = base.clone();
        for &c in extra {
            if !cur.mask[c as usize] {
                let mut gens = cur.gens.clone();
                gens.push(c);
                cur = self.closure(gens);
            }
        }
        cur
    }

    /// A maximal normal subgroup of `k`: normal closures of conjugacy
    /// classes are added greedily while the result stays proper.
    fn maximal_normal(&self, k: &Sub) -> Sub {
        let classes = self.classes(k);
        let mut n = self.closure(Vec::new());
        loop {
            let grown = classes
                .iter()
                .filter(|c| !n.mask[c[0] as usize])
                .map(|c| self.join(&n, c))
                .find(|j| j.size < k.size);
            match grown {
                Some(j) => n = j,
                None => return n,
            }
        }
    }

    fn to_group(&self, degree: usize, sub: &Sub) -> PermGroup {
        let gens = sub
            .gens
            .iter()
            .map(|&i| self.elements[i as usize].clone())
            .filter(|p| !p.is_identity())
            .collect();
        PermGroup::generated_by(degree, gens)
    }
}

/// A composition series from the full element table of `g`.
pub fn brute_force_composition_series(
    g: &PermGroup,
    order_limit: u128,
) -> Result<CompositionSeries, ConstructError> {
    let order = g.order();
    if order > order_limit {
        return Err(ConstructError::TooLarge {
            order,
            limit: order_limit,
        });
    }
    let table = Table::new(g, order_limit)?;
    let gens = g
        .generators()
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| table.index[p])
        .collect();
    let mut k = table.closure(gens);
    let mut subgroups = vec![g.clone()];
    let mut factor_orders = Vec::new();
    while k.size > 1 {
        let n = table.maximal_normal(&k);
        factor_orders.push((k.size / n.size) as u128);
        subgroups.push(table.to_group(g.degree(), &n));
        k = n;
    }
    Ok(CompositionSeries {
        subgroups,
        factor_orders,
    })
}

/// Lifts of a prime-cyclic quotient: any element of `g` outside `h`.
pub fn prime_cyclic_supplier(g: &PermGroup, h: &PermGroup) -> Result<Vec<Item>, ConstructError> {
    let index = g.order() / h.order();
    if !is_prime(index) {
        return Err(ConstructError::Supplier(format!(
            "quotient of order {index} is not cyclic of prime order"
        )));
    }
    let x = g
        .generators()
        .iter()
        .find(|x| !h.chain().contains(x))
        .ok_or_else(|| ConstructError::Supplier("no generator outside the subgroup".into()))?;
    Ok(vec![Item::new(x.clone(), index as u64)])
}

/// Folds the series from the bottom: each factor's lifts come from
/// `supplier(G_i, G_{i+1})` and are placed in front of the system so far.
pub fn ogs_from_composition_series<F>(
    series: &CompositionSeries,
    mut supplier: F,
) -> Result<OrderedGeneratingSystem, ConstructError>
where
    F: FnMut(&PermGroup, &PermGroup) -> Result<Vec<Item>, ConstructError>,
{
    let last = series
        .subgroups
        .last()
        .ok_or_else(|| ConstructError::Invalid("empty series".into()))?;
    if !last.is_trivial() {
        return Err(ConstructError::Invalid("series does not end in 1".into()));
    }
    let mut ogs = trivial_ogs(last.degree())?;
    let mut h = last.clone();
    for g in series.subgroups.iter().rev().skip(1) {
        let g = Arc::new(g.clone());
        let lifts = supplier(&g, &h)?;
        ogs = extend_by_quotient(&g, &h, &ogs, lifts)?;
        h = (*g).clone();
    }
    let ogs = ogs.with_provenance("composition-series");
    certify(ogs)
}

/// An OGS of a solvable group of order at most [`COMPOSITION_ORDER_LIMIT`].
pub fn solvable_ogs(
    g: Arc<PermGroup>,
    name: &str,
) -> Result<OrderedGeneratingSystem, ConstructError> {
    let series = brute_force_composition_series(&g, COMPOSITION_ORDER_LIMIT)?;
    if !series.is_solvable() {
        return Err(ConstructError::Hypothesis(format!(
            "composition factors {:?} are not all of prime order",
            series.factor_orders
        )));
    }
    let ogs = ogs_from_composition_series(&series, prime_cyclic_supplier)?;
    Ok(rebase(&ogs, g)?.with_group_name(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ogs::DEFAULT_MEMORY_BUDGET;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn series_of_small_groups() {
        let s4 = brute_force_composition_series(&group(4, &["(1,2,3,4)", "(1,2)"]), 100).unwrap();
        let mut f = s4.factor_orders.clone();
        f.sort();
        assert_eq!(f, vec![2, 2, 2, 3]);
        assert_eq!(s4.subgroups.len(), 5);
        for w in s4.subgroups.windows(2) {
            assert!(w[0].is_normal(&w[1]).unwrap());
        }

        let a5 =
            brute_force_composition_series(&group(5, &["(1,2,3,4,5)", "(1,2,3)"]), 100).unwrap();
        assert_eq!(a5.factor_orders, vec![60]);
        assert!(!a5.is_solvable());

        let s5 = group(5, &["(1,2,3,4,5)", "(1,2)"]);
        assert!(matches!(
            brute_force_composition_series(&s5, 100),
            Err(ConstructError::TooLarge { order: 120, .. })
        ));
        let s5 = brute_force_composition_series(&s5, 1000).unwrap();
        assert_eq!(s5.factor_orders, vec![2, 60]);
    }

    #[test]
    fn solvable_systems_verify() {
        for (n, gens) in [
            (4, vec!["(1,2,3,4)", "(1,2)"]),
            (4, vec!["(1,2)(3,4)", "(1,3)(2,4)"]),
            (8, vec!["(1,2,3,4,5,6,7,8)", "(1,8)(2,7)(3,6)(4,5)"]),
            (3, vec!["()"]),
        ] {
            let g = Arc::new(group(n, &gens));
            let ogs = solvable_ogs(g.clone(), "G").unwrap();
            assert_eq!(ogs.bounds_product(), g.order());
            assert!(ogs.bounds().iter().all(|&m| is_prime(m as u128)));
            assert!(ogs.verify_exhaustive(DEFAULT_MEMORY_BUDGET).unwrap().ok);
        }
        let a5 = Arc::new(group(5, &["(1,2,3,4,5)", "(1,2,3)"]));
        assert!(matches!(
            solvable_ogs(a5, "A5"),
            Err(ConstructError::Hypothesis(_))
        ));
    }
}
