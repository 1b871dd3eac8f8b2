//! Constructors for ordered generating systems.
//!
//! Every constructor adds levels from the outside in: a transversal of a
//! subgroup `H` in `G` is certified (by distinct base-point keys or by
//! coset membership tests) and placed in front of (`left`) or behind
//! (`right`) an already built system for `H`.

mod families;
mod search;
mod series;

use std::sync::Arc;

use thiserror::Error;

use crate::group::{GroupError, PermGroup};
use crate::ogs::verify::{coset_key, first_coset_collision};
use crate::ogs::{
    segment_words, Item, Level, OgsError, OrderedGeneratingSystem, Side, Verification,
};

pub use families::{
    alternating_group, ogs_alternating, ogs_cyclic, ogs_from_chain, ogs_psl2, ogs_psl2_with,
    ogs_symmetric, psl2_group, SubgroupStrategy,
};
pub use search::{coprime_cyclic_transversal, power_cover_search, sylow_transversal, SearchConfig};
pub use series::{
    brute_force_composition_series, ogs_from_composition_series, prime_cyclic_supplier,
    solvable_ogs, CompositionSeries, COMPOSITION_ORDER_LIMIT,
};

/// Groups up to this order are searched by full enumeration.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;
/// Random draws for element searches in larger groups.
pub const RANDOM_DRAWS: usize = 100_000;
/// Candidate tuples tried by [`power_cover_search`].
pub const POWER_COVER_BUDGET: usize = 10_000;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ogs(#[from] OgsError),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("words {first:?} and {second:?} lie in the same coset")]
    CosetCollision { first: Vec<u64>, second: Vec<u64> },
    #[error("index mismatch: expected {expected}, transversal has {found} words")]
    IndexMismatch { expected: u128, found: u128 },
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("search failed: {0}")]
    NotFound(String),
    #[error("factor supplier failed: {0}")]
    Supplier(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("group order {order} exceeds the limit {limit}")]
    TooLarge { order: u128, limit: u128 },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// Elements whose bounded words form a transversal of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalRecipe {
    pub elements: Vec<Item>,
    pub side: Side,
    /// Set when the subgroup is the stabilizer of this 1-based point.
    pub base_point: Option<usize>,
    /// True once the words were shown to lie in distinct cosets.
    pub certified: bool,
}

impl TransversalRecipe {
    pub fn empty(side: Side) -> Self {
        TransversalRecipe {
            elements: Vec::new(),
            side,
            base_point: None,
            certified: true,
        }
    }

    pub fn size(&self) -> u128 {
        self.elements.iter().map(|i| i.bound as u128).product()
    }

    pub fn bounds(&self) -> Vec<u64> {
        self.elements.iter().map(|i| i.bound).collect()
    }
}

/// The empty system of a trivial group.
pub fn trivial_ogs(degree: usize) -> Result<OrderedGeneratingSystem, ConstructError> {
    let group = Arc::new(PermGroup::trivial(degree).map_err(GroupError::from)?);
    let mut ogs =
        OrderedGeneratingSystem::new(group, "1", Vec::new(), Some(Vec::new()), "trivial")?;
    ogs.set_verified(Verification::Structural);
    Ok(ogs)
}

/// The same items and levels on a larger ambient group.
pub fn rebase(
    ogs: &OrderedGeneratingSystem,
    group: Arc<PermGroup>,
) -> Result<OrderedGeneratingSystem, ConstructError> {
    let mut out = OrderedGeneratingSystem::new(
        group,
        ogs.group_name(),
        ogs.items().to_vec(),
        ogs.levels().map(<[Level]>::to_vec),
        ogs.provenance(),
    )?;
    out.set_verified(ogs.verification());
    Ok(out)
}

/// Certifies `recipe` as a transversal of the group of `inner` inside `g`
/// and wraps it around `inner` as the new outermost level.
pub fn attach_level(
    g: Arc<PermGroup>,
    recipe: &TransversalRecipe,
    inner: &OrderedGeneratingSystem,
    provenance: impl Into<String>,
) -> Result<OrderedGeneratingSystem, ConstructError> {
    let degree = g.degree();
    let h = inner.group();
    g.check_subgroup(h)?;
    let index = g.order() / h.order();
    if !g.order().is_multiple_of(h.order()) || recipe.size() != index {
        return Err(ConstructError::IndexMismatch {
            expected: index,
            found: recipe.size(),
        });
    }
    let words = segment_words(&recipe.elements, degree);
    match recipe.base_point {
        Some(b) => {
            let orbit = g.orbit_len(b)?;
            if orbit as u128 != index {
                return Err(ConstructError::Certification(format!(
                    "orbit of {b} has {orbit} points but the index is {index}"
                )));
            }
            if let Some(i) = h.generators().iter().position(|x| x.image0(b - 1) != b - 1) {
                return Err(ConstructError::Certification(format!(
                    "subgroup generator {i} moves base point {b}"
                )));
            }
            let mut seen = std::collections::HashMap::new();
            for (e, w) in &words {
                if let Some(prev) = seen.insert(coset_key(w, b - 1, recipe.side), e.clone()) {
                    return Err(ConstructError::CosetCollision {
                        first: prev,
                        second: e.clone(),
                    });
                }
            }
        }
        None => {
            if let Some((i, j)) = first_coset_collision(&words, h, recipe.side) {
                return Err(ConstructError::CosetCollision {
                    first: words[i].0.clone(),
                    second: words[j].0.clone(),
                });
            }
        }
    }

    let k = recipe.elements.len();
    let new_level = Level {
        from: 0,
        to: k,
        base_point: recipe.base_point,
        side: recipe.side,
    };
    let (items, levels) = match recipe.side {
        Side::Left => {
            let mut items = recipe.elements.clone();
            items.extend_from_slice(inner.items());
            let levels = inner.levels().map(|ls| {
                std::iter::once(new_level)
                    .chain(ls.iter().map(|l| Level {
                        from: l.from + k,
                        to: l.to + k,
                        ..*l
                    }))
                    .collect()
            });
            (items, levels)
        }
        Side::Right => {
            let n = inner.len();
            let mut items = inner.items().to_vec();
            items.extend_from_slice(&recipe.elements);
            let levels = inner.levels().map(|ls| {
                std::iter::once(Level {
                    from: n,
                    to: n + k,
                    ..new_level
                })
                .chain(ls.iter().copied())
                .collect()
            });
            (items, levels)
        }
    };
    let mut out = OrderedGeneratingSystem::new(g, inner.group_name(), items, levels, provenance)?;
    if inner.verification() != Verification::None {
        out.set_verified(Verification::Structural);
    }
    Ok(out)
}

/// Extension by a quotient: lifts of an OGS of `G/H` in front of an OGS of the
/// normal subgroup `H`.
pub fn extend_by_quotient(
    g: &Arc<PermGroup>,
    h: &PermGroup,
    h_ogs: &OrderedGeneratingSystem,
    quotient_lifts: Vec<Item>,
) -> Result<OrderedGeneratingSystem, ConstructError> {
    if !g.is_normal(h)? {
        return Err(ConstructError::NotNormal);
    }
    if !h.same_group(h_ogs.group()) {
        return Err(ConstructError::Invalid(
            "the system does not belong to the given subgroup".into(),
        ));
    }
    if quotient_lifts.is_empty() {
        if g.order() != h.order() {
            return Err(ConstructError::IndexMismatch {
                expected: g.order() / h.order(),
                found: 1,
            });
        }
        return rebase(h_ogs, g.clone());
    }
    let recipe = TransversalRecipe {
        elements: quotient_lifts,
        side: Side::Left,
        base_point: None,
        certified: false,
    };
    let provenance = match h_ogs.provenance() {
        "" | "trivial" => "quotient-extension".to_string(),
        p => format!("quotient-extension + {p}"),
    };
    attach_level(g.clone(), &recipe, h_ogs, provenance)
}

/// Structural verification, turned into a construction error on failure.
pub(crate) fn certify(
    mut ogs: OrderedGeneratingSystem,
) -> Result<OrderedGeneratingSystem, ConstructError> {
    let report = ogs.verify(crate::ogs::Method::Structural, 0)?;
    match report.failure {
        None => Ok(ogs),
        Some(f) => Err(ConstructError::Certification(f.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ogs::DEFAULT_MEMORY_BUDGET;
    use crate::perm::Permutation;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    fn a3_ogs() -> (PermGroup, OrderedGeneratingSystem) {
        let a3 = PermGroup::from_cycle_strings(3, &["(1,2,3)"]).unwrap();
        let ogs = attach_level(
            Arc::new(a3.clone()),
            &TransversalRecipe {
                elements: vec![Item::new(p("(1,2,3)", 3), 3)],
                side: Side::Left,
                base_point: Some(3),
                certified: false,
            },
            &trivial_ogs(3).unwrap(),
            "",
        )
        .unwrap();
        (a3, ogs)
    }

    #[test]
    fn quotient_extension_s3() {
        let s3 = Arc::new(PermGroup::from_cycle_strings(3, &["(1,2,3)", "(1,2)"]).unwrap());
        let (a3, a3_ogs) = a3_ogs();
        let ogs = extend_by_quotient(&s3, &a3, &a3_ogs, vec![Item::new(p("(1,2)", 3), 2)]).unwrap();
        assert_eq!(ogs.bounds(), vec![2, 3]);
        assert_eq!(ogs.items()[0].perm, p("(1,2)", 3));
        assert!(ogs.verify_exhaustive(DEFAULT_MEMORY_BUDGET).unwrap().ok);
        assert!(ogs.verify_structural().unwrap().ok);

        let same = extend_by_quotient(&Arc::new(a3.clone()), &a3, &a3_ogs, Vec::new()).unwrap();
        assert_eq!(same.items(), a3_ogs.items());

        let err = extend_by_quotient(&s3, &a3, &a3_ogs, vec![Item::new(p("(1,2,3)", 3), 2)]);
        assert!(
            matches!(err, Err(ConstructError::CosetCollision { .. })),
            "{err:?}"
        );

        let c2 = PermGroup::from_cycle_strings(3, &["(1,2)"]).unwrap();
        let c2_ogs = solvable_ogs(Arc::new(c2.clone()), "C2").unwrap();
        let err = extend_by_quotient(&s3, &c2, &c2_ogs, vec![Item::new(p("(1,2,3)", 3), 3)]);
        assert!(matches!(err, Err(ConstructError::NotNormal)));
    }
}
