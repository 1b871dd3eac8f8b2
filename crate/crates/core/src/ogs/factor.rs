use std::collections::HashMap;

use super::verify::coset_key;
use super::{
    segment_words, ExponentVector, OgsError, OrderedGeneratingSystem, Side, FLAT_TABLE_LIMIT,
};
use crate::group::PermGroup;
use crate::perm::Permutation;

enum Lookup {
    /// Word index by base-point key.
    Point {
        base0: usize,
        by_key: HashMap<usize, usize>,
    },
    /// Words compared against the inner subgroup by membership.
    Coset { inner: PermGroup },
}

struct Step {
    from: usize,
    side: Side,
    exps: Vec<Vec<u64>>,
    inverses: Vec<Permutation>,
    lookup: Lookup,
}

/// Precomputed tables for peeling an element level by level.
pub struct Factorizer {
    steps: Vec<Step>,
    /// Element to rank, for systems without levels.
    flat: Option<HashMap<Permutation, u128>>,
}

impl std::fmt::Debug for Factorizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Factorizer")
            .field("levels", &self.steps.len())
            .field("flat", &self.flat.as_ref().map(HashMap::len))
            .finish()
    }
}

impl Factorizer {
    pub fn new(ogs: &OrderedGeneratingSystem) -> Result<Self, OgsError> {
        let degree = ogs.degree();
        let Some(levels) = ogs.levels() else {
            let size = ogs.bounds_product();
            if size > FLAT_TABLE_LIMIT {
                return Err(OgsError::TableTooLarge {
                    size,
                    limit: FLAT_TABLE_LIMIT,
                });
            }
            let mut table = HashMap::with_capacity(size as usize);
            for r in 0..size {
                let w = ogs.word(&ogs.unrank(r)?)?;
                table.entry(w).or_insert(r);
            }
            return Ok(Factorizer {
                steps: Vec::new(),
                flat: Some(table),
            });
        };

        let items = ogs.items();
        let (mut lo, mut hi) = (0usize, items.len());
        let mut steps = Vec::with_capacity(levels.len());
        for level in levels {
            match level.side {
                Side::Left => lo = level.to,
                Side::Right => hi = level.from,
            }
            let words = segment_words(&items[level.from..level.to], degree);
            let lookup = match level.base_point {
                Some(b) => Lookup::Point {
                    base0: b - 1,
                    by_key: words
                        .iter()
                        .enumerate()
                        .map(|(i, (_, w))| (coset_key(w, b - 1, level.side), i))
                        .collect(),
                },
                None => Lookup::Coset {
                    inner: PermGroup::generated_by(
                        degree,
                        items[lo..hi]
                            .iter()
                            .map(|i| i.perm.clone())
                            .filter(|p| !p.is_identity())
                            .collect(),
                    ),
                },
            };
            let (exps, ws): (Vec<_>, Vec<_>) = words.into_iter().unzip();
            steps.push(Step {
                from: level.from,
                side: level.side,
                exps,
                inverses: ws.iter().map(Permutation::inverse).collect(),
                lookup,
            });
        }
        Ok(Factorizer { steps, flat: None })
    }

    pub fn factor(
        &self,
        ogs: &OrderedGeneratingSystem,
        g: &Permutation,
    ) -> Result<ExponentVector, OgsError> {
        if !ogs.group().contains(g)? {
            return Err(OgsError::NotInGroup);
        }
        if let Some(table) = &self.flat {
            let r = table.get(g).ok_or(OgsError::NotInGroup)?;
            return ogs.unrank(*r);
        }
        let mut exps = vec![0u64; ogs.len()];
        let mut cur = g.clone();
        for step in &self.steps {
            let idx = match &step.lookup {
                Lookup::Point { base0, by_key } => {
                    let key = match step.side {
                        Side::Right => cur.image0(*base0),
                        // b^(g^-1) = b^(w^-1) when g = w h and h fixes b.
                        Side::Left => coset_key(&cur, *base0, Side::Left),
                    };
                    by_key.get(&key).copied()
                }
                Lookup::Coset { inner } => step.inverses.iter().position(|winv| {
                    let q = match step.side {
                        Side::Right => cur.then(winv),
                        Side::Left => winv.then(&cur),
                    };
                    inner.chain().contains(&q)
                }),
            }
            .ok_or(OgsError::NotInGroup)?;
            cur = match step.side {
                Side::Right => cur.then(&step.inverses[idx]),
                Side::Left => step.inverses[idx].then(&cur),
            };
            let e = &step.exps[idx];
            exps[step.from..step.from + e.len()].copy_from_slice(e);
        }
        if !cur.is_identity() {
            return Err(OgsError::NotInGroup);
        }
        Ok(ExponentVector(exps))
    }
}
