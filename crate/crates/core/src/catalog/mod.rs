//! Named groups with their generators, expected orders and OGS recipes.
//!
//! The Mathieu generators are stored as corrected cycle strings; where the
//! source text is misprinted the literal text is kept in the entry notes.

mod paper;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{
    self, attach_level, coprime_cyclic_transversal, ogs_alternating, ogs_cyclic, ogs_from_chain,
    ogs_psl2_with, ogs_symmetric, psl2_group, rebase, ConstructError, SearchConfig,
    SubgroupStrategy, TransversalRecipe,
};
use crate::group::{GroupError, PermGroup};
use crate::ogs::verify::coset_key;
use crate::ogs::{segment_words, Item, OgsError, OgsFile, OrderedGeneratingSystem, Side};
use crate::perm::{PermError, Permutation};

pub use paper::{check_paper, derived_element_check, DerivedCheck, PaperRow};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown group name `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Ogs(#[from] OgsError),
    #[error("{name}: group order {found} differs from the expected {expected}")]
    OrderMismatch {
        name: String,
        expected: u128,
        found: u128,
    },
    #[error("{0} has no explicit transversal")]
    NoExplicitTransversal(String),
    #[error("bad formula `{formula}`: {message}")]
    Formula { formula: String, message: String },
    #[error("{0}")]
    Data(String),
}

/// A transversal element given by cycles, with an optional product formula
/// over the entry's named generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedElement {
    pub name: String,
    pub cycles: String,
    pub bound: u64,
    pub formula: Option<String>,
}

/// The subgroup a level is built over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    /// Names of entry generators spanning it; `None` for the point
    /// stabilizer computed from the chain.
    pub generators: Option<Vec<String>>,
    pub recipe: Recipe,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// Left level `a^i` at the base point, `a` of order equal to the index.
    CoprimeCyclic {
        base_point: usize,
        stabilizer: Box<Subgroup>,
    },
    /// Right level of the listed elements at the base point.
    Explicit {
        base_point: usize,
        elements: Vec<NamedElement>,
        stabilizer: Box<Subgroup>,
    },
    /// One power-cover level per stabilizer chain level.
    PowerCoverChain,
    Alternating {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Cyclic {
        n: usize,
    },
    Psl2 {
        q: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generator_names: Vec<String>,
    pub generators: Vec<String>,
    pub expected_order: u128,
    pub recipe: Recipe,
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn group(&self) -> Result<PermGroup, CatalogError> {
        let mut g = PermGroup::from_cycle_strings(self.degree, &self.generators)?;
        if let Some(b) = self.recipe.base_point() {
            g = g.with_base_hint(vec![b]);
        }
        Ok(g)
    }

    pub fn generator(&self, name: &str) -> Result<Permutation, CatalogError> {
        let i = self
            .generator_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| {
                CatalogError::Data(format!("{}: no generator named {name}", self.name))
            })?;
        Ok(Permutation::parse(&self.generators[i], Some(self.degree))?)
    }

    /// Evaluates `A^9*C*A`-style products; the leftmost factor acts first.
    pub fn evaluate(&self, formula: &str) -> Result<Permutation, CatalogError> {
        Ok(self
            .formula_factors(formula)?
            .iter()
            .fold(Permutation::identity(self.degree)?, |acc, f| acc.then(f)))
    }

    pub(crate) fn formula_factors(&self, formula: &str) -> Result<Vec<Permutation>, CatalogError> {
        let bad = |message: &str| CatalogError::Formula {
            formula: formula.to_string(),
            message: message.to_string(),
        };
        if formula.trim().is_empty() {
            return Err(bad("empty product"));
        }
        formula
            .split(['*', '·'])
            .map(|factor| {
                let factor = factor.trim();
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n.trim(),
                        e.trim().parse::<i64>().map_err(|_| bad("bad exponent"))?,
                    ),
                    None => (factor, 1),
                };
                if name.is_empty() {
                    return Err(bad("missing generator name"));
                }
                Ok(self.generator(name)?.power(exp))
            })
            .collect()
    }
}

impl Recipe {
    fn base_point(&self) -> Option<usize> {
        match self {
            Recipe::CoprimeCyclic { base_point, .. } | Recipe::Explicit { base_point, .. } => {
                Some(*base_point)
            }
            _ => None,
        }
    }
}

const M11_A: &str = "(1,2,3,4,5,6,7,8,9,10,11)";
const M11_B: &str = "(5,6,4,10)(11,8,3,7)";
const M12_C: &str = "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)";
const M22_X: &str = "(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)";
const M22_Y: &str = "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)";
const M24_D: &str = "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)";
const M24_E: &str = "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)";
const M24_F: &str = "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)";

/// M22's V exactly as printed; it does not parse.
pub const M22_V_LITERAL: &str = "(11,22)(1,210(2,10,8,6)(12,14,16,20)(3,13,4,17)(5,19,9,18)";
pub const M22_V: &str = "(11,22)(1,21)(2,10,8,6)(12,14,16,20)(3,13,4,17)(5,19,9,18)";
/// M12's X_3 as printed, with doubled parentheses.
pub const M12_X3_LITERAL: &str = "(4,12)((3,5)((6,9)(7,11)(1,8)(2,10)";
pub const M12_X3: &str = "(4,12)(3,5)(6,9)(7,11)(1,8)(2,10)";
pub const M12_X1: &str = "(2,3,12)(1,8,4)(5,7,10)(6,9,11)";
pub const M24_X1: &str =
    "(2,24)(1,3)(4,13)(5,17)(6,19)(7,11)(8,21)(9,15)(10,22)(12,18)(14,23)(16,20)";
pub const M24_X2: &str = "(1,16,15,5,14,11,8,17,7,6,21,24)(2,18,9,3,10,22,23,12,19,13,4,20)";

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn element(name: &str, cycles: &str, bound: u64, formula: Option<&str>) -> NamedElement {
    NamedElement {
        name: name.into(),
        cycles: cycles.into(),
        bound,
        formula: formula.map(Into::into),
    }
}

fn stabilizer(generators: Option<&[&str]>, recipe: Recipe) -> Box<Subgroup> {
    Box::new(Subgroup {
        generators: generators.map(strings),
        recipe,
    })
}

fn coprime_over_chain(base_point: usize) -> Recipe {
    Recipe::CoprimeCyclic {
        base_point,
        stabilizer: stabilizer(None, Recipe::PowerCoverChain),
    }
}

fn mathieu(name: &str) -> Option<CatalogEntry> {
    let entry = match name {
        "M11" => CatalogEntry {
            name: "M11".into(),
            degree: 11,
            generator_names: strings(&["A", "B"]),
            generators: strings(&[M11_A, M11_B]),
            expected_order: 7920,
            recipe: coprime_over_chain(11),
            notes: strings(&[
                "Generators A and B from the M12 construction, acting on 11 points.",
                "Stabilizer of 11 has order 720, coprime to the index 11.",
            ]),
        },
        "M12" => CatalogEntry {
            name: "M12".into(),
            degree: 12,
            generator_names: strings(&["A", "B", "C"]),
            generators: strings(&[M11_A, M11_B, M12_C]),
            expected_order: 95040,
            recipe: Recipe::Explicit {
                base_point: 12,
                elements: vec![
                    element("X1", M12_X1, 3, Some("A^9*C*A")),
                    element("X2", M12_C, 2, Some("C")),
                    element("X3", M12_X3, 2, Some("A^8*C*A^3")),
                ],
                stabilizer: stabilizer(Some(&["A", "B"]), coprime_over_chain(11)),
            },
            notes: vec![
                "Stabilizer of 12 is <A,B>, built with the M11 recipe.".into(),
                format!("X3 printed as {M12_X3_LITERAL}; doubled parentheses removed."),
            ],
        },
        "M22" => CatalogEntry {
            name: "M22".into(),
            degree: 22,
            generator_names: strings(&["X", "Y", "V"]),
            generators: strings(&[M22_X, M22_Y, M22_V]),
            expected_order: 443520,
            recipe: Recipe::Explicit {
                base_point: 22,
                elements: vec![
                    element("V", M22_V, 2, Some("V")),
                    element("X", M22_X, 11, Some("X")),
                ],
                stabilizer: stabilizer(None, Recipe::PowerCoverChain),
            },
            notes: vec![
                format!("V printed as {M22_V_LITERAL}; `(1,210` read as `(1,21)`."),
                "The group is said to be generated by X, Y, U; the third generator is V.".into(),
                "Stabilizer of 22 (order 20160) built by power-cover search.".into(),
            ],
        },
        "M23" => CatalogEntry {
            name: "M23".into(),
            degree: 23,
            generator_names: strings(&["D", "E"]),
            generators: strings(&[M24_D, M24_E]),
            expected_order: 10200960,
            recipe: coprime_over_chain(23),
            notes: strings(&[
                "Generators D and E from the M24 construction, acting on 23 points.",
                "Stabilizer of 23 has order 443520, coprime to the index 23.",
            ]),
        },
        "M24" => CatalogEntry {
            name: "M24".into(),
            degree: 24,
            generator_names: strings(&["D", "E", "F"]),
            generators: strings(&[M24_D, M24_E, M24_F]),
            expected_order: 244823040,
            recipe: Recipe::Explicit {
                base_point: 24,
                elements: vec![
                    element("X1", M24_X1, 2, Some("D^-1*F*D")),
                    element("X2", M24_X2, 12, Some("D^3*F")),
                ],
                stabilizer: stabilizer(Some(&["D", "E"]), coprime_over_chain(23)),
            },
            notes: strings(&[
                "The subgroup is described as the stabilizer of 23, but D fixes 24 and the \
                 transversal moves 24; the stabilizer of 24 is used.",
                "Stabilizer of 24 is <D,E>, built with the M23 recipe.",
            ]),
        },
        _ => return None,
    };
    Some(entry)
}

fn family_entry(name: &str, recipe: Recipe, group: &PermGroup, note: &str) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        degree: group.degree(),
        generator_names: (1..=group.generators().len())
            .map(|i| format!("g{i}"))
            .collect(),
        generators: group
            .generators()
            .iter()
            .map(Permutation::to_cycles)
            .collect(),
        expected_order: group.order(),
        recipe,
        notes: vec![note.into()],
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

const MAX_FAMILY_DEGREE: usize = 64;
const MAX_CYCLIC_ORDER: usize = 100_000;
const MAX_PSL2_Q: u64 = 1000;

fn family(name: &str) -> Option<CatalogEntry> {
    let num = |prefix: &str| -> Option<usize> {
        let rest = name.strip_prefix(prefix)?;
        if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        rest.parse().ok()
    };
    if let Some(q) = num("PSL2_") {
        let q = q as u64;
        if q > MAX_PSL2_Q {
            return None;
        }
        let g = psl2_group(q).ok()?;
        let mut e = family_entry(
            name,
            Recipe::Psl2 { q },
            &g,
            "Projective line over GF(q), infinity is q+1.",
        );
        e.expected_order = q as u128 * (q as u128 * q as u128 - 1) / 2;
        return Some(e);
    }
    if let Some(n) = num("A") {
        if !(1..=MAX_FAMILY_DEGREE).contains(&n) {
            return None;
        }
        let g = construct::alternating_group(n).ok()?;
        let mut e = family_entry(
            name,
            Recipe::Alternating { n },
            &g,
            "Left levels at n, n-1, .., 3.",
        );
        e.expected_order = (factorial(n) / 2).max(1);
        return Some(e);
    }
    if let Some(n) = num("S") {
        if !(1..=MAX_FAMILY_DEGREE).contains(&n) {
            return None;
        }
        let ogs = ogs_symmetric(n).ok()?;
        let mut e = family_entry(
            name,
            Recipe::Symmetric { n },
            ogs.group(),
            "A_n extended by (1,2).",
        );
        e.expected_order = factorial(n);
        return Some(e);
    }
    if let Some(n) = num("C") {
        if !(1..=MAX_CYCLIC_ORDER).contains(&n) {
            return None;
        }
        let ogs = ogs_cyclic(n).ok()?;
        let mut e = family_entry(
            name,
            Recipe::Cyclic { n },
            ogs.group(),
            "Powers of the n-cycle.",
        );
        e.expected_order = n as u128;
        return Some(e);
    }
    None
}

/// The entry for `name`: a Mathieu group or a family member such as `A7`,
/// `S5`, `C12`, `PSL2_11`.
pub fn lookup(name: &str) -> Result<CatalogEntry, CatalogError> {
    mathieu(name)
        .or_else(|| family(name))
        .ok_or_else(|| CatalogError::Unknown(name.to_string()))
}

/// Entries listed by `catalog`, exported to the data file and checked by
/// [`verify_catalog`].
pub const LISTED: &[&str] = &[
    "M11", "M12", "M22", "M23", "M24", "A5", "A6", "A7", "A8", "A9", "S4", "S5", "S6", "S7", "S8",
    "S9", "C5", "C12", "PSL2_5", "PSL2_7", "PSL2_11", "PSL2_13",
];

pub fn entries() -> Vec<CatalogEntry> {
    LISTED
        .iter()
        .map(|n| lookup(n).expect("listed names resolve"))
        .collect()
}

pub fn build(name: &str) -> Result<(Arc<PermGroup>, OrderedGeneratingSystem), CatalogError> {
    build_with_seed(name, 0)
}

/// Builds the group, checks its order, and constructs and certifies its
/// system.
pub fn build_with_seed(
    name: &str,
    seed: u64,
) -> Result<(Arc<PermGroup>, OrderedGeneratingSystem), CatalogError> {
    let entry = lookup(name)?;
    let g = Arc::new(entry.group()?);
    if g.order() != entry.expected_order {
        return Err(CatalogError::OrderMismatch {
            name: entry.name.clone(),
            expected: entry.expected_order,
            found: g.order(),
        });
    }
    let ogs = build_recipe(&entry, g.clone(), &entry.recipe, seed)?.with_group_name(&entry.name);
    Ok((g, ogs))
}

fn subgroup_of(
    entry: &CatalogEntry,
    g: &PermGroup,
    base_point: usize,
    sub: &Subgroup,
) -> Result<PermGroup, CatalogError> {
    let stab = g.point_stabilizer(base_point)?;
    let Some(names) = &sub.generators else {
        return Ok(stab);
    };
    let gens = names
        .iter()
        .map(|n| entry.generator(n))
        .collect::<Result<Vec<_>, _>>()?;
    let h = PermGroup::new(gens)?;
    if !h.same_group(&stab) {
        return Err(CatalogError::Data(format!(
            "{}: <{}> is not the stabilizer of {base_point}",
            entry.name,
            names.join(",")
        )));
    }
    Ok(h)
}

fn explicit_recipe(
    entry: &CatalogEntry,
    base_point: usize,
    elements: &[NamedElement],
) -> Result<TransversalRecipe, CatalogError> {
    let items = elements
        .iter()
        .map(|e| {
            Ok(Item::new(
                Permutation::parse(&e.cycles, Some(entry.degree))?,
                e.bound,
            ))
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    Ok(TransversalRecipe {
        elements: items,
        side: Side::Right,
        base_point: Some(base_point),
        certified: false,
    })
}

fn build_recipe(
    entry: &CatalogEntry,
    g: Arc<PermGroup>,
    recipe: &Recipe,
    seed: u64,
) -> Result<OrderedGeneratingSystem, CatalogError> {
    let family = |ogs: OrderedGeneratingSystem| -> Result<_, CatalogError> {
        if !ogs.group().same_group(&g) {
            return Err(CatalogError::Data(format!(
                "{}: generators differ from the family",
                entry.name
            )));
        }
        Ok(rebase(&ogs, g.clone())?)
    };
    let config = SearchConfig {
        seed,
        ..SearchConfig::default()
    };
    match recipe {
        Recipe::CoprimeCyclic {
            base_point,
            stabilizer,
        } => {
            let h = subgroup_of(entry, &g, *base_point, stabilizer)?;
            let inner = build_recipe(entry, Arc::new(h), &stabilizer.recipe, seed)?;
            let mut t = coprime_cyclic_transversal(&g, inner.group(), seed)?;
            t.base_point = Some(*base_point);
            let provenance = format!(
                "coprime-cyclic(point={base_point}, seed={seed}) + {}",
                inner.provenance()
            );
            Ok(attach_level(g, &t, &inner, provenance)?)
        }
        Recipe::Explicit {
            base_point,
            elements,
            stabilizer,
        } => {
            let h = subgroup_of(entry, &g, *base_point, stabilizer)?;
            let inner = build_recipe(entry, Arc::new(h), &stabilizer.recipe, seed)?;
            let t = explicit_recipe(entry, *base_point, elements)?;
            let names: Vec<&str> = elements.iter().map(|e| e.name.as_str()).collect();
            let provenance = format!(
                "explicit({}, point={base_point}) + {}",
                names.join(","),
                inner.provenance()
            );
            Ok(attach_level(g, &t, &inner, provenance)?)
        }
        Recipe::PowerCoverChain => Ok(ogs_from_chain(g, &entry.name, config)?),
        Recipe::Alternating { n } => family(ogs_alternating(*n)?),
        Recipe::Symmetric { n } => family(ogs_symmetric(*n)?),
        Recipe::Cyclic { n } => family(ogs_cyclic(*n)?),
        Recipe::Psl2 { q } => family(ogs_psl2_with(*q, SubgroupStrategy::Auto, seed)?),
    }
}

/// One row per word of an explicit transversal: exponents and the image of
/// the base point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageTable {
    pub base_point: usize,
    pub rows: Vec<(Vec<u64>, usize)>,
}

impl ImageTable {
    /// True iff the images are pairwise distinct.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.rows.iter().all(|(_, x)| seen.insert(*x))
    }

    pub fn distinct_images(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.1)
            .collect::<std::collections::HashSet<_>>()
            .len()
    }
}

pub fn transversal_image_table(name: &str) -> Result<ImageTable, CatalogError> {
    let entry = lookup(name)?;
    let Recipe::Explicit {
        base_point,
        elements,
        ..
    } = &entry.recipe
    else {
        return Err(CatalogError::NoExplicitTransversal(entry.name));
    };
    let t = explicit_recipe(&entry, *base_point, elements)?;
    let rows = segment_words(&t.elements, entry.degree)
        .into_iter()
        .map(|(e, w)| (e, coset_key(&w, base_point - 1, Side::Right) + 1))
        .collect();
    Ok(ImageTable {
        base_point: *base_point,
        rows,
    })
}

/// One row of [`verify_catalog`].
#[derive(Debug, Clone, Serialize)]
pub struct CatalogRow {
    pub name: String,
    pub order: u128,
    pub expected_order: u128,
    pub structural: bool,
    /// `None` when the order is above the exhaustive limit.
    pub exhaustive: Option<bool>,
    pub build_ms: u128,
    pub verify_ms: u128,
    pub error: Option<String>,
}

impl CatalogRow {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.order == self.expected_order
            && self.structural
            && self.exhaustive != Some(false)
    }
}

/// Orders up to this get exhaustive verification in [`verify_catalog`].
pub const CATALOG_EXHAUSTIVE_LIMIT: u128 = 1_000_000;

pub fn verify_catalog() -> Vec<CatalogRow> {
    LISTED.par_iter().map(|name| verify_entry(name)).collect()
}

fn verify_entry(name: &str) -> CatalogRow {
    let expected_order = lookup(name).map(|e| e.expected_order).unwrap_or(0);
    let mut row = CatalogRow {
        name: name.into(),
        order: 0,
        expected_order,
        structural: false,
        exhaustive: None,
        build_ms: 0,
        verify_ms: 0,
        error: None,
    };
    let start = std::time::Instant::now();
    let (g, ogs) = match build(name) {
        Ok(x) => x,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.build_ms = start.elapsed().as_millis();
    row.order = g.order();
    let start = std::time::Instant::now();
    let result = (|| -> Result<(), OgsError> {
        row.structural = ogs.verify_structural()?.ok;
        if row.order <= CATALOG_EXHAUSTIVE_LIMIT {
            row.exhaustive = Some(ogs.verify_exhaustive(crate::ogs::DEFAULT_MEMORY_BUDGET)?.ok);
        }
        Ok(())
    })();
    row.verify_ms = start.elapsed().as_millis();
    if let Err(e) = result {
        row.error = Some(e.to_string());
    }
    row
}

/// An exported entry: the OGS file of the built system plus catalog data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportedEntry {
    #[serde(flatten)]
    pub ogs: OgsFile,
    pub expected_order: u64,
    pub generator_names: Vec<String>,
    pub notes: Vec<String>,
}

/// JSON array of every listed entry, as stored in `data/catalog.json`.
pub fn export_json() -> Result<String, CatalogError> {
    let rows = LISTED
        .par_iter()
        .map(|name| {
            let entry = lookup(name)?;
            let (_, ogs) = build(name)?;
            Ok(ExportedEntry {
                ogs: ogs.to_file(),
                expected_order: entry.expected_order as u64,
                generator_names: entry.generator_names,
                notes: entry.notes,
            })
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    Ok(serde_json::to_string_pretty(&rows).expect("plain data serializes") + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_names() {
        assert_eq!(lookup("A7").unwrap().expected_order, 2520);
        assert_eq!(lookup("S1").unwrap().expected_order, 1);
        assert_eq!(lookup("PSL2_7").unwrap().expected_order, 168);
        for bad in ["M13", "A0", "A07", "Sx", "PSL2_9", "C", ""] {
            assert!(
                matches!(lookup(bad), Err(CatalogError::Unknown(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn formulas() {
        let m12 = lookup("M12").unwrap();
        assert_eq!(
            m12.evaluate("A^9*C*A").unwrap().to_cycles(),
            m12.evaluate("A^-2 · C · A").unwrap().to_cycles()
        );
        assert!(m12.evaluate("A^x").is_err());
        assert!(m12.evaluate("Z").is_err());
        assert!(m12.evaluate("").is_err());
    }

    #[test]
    fn small_builds() {
        let (_, c5) = build("C5").unwrap();
        assert_eq!(c5.items()[0].perm.to_cycles(), "(1,2,3,4,5)");
        assert_eq!(c5.bounds(), vec![5]);
        let (g, m11) = build("M11").unwrap();
        assert_eq!(g.order(), 7920);
        assert_eq!(m11.bounds()[0], 11);
        assert!(matches!(
            transversal_image_table("M11"),
            Err(CatalogError::NoExplicitTransversal(_))
        ));
    }
}
