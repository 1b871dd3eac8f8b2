//! Ordered generating systems: evaluation, ranking, verification and
//! factorization.
//!
//! Exponent bounds are exclusive: item `k` with bound `m_k` contributes
//! `a_k^{i_k}` for `0 <= i_k < m_k`, so the exponent box has `prod m_k`
//! points and a valid system has exactly `|G|` of them.
//!
//! An OGS may carry a level structure. Levels are listed outermost first;
//! each covers a contiguous segment of items whose words form a transversal
//! of the subgroup generated by the items still remaining inside it. A
//! `right` level is the suffix of the remaining range (`g = h * w`), a
//! `left` level is its prefix (`g = w * h`). With a base point the subgroup
//! is that point's stabilizer, otherwise cosets are compared by membership.

mod factor;
mod file;
pub(crate) mod verify;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupError, PermGroup};
use crate::perm::{PermError, Permutation};

pub use factor::Factorizer;
pub use file::{GroupSpec, ItemSpec, LevelSpec, OgsFile};
pub use verify::{
    Failure, Method, VerificationReport, DEFAULT_MEMORY_BUDGET, STRUCTURAL_LEVEL_LIMIT,
};

/// Groups up to this order may be factored through an exhaustive table.
pub const FLAT_TABLE_LIMIT: u128 = 1_000_000;

#[derive(Debug, Error)]
pub enum OgsError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("item {index} has bound 0")]
    ZeroBound { index: usize },
    #[error("item {index} is not an element of the group")]
    ItemNotInGroup { index: usize },
    #[error("item {index} has degree {found}, group has degree {expected}")]
    ItemDegree {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("malformed levels: {0}")]
    MalformedLevels(String),
    #[error("exponent vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("exponent {exponent} at index {index} violates bound {bound}")]
    BoundViolation {
        index: usize,
        exponent: u64,
        bound: u64,
    },
    #[error("rank {rank} is outside [0, {size})")]
    RankOutOfRange { rank: u128, size: u128 },
    #[error("exhaustive verification needs {required} bytes, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("structural verification needs levels; use exhaustive verification")]
    MissingLevels,
    #[error("the system has not been verified")]
    NotVerified,
    #[error("element is not in the group")]
    NotInGroup,
    #[error("flat system of size {size} is too large to tabulate (limit {limit})")]
    TableTooLarge { size: u128, limit: u128 },
    #[error("invalid file: {0}")]
    File(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verification {
    None,
    Structural,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub perm: Permutation,
    pub bound: u64,
}

impl Item {
    pub fn new(perm: Permutation, bound: u64) -> Self {
        Item { perm, bound }
    }
}

/// A segment `items[from..to]` of a chain-structured system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Level {
    pub from: usize,
    pub to: usize,
    /// 1-based point whose stabilizer is the next subgroup, if any.
    pub base_point: Option<usize>,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<u64>);

impl ExponentVector {
    pub fn zeros(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone)]
pub struct OrderedGeneratingSystem {
    group: Arc<PermGroup>,
    group_name: String,
    items: Vec<Item>,
    levels: Option<Vec<Level>>,
    provenance: String,
    verified: Verification,
    factorizer: OnceLock<Arc<Factorizer>>,
}

impl OrderedGeneratingSystem {
    /// Checks degrees, bounds, membership of every item and that the levels
    /// (if any) partition the items. Bijectivity is left to the verifiers.
    pub fn new(
        group: Arc<PermGroup>,
        group_name: impl Into<String>,
        items: Vec<Item>,
        levels: Option<Vec<Level>>,
        provenance: impl Into<String>,
    ) -> Result<Self, OgsError> {
        for (index, item) in items.iter().enumerate() {
            if item.perm.degree() != group.degree() {
                return Err(OgsError::ItemDegree {
                    index,
                    expected: group.degree(),
                    found: item.perm.degree(),
                });
            }
            if item.bound == 0 {
                return Err(OgsError::ZeroBound { index });
            }
            if !group.chain().contains(&item.perm) {
                return Err(OgsError::ItemNotInGroup { index });
            }
        }
        if let Some(levels) = &levels {
            check_levels(levels, items.len(), group.degree())?;
        }
        Ok(OrderedGeneratingSystem {
            group,
            group_name: group_name.into(),
            items,
            levels,
            provenance: provenance.into(),
            verified: Verification::None,
            factorizer: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn bounds(&self) -> Vec<u64> {
        self.items.iter().map(|i| i.bound).collect()
    }

    pub fn levels(&self) -> Option<&[Level]> {
        self.levels.as_deref()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn verification(&self) -> Verification {
        self.verified
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// `prod m_k`, saturating at `u128::MAX`.
    pub fn bounds_product(&self) -> u128 {
        self.items
            .iter()
            .try_fold(1u128, |acc, i| acc.checked_mul(i.bound as u128))
            .unwrap_or(u128::MAX)
    }

    pub(crate) fn set_verified(&mut self, v: Verification) {
        self.verified = v;
    }

    pub(crate) fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub(crate) fn with_group_name(mut self, name: impl Into<String>) -> Self {
        self.group_name = name.into();
        self
    }

    fn check_exponents(&self, e: &ExponentVector) -> Result<(), OgsError> {
        if e.0.len() != self.items.len() {
            return Err(OgsError::LengthMismatch {
                expected: self.items.len(),
                found: e.0.len(),
            });
        }
        for (index, (&exponent, item)) in e.0.iter().zip(&self.items).enumerate() {
            if exponent >= item.bound {
                return Err(OgsError::BoundViolation {
                    index,
                    exponent,
                    bound: item.bound,
                });
            }
        }
        Ok(())
    }

    /// `a_1^{e_1} * .. * a_n^{e_n}`, leftmost factor acting first.
    pub fn word(&self, e: &ExponentVector) -> Result<Permutation, OgsError> {
        self.check_exponents(e)?;
        Ok(word_of(&self.items, &e.0, self.degree()))
    }

    /// Mixed-radix code with the first item most significant.
    pub fn rank(&self, e: &ExponentVector) -> Result<u128, OgsError> {
        self.check_exponents(e)?;
        Ok(e.0.iter().zip(&self.items).fold(0u128, |acc, (&d, item)| {
            acc * item.bound as u128 + d as u128
        }))
    }

    pub fn unrank(&self, rank: u128) -> Result<ExponentVector, OgsError> {
        let size = self.bounds_product();
        if rank >= size {
            return Err(OgsError::RankOutOfRange { rank, size });
        }
        Ok(ExponentVector(unrank_digits(&self.bounds(), rank)))
    }

    /// Runs the verifier for `method` and records success.
    pub fn verify(
        &mut self,
        method: Method,
        memory_budget: u128,
    ) -> Result<VerificationReport, OgsError> {
        let report = match method {
            Method::Structural => self.verify_structural()?,
            Method::Exhaustive => self.verify_exhaustive(memory_budget)?,
        };
        if report.ok {
            self.verified = match method {
                Method::Structural => Verification::Structural,
                Method::Exhaustive => Verification::Exhaustive,
            };
        }
        Ok(report)
    }

    /// The unique exponent vector of `g`.
    pub fn factor(&self, g: &Permutation) -> Result<ExponentVector, OgsError> {
        if self.verified == Verification::None {
            return Err(OgsError::NotVerified);
        }
        if self.factorizer.get().is_none() {
            let f = Factorizer::new(self)?;
            let _ = self.factorizer.set(Arc::new(f));
        }
        self.factorizer.get().expect("initialised").factor(self, g)
    }
}

pub(crate) fn word_of(items: &[Item], exps: &[u64], degree: usize) -> Permutation {
    let mut acc = Permutation::identity_unchecked(degree);
    for (item, &e) in items.iter().zip(exps) {
        if e > 0 {
            acc = acc.then(&item.perm.power(e as i64));
        }
    }
    acc
}

pub(crate) fn unrank_digits(bounds: &[u64], mut rank: u128) -> Vec<u64> {
    let mut digits = vec![0u64; bounds.len()];
    for (d, &b) in digits.iter_mut().zip(bounds).rev() {
        *d = (rank % b as u128) as u64;
        rank /= b as u128;
    }
    digits
}

/// All words over `items` in mixed-radix order, with their exponents.
pub(crate) fn segment_words(items: &[Item], degree: usize) -> Vec<(Vec<u64>, Permutation)> {
    let bounds: Vec<u64> = items.iter().map(|i| i.bound).collect();
    let total: u128 = bounds.iter().map(|&b| b as u128).product();
    (0..total)
        .map(|r| {
            let e = unrank_digits(&bounds, r);
            let w = word_of(items, &e, degree);
            (e, w)
        })
        .collect()
}

fn check_levels(levels: &[Level], n: usize, degree: usize) -> Result<(), OgsError> {
    let (mut lo, mut hi) = (0usize, n);
    for (i, level) in levels.iter().enumerate() {
        if level.from >= level.to || level.to > n {
            return Err(OgsError::MalformedLevels(format!(
                "level {i} has empty or out-of-range segment {}..{}",
                level.from, level.to
            )));
        }
        if let Some(b) = level.base_point {
            if b == 0 || b > degree {
                return Err(OgsError::MalformedLevels(format!(
                    "level {i} base point {b} outside 1..={degree}"
                )));
            }
        }
        match level.side {
            Side::Left if level.from == lo && level.to <= hi => lo = level.to,
            Side::Right if level.to == hi && level.from >= lo => hi = level.from,
            _ => {
                return Err(OgsError::MalformedLevels(format!(
                    "level {i} ({} side, {}..{}) is not at the {} end of the remaining items {lo}..{hi}",
                    level.side, level.from, level.to, level.side
                )))
            }
        }
    }
    if lo != hi {
        return Err(OgsError::MalformedLevels(format!(
            "items {lo}..{hi} are not covered by any level"
        )));
    }
    Ok(())
}
