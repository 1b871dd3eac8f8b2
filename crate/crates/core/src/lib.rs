//! Permutation groups, stabilizer chains and ordered generating systems.
//!
//! An ordered generating system of a finite group `G` is a list of
//! elements `a_1, .., a_n` with bounds `m_1, .., m_n` such that every
//! `g` in `G` equals `a_1^{i_1} .. a_n^{i_n}` for exactly one exponent
//! vector with `0 <= i_k < m_k`.

pub mod catalog;
pub mod chain;
pub mod construct;
pub mod group;
pub mod ogs;
pub mod perm;

pub use chain::StabilizerChain;
pub use group::{GroupError, PermGroup};
pub use ogs::{ExponentVector, Item, Level, OgsError, OrderedGeneratingSystem, Side};
pub use perm::{CycleExpr, PermError, Permutation};
