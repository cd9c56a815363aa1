//! Character tables and the algebra of class functions.

mod cache;
mod class_function;
mod dixon;
pub mod modular;
mod table;

use thiserror::Error;

use crate::cyclotomic::CyclotomicError;
use crate::group::GroupError;

pub use cache::{CacheOutcome, TableCache, CACHE_ENV};
pub use class_function::ClassFunction;
pub use dixon::compute_table;
pub use table::{CharacterTable, Decomposition, Provenance, SecondPowerMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error("expected {expected} class values, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("inner product is not rational")]
    NotRational,
    #[error("not a character: multiplicity of irreducible {index} is {multiplicity}")]
    NotACharacter { index: usize, multiplicity: String },
    #[error("no prime q = 1 mod {exponent} with q^2 > 4*{order} below the search cap")]
    NoSuitablePrime { exponent: u64, order: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("group has even order {0}")]
    EvenOrder(usize),
    #[error("not a subgroup of this group")]
    NotSubgroup,
    #[error("character index {index} out of range (table has {count})")]
    BadIndex { index: usize, count: usize },
    #[error("character has degree {found}, expected {expected}")]
    DegreeMismatch { expected: String, found: i64 },
    #[error("cache: {0}")]
    Cache(String),
}
