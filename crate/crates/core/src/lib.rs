//! Exact character theory for small finite groups: groups as dense
//! multiplication tables, cyclotomic arithmetic, Dixon–Schneider character
//! tables, the squaring map `ϑ ↦ ϑ^(2)` and executable theorem checks.

pub mod character;
pub mod cli;
pub mod cyclotomic;
pub mod group;
pub mod harness;

use num_rational::BigRational;

/// Exact rational numbers.
pub type Rational = BigRational;
/// Exact element of a cyclotomic field.
pub type CycNum = cyclotomic::Cyclotomic<BigRational>;
/// Floating-point cyclotomic number, for approximate cross-checks.
pub type CycNumF64 = cyclotomic::Cyclotomic<f64>;

/// Toolkit version, part of every cache key and report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use character::{compute_table, CharacterTable, ClassFunction, Decomposition};
pub use group::{builtin, Group, GroupSpec, Subgroup};
