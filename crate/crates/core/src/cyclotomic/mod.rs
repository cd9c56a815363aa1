//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.

mod coefficient;
mod context;
mod number;

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coefficient::Coefficient;
pub use context::{context, CyclotomicContext, MAX_CONDUCTOR};
pub use number::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("conductor {0} is outside the supported range")]
    CapExceeded(u64),
    #[error("operands live in Q(ζ_{left}) and Q(ζ_{right})")]
    ContextMismatch { left: u64, right: u64 },
    #[error("{k} is not coprime to the conductor {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("Q(ζ_{from}) is not a subfield of Q(ζ_{to})")]
    NotSubfield { from: u64, to: u64 },
    #[error("expected {expected} coefficients, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

/// Wire form of an exact cyclotomic number: `{"n": 7, "coeffs": ["1", "-1/2", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedCyc {
    pub n: u64,
    pub coeffs: Vec<String>,
}

impl Cyclotomic<BigRational> {
    pub fn to_serialized(&self) -> SerializedCyc {
        SerializedCyc {
            n: self.conductor(),
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    /// Rebuilds a value inside `ctx`, re-normalizing every rational.
    pub fn from_serialized(ctx: &Arc<CyclotomicContext>, s: &SerializedCyc) -> Result<Self, CyclotomicError> {
        if s.n != ctx.n() {
            return Err(CyclotomicError::ContextMismatch { left: s.n, right: ctx.n() });
        }
        let coeffs = s
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()?;
        Cyclotomic::from_coeffs(ctx, coeffs)
    }
}

/// Parses `"p"` or `"p/q"` (q nonzero) into a normalized rational.
pub fn parse_rational(s: &str) -> Result<BigRational, CyclotomicError> {
    let bad = || CyclotomicError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den == num_bigint::BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}
