use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::coefficient::Coefficient;
use super::context::CyclotomicContext;
use super::CyclotomicError;

/// An element of `Q(ζ_n)` in the power basis modulo `Φ_n`.
///
/// Coefficients are stored for `1, ζ, …, ζ^{φ(n)-1}`; since the basis is fixed,
/// two values are equal iff their coefficient vectors are.
#[derive(Clone)]
pub struct Cyclotomic<T> {
    ctx: Arc<CyclotomicContext>,
    coeffs: Vec<T>,
}

impl<T: Coefficient> Cyclotomic<T> {
    /// Wraps a coefficient vector of length `φ(n)`.
    pub fn from_coeffs(ctx: &Arc<CyclotomicContext>, coeffs: Vec<T>) -> Result<Self, CyclotomicError> {
        if coeffs.len() != ctx.phi() {
            return Err(CyclotomicError::BadLength { expected: ctx.phi(), found: coeffs.len() });
        }
        Ok(Cyclotomic { ctx: Arc::clone(ctx), coeffs })
    }

    pub fn zero(ctx: &Arc<CyclotomicContext>) -> Self {
        Cyclotomic { ctx: Arc::clone(ctx), coeffs: vec![T::zero(); ctx.phi()] }
    }

    pub fn one(ctx: &Arc<CyclotomicContext>) -> Self {
        Self::from_scalar(ctx, T::one())
    }

    /// Embeds a rational (or other base-field) scalar.
    pub fn from_scalar(ctx: &Arc<CyclotomicContext>, value: T) -> Self {
        let mut out = Self::zero(ctx);
        out.coeffs[0] = value;
        out
    }

    pub fn from_int(ctx: &Arc<CyclotomicContext>, value: i64) -> Self {
        Self::from_scalar(ctx, T::from_int(value))
    }

    /// `ζ_n^k`, with `k` taken mod `n`.
    pub fn root(ctx: &Arc<CyclotomicContext>, k: i64) -> Self {
        let row = ctx.monomial(k).expect("monomial table fits in i64");
        Cyclotomic {
            ctx: Arc::clone(ctx),
            coeffs: row.iter().map(|c| T::from_int(*c)).collect(),
        }
    }

    /// `Σ_k mult[k]·ζ_n^k` for an integer multiplicity vector indexed by exponent.
    pub fn from_root_multiplicities(ctx: &Arc<CyclotomicContext>, mult: &[(i64, i64)]) -> Self {
        let mut acc = vec![0i128; ctx.phi()];
        for &(k, m) in mult {
            if m == 0 {
                continue;
            }
            let row = ctx.monomial(k).expect("monomial table fits in i64");
            for (a, r) in acc.iter_mut().zip(row) {
                *a += (*r as i128) * (m as i128);
            }
        }
        Cyclotomic { ctx: Arc::clone(ctx), coeffs: T::from_scaled_integers(1, &acc) }
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn conductor(&self) -> u64 {
        self.ctx.n()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if all non-constant coefficients vanish.
    pub fn to_rational(&self) -> Option<T> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), CyclotomicError> {
        if self.ctx.n() != other.ctx.n() {
            return Err(CyclotomicError::ContextMismatch { left: self.ctx.n(), right: other.ctx.n() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_same(other)?;
        Ok(Cyclotomic {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_same(other)?;
        Ok(Cyclotomic {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.check_same(other)?;
        if let (Some((da, na)), Some((db, nb))) = (T::lift_integers(&self.coeffs), T::lift_integers(&other.coeffs)) {
            if let Some(out) = da.checked_mul(db).and_then(|den| {
                self.integer_product(&na, &nb).map(|nums| T::from_scaled_integers(den, &nums))
            }) {
                return Ok(Cyclotomic { ctx: Arc::clone(&self.ctx), coeffs: out });
            }
        }
        Ok(Cyclotomic { ctx: Arc::clone(&self.ctx), coeffs: self.generic_product(&other.coeffs)? })
    }

    /// Convolution followed by sparse long division by `Φ_n`, all in `i128`.
    fn integer_product(&self, a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
        let phi = self.ctx.phi();
        let mut prod = vec![0i128; 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y == 0 {
                    continue;
                }
                prod[i + j] = prod[i + j].checked_add(x.checked_mul(*y)?)?;
            }
        }
        for k in (phi..2 * phi - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for &(i, m) in self.ctx.modulus_support() {
                let idx = k - phi + i;
                prod[idx] = prod[idx].checked_sub(c.checked_mul(m as i128)?)?;
            }
        }
        prod.truncate(phi);
        Some(prod)
    }

    /// Convolution in `T`, then reduction through the precomputed table.
    fn generic_product(&self, other: &[T]) -> Result<Vec<T>, CyclotomicError> {
        let phi = self.ctx.phi();
        let mut prod = vec![T::zero(); 2 * phi - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].clone() + x.clone() * y.clone();
            }
        }
        let table = self.ctx.reduction_table()?;
        let (low, high) = prod.split_at_mut(phi);
        for (row, c) in table.iter().zip(high.iter()) {
            if c.is_zero() {
                continue;
            }
            for (slot, r) in low.iter_mut().zip(row) {
                if *r != 0 {
                    *slot = slot.clone() + c.clone() * T::from_int(*r);
                }
            }
        }
        prod.truncate(phi);
        Ok(prod)
    }

    /// Image under the field automorphism `ζ ↦ ζ^k`; requires `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Result<Self, CyclotomicError> {
        let n = self.ctx.n() as i64;
        if k.gcd(&n) != 1 {
            return Err(CyclotomicError::NotCoprime { k, n: n as u64 });
        }
        Ok(self.substitute(k))
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.substitute(-1)
    }

    /// `Σ c_j ζ^{jk}` for arbitrary `k`; a field automorphism only when `k` is a unit.
    fn substitute(&self, k: i64) -> Self {
        let n = self.ctx.n() as i64;
        let phi = self.ctx.phi();
        if let Some((den, nums)) = T::lift_integers(&self.coeffs) {
            let mut acc = vec![0i128; phi];
            let mut ok = true;
            'outer: for (j, c) in nums.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let row = self.ctx.monomial((j as i64 * k).rem_euclid(n)).expect("monomial table");
                for (a, r) in acc.iter_mut().zip(row) {
                    match c.checked_mul(*r as i128).and_then(|t| a.checked_add(t)) {
                        Some(v) => *a = v,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                return Cyclotomic { ctx: Arc::clone(&self.ctx), coeffs: T::from_scaled_integers(den, &acc) };
            }
        }
        let mut out = vec![T::zero(); phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = self.ctx.monomial((j as i64 * k).rem_euclid(n)).expect("monomial table");
            for (slot, r) in out.iter_mut().zip(row) {
                if *r != 0 {
                    *slot = slot.clone() + c.clone() * T::from_int(*r);
                }
            }
        }
        Cyclotomic { ctx: Arc::clone(&self.ctx), coeffs: out }
    }

    /// Explicit embedding `Q(ζ_m) → Q(ζ_N)` for `m | N`.
    pub fn embed(&self, target: &Arc<CyclotomicContext>) -> Result<Self, CyclotomicError> {
        let m = self.ctx.n();
        if !target.n().is_multiple_of(m) {
            return Err(CyclotomicError::NotSubfield { from: m, to: target.n() });
        }
        let step = (target.n() / m) as i64;
        let mut out = Self::zero(target);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = target.monomial(j as i64 * step)?;
            for (slot, r) in out.coeffs.iter_mut().zip(row) {
                if *r != 0 {
                    *slot = slot.clone() + c.clone() * T::from_int(*r);
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by a base-field scalar.
    pub fn scale(&self, s: &T) -> Self {
        Cyclotomic {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Converts coefficients to another scalar type.
    pub fn map_coeffs<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Cyclotomic<U> {
        Cyclotomic { ctx: Arc::clone(&self.ctx), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Lexicographic comparison of coefficient vectors.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            match a.partial_cmp(b) {
                Some(Ordering::Equal) | None => continue,
                Some(o) => return o,
            }
        }
        self.coeffs.len().cmp(&other.coeffs.len())
    }
}

impl<T: Coefficient + ToPrimitive> Cyclotomic<T> {
    /// Value under the embedding `ζ_n ↦ e^{2πi/n}`.
    pub fn evaluate(&self) -> Complex64 {
        let n = self.ctx.n() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

impl<T: Coefficient> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n() == other.ctx.n() && self.coeffs == other.coeffs
    }
}

impl<T: Coefficient> fmt::Debug for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(n={}, {:?})", self.ctx.n(), self.coeffs)
    }
}

/// Renders in `E(n)^k` notation, reducing `E(n)^k` to `E(n/g)^(k/g)`.
impl<T: Coefficient + Signed + fmt::Display> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ctx.n();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let g = (k as u64).gcd(&n);
            let (base, exp) = (n / g, k as u64 / g);
            if exp == 1 {
                write!(f, "E({base})")?;
            } else {
                write!(f, "E({base})^{exp}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, T: Coefficient> $trait<&'a Cyclotomic<T>> for &'a Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &'a Cyclotomic<T>) -> Cyclotomic<T> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<T: Coefficient> $trait for Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $method(self, rhs: Cyclotomic<T>) -> Cyclotomic<T> {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<T: Coefficient> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic { ctx: Arc::clone(&self.ctx), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<T: Coefficient> Neg for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        -&self
    }
}
