use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};

/// Scalar type usable as a coefficient of a cyclotomic number.
///
/// The only requirement beyond field arithmetic is an optional lift to
/// scaled 128-bit integers; exact types use it to run multiplication and
/// Galois action on machine integers instead of allocating per coefficient.
pub trait Coefficient:
    Clone + Debug + PartialEq + PartialOrd + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    /// Returns `(den, nums)` with `values[i] == nums[i] / den`, or `None` if
    /// the representation does not fit (or the type has no exact lift).
    fn lift_integers(_values: &[Self]) -> Option<(i128, Vec<i128>)> {
        None
    }

    /// Inverse of [`Coefficient::lift_integers`].
    fn from_scaled_integers(den: i128, nums: &[i128]) -> Vec<Self> {
        let den = Self::from_i128(den).expect("denominator representable");
        nums.iter()
            .map(|n| Self::from_i128(*n).expect("numerator representable") / den.clone())
            .collect()
    }

    /// Exact coefficient from an integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable")
    }
}

impl Coefficient for BigRational {
    fn lift_integers(values: &[Self]) -> Option<(i128, Vec<i128>)> {
        let mut den: i128 = 1;
        for v in values {
            if v.is_zero() || v.denom().is_one() {
                continue;
            }
            let d = v.denom().to_i128()?;
            den = den.checked_mul(d / den.gcd(&d))?;
        }
        let mut nums = Vec::with_capacity(values.len());
        for v in values {
            if v.is_zero() {
                nums.push(0);
                continue;
            }
            let n = v.numer().to_i128()?;
            let d = v.denom().to_i128()?;
            nums.push(n.checked_mul(den / d)?);
        }
        Some((den, nums))
    }

    fn from_scaled_integers(den: i128, nums: &[i128]) -> Vec<Self> {
        let d = BigInt::from(den);
        nums.iter()
            .map(|&n| {
                if n == 0 {
                    BigRational::zero()
                } else if den == 1 {
                    BigRational::from_integer(BigInt::from(n))
                } else {
                    let g = n.gcd(&den);
                    if g == 1 {
                        BigRational::new_raw(BigInt::from(n), d.clone())
                    } else {
                        BigRational::new(BigInt::from(n / g), BigInt::from(den / g))
                    }
                }
            })
            .collect()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Coefficient for f64 {}

impl Coefficient for f32 {}
