use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CharacterError;
use crate::cyclotomic::CyclotomicContext;
use crate::group::{Group, Subgroup};
use crate::{CycNum, Rational};

/// A class function: one exact value per conjugacy class, in the group's
/// canonical class order.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<Group>,
    values: Vec<CycNum>,
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "ClassFunction[{}]({})", self.group.family(), vals.join(", "))
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    /// Values must share one context whose conductor is a multiple of the group exponent.
    pub fn new(group: &Arc<Group>, values: Vec<CycNum>) -> Result<Self, CharacterError> {
        let r = group.classes().num_classes();
        if values.len() != r {
            return Err(CharacterError::Shape { expected: r, found: values.len() });
        }
        let n = values[0].conductor();
        if !n.is_multiple_of(group.exponent()) || values.iter().any(|v| v.conductor() != n) {
            return Err(CharacterError::Cyclotomic(crate::cyclotomic::CyclotomicError::ContextMismatch {
                left: n,
                right: group.exponent(),
            }));
        }
        Ok(ClassFunction { group: Arc::clone(group), values })
    }

    pub fn constant(group: &Arc<Group>, ctx: &Arc<CyclotomicContext>, value: i64) -> Result<Self, CharacterError> {
        let r = group.classes().num_classes();
        Self::new(group, vec![CycNum::from_int(ctx, value); r])
    }

    /// The trivial character `1_G`.
    pub fn trivial(group: &Arc<Group>, ctx: &Arc<CyclotomicContext>) -> Result<Self, CharacterError> {
        Self::constant(group, ctx, 1)
    }

    /// The regular character.
    pub fn regular(group: &Arc<Group>, ctx: &Arc<CyclotomicContext>) -> Result<Self, CharacterError> {
        let mut f = Self::constant(group, ctx, 0)?;
        f.values[0] = CycNum::from_int(ctx, group.order() as i64);
        Ok(f)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &CycNum {
        &self.values[class]
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        self.values[0].context()
    }

    /// Value at the identity, when it is an integer.
    pub fn degree(&self) -> Option<i64> {
        let r = self.values[0].to_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    fn same_group(&self, other: &Self) -> Result<(), CharacterError> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(CharacterError::GroupMismatch);
        }
        if self.context().n() != other.context().n() {
            return Err(CharacterError::Cyclotomic(crate::cyclotomic::CyclotomicError::ContextMismatch {
                left: self.context().n(),
                right: other.context().n(),
            }));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&CycNum, &CycNum) -> CycNum) -> Result<Self, CharacterError> {
        self.same_group(other)?;
        Ok(ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, CharacterError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CharacterError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn product(&self, other: &Self) -> Result<Self, CharacterError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn square(&self) -> Self {
        self.product(self).expect("same group")
    }

    pub fn scale(&self, k: i64) -> Self {
        let s = Rational::from_integer(BigInt::from(k));
        ClassFunction { group: Arc::clone(&self.group), values: self.values.iter().map(|v| v.scale(&s)).collect() }
    }

    pub fn conjugate(&self) -> Self {
        ClassFunction { group: Arc::clone(&self.group), values: self.values.iter().map(CycNum::conjugate).collect() }
    }

    /// `g ↦ ϑ(g^m)`.
    pub fn power_map(&self, m: i64) -> Self {
        let classes = self.group.classes();
        let values = (0..self.values.len()).map(|c| self.values[classes.power_class(m, c)].clone()).collect();
        ClassFunction { group: Arc::clone(&self.group), values }
    }

    /// The second-power map `ϑ^(2)(g) = ϑ(g²)`.
    pub fn second_power(&self) -> Self {
        self.power_map(2)
    }

    /// `[α, β] = (1/|G|) Σ_c |c| α(c) conj(β(c))`.
    pub fn inner_product(&self, other: &Self) -> Result<Rational, CharacterError> {
        self.same_group(other)?;
        let classes = self.group.classes();
        let ctx = self.context();
        let mut acc = CycNum::zero(ctx);
        for (c, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term = a * &b.conjugate();
            acc = &acc + &term.scale(&Rational::from_integer(BigInt::from(classes.size(c))));
        }
        let total = acc.to_rational().ok_or(CharacterError::NotRational)?;
        Ok(total / Rational::from_integer(BigInt::from(self.group.order())))
    }

    /// Elements where the value equals the degree.
    pub fn kernel(&self) -> Result<Subgroup, CharacterError> {
        let d = &self.values[0];
        self.class_union(|v| v == d)
    }

    /// Elements where `|χ(g)| = χ(1)`.
    pub fn center(&self) -> Result<Subgroup, CharacterError> {
        let d2 = &self.values[0] * &self.values[0];
        self.class_union(|v| (v * &v.conjugate()) == d2)
    }

    fn class_union(&self, pred: impl Fn(&CycNum) -> bool) -> Result<Subgroup, CharacterError> {
        let classes = self.group.classes();
        let mut members = Vec::new();
        for (c, v) in self.values.iter().enumerate() {
            if pred(v) {
                members.extend_from_slice(classes.members(c));
            }
        }
        let sub = Subgroup::from_member_set(&self.group, members)?;
        if !sub.is_normal() {
            return Err(CharacterError::InternalInconsistency("kernel/center is not normal".into()));
        }
        Ok(sub)
    }

    /// Whether `χ` vanishes on every class outside `Z(χ)`.
    pub fn vanishes_off_center(&self) -> bool {
        let d2 = &self.values[0] * &self.values[0];
        self.values.iter().all(|v| v.is_zero() || (v * &v.conjugate()) == d2)
    }

    /// Restriction to a subgroup, as a class function on `h.as_group()` with
    /// the same cyclotomic context.
    pub fn restrict(&self, h: &Subgroup) -> Result<ClassFunction, CharacterError> {
        if !Arc::ptr_eq(h.parent(), &self.group) {
            return Err(CharacterError::NotSubgroup);
        }
        let hg = h.as_group();
        let hc = hg.classes();
        let gc = self.group.classes();
        let values = (0..hc.num_classes())
            .map(|c| {
                let local = hc.representative(c);
                self.values[gc.class_of(h.members()[local])].clone()
            })
            .collect();
        ClassFunction::new(hg, values)
    }

    /// Induction from a subgroup: `λ^G(g) = Σ_{t ∈ T, t⁻¹gt ∈ H} λ(t⁻¹gt)`
    /// over the left transversal `T`. `lambda` lives on `h.as_group()` and its
    /// conductor must already be a multiple of `exp(G)`.
    pub fn induce(h: &Subgroup, lambda: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        if !Arc::ptr_eq(h.as_group(), &lambda.group) {
            return Err(CharacterError::NotSubgroup);
        }
        let g = h.parent();
        let ctx = lambda.context();
        if !ctx.n().is_multiple_of(g.exponent()) {
            return Err(CharacterError::Cyclotomic(crate::cyclotomic::CyclotomicError::NotSubfield {
                from: g.exponent(),
                to: ctx.n(),
            }));
        }
        let gc = g.classes();
        let hc = h.as_group().classes();
        let values = (0..gc.num_classes())
            .map(|c| {
                let x = gc.representative(c);
                let mut acc = CycNum::zero(ctx);
                for &t in h.transversal() {
                    let y = g.conj(x, t);
                    if let Some(local) = h.local_index(y) {
                        acc = &acc + &lambda.values[hc.class_of(local)];
                    }
                }
                acc
            })
            .collect();
        ClassFunction::new(g, values)
    }

    /// Re-expresses the values in a larger cyclotomic field.
    pub fn embed(&self, ctx: &Arc<CyclotomicContext>) -> Result<ClassFunction, CharacterError> {
        let values = self.values.iter().map(|v| v.embed(ctx)).collect::<Result<Vec<_>, _>>()?;
        ClassFunction::new(&self.group, values)
    }

    /// Whether every value is a rational number equal to `value`.
    pub fn is_constant(&self, value: i64) -> bool {
        let v = Rational::from_integer(BigInt::from(value));
        self.values.iter().all(|x| x.to_rational().as_ref() == Some(&v))
    }

    /// `[χ, χ] = 1` and `χ(1) > 0`.
    pub fn is_irreducible_character_candidate(&self) -> bool {
        self.degree().is_some_and(|d| d > 0)
            && self.inner_product(self).map(|n| n.is_one()).unwrap_or(false)
    }

    pub(crate) fn zero_like(&self) -> Self {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: vec![CycNum::zero(self.context()); self.values.len()],
        }
    }
}

pub(crate) fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[allow(dead_code)]
pub(crate) fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}
