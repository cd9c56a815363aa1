//! Finite groups as dense multiplication tables.

mod builtin;
mod classes;
mod perm;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use builtin::{builtin, remark_super_parameters, GroupSpec};
pub use classes::{conjugacy_classes, ClassData};
pub use perm::{parse_cycles, Permutation};
pub use subgroup::{subgroup_closure, Subgroup};

/// Default cap on the number of elements of a constructed group.
pub const DEFAULT_ORDER_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure exceeds the order cap of {cap}")]
    ClosureExceedsCap { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("malformed group spec: {0}")]
    BadSpec(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("element index {0} out of range")]
    BadIndex(usize),
}

/// Structural hypotheses attached by constructors. `None` means unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFlags {
    pub odd_order: bool,
    pub nilpotent: Option<bool>,
    pub supersolvable: Option<bool>,
    pub all_irreducibles_monomial: Option<bool>,
}

impl GroupFlags {
    pub fn unknown(order: usize) -> Self {
        GroupFlags {
            odd_order: order % 2 == 1,
            nilpotent: None,
            supersolvable: None,
            all_irreducibles_monomial: None,
        }
    }

    /// Flags for a family whose three hypotheses are all known.
    pub fn known(order: usize, nilpotent: bool, supersolvable: bool, monomial: bool) -> Self {
        GroupFlags {
            odd_order: order % 2 == 1,
            nilpotent: Some(nilpotent),
            supersolvable: Some(supersolvable),
            all_irreducibles_monomial: Some(monomial),
        }
    }
}

/// Exponent, center and commutativity of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInvariants {
    pub exponent: u64,
    pub center: Vec<usize>,
    pub is_abelian: bool,
}

/// A finite group on element indices `0..order`, identity at 0.
pub struct Group {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    element_orders: Vec<u32>,
    generator_witness: Vec<usize>,
    family: String,
    flags: GroupFlags,
    classes: OnceLock<ClassData>,
    invariants: OnceLock<GroupInvariants>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("family", &self.family)
            .field("order", &self.order)
            .field("flags", &self.flags)
            .finish()
    }
}

impl Group {
    /// Enumerates the closure of `gens` breadth-first: identity first, then
    /// words by length, ties broken by the generator sequence.
    ///
    /// `compose(a, b)` is the product `ab`.
    pub fn from_closure<E, F>(gens: &[E], identity: E, compose: F, cap: usize) -> Result<Self, GroupError>
    where
        E: Clone + Eq + Hash,
        F: Fn(&E, &E) -> E,
    {
        let cap = cap.min(u16::MAX as usize + 1);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<E, usize> = HashMap::from([(identity, 0)]);
        // word structure: element i = elements[parent[i]] · gens[letter[i]]
        let mut parent = vec![usize::MAX];
        let mut letter = vec![usize::MAX];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (s, g) in gens.iter().enumerate() {
                let prod = compose(&elements[head], g);
                let idx = match index.get(&prod) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::ClosureExceedsCap { cap });
                        }
                        let i = elements.len();
                        index.insert(prod.clone(), i);
                        elements.push(prod);
                        parent.push(head);
                        letter.push(s);
                        i
                    }
                };
                row.push(idx);
            }
            right.push(row);
            head += 1;
        }
        let order = elements.len();
        let mut mul = vec![0u16; order * order];
        for a in 0..order {
            let base = a * order;
            mul[base] = a as u16;
            for b in 1..order {
                let via = mul[base + parent[b]] as usize;
                mul[base + b] = right[via][letter[b]] as u16;
            }
        }
        let generator_witness = gens.iter().map(|g| index[g]).collect();
        Ok(Self::from_table(order, mul, generator_witness))
    }

    /// Wraps a validated multiplication table (row-major, identity at 0).
    pub(crate) fn from_table(order: usize, mul: Vec<u16>, generator_witness: Vec<usize>) -> Self {
        let mut inv = vec![0u16; order];
        for g in 0..order {
            let row = &mul[g * order..(g + 1) * order];
            inv[g] = row.iter().position(|&x| x == 0).expect("every element has an inverse") as u16;
        }
        let mut element_orders = vec![1u32; order];
        for g in 1..order {
            let mut x = g;
            let mut k = 1;
            while x != 0 {
                x = mul[x * order + g] as usize;
                k += 1;
            }
            element_orders[g] = k;
        }
        Group {
            order,
            mul,
            inv,
            element_orders,
            generator_witness,
            family: String::from("custom"),
            flags: GroupFlags::unknown(order),
            classes: OnceLock::new(),
            invariants: OnceLock::new(),
        }
    }

    /// Permutation group generated by `perms` on `degree` points, with
    /// unknown structural flags.
    pub fn build_from_generators(degree: usize, perms: &[Permutation], cap: usize) -> Result<Self, GroupError> {
        for p in perms {
            if p.degree() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "{p} acts on {} points, expected {degree}",
                    p.degree()
                )));
            }
        }
        let identity = Permutation::identity(degree);
        Group::from_closure(perms, identity, |a, b| a.then(b), cap)
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = family.into();
        self
    }

    /// Overrides the structural flags; `odd_order` is always recomputed.
    pub fn with_flags(mut self, flags: GroupFlags) -> Self {
        self.flags = GroupFlags { odd_order: self.order % 2 == 1, ..flags };
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    /// `h^{-1} g h`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// `g^m` for any integer `m`.
    pub fn pow(&self, g: usize, m: i64) -> usize {
        let o = self.element_orders[g] as i64;
        let mut e = m.rem_euclid(o);
        let mut base = g;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> u32 {
        self.element_orders[g]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_orders
    }

    pub fn generator_witness(&self) -> &[usize] {
        &self.generator_witness
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn flags(&self) -> &GroupFlags {
        &self.flags
    }

    /// Conjugacy class data, computed on first use.
    pub fn classes(&self) -> &ClassData {
        self.classes.get_or_init(|| conjugacy_classes(self))
    }

    pub fn invariants(&self) -> &GroupInvariants {
        self.invariants.get_or_init(|| group_invariants(self))
    }

    pub fn exponent(&self) -> u64 {
        self.invariants().exponent
    }

    pub fn is_abelian(&self) -> bool {
        self.invariants().is_abelian
    }

    /// `p` if the order is a power of the prime `p` (order > 1).
    pub fn prime_power_base(&self) -> Option<u64> {
        let n = self.order as u64;
        if n < 2 {
            return None;
        }
        let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        (m == 1).then_some(p)
    }

    /// Exhaustive Latin-square / identity / inverse / associativity audit.
    /// Associativity is exhaustive up to order 512; above that it samples
    /// `samples` pseudo-random triples.
    pub fn validate(&self, samples: usize) -> Result<(), String> {
        let n = self.order;
        let mut seen = vec![false; n];
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(format!("identity law fails at {a}"));
            }
            if self.mul(a, self.inv(a)) != 0 {
                return Err(format!("inverse law fails at {a}"));
            }
            if !(n as u64).is_multiple_of(self.element_orders[a] as u64) {
                return Err(format!("order of {a} does not divide |G|"));
            }
            for (rowwise, label) in [(true, "row"), (false, "column")] {
                seen.iter_mut().for_each(|s| *s = false);
                for b in 0..n {
                    let x = if rowwise { self.mul(a, b) } else { self.mul(b, a) };
                    if std::mem::replace(&mut seen[x], true) {
                        return Err(format!("{label} {a} repeats {x}"));
                    }
                }
            }
        }
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= 512 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..samples {
                let (a, b, c) = (next(), next(), next());
                if !assoc(a, b, c) {
                    return Err(format!("associativity fails at ({a},{b},{c})"));
                }
            }
        }
        Ok(())
    }
}

pub fn group_invariants(g: &Group) -> GroupInvariants {
    let exponent = g.element_orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)));
    let n = g.order;
    let center: Vec<usize> = (0..n)
        .filter(|&a| g.generator_witness.iter().all(|&s| g.mul(a, s) == g.mul(s, a)))
        .collect();
    GroupInvariants { exponent, is_abelian: center.len() == n, center }
}
