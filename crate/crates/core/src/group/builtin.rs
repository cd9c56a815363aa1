//! Group-spec grammar and the built-in families.
//!
//! A spec is a `:`-separated token list, `family:param[:param...]`.
//! `direct:A:B` takes two nested specs, so `direct:heisenberg:3:cyclic:5`
//! parses unambiguously; `perm:<degree>:<cycles>` takes permutations in
//! cycle notation separated by `;`.

use std::fmt;
use std::str::FromStr;

use super::{parse_cycles, Group, GroupError, GroupFlags, Permutation, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Dihedral group of the given order (`2n`).
    Dihedral(u64),
    /// Generalized quaternion group of the given order (a power of 2, ≥ 8).
    Quaternion(u64),
    Sl23,
    Heisenberg(u64),
    ExtraspecialExpP2(u64),
    /// `C_q ⋊ C_p`, the generator of `C_p` acting by `x ↦ x^k`.
    Metacyclic { q: u64, p: u64, k: u64 },
    /// `(C_{2^n} × C_{2^n}) ⋊ C_2` with the coordinate swap.
    Remark2(u32),
    WreathCyclic(u64),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Perm { degree: usize, perms: Vec<Permutation> },
}

/// Builds a group from its textual spec.
pub fn builtin(spec: &str) -> Result<Group, GroupError> {
    spec.parse::<GroupSpec>()?.build()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let tokens: Vec<&str> = s.split(':').map(str::trim).collect();
        let mut pos = 0;
        let spec = parse_tokens(&tokens, &mut pos, s)?;
        if pos != tokens.len() {
            return Err(GroupError::BadSpec(format!("{s:?}: trailing tokens after {spec}")));
        }
        Ok(spec)
    }
}

fn parse_tokens(tokens: &[&str], pos: &mut usize, whole: &str) -> Result<GroupSpec, GroupError> {
    let bad = |why: String| GroupError::BadSpec(format!("{whole:?}: {why}"));
    let mut next = |what: &str| -> Result<&str, GroupError> {
        let t = tokens.get(*pos).copied().ok_or_else(|| bad(format!("missing {what}")))?;
        *pos += 1;
        Ok(t)
    };
    let num = |t: &str| -> Result<u64, GroupError> { t.parse::<u64>().map_err(|_| bad(format!("expected a number, got {t:?}"))) };
    let family = next("family")?;
    let spec = match family {
        "cyclic" => GroupSpec::Cyclic(num(next("order")?)?),
        "dihedral" => GroupSpec::Dihedral(num(next("order")?)?),
        "quaternion" => GroupSpec::Quaternion(num(next("order")?)?),
        "sl23" => GroupSpec::Sl23,
        "heisenberg" => GroupSpec::Heisenberg(num(next("prime")?)?),
        "extraspecial_exp_p2" => GroupSpec::ExtraspecialExpP2(num(next("prime")?)?),
        "metacyclic" => {
            let q = num(next("q")?)?;
            let p = num(next("p")?)?;
            let k = num(next("k")?)?;
            GroupSpec::Metacyclic { q, p, k }
        }
        "remark2" => {
            let n = num(next("n")?)?;
            GroupSpec::Remark2(u32::try_from(n).map_err(|_| bad("n too large".into()))?)
        }
        "wreath_cyclic" => GroupSpec::WreathCyclic(num(next("prime")?)?),
        "direct" => {
            let a = parse_tokens(tokens, pos, whole)?;
            let b = parse_tokens(tokens, pos, whole)?;
            GroupSpec::Direct(Box::new(a), Box::new(b))
        }
        "perm" => {
            let degree = num(next("degree")?)? as usize;
            let body = next("permutations")?;
            let perms = body
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(|p| parse_cycles(p, degree))
                .collect::<Result<Vec<_>, _>>()?;
            if perms.is_empty() {
                return Err(bad("perm spec needs at least one permutation".into()));
            }
            GroupSpec::Perm { degree, perms }
        }
        other => return Err(bad(format!("unknown family {other:?}"))),
    };
    Ok(spec)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion:{n}"),
            GroupSpec::Sl23 => write!(f, "sl23"),
            GroupSpec::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            GroupSpec::ExtraspecialExpP2(p) => write!(f, "extraspecial_exp_p2:{p}"),
            GroupSpec::Metacyclic { q, p, k } => write!(f, "metacyclic:{q}:{p}:{k}"),
            GroupSpec::Remark2(n) => write!(f, "remark2:{n}"),
            GroupSpec::WreathCyclic(p) => write!(f, "wreath_cyclic:{p}"),
            GroupSpec::Direct(a, b) => write!(f, "direct:{a}:{b}"),
            GroupSpec::Perm { degree, perms } => {
                write!(f, "perm:{degree}:")?;
                for (i, p) in perms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Semidirect product `C_m ⋊ C_s` where the generator of `C_s` acts by `x ↦ x^k`;
/// elements are pairs `(a, b)` meaning `x^a y^b`.
fn split_metacyclic(m: u64, s: u64, k: u64) -> Result<Group, GroupError> {
    let mut powers = vec![1u64; s as usize];
    for b in 1..s as usize {
        powers[b] = powers[b - 1] * k % m;
    }
    let compose = |x: &(u64, u64), y: &(u64, u64)| ((x.0 + powers[x.1 as usize] * y.0) % m, (x.1 + y.1) % s);
    Group::from_closure(&[(1 % m, 0), (0, 1 % s)], (0, 0), compose, DEFAULT_ORDER_CAP)
}

fn check_cap(order: u64) -> Result<(), GroupError> {
    if order as usize > DEFAULT_ORDER_CAP {
        return Err(GroupError::ClosureExceedsCap { cap: DEFAULT_ORDER_CAP });
    }
    Ok(())
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group, GroupError> {
        let params = |why: String| GroupError::BadParameters(format!("{self}: {why}"));
        let group = match self {
            GroupSpec::Cyclic(n) => {
                let n = *n;
                if n == 0 {
                    return Err(params("order must be positive".into()));
                }
                check_cap(n)?;
                let g = Group::from_closure(&[1 % n], 0u64, |a, b| (a + b) % n, DEFAULT_ORDER_CAP)?;
                let o = g.order();
                g.with_flags(GroupFlags::known(o, true, true, true))
            }
            GroupSpec::Dihedral(order) => {
                if *order < 4 || order % 2 != 0 {
                    return Err(params("order must be even and at least 4".into()));
                }
                check_cap(*order)?;
                let n = order / 2;
                // (r, s) = x^r y^s with y x y^{-1} = x^{-1}
                let compose = |a: &(u64, u64), b: &(u64, u64)| {
                    let r = if a.1 == 0 { a.0 + b.0 } else { a.0 + n - b.0 };
                    (r % n, (a.1 + b.1) % 2)
                };
                let g = Group::from_closure(&[(1 % n, 0), (0, 1)], (0, 0), compose, DEFAULT_ORDER_CAP)?;
                let two_group = n.is_power_of_two();
                g.with_flags(GroupFlags::known(*order as usize, two_group, true, true))
            }
            GroupSpec::Quaternion(order) => {
                if *order < 8 || !order.is_power_of_two() {
                    return Err(params("order must be a power of 2, at least 8".into()));
                }
                check_cap(*order)?;
                let n = order / 2;
                // (r, s) = x^r y^s with y x y^{-1} = x^{-1}, y^2 = x^{n/2}
                let compose = |a: &(u64, u64), b: &(u64, u64)| {
                    let mut r = if a.1 == 0 { a.0 + b.0 } else { a.0 + n - b.0 };
                    if a.1 == 1 && b.1 == 1 {
                        r += n / 2;
                    }
                    (r % n, (a.1 + b.1) % 2)
                };
                let g = Group::from_closure(&[(1, 0), (0, 1)], (0, 0), compose, DEFAULT_ORDER_CAP)?;
                g.with_flags(GroupFlags::known(*order as usize, true, true, true))
            }
            GroupSpec::Sl23 => {
                let compose = |a: &[u8; 4], b: &[u8; 4]| {
                    [
                        (a[0] * b[0] + a[1] * b[2]) % 3,
                        (a[0] * b[1] + a[1] * b[3]) % 3,
                        (a[2] * b[0] + a[3] * b[2]) % 3,
                        (a[2] * b[1] + a[3] * b[3]) % 3,
                    ]
                };
                let g = Group::from_closure(&[[1, 1, 0, 1], [1, 0, 1, 1]], [1, 0, 0, 1], compose, DEFAULT_ORDER_CAP)?;
                g.with_flags(GroupFlags::known(24, false, false, false))
            }
            GroupSpec::Heisenberg(p) => {
                let p = *p;
                if !is_prime(p) || p == 2 {
                    return Err(params("p must be an odd prime".into()));
                }
                check_cap(p * p * p)?;
                // upper unitriangular matrices (a, b, c) over F_p
                let compose = |x: &(u64, u64, u64), y: &(u64, u64, u64)| {
                    ((x.0 + y.0) % p, (x.1 + y.1) % p, (x.2 + y.2 + x.0 * y.1) % p)
                };
                let g = Group::from_closure(&[(1, 0, 0), (0, 1, 0)], (0, 0, 0), compose, DEFAULT_ORDER_CAP)?;
                let o = g.order();
                g.with_flags(GroupFlags::known(o, true, true, true))
            }
            GroupSpec::ExtraspecialExpP2(p) => {
                let p = *p;
                if !is_prime(p) || p == 2 {
                    return Err(params("p must be an odd prime".into()));
                }
                check_cap(p * p * p)?;
                let g = split_metacyclic(p * p, p, 1 + p)?;
                let o = g.order();
                g.with_flags(GroupFlags::known(o, true, true, true))
            }
            GroupSpec::Metacyclic { q, p, k } => {
                let (q, p, k) = (*q, *p, *k);
                if !is_prime(q) || !is_prime(p) {
                    return Err(params("q and p must be prime".into()));
                }
                if k % q == 1 || k % q == 0 || pow_mod(k, p, q) != 1 {
                    return Err(params(format!("need k^p ≡ 1 and k ≢ 1 (mod q); k={k}, p={p}, q={q}")));
                }
                check_cap(p * q)?;
                let g = split_metacyclic(q, p, k % q)?;
                let o = g.order();
                g.with_flags(GroupFlags::known(o, false, true, true))
            }
            GroupSpec::Remark2(n) => {
                if *n < 2 {
                    return Err(params("n must be greater than 1".into()));
                }
                if 2 * *n + 1 >= 63 {
                    return Err(GroupError::ClosureExceedsCap { cap: DEFAULT_ORDER_CAP });
                }
                check_cap(1u64 << (2 * n + 1))?;
                let m = 1u64 << n;
                // (a, b, s): s acts on C_m × C_m by swapping coordinates
                let compose = |x: &(u64, u64, u64), y: &(u64, u64, u64)| {
                    let (ya, yb) = if x.2 == 0 { (y.0, y.1) } else { (y.1, y.0) };
                    ((x.0 + ya) % m, (x.1 + yb) % m, (x.2 + y.2) % 2)
                };
                let g = Group::from_closure(&[(1, 0, 0), (0, 1, 0), (0, 0, 1)], (0, 0, 0), compose, DEFAULT_ORDER_CAP)?;
                let o = g.order();
                g.with_flags(GroupFlags::known(o, true, true, true))
            }
            GroupSpec::WreathCyclic(p) => {
                let p = *p;
                if !is_prime(p) {
                    return Err(params("p must be prime".into()));
                }
                let order = p
                    .checked_pow(p as u32 + 1)
                    .ok_or(GroupError::ClosureExceedsCap { cap: DEFAULT_ORDER_CAP })?;
                check_cap(order)?;
                let pp = p as usize;
                // (base vector, shift): shift acts by cyclic rotation of coordinates
                let compose = |x: &(Vec<u64>, u64), y: &(Vec<u64>, u64)| {
                    let s = x.1 as usize;
                    let v = (0..pp).map(|i| (x.0[i] + y.0[(i + pp - s) % pp]) % p).collect();
                    (v, (x.1 + y.1) % p)
                };
                let mut e0 = vec![0u64; pp];
                e0[0] = 1;
                let g = Group::from_closure(&[(e0, 0), (vec![0; pp], 1)], (vec![0; pp], 0), compose, DEFAULT_ORDER_CAP)?;
                let o = g.order();
                g.with_flags(GroupFlags::known(o, true, true, true))
            }
            GroupSpec::Direct(a, b) => {
                let ga = a.build()?;
                let gb = b.build()?;
                check_cap(ga.order() as u64 * gb.order() as u64)?;
                let mut gens: Vec<(usize, usize)> = ga.generator_witness().iter().map(|&x| (x, 0)).collect();
                gens.extend(gb.generator_witness().iter().map(|&y| (0, y)));
                let compose = |x: &(usize, usize), y: &(usize, usize)| (ga.mul(x.0, y.0), gb.mul(x.1, y.1));
                let g = Group::from_closure(&gens, (0, 0), compose, DEFAULT_ORDER_CAP)?;
                let (fa, fb) = (ga.flags(), gb.flags());
                let both = |x: Option<bool>, y: Option<bool>| match (x, y) {
                    (Some(false), _) | (_, Some(false)) => Some(false),
                    (Some(true), Some(true)) => Some(true),
                    _ => None,
                };
                let flags = GroupFlags {
                    odd_order: g.order() % 2 == 1,
                    nilpotent: both(fa.nilpotent, fb.nilpotent),
                    supersolvable: both(fa.supersolvable, fb.supersolvable),
                    all_irreducibles_monomial: both(fa.all_irreducibles_monomial, fb.all_irreducibles_monomial),
                };
                g.with_flags(flags)
            }
            GroupSpec::Perm { degree, perms } => Group::build_from_generators(*degree, perms, DEFAULT_ORDER_CAP)?,
        };
        Ok(group.with_family(self.to_string()))
    }

    /// `(q, p, k)` when this is a metacyclic spec.
    pub fn metacyclic_params(&self) -> Option<(u64, u64, u64)> {
        match self {
            GroupSpec::Metacyclic { q, p, k } => Some((*q, *p, *k)),
            _ => None,
        }
    }
}

/// Whether `q = r·p + 1` with `1 < r < (p+1)/2` (both odd primes).
pub fn remark_super_parameters(q: u64, p: u64) -> Option<u64> {
    if p == 2 || q == 2 || !(q - 1).is_multiple_of(p) {
        return None;
    }
    let r = (q - 1) / p;
    (1 < r && 2 * r < p + 1).then_some(r)
}
