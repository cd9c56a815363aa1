use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::CyclotomicError;

/// Largest conductor accepted by [`CyclotomicContext::new`].
pub const MAX_CONDUCTOR: u64 = 1_000_000;

/// Arithmetic context for `Q(ζ_n)`: the conductor, `Φ_n`, and cached
/// remainders of monomials modulo `Φ_n`.
pub struct CyclotomicContext {
    n: u64,
    phi: usize,
    modulus: Vec<i64>,
    support: Vec<(usize, i64)>,
    powers: OnceLock<Result<Vec<Vec<i64>>, CyclotomicError>>,
}

impl fmt::Debug for CyclotomicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CyclotomicContext")
            .field("n", &self.n)
            .field("phi", &self.phi)
            .finish()
    }
}

fn registry() -> &'static Mutex<HashMap<u64, Arc<CyclotomicContext>>> {
    static REGISTRY: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicContext>>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared context for conductor `n`; contexts are interned per conductor.
pub fn context(n: u64) -> Result<Arc<CyclotomicContext>, CyclotomicError> {
    if n == 0 || n > MAX_CONDUCTOR {
        return Err(CyclotomicError::CapExceeded(n));
    }
    if let Some(ctx) = registry().lock().unwrap().get(&n) {
        return Ok(Arc::clone(ctx));
    }
    let ctx = Arc::new(CyclotomicContext::new(n)?);
    let mut reg = registry().lock().unwrap();
    Ok(Arc::clone(reg.entry(n).or_insert(ctx)))
}

impl CyclotomicContext {
    /// Builds a fresh (non-interned) context. Prefer [`context`].
    pub fn new(n: u64) -> Result<Self, CyclotomicError> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(CyclotomicError::CapExceeded(n));
        }
        let mut memo = HashMap::new();
        let modulus = cyclotomic_polynomial(n, &mut memo)?;
        let phi = modulus.len() - 1;
        let support = modulus[..phi]
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i, *c))
            .collect();
        Ok(CyclotomicContext {
            n,
            phi,
            modulus,
            support,
            powers: OnceLock::new(),
        })
    }

    /// The conductor `n`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `φ(n)`, the dimension of the power basis.
    pub fn phi(&self) -> usize {
        self.phi
    }

    /// Coefficients of `Φ_n`, lowest degree first; monic of degree `phi`.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Nonzero coefficients of `Φ_n` below the leading term.
    pub(crate) fn modulus_support(&self) -> &[(usize, i64)] {
        &self.support
    }

    /// Remainders of `x^k mod Φ_n` for `k` in `0..max(n, 2·phi - 1)`.
    pub(crate) fn powers(&self) -> Result<&[Vec<i64>], CyclotomicError> {
        self.powers
            .get_or_init(|| self.compute_powers())
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Remainders of `x^k mod Φ_n` for `k` in `phi..=2·phi-2`.
    pub fn reduction_table(&self) -> Result<&[Vec<i64>], CyclotomicError> {
        let powers = self.powers()?;
        Ok(&powers[self.phi..2 * self.phi - 1])
    }

    /// Canonical remainder of `x^k` for any integer `k` (taken mod `n`).
    pub(crate) fn monomial(&self, k: i64) -> Result<&[i64], CyclotomicError> {
        let k = k.rem_euclid(self.n as i64) as usize;
        Ok(&self.powers()?[k])
    }

    fn compute_powers(&self) -> Result<Vec<Vec<i64>>, CyclotomicError> {
        let count = (self.n as usize).max(2 * self.phi - 1);
        let mut rows = Vec::with_capacity(count);
        let mut cur = vec![0i64; self.phi];
        cur[0] = 1;
        rows.push(cur.clone());
        for _ in 1..count {
            // multiply by x, then fold the overflow term back with Φ_n
            let top = cur[self.phi - 1];
            for j in (1..self.phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for &(i, c) in &self.support {
                    cur[i] = c
                        .checked_mul(top)
                        .and_then(|t| cur[i].checked_sub(t))
                        .ok_or(CyclotomicError::CapExceeded(self.n))?;
                }
            }
            rows.push(cur.clone());
        }
        Ok(rows)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `Φ_n` by iterated exact division of `x^n - 1` by `Φ_d`, `d | n`, `d < n`.
pub(crate) fn cyclotomic_polynomial(
    n: u64,
    memo: &mut HashMap<u64, Vec<i64>>,
) -> Result<Vec<i64>, CyclotomicError> {
    if let Some(p) = memo.get(&n) {
        return Ok(p.clone());
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d, memo)?;
        poly = exact_div_monic(&poly, &phi_d).ok_or(CyclotomicError::CapExceeded(n))?;
    }
    memo.insert(n, poly.clone());
    Ok(poly)
}

/// Exact quotient `a / b` for monic `b`; `None` on a nonzero remainder or overflow.
fn exact_div_monic(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![0i64; a.len() - db];
    let support: Vec<(usize, i64)> =
        b[..db].iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c)).collect();
    for k in (db..a.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - db] = c;
        rem[k] = 0;
        for &(i, bc) in &support {
            let idx = k - db + i;
            rem[idx] = rem[idx].checked_sub(c.checked_mul(bc)?)?;
        }
    }
    if rem.iter().any(|c| *c != 0) {
        return None;
    }
    Some(quot)
}
