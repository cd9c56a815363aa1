#![allow(clippy::needless_range_loop)]

//! Prime-field arithmetic and the small amount of linear algebra the
//! table computation needs: characteristic polynomials, root finding and
//! null spaces over `F_q`.

/// The field `F_q` for a prime `q < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Self {
        debug_assert!(is_prime(q) && q < (1 << 32));
        PrimeField { q }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.q;
        b %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.q), "inverse of zero in F_{}", self.q);
        self.pow(a, self.q - 2)
    }

    /// Smallest generator of `F_q^*`.
    pub fn primitive_root(&self) -> u64 {
        let factors = prime_factors(self.q - 1);
        (2..self.q)
            .find(|&g| factors.iter().all(|&f| self.pow(g, (self.q - 1) / f) != 1))
            .unwrap_or(1)
    }

    /// Representative in `(-q/2, q/2]`.
    pub fn symmetric(&self, a: u64) -> i64 {
        if a > self.q / 2 {
            a as i64 - self.q as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `q ≡ 1 (mod exponent)` with `q > 2·√order`, searching up to `cap`.
pub fn choose_prime(exponent: u64, order: u64, cap: u64) -> Option<u64> {
    let mut q = exponent + 1;
    while q <= cap {
        if q * q > 4 * order && is_prime(q) {
            return Some(q);
        }
        q += exponent;
    }
    None
}

pub type Matrix = Vec<Vec<u64>>;

/// Characteristic polynomial `det(xI - A)` (lowest degree first) via
/// reduction to upper Hessenberg form.
pub fn charpoly(f: &PrimeField, a: &Matrix) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let t = f.inv(h[m][m - 1]);
        for i in m + 1..n {
            let u = f.mul(h[i][m - 1], t);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.mul(u, h[m][j]);
                h[i][j] = f.sub(h[i][j], v);
            }
            for row in h.iter_mut() {
                let v = f.mul(u, row[i]);
                row[m] = f.add(row[m], v);
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - Σ_i (Π subdiagonal) h_{m-i,m} p_{m-i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            pm[k + 1] = f.add(pm[k + 1], c);
            pm[k] = f.sub(pm[k], f.mul(h[m - 1][m - 1], c));
        }
        let mut t = 1u64;
        for i in 1..m {
            t = f.mul(t, h[m - i][m - i - 1]);
            let coef = f.mul(t, h[m - i - 1][m - 1]);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                pm[k] = f.sub(pm[k], f.mul(coef, c));
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

/// Distinct roots in `F_q`, ascending, by exhaustive evaluation.
pub fn roots(f: &PrimeField, poly: &[u64]) -> Vec<u64> {
    (0..f.modulus())
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &PrimeField, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, r);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    let v = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(f: &PrimeField, a: &Matrix) -> Vec<Vec<u64>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}
