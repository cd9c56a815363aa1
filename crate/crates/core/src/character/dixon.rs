//! Dixon–Schneider: simultaneous diagonalization of the class-sum matrices
//! over `F_q`, then exact lifting of root-of-unity multiplicities.

use std::cmp::Ordering;
use std::sync::Arc;

use super::modular::{charpoly, choose_prime, nullspace, roots, rref, Matrix, PrimeField};
use super::{CharacterError, CharacterTable, ClassFunction, Provenance};
use crate::cyclotomic::context;
use crate::group::Group;
use crate::CycNum;

/// Search cap for the modular prime.
pub const PRIME_SEARCH_CAP: u64 = 1_000_000;

/// Computes the exact irreducible character table of `group`.
///
/// Characters are ordered by degree, the trivial character first, then by
/// the concatenated coefficient vectors. The result is checked against both
/// orthogonality relations before it is returned.
pub fn compute_table(group: &Arc<Group>) -> Result<CharacterTable, CharacterError> {
    let order = group.order();
    let e = group.exponent();
    let q = choose_prime(e, order as u64, PRIME_SEARCH_CAP)
        .ok_or(CharacterError::NoSuitablePrime { exponent: e, order })?;
    let f = PrimeField::new(q);
    let cd = group.classes();
    let r = cd.num_classes();

    let omegas = central_characters(group, &f)?;
    if omegas.len() != r {
        return Err(CharacterError::InternalInconsistency(format!(
            "found {} central characters for {r} classes",
            omegas.len()
        )));
    }

    let g = f.primitive_root();
    let zeta_q = f.pow(g, (q - 1) / e);
    let ctx = context(e)?;
    let mut rows = Vec::with_capacity(r);
    for omega in &omegas {
        let d = degree_from_central(group, &f, omega)?;
        let modular: Vec<u64> = (0..r)
            .map(|k| f.mul(f.mul(d, omega[k]), f.inv(cd.size(k) as u64 % q)))
            .collect();
        let values = (0..r)
            .map(|k| lift_value(group, &f, zeta_q, &modular, k, d, &ctx))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(ClassFunction::new(group, values)?);
    }

    rows.sort_by(canonical_order);
    let table = CharacterTable::from_parts(
        Arc::clone(group),
        ctx,
        rows,
        Provenance { prime: q, primitive_root: g, zeta: zeta_q },
    )?;
    table.verify()?;
    Ok(table)
}

/// Degree, then trivial first, then coefficient vectors class by class.
pub(crate) fn canonical_order(a: &ClassFunction, b: &ClassFunction) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.is_constant(1).cmp(&a.is_constant(1)))
        .then_with(|| {
            a.values()
                .iter()
                .zip(b.values())
                .map(|(x, y)| x.lex_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// `(M_i)_{jk} = a_{ijk} = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}`, so that `M_i ω = ω_i ω`.
fn class_matrix(group: &Group, f: &PrimeField, i: usize) -> Matrix {
    let cd = group.classes();
    let r = cd.num_classes();
    let mut m = vec![vec![0u64; r]; r];
    for (k, &z) in cd.representatives().iter().enumerate() {
        for &x in cd.members(i) {
            let j = cd.class_of(group.mul(group.inv(x), z));
            m[j][k] += 1;
        }
    }
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x %= f.modulus();
        }
    }
    m
}

/// Common eigenvectors of all class matrices, each scaled so `ω_0 = 1`.
fn central_characters(group: &Group, f: &PrimeField) -> Result<Vec<Vec<u64>>, CharacterError> {
    let r = group.classes().num_classes();
    let identity: Matrix = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Matrix> = vec![identity];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(group, f, i);
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split(f, &m, space)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(CharacterError::InternalInconsistency("class matrices fail to separate the characters".into()));
    }
    spaces
        .into_iter()
        .map(|mut s| {
            let v = s.pop().unwrap_or_default();
            if v[0] == 0 {
                return Err(CharacterError::InternalInconsistency("eigenvector vanishes at the identity".into()));
            }
            let t = f.inv(v[0]);
            Ok(v.iter().map(|&x| f.mul(x, t)).collect())
        })
        .collect()
}

/// Splits the invariant subspace spanned by the rows of `basis` (in reduced
/// echelon form) into eigenspaces of `m`.
fn split(f: &PrimeField, m: &Matrix, mut basis: Matrix) -> Result<Vec<Matrix>, CharacterError> {
    let pivots = rref(f, &mut basis);
    let d = basis.len();
    let r = m.len();
    // images of the basis vectors, written in the basis via pivot coordinates
    let mut a = vec![vec![0u64; d]; d];
    for (l, b) in basis.iter().enumerate() {
        let image: Vec<u64> = (0..r)
            .map(|j| m[j].iter().zip(b).fold(0, |acc, (x, y)| f.add(acc, f.mul(*x, *y))))
            .collect();
        for (jj, &p) in pivots.iter().enumerate() {
            a[jj][l] = image[p];
        }
    }
    let eigenvalues = roots(f, &charpoly(f, &a));
    let mut out = Vec::with_capacity(eigenvalues.len());
    let mut total = 0;
    for lambda in eigenvalues {
        let shifted: Matrix = (0..d)
            .map(|i| (0..d).map(|j| if i == j { f.sub(a[i][j], lambda) } else { a[i][j] }).collect())
            .collect();
        let coords = nullspace(f, &shifted);
        total += coords.len();
        let mut sub: Matrix = coords
            .iter()
            .map(|c| {
                (0..r)
                    .map(|col| c.iter().zip(&basis).fold(0, |acc, (x, b)| f.add(acc, f.mul(*x, b[col]))))
                    .collect()
            })
            .collect();
        rref(f, &mut sub);
        out.push(sub);
    }
    if total != d {
        return Err(CharacterError::InternalInconsistency("class matrix is not diagonalizable mod q".into()));
    }
    Ok(out)
}

/// `d² = |G| / Σ_k ω_k ω_{k*} / |C_k|`, solved for the unique `d ≤ √|G|` dividing `|G|`.
fn degree_from_central(group: &Group, f: &PrimeField, omega: &[u64]) -> Result<u64, CharacterError> {
    let cd = group.classes();
    let mut s = 0;
    for k in 0..cd.num_classes() {
        let term = f.mul(f.mul(omega[k], omega[cd.inverse_class(k)]), f.inv(cd.size(k) as u64 % f.modulus()));
        s = f.add(s, term);
    }
    if s == 0 {
        return Err(CharacterError::InternalInconsistency("degree sum vanishes mod q".into()));
    }
    let order = group.order() as u64;
    let d2 = f.mul(order % f.modulus(), f.inv(s));
    (1..)
        .take_while(|d| d * d <= order)
        .find(|d| order.is_multiple_of(*d) && f.mul(*d, *d) == d2)
        .ok_or_else(|| CharacterError::InternalInconsistency("no admissible degree".into()))
}

/// Lifts `χ(g_k)` from its residues on the powers of `g_k`.
fn lift_value(
    group: &Group,
    f: &PrimeField,
    zeta_q: u64,
    chi: &[u64],
    k: usize,
    degree: u64,
    ctx: &Arc<crate::cyclotomic::CyclotomicContext>,
) -> Result<CycNum, CharacterError> {
    let cd = group.classes();
    let e = group.exponent();
    let o = u64::from(group.element_order(cd.representative(k)));
    let zeta_o = f.pow(zeta_q, e / o);
    let inv_o = f.inv(o % f.modulus());
    let powers: Vec<u64> = (0..o).map(|t| chi[cd.power_class(t as i64, k)]).collect();
    let mut mult = Vec::with_capacity(o as usize);
    for j in 0..o {
        let step = f.inv(f.pow(zeta_o, j));
        let mut acc = 0;
        let mut w = 1;
        for &v in &powers {
            acc = f.add(acc, f.mul(v, w));
            w = f.mul(w, step);
        }
        let m = f.mul(acc, inv_o);
        if m > degree {
            return Err(CharacterError::InternalInconsistency(format!(
                "eigenvalue multiplicity {m} exceeds degree {degree} at class {k}"
            )));
        }
        mult.push(((j * (e / o)) as i64, m as i64));
    }
    Ok(CycNum::from_root_multiplicities(ctx, &mult))
}
