use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::class_function::is_nonneg_integer;
use super::{CharacterError, ClassFunction};
use crate::cyclotomic::CyclotomicContext;
use crate::group::Group;
use crate::{CycNum, Rational};

/// Where a table came from: the modular prime `q`, the primitive root mod `q`
/// and the image of `ζ_n` in `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub prime: u64,
    pub primitive_root: u64,
    pub zeta: u64,
}

/// Multiplicities of the irreducibles in a character, indexed like the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub multiplicities: Vec<u64>,
}

impl Decomposition {
    /// Number of distinct constituents.
    pub fn eta(&self) -> usize {
        self.multiplicities.iter().filter(|&&m| m > 0).count()
    }

    /// `(index, multiplicity)` for every constituent.
    pub fn constituents(&self) -> Vec<(usize, u64)> {
        self.multiplicities.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, &m)| (i, m)).collect()
    }

    pub fn odd_constituents(&self) -> Vec<usize> {
        self.multiplicities.iter().enumerate().filter(|(_, &m)| m % 2 == 1).map(|(i, _)| i).collect()
    }

    pub fn multiplicity(&self, i: usize) -> u64 {
        self.multiplicities[i]
    }

    /// `2·χ3 + χ5` style rendering with 0-based indices.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .constituents()
            .into_iter()
            .map(|(i, m)| if m == 1 { format!("X{i}") } else { format!("{m}*X{i}") })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Image of every irreducible under `ϑ ↦ ϑ^(2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SecondPowerMap {
    /// `χ_i^(2) = χ_{perm[i]}` and `perm` is a bijection.
    Permutation(Vec<usize>),
    /// The map fails to permute `Irr(G)`; `images[i]` is `None` when
    /// `χ_i^(2)` is not irreducible. `witness` is the first index that is
    /// either unmatched or collides with an earlier one.
    NotBijective { images: Vec<Option<usize>>, witness: usize },
}

impl SecondPowerMap {
    pub fn is_bijection(&self) -> bool {
        matches!(self, SecondPowerMap::Permutation(_))
    }
}

/// The irreducible characters of a group.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<Group>,
    ctx: Arc<CyclotomicContext>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<i64>,
    provenance: Provenance,
}

impl CharacterTable {
    pub(crate) fn from_parts(
        group: Arc<Group>,
        ctx: Arc<CyclotomicContext>,
        irreducibles: Vec<ClassFunction>,
        provenance: Provenance,
    ) -> Result<Self, CharacterError> {
        let degrees = irreducibles
            .iter()
            .map(|chi| chi.degree().filter(|d| *d > 0))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CharacterError::InternalInconsistency("degree is not a positive integer".into()))?;
        Ok(CharacterTable { group, ctx, irreducibles, degrees, provenance })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    /// Conductor of the value field, equal to the group exponent.
    pub fn conductor(&self) -> u64 {
        self.ctx.n()
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn get(&self, i: usize) -> Result<&ClassFunction, CharacterError> {
        self.irreducibles.get(i).ok_or(CharacterError::BadIndex { index: i, count: self.len() })
    }

    pub fn linear_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == 1).collect()
    }

    /// Position of `f` among the irreducibles.
    pub fn index_of(&self, f: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|chi| chi == f)
    }

    /// `[Θ, χ_i]` for every irreducible.
    pub fn coordinates(&self, theta: &ClassFunction) -> Result<Vec<Rational>, CharacterError> {
        self.irreducibles.iter().map(|chi| theta.inner_product(chi)).collect()
    }

    /// Integer coordinates of a generalized character.
    pub fn virtual_decompose(&self, theta: &ClassFunction) -> Result<Vec<i64>, CharacterError> {
        let coords = self.coordinates(theta)?;
        let mut out = Vec::with_capacity(coords.len());
        for (index, c) in coords.iter().enumerate() {
            if !c.is_integer() {
                return Err(CharacterError::NotACharacter { index, multiplicity: c.to_string() });
            }
            out.push(c.to_integer().to_i64().ok_or(CharacterError::NotACharacter {
                index,
                multiplicity: c.to_string(),
            })?);
        }
        let rebuilt = self.combine(&out);
        if &rebuilt != theta {
            return Err(CharacterError::NotACharacter { index: 0, multiplicity: "residual outside the span".into() });
        }
        Ok(out)
    }

    /// Multiplicities `[Θ, χ_i]`; rejects anything that is not a character.
    pub fn decompose(&self, theta: &ClassFunction) -> Result<Decomposition, CharacterError> {
        let coords = self.coordinates(theta)?;
        let mut multiplicities = Vec::with_capacity(coords.len());
        for (index, c) in coords.iter().enumerate() {
            if !is_nonneg_integer(c) {
                return Err(CharacterError::NotACharacter { index, multiplicity: c.to_string() });
            }
            multiplicities.push(c.to_integer().to_u64().expect("multiplicity fits in u64"));
        }
        let signed: Vec<i64> = multiplicities.iter().map(|&m| m as i64).collect();
        if &self.combine(&signed) != theta {
            return Err(CharacterError::InternalInconsistency("decomposition does not reconstruct its input".into()));
        }
        Ok(Decomposition { multiplicities })
    }

    /// `η(Θ)`, the number of distinct irreducible constituents.
    pub fn eta(&self, theta: &ClassFunction) -> Result<usize, CharacterError> {
        Ok(self.decompose(theta)?.eta())
    }

    /// `Σ m_i χ_i`.
    pub fn combine(&self, multiplicities: &[i64]) -> ClassFunction {
        let mut acc = self.irreducibles[0].zero_like();
        for (chi, &m) in self.irreducibles.iter().zip(multiplicities) {
            if m != 0 {
                acc = acc.add(&chi.scale(m)).expect("same group");
            }
        }
        acc
    }

    pub fn second_power(&self, i: usize) -> Result<ClassFunction, CharacterError> {
        Ok(self.get(i)?.second_power())
    }

    /// Where `ϑ ↦ ϑ^(2)` sends each irreducible.
    pub fn second_power_permutation(&self) -> SecondPowerMap {
        let images: Vec<Option<usize>> = self.irreducibles.iter().map(|chi| self.index_of(&chi.second_power())).collect();
        let mut seen = vec![false; self.len()];
        for (i, img) in images.iter().enumerate() {
            match img {
                Some(j) if !seen[*j] => seen[*j] = true,
                _ => return SecondPowerMap::NotBijective { images, witness: i },
            }
        }
        SecondPowerMap::Permutation(images.into_iter().flatten().collect())
    }

    /// The unique `ψ` with `ψ^(2) = χ_i`, via `ψ(g) = χ_i(g^{(|G|+1)/2})`.
    /// Only defined for odd order.
    pub fn square_root_char(&self, i: usize) -> Result<usize, CharacterError> {
        let order = self.group.order();
        if order.is_multiple_of(2) {
            return Err(CharacterError::EvenOrder(order));
        }
        let chi = self.get(i)?;
        let psi = chi.power_map((order as i64 + 1) / 2);
        let j = self
            .index_of(&psi)
            .ok_or_else(|| CharacterError::InternalInconsistency(format!("square root of X{i} is not irreducible")))?;
        let sq = self.decompose(&psi.square())?;
        if psi.second_power() != *chi || sq.multiplicity(i) % 2 != 1 {
            return Err(CharacterError::InternalInconsistency(format!("square root X{j} of X{i} fails its check")));
        }
        Ok(j)
    }

    /// Exact row and column orthogonality plus `Σ χ(1)² = |G|`.
    pub fn verify(&self) -> Result<(), CharacterError> {
        let cd = self.group.classes();
        let r = cd.num_classes();
        if self.len() != r {
            return Err(CharacterError::InternalInconsistency(format!("{} irreducibles for {r} classes", self.len())));
        }
        let sq: i64 = self.degrees.iter().map(|d| d * d).sum();
        if sq != self.group.order() as i64 {
            return Err(CharacterError::InternalInconsistency(format!("sum of squared degrees is {sq}")));
        }
        for i in 0..r {
            for j in i..r {
                let ip = self.irreducibles[i].inner_product(&self.irreducibles[j])?;
                let expected = if i == j { Rational::one() } else { Rational::zero() };
                if ip != expected {
                    return Err(CharacterError::InternalInconsistency(format!("[X{i}, X{j}] = {ip}")));
                }
            }
        }
        let conj: Vec<ClassFunction> = self.irreducibles.iter().map(ClassFunction::conjugate).collect();
        for a in 0..r {
            for b in a..r {
                let mut acc = CycNum::zero(&self.ctx);
                for (chi, bar) in self.irreducibles.iter().zip(&conj) {
                    acc = &acc + &(chi.value(a) * bar.value(b));
                }
                let expected = if a == b { cd.centralizer_order(a) as i64 } else { 0 };
                if acc != CycNum::from_int(&self.ctx, expected) {
                    return Err(CharacterError::InternalInconsistency(format!("column orthogonality fails at classes {a}, {b}")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::compute_table;
    use crate::group::{builtin, subgroup_closure};

    fn table(spec: &str) -> CharacterTable {
        compute_table(&Arc::new(builtin(spec).unwrap())).unwrap()
    }

    fn first_of_degree(t: &CharacterTable, d: i64) -> usize {
        t.degrees().iter().position(|&x| x == d).unwrap()
    }

    #[test]
    fn dihedral_square_is_sum_of_linears() {
        let t = table("dihedral:8");
        let chi = t.get(4).unwrap();
        assert_eq!(chi.degree(), Some(2));
        let dec = t.decompose(&chi.square()).unwrap();
        assert_eq!(dec.multiplicities, vec![1, 1, 1, 1, 0]);
        assert_eq!(dec.eta(), 4);
        for l in t.linear_indices() {
            assert_eq!(chi.square().inner_product(t.get(l).unwrap()).unwrap(), Rational::one());
        }
        assert!(!t.second_power_permutation().is_bijection());
        assert_eq!(t.square_root_char(0), Err(CharacterError::EvenOrder(8)));
    }

    #[test]
    fn sl23_square_is_linear_plus_degree_three() {
        let t = table("sl23");
        for i in (0..t.len()).filter(|&i| t.degrees()[i] == 2) {
            let chi = t.get(i).unwrap();
            let dec = t.decompose(&chi.square()).unwrap();
            let cons = dec.constituents();
            assert_eq!(cons.len(), 2, "X{i}");
            let degrees: Vec<i64> = cons.iter().map(|(j, _)| t.degrees()[*j]).collect();
            assert_eq!(degrees, vec![1, 3]);
            assert!(cons.iter().all(|(_, m)| *m == 1));
            // every degree-2 character is faithful with a center of order 2
            assert_eq!(chi.kernel().unwrap().order(), 1);
            assert_eq!(chi.center().unwrap().order(), 2);
            assert_eq!(chi.square().inner_product(chi).unwrap(), Rational::zero());
        }
    }

    #[test]
    fn order_21_faithful_character() {
        let t = table("metacyclic:7:3:2");
        let i = first_of_degree(&t, 3);
        let chi = t.get(i).unwrap();
        let bar = t.index_of(&chi.conjugate()).unwrap();
        assert_ne!(bar, i);
        let dec = t.decompose(&chi.square()).unwrap();
        let mut expected = vec![0; t.len()];
        expected[i] = 1;
        expected[bar] = 2;
        assert_eq!(dec.multiplicities, expected);
        assert_eq!(&chi.second_power(), chi);
        assert_eq!(chi.kernel().unwrap().order(), 1);
        assert_eq!(chi.center().unwrap().order(), 1);
        assert_eq!(chi.square().inner_product(chi).unwrap(), Rational::one());
        assert_eq!(t.square_root_char(i).unwrap(), i);
        let SecondPowerMap::Permutation(p) = t.second_power_permutation() else { panic!("not a bijection") };
        assert_eq!(p[0], 0);
        assert_eq!(p[3], 3);
        assert_eq!(p[4], 4);
        assert_eq!((p[1], p[2]), (2, 1));
    }

    #[test]
    fn heisenberg_faithful_square_has_one_constituent() {
        let t = table("heisenberg:3");
        let i = first_of_degree(&t, 3);
        let chi = t.get(i).unwrap();
        assert_eq!(t.eta(&chi.square()).unwrap(), 1);
        assert!(chi.vanishes_off_center());
        assert_eq!(chi.square(), chi.second_power().scale(3));
    }

    #[test]
    fn cyclic_square_roots() {
        let t = table("cyclic:7");
        let SecondPowerMap::Permutation(p) = t.second_power_permutation() else { panic!() };
        for j in 0..t.len() {
            let psi = t.square_root_char(j).unwrap();
            assert_eq!(p[psi], j);
        }
        assert_eq!(t.square_root_char(0).unwrap(), 0);
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let t = table("cyclic:3");
        let half = t.get(1).unwrap().sub(t.get(2).unwrap()).unwrap();
        assert!(matches!(t.decompose(&half), Err(CharacterError::NotACharacter { .. })));
        assert_eq!(t.virtual_decompose(&half).unwrap(), vec![0, 1, -1]);
        assert!(t.get(9).is_err());
    }

    #[test]
    fn dihedral_induction_and_restriction() {
        let g = Arc::new(builtin("dihedral:8").unwrap());
        let t = compute_table(&g).unwrap();
        let rot = (0..g.order()).find(|&x| g.element_order(x) == 4).unwrap();
        let h = subgroup_closure(&g, &[rot]).unwrap();
        let th = compute_table(h.as_group()).unwrap();
        let chi = t.get(4).unwrap();
        let res = chi.restrict(&h).unwrap();
        let dec = th.decompose(&res.embed(th.context()).unwrap()).unwrap();
        // the two faithful linears of C4, each once
        let faithful: Vec<usize> = (0..th.len()).filter(|&j| th.get(j).unwrap().kernel().unwrap().order() == 1).collect();
        assert_eq!(faithful.len(), 2);
        assert_eq!(dec.constituents(), faithful.iter().map(|&j| (j, 1)).collect::<Vec<_>>());
        let lam = th.get(faithful[0]).unwrap().embed(t.context()).unwrap();
        let induced = ClassFunction::induce(&h, &lam).unwrap();
        assert_eq!(t.index_of(&induced), Some(4));
        let one_h = ClassFunction::trivial(h.as_group(), t.context()).unwrap();
        assert_eq!(ClassFunction::induce(&h, &one_h).unwrap().degree(), Some(2));
    }

    #[test]
    fn restriction_to_whole_group_is_identity() {
        let g = Arc::new(builtin("sl23").unwrap());
        let t = compute_table(&g).unwrap();
        let whole = subgroup_closure(&g, g.generator_witness()).unwrap();
        for chi in t.irreducibles() {
            let r = chi.restrict(&whole).unwrap();
            assert_eq!(r.values(), chi.values());
        }
    }

    #[test]
    fn induced_character_on_swap_group() {
        let g = Arc::new(builtin("remark2:2").unwrap());
        let t = compute_table(&g).unwrap();
        let n = subgroup_closure(&g, &g.generator_witness()[..2]).unwrap();
        let tn = compute_table(n.as_group()).unwrap();
        // λ = (λ0, 1) with λ0 faithful on the first C4 factor, trivial on the second
        let a = n.local_index(g.generator_witness()[0]).unwrap();
        let b = n.local_index(g.generator_witness()[1]).unwrap();
        let hc = n.as_group().classes();
        let ctx = t.context();
        let lam_idx = (0..tn.len())
            .find(|&j| {
                let l = tn.get(j).unwrap().embed(ctx).unwrap();
                l.value(hc.class_of(a)) == &CycNum::root(ctx, ctx.n() as i64 / 4) && l.value(hc.class_of(b)).to_rational() == Some(Rational::one())
            })
            .unwrap();
        let lam = tn.get(lam_idx).unwrap().embed(ctx).unwrap();
        let chi = ClassFunction::induce(&n, &lam).unwrap();
        let i = t.index_of(&chi).expect("induced character is irreducible");
        assert_eq!(t.degrees()[i], 2);
        let dec = t.decompose(&chi.square()).unwrap();
        let cons = dec.constituents();
        assert_eq!(cons.len(), 3);
        let degrees: Vec<i64> = cons.iter().map(|(j, _)| t.degrees()[*j]).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        assert!(cons.iter().all(|(_, m)| *m == 1));
    }
}
