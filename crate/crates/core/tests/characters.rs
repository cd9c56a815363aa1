use std::sync::Arc;

use charsquare::character::{compute_table, CharacterTable, ClassFunction, SecondPowerMap};
use charsquare::group::{builtin, subgroup_closure};
use charsquare::Rational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const SPECS: [&str; 8] = [
    "cyclic:7", "dihedral:8", "quaternion:8", "sl23", "metacyclic:7:3:2", "heisenberg:3", "perm:4:(0 1 2 3);(0 1)", "wreath_cyclic:3",
];

fn table(spec: &str) -> CharacterTable {
    compute_table(&Arc::new(builtin(spec).unwrap())).unwrap()
}

#[test]
fn tables_verify_and_sum_of_squares() {
    for spec in SPECS {
        let t = table(spec);
        t.verify().unwrap();
        let order = t.group().order() as i64;
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<i64>(), order, "{spec}");
        assert_eq!(t.degrees()[0], 1);
        assert!(t.irreducibles()[0].values().iter().all(|v| v.to_rational() == Some(Rational::one())));
    }
}

#[test]
fn regular_character_contains_each_irreducible_by_degree() {
    let t = table("sl23");
    let reg = ClassFunction::regular(t.group(), t.context()).unwrap();
    let m = t.decompose(&reg).unwrap().multiplicities;
    assert_eq!(m.iter().map(|&x| x as i64).collect::<Vec<_>>(), t.degrees());
}

#[test]
fn second_power_is_not_bijective_in_even_order() {
    let t = table("dihedral:8");
    assert!(matches!(t.second_power_permutation(), SecondPowerMap::NotBijective { .. }));
    assert!(t.square_root_char(1).is_err());
}

#[test]
fn odd_order_second_power_is_a_permutation() {
    let t = table("heisenberg:3");
    assert!(t.second_power_permutation().is_bijection());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decompose_round_trips(idx in 0usize..SPECS.len(), mults in prop::collection::vec(0i64..4, 32)) {
        let t = table(SPECS[idx]);
        let m = &mults[..t.len()];
        let got = t.decompose(&t.combine(m)).unwrap().multiplicities;
        prop_assert_eq!(got.iter().map(|&x| x as i64).collect::<Vec<_>>(), m.to_vec());
    }

    #[test]
    fn products_have_nonnegative_integer_multiplicities(idx in 0usize..SPECS.len(), i in 0usize..16, j in 0usize..16) {
        let t = table(SPECS[idx]);
        let (a, b) = (&t.irreducibles()[i % t.len()], &t.irreducibles()[j % t.len()]);
        let d = t.decompose(&a.product(b).unwrap()).unwrap();
        let total: i64 = d.multiplicities.iter().zip(t.degrees()).map(|(m, d)| *m as i64 * d).sum();
        prop_assert_eq!(total, t.degrees()[i % t.len()] * t.degrees()[j % t.len()]);
    }

    #[test]
    fn frobenius_reciprocity(idx in 0usize..SPECS.len(), gen in 0usize..64) {
        let t = table(SPECS[idx]);
        let g = t.group().clone();
        let h = subgroup_closure(&g, &[gen % g.order()]).unwrap();
        let th = compute_table(h.as_group()).unwrap();
        for lam in th.irreducibles() {
            let lam = lam.embed(t.context()).unwrap();
            let up = ClassFunction::induce(&h, &lam).unwrap();
            for chi in t.irreducibles() {
                let down = chi.restrict(&h).unwrap();
                prop_assert_eq!(up.inner_product(chi).unwrap(), lam.inner_product(&down).unwrap());
            }
        }
    }

    #[test]
    fn square_minus_second_power_is_even(idx in 0usize..SPECS.len(), i in 0usize..16) {
        let t = table(SPECS[idx]);
        let chi = &t.irreducibles()[i % t.len()];
        let v = t.virtual_decompose(&chi.square().sub(&chi.second_power()).unwrap()).unwrap();
        prop_assert!(v.iter().all(|x| x % 2 == 0));
        // [χ², 1] = [χ, χ̄]
        let ip = chi.square().inner_product(&ClassFunction::trivial(t.group(), t.context()).unwrap()).unwrap();
        let expected = if t.index_of(&chi.conjugate()) == Some(i % t.len()) { Rational::one() } else { Rational::zero() };
        prop_assert_eq!(ip, expected);
    }
}
