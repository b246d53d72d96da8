use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use kspan::basis::{decompose_l, decompose_l_ordered, reconstruct};
use kspan::families::{generic_weight, is_l_special, k_series, l_series, m_generic_monomial, m_membership};
use kspan::oracle::resolve_all;
use kspan::series::{all_monomials, Series};
use kspan::shuffle::{shuffles, string_form, Letter, LEFT_PAIR, RIGHT_PAIR};
use kspan::subset::{all_subsets, SubsetSpec};

fn series_strategy(degree: usize, trunc: u32) -> impl Strategy<Value = Series> {
    let monos = all_monomials(degree, trunc);
    prop::collection::vec(-3i64..=3, monos.len()).prop_map(move |coeffs| {
        Series::from_terms(degree, trunc, monos.iter().cloned().zip(coeffs)).unwrap()
    })
}

fn spec_strategy(max_n: usize) -> impl Strategy<Value = SubsetSpec> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::btree_set(1..=n.max(1), 0..=n)
            .prop_map(move |s| SubsetSpec::new(n, s.into_iter().filter(|&i| i <= n)).unwrap())
    })
}

/// Triple of series with degrees (a, b, c) at a shared truncation.
fn triple() -> impl Strategy<Value = (Series, Series, Series)> {
    (1u32..=3, 0usize..=2, 0usize..=2, 0usize..=2).prop_flat_map(|(v, a, b, c)| {
        (series_strategy(a, v), series_strategy(b, v), series_strategy(c, v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_commutative_and_associative((f, g, h) in triple()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes((f, g, _) in triple(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g2 = {
            let monos = all_monomials(g.degree(), g.trunc());
            let picked: Vec<_> = monos.choose_multiple(&mut rng, 3).cloned().map(|m| (m, 2)).collect();
            Series::from_terms(g.degree(), g.trunc(), picked).unwrap()
        };
        let lhs = f.mul(&g.add(&g2).unwrap()).unwrap();
        let rhs = f.mul(&g).unwrap().add(&f.mul(&g2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn one_is_neutral(f in (1u32..=3, 0usize..=3).prop_flat_map(|(v, d)| series_strategy(d, v))) {
        prop_assert_eq!(f.mul(&Series::one(f.trunc())).unwrap(), f.clone());
        let zero = Series::zero(f.degree(), f.trunc());
        prop_assert_eq!(f.add(&zero).unwrap(), f.clone());
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn truncation_commutes_with_families(spec in spec_strategy(4), v in 1u32..=3, extra in 1u32..=2) {
        prop_assert_eq!(k_series(&spec, v + extra).restrict(v), k_series(&spec, v));
        prop_assert_eq!(l_series(&spec, v + extra).restrict(v), l_series(&spec, v));
    }

    #[test]
    fn truncation_commutes_with_products(a in spec_strategy(2), b in spec_strategy(2), v in 1u32..=3) {
        let hi = l_series(&a, v + 1).mul(&l_series(&b, v + 1)).unwrap();
        let lo = l_series(&a, v).mul(&l_series(&b, v)).unwrap();
        prop_assert_eq!(hi.restrict(v), lo);
    }

    #[test]
    fn products_are_quasisymmetric(a in spec_strategy(3), b in spec_strategy(2), v in 1u32..=4) {
        prop_assert!(k_series(&a, v).mul(&k_series(&b, v)).unwrap().relabel_check());
        prop_assert!(l_series(&a, v).mul(&l_series(&b, v)).unwrap().relabel_check());
    }

    #[test]
    fn same_size_order_is_irrelevant(a in spec_strategy(3), b in spec_strategy(2), seed in any::<u64>()) {
        let v = (a.n() + b.n()).max(1) as u32;
        let target = l_series(&a, v).mul(&l_series(&b, v)).unwrap();
        let reference = decompose_l(&target).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let n = target.degree();
        for _ in 0..3 {
            let mut order = Vec::new();
            for size in 0..=n {
                let mut class: Vec<SubsetSpec> =
                    all_subsets(n).into_iter().filter(|s| s.len() == size).collect();
                class.shuffle(&mut rng);
                order.extend(class);
            }
            let dec = decompose_l_ordered(&target, &order).unwrap();
            prop_assert_eq!(reconstruct(&dec, v).unwrap(), target.clone());
            prop_assert_eq!(reconstruct(&reference, v).unwrap(), target.clone());
        }
    }

    #[test]
    fn spreading_series_reduce_to_special_coefficients(
        d in 0usize..=4,
        coeffs in prop::collection::vec(-3i64..=3, 16),
    ) {
        let v = d as u32 + 1;
        let mut f = Series::zero(d, v);
        for (spec, c) in all_subsets(d).iter().zip(&coeffs) {
            f.add_scaled(&l_series(spec, v), &BigInt::from(*c)).unwrap();
        }
        for g in all_monomials(d, v) {
            let (h, steps) = resolve_all(&g, v).unwrap();
            prop_assert!(is_l_special(&h));
            prop_assert_eq!(f.coefficient(&h), f.coefficient(&g) << steps);
        }
    }
}

#[test]
fn family_coefficients_are_powers_of_two() {
    for n in 0..=4 {
        for spec in all_subsets(n) {
            for s in [k_series(&spec, 3), l_series(&spec, 3)] {
                for (m, c) in s.iter() {
                    assert_eq!(c, &generic_weight(m), "{m} in degree {n} family {spec}");
                }
            }
        }
    }
}

#[test]
fn l_products_divisible_at_every_monomial() {
    for total in 0..=4usize {
        let v = total.max(1) as u32;
        for n in 0..=total {
            for a in all_subsets(n) {
                for b in all_subsets(total - n) {
                    let p = l_series(&a, v).mul(&l_series(&b, v)).unwrap();
                    for (m, c) in p.iter() {
                        assert!((c % generic_weight(m)).is_zero(), "{c} at {m} in L{a}*L{b}");
                    }
                }
            }
        }
    }
}

#[test]
fn l_special_partition_by_m_sets() {
    for n in 0..=5usize {
        let v = n as u32;
        let specs = all_subsets(n);
        for x in all_monomials(n, v) {
            let owners: Vec<_> = specs.iter().filter(|s| m_membership(&x, s)).collect();
            assert_eq!(is_l_special(&x), !owners.is_empty(), "{x}");
            for s in &owners {
                assert_eq!(l_series(s, v.max(1)), l_series(owners[0], v.max(1)));
                assert!(m_generic_monomial(s, v).unwrap().is_some());
            }
        }
    }
}

fn meets_m_set(lambda: &SubsetSpec, omega: &SubsetSpec, v: u32) -> bool {
    l_series(lambda, v).iter().any(|(m, _)| m_membership(m, omega))
}

/// `L_Λ` has a term in `M_Ω` exactly when `M_Ω` is nonempty and `Λ` sits
/// inside some `Ω'` with the same L series as `Ω`.
#[test]
fn containment_law_in_corrected_form() {
    for n in 0..=4usize {
        let v = n.max(1) as u32;
        let specs = all_subsets(n);
        for lambda in &specs {
            for omega in &specs {
                let m_nonempty = m_generic_monomial(omega, n as u32).unwrap().is_some();
                let l_omega = l_series(omega, v);
                let witness = specs
                    .iter()
                    .any(|o2| lambda.is_subset_of(o2) && l_series(o2, v) == l_omega);
                assert_eq!(
                    meets_m_set(lambda, omega, v),
                    m_nonempty && witness,
                    "n={n} Λ={lambda} Ω={omega}"
                );
            }
        }
    }
}

/// The plain `Λ ⊆ Ω or L_Λ = L_Ω` form fails here: x0^4 is a term of
/// `L_{4,{2}}` and lies in `M_{4,{1,3}}`.
#[test]
fn containment_law_plain_form_counterexample() {
    let lambda = SubsetSpec::new(4, [2]).unwrap();
    let omega = SubsetSpec::new(4, [1, 3]).unwrap();
    let x0 = "x0^4".parse().unwrap();
    assert!(!l_series(&lambda, 4).coefficient(&x0).is_zero());
    assert!(m_membership(&x0, &omega));
    assert!(meets_m_set(&lambda, &omega, 4));
    assert!(!lambda.is_subset_of(&omega));
    assert_ne!(l_series(&lambda, 4), l_series(&omega, 4));
}

#[test]
fn shuffle_counts_and_letters() {
    for total in 0..=8usize {
        for n in 0..=total {
            let expected = num_integer::binomial(total, n);
            for a in all_subsets(n) {
                for b in all_subsets(total - n) {
                    let all = shuffles(&a, &b);
                    assert_eq!(all.len(), expected, "{a} and {b}");
                    let (left, right) = (string_form(&a, LEFT_PAIR), string_form(&b, RIGHT_PAIR));
                    for s in &all {
                        assert_eq!(s.count(Letter::A), a.len());
                        assert_eq!(s.count(Letter::B), n - a.len());
                        assert_eq!(s.count(Letter::C), b.len());
                        assert_eq!(s.count(Letter::D), total - n - b.len());
                        assert_eq!(s.restricted_to(LEFT_PAIR), left);
                        assert_eq!(s.restricted_to(RIGHT_PAIR), right);
                    }
                }
            }
        }
    }
}
