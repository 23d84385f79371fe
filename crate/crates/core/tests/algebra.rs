use gelfand_core::algebra::setpart::{bell_number, mobius_sum};
use gelfand_core::algebra::sigma::{basis_product_by_arrangements, kerov_degree, weight};
use gelfand_core::algebra::{
    basis_product, empirical_cumulant, mobius_identity_check, power_top_formula, set_partitions,
    sigma_power, sigma_product, PartialPermutation, SigmaElement,
};
use gelfand_core::characters::CharacterEvaluator;
use gelfand_core::partition::partitions_of;
use gelfand_core::util::{rat, rat_frac};
use gelfand_core::Partition;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn small_indices() -> Vec<Partition> {
    (1..=4).flat_map(partitions_of).collect()
}

#[test]
fn products_agree_with_character_values() {
    // (Σ_μ·Σ_ν)(λ) = Σ_μ(λ)·Σ_ν(λ) for every λ, checked on |λ| ≤ 8
    let mut ev = CharacterEvaluator::new();
    let shapes: Vec<Partition> = (0..=8).flat_map(partitions_of).collect();
    for mu in small_indices() {
        for nu in small_indices() {
            if mu.size() + nu.size() > 7 {
                continue;
            }
            let prod = basis_product(&mu, &nu).unwrap();
            for l in &shapes {
                let lhs = prod.evaluate(l, &mut ev);
                let rhs = ev.central_character(l, &mu) * ev.central_character(l, &nu);
                assert_eq!(lhs, rhs, "{mu} * {nu} at {l}");
            }
        }
    }
}

#[test]
fn two_enumeration_routes_agree() {
    for mu in small_indices() {
        for nu in small_indices() {
            if mu.size() + nu.size() > 7 {
                continue;
            }
            assert_eq!(
                basis_product(&mu, &nu).unwrap(),
                basis_product_by_arrangements(&mu, &nu).unwrap(),
                "{mu} * {nu}"
            );
        }
    }
}

#[test]
fn product_is_commutative() {
    for mu in small_indices() {
        for nu in small_indices() {
            assert_eq!(basis_product(&mu, &nu).unwrap(), basis_product(&nu, &mu).unwrap());
        }
    }
}

#[test]
fn filtrations() {
    for mu in small_indices() {
        assert!(weight(&mu) >= kerov_degree(&mu));
        for nu in small_indices() {
            let prod = basis_product(&mu, &nu).unwrap();
            assert!(prod.kerov_degree().unwrap() <= kerov_degree(&mu) + kerov_degree(&nu));
            assert!(prod.weight().unwrap() <= weight(&mu) + weight(&nu));
        }
    }
}

#[test]
fn disjoint_parts_law() {
    for (a, b) in [("2", "3"), ("3,3", "2"), ("4", "2,2"), ("1", "2"), ("5", "3")] {
        let (a, b) = (p(a), p(b));
        let prod = basis_product(&a, &b).unwrap();
        let top = prod.top_kerov_part(kerov_degree(&a) + kerov_degree(&b));
        assert_eq!(top, SigmaElement::basis(a.union(&b)), "{a} * {b}");
    }
}

#[test]
fn known_products() {
    let prod = basis_product(&p("1"), &p("1")).unwrap();
    let mut expect = SigmaElement::basis(p("1,1"));
    expect.add_term(p("1"), rat(1));
    assert_eq!(prod, expect);
    // Σ_2·Σ_2 = Σ_{2,2} + 4Σ_3 + 2Σ_{1,1}
    let prod = basis_product(&p("2"), &p("2")).unwrap();
    let mut expect = SigmaElement::basis(p("2,2"));
    expect.add_term(p("3"), rat(4));
    expect.add_term(p("1,1"), rat(2));
    assert_eq!(prod, expect);
}

#[test]
fn power_lemma() {
    for (k, m) in [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (4, 4)] {
        let top = sigma_power(k, m).unwrap().top_kerov_part(k * m);
        assert_eq!(top, power_top_formula(k, m).unwrap(), "({k},{m})");
    }
    let f = power_top_formula(4, 4).unwrap();
    assert_eq!(f.len(), 3);
    assert_eq!(f.coefficient(&p("4,4,1,1,1,1")), rat(24));
    assert_eq!(f.coefficient(&p("1,1,1,1,1,1,1,1")), rat(48));
    assert_eq!(power_top_formula(5, 1).unwrap(), SigmaElement::cyclic(5));
    let mut two = SigmaElement::basis(p("2,2"));
    two.add_term(p("1,1"), rat(2));
    assert_eq!(power_top_formula(2, 2).unwrap(), two);
    assert!(power_top_formula(1, 3).is_err());
    assert!(power_top_formula(3, 0).is_err());
}

#[test]
fn ground_limit_guard() {
    let big = SigmaElement::basis(p("9,8"));
    assert!(sigma_product(&big, 2).is_err());
}

#[test]
fn json_round_trip() {
    let e = sigma_power(2, 3).unwrap();
    let back = SigmaElement::from_json(&e.to_json()).unwrap();
    assert_eq!(e, back);
    let v: serde_json::Value = serde_json::from_str(r#"{"4,4,4,4": "1", "4,4,1,1,1,1": "24"}"#).unwrap();
    let e = SigmaElement::from_json(&v).unwrap();
    assert_eq!(e.coefficient(&p("4,4,1,1,1,1")), rat(24));
}

#[test]
fn partial_permutation_degree() {
    let x = PartialPermutation::canonical(&p("3,1,1"));
    assert_eq!(x.kerov_degree(), kerov_degree(&p("3,1,1")));
    assert_eq!(x.class(), p("3,1,1"));
}

#[test]
fn set_partition_counts() {
    for r in 0..=8 {
        assert_eq!(set_partitions(r).unwrap().len() as u64, bell_number(r));
    }
    assert_eq!(set_partitions(4).unwrap().len(), 15);
    assert_eq!(set_partitions(5).unwrap().len(), 52);
    // Σ_π μ(π) = 0 for r ≥ 2
    for r in 2..=7 {
        let s: num_bigint::BigInt = set_partitions(r).unwrap().iter().map(|pi| pi.mobius()).sum();
        assert!(s.is_zero());
    }
}

#[test]
fn mobius_worked_instance() {
    let f = |i: usize, r: usize| rat_frac((7 * i + 3 * r * r) as i64, (i + r) as i64);
    assert!(mobius_identity_check(f, &[2, 2]).unwrap().is_zero());
    assert!(mobius_identity_check(f, &[1, 1]).unwrap().is_zero());
    assert!(mobius_identity_check(f, &[4]).is_err());
    assert!(!mobius_sum(&f, &[1, 1, 1]).unwrap().is_zero());
}

fn table_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-50i64..50, 1i64..20), 40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn mobius_vanishes(
        table in table_strategy(),
        mults in proptest::collection::vec(1usize..=3, 2..=4)
            .prop_filter("at most 8 points", |m| m.iter().sum::<usize>() <= 8),
    ) {
        let f = |i: usize, r: usize| {
            let (a, b) = table[(i * 8 + r) % table.len()];
            BigRational::new(a.into(), b.into())
        };
        prop_assert!(mobius_identity_check(f, &mults).unwrap().is_zero());
    }
}

#[test]
fn empirical_cumulants() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let samples: Vec<Vec<f64>> = (0..100_000)
        .map(|_| (0..3).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    let k3 = empirical_cumulant(&samples, &[0, 1, 2]).unwrap();
    assert!(k3.abs() < 0.05, "{k3}");
    let var = empirical_cumulant(&samples, &[1, 1]).unwrap();
    assert!((var - 1.0).abs() < 0.02);
    let k4 = empirical_cumulant(&samples, &[2, 2, 2, 2]).unwrap();
    assert!(k4.abs() < 0.1, "{k4}");
}
