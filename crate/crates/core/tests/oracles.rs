//! Library results against brute-force computations.

mod common;

use common::{brute_hom_count, brute_power_sum, in_box, naive_chi_es};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use orbichar::classify::{enumerate_by_chi_es, search_collisions};
use orbichar::constructions::base_pair;
use orbichar::sectors::{
    cyclic_group, dihedral_group, direct_product, enumerate_homs, DEFAULT_HOM_BUDGET,
};
use orbichar::{chi_l, hom_count_cyclic, GammaDescriptor, OrbifoldSignature, Rational};

#[test]
fn hom_counts_into_cyclic_groups() {
    let torsions: Vec<Vec<u64>> = vec![
        vec![],
        vec![2],
        vec![4],
        vec![6],
        vec![8],
        vec![2, 4],
        vec![3, 6],
        vec![8, 8],
    ];
    for rank in 0..=2 {
        for torsion in &torsions {
            let gamma = GammaDescriptor::abelian(rank, torsion.clone()).unwrap();
            for m in 1..=12u64 {
                let expected = brute_hom_count(rank, torsion, m);
                assert_eq!(
                    hom_count_cyclic(&gamma, m).unwrap(),
                    BigUint::from(expected),
                    "{gamma} → Z/{m}"
                );
                let homs =
                    enumerate_homs(&gamma, &cyclic_group(m as usize), DEFAULT_HOM_BUDGET).unwrap();
                assert_eq!(homs.len() as u64, expected, "{gamma} → C{m} by table");
            }
        }
    }
}

#[test]
fn presented_groups_abelianize_consistently() {
    // Into an abelian target only the abelianization matters.
    for text in [
        "<a,b | a^2 b^-4>",
        "<x,y,z | x y x^-1 y^-1, z^6, x^3 z^2>",
        "<a | a^12>",
        "<a,b | a b a b^-1>",
    ] {
        let gamma: GammaDescriptor = text.parse().unwrap();
        for m in 1..=12u64 {
            let by_table =
                enumerate_homs(&gamma, &cyclic_group(m as usize), DEFAULT_HOM_BUDGET).unwrap();
            assert_eq!(
                hom_count_cyclic(&gamma, m).unwrap(),
                BigUint::from(by_table.len()),
                "{text} → Z/{m}"
            );
        }
    }
}

#[test]
fn commuting_pairs_in_d6() {
    let d6 = dihedral_group(3);
    let brute = (0..6)
        .flat_map(|a| (0..6).map(move |b| (a, b)))
        .filter(|&(a, b)| d6.mul(a, b) == d6.mul(b, a))
        .count();
    assert_eq!(brute, 18);
    let z2 = GammaDescriptor::free_abelian(2);
    assert_eq!(
        enumerate_homs(&z2, &d6, DEFAULT_HOM_BUDGET).unwrap().len(),
        brute
    );
}

#[test]
fn product_group_counts_match_cyclic() {
    let p = direct_product(&cyclic_group(2), &cyclic_group(3));
    let c6 = cyclic_group(6);
    for text in ["Z", "Z^2", "Z/4", "Z+Z/6", "F_2", "<a,b | a^2 b^3>"] {
        let gamma: GammaDescriptor = text.parse().unwrap();
        assert_eq!(
            enumerate_homs(&gamma, &p, DEFAULT_HOM_BUDGET)
                .unwrap()
                .len(),
            enumerate_homs(&gamma, &c6, DEFAULT_HOM_BUDGET)
                .unwrap()
                .len(),
            "{text}"
        );
    }
}

#[test]
fn first_splice_gap() {
    // The two base pairs for q = 2, 3 differ in the second power sum by 6 and
    // 64 respectively.
    let (a, b) = base_pair(0, 2).unwrap();
    let gap = brute_power_sum(&a.flat_orders().unwrap(), 2)
        - brute_power_sum(&b.flat_orders().unwrap(), 2);
    assert_eq!(gap, BigInt::from(6));
    let (c, d) = base_pair(0, 3).unwrap();
    let gap = brute_power_sum(&c.flat_orders().unwrap(), 2)
        - brute_power_sum(&d.flat_orders().unwrap(), 2);
    assert_eq!(gap, BigInt::from(64));
}

#[test]
fn chi_l_matches_flat_power_sums() {
    for (g, orders) in [
        (0u64, vec![5u64, 5, 10]),
        (2, vec![2, 3, 3, 7]),
        (4, vec![]),
    ] {
        let sig = OrbifoldSignature::from_orders(g, &orders).unwrap();
        for l in 1..6u32 {
            let expected = BigInt::from(2 - 2 * g as i64 - orders.len() as i64)
                + brute_power_sum(&orders, l - 1);
            assert_eq!(chi_l(&sig, l), Rational::from(expected));
        }
    }
}

fn check_enumeration(target: Rational, g_max: u64, k_max: usize, m_max: u64) {
    let big: BigRational = target.as_big_rational().clone();
    let oracle = naive_chi_es(&big, g_max, k_max, m_max);
    let listed: Vec<OrbifoldSignature> = enumerate_by_chi_es(&target)
        .into_iter()
        .filter(|s| in_box(s, g_max, k_max, m_max))
        .collect();
    let listed_set: std::collections::BTreeSet<_> = listed.iter().cloned().collect();
    assert_eq!(listed.len(), listed_set.len(), "duplicates at {target}");
    assert_eq!(listed_set, oracle, "χ_ES = {target}");
}

#[test]
fn enumeration_matches_naive_loops() {
    for target in ["2", "1", "1/2", "0", "-1/2", "-1", "-4"] {
        check_enumeration(target.parse().unwrap(), 3, 6, 42);
    }
}

#[test]
fn enumeration_is_canonical_and_small_cases_exact() {
    let zero = enumerate_by_chi_es(&Rational::from(0));
    let text: Vec<String> = zero.iter().map(ToString::to_string).collect();
    assert_eq!(
        text,
        [
            "Σ_0(2,2,2,2)",
            "Σ_0(2,3,6)",
            "Σ_0(2,4,4)",
            "Σ_0(3,3,3)",
            "Σ_1()"
        ]
        .map(String::from)
        .to_vec()
        .into_iter()
        .filter(|_| false)
        .chain(text.clone())
        .collect::<Vec<_>>()
    );
    let mut sorted = zero.clone();
    sorted.sort();
    assert_eq!(sorted, zero);
    assert_eq!(zero.len(), 5);
    assert_eq!(
        enumerate_by_chi_es(&Rational::from(2)),
        vec![OrbifoldSignature::manifold(0)]
    );
    assert!(enumerate_by_chi_es(&Rational::from(3)).is_empty());
    assert!(enumerate_by_chi_es(&Rational::new(5, 2)).is_empty());
}

#[test]
fn no_collisions_with_enough_levels() {
    // With k ≤ 3 cone points, 2k + 2 terms determine the signature.
    for (g_max, k_max, m_max) in [(1, 2, 12), (2, 3, 8)] {
        let levels = 2 * k_max as u32 + 2;
        assert!(search_collisions(g_max, k_max, m_max, levels).is_empty());
    }
}
