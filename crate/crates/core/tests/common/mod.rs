//! Brute-force oracles shared by the integration tests. None of them call
//! into the library's closed forms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use orbichar::OrbifoldSignature;

/// Every signature with genus ≤ `g_max`, at most `k_max` cone points, all
/// orders in `2..=m_max`, and `2 − 2g − Σ(1 − 1/m) = target`. Plain nested
/// loops over multisets with a common denominator.
pub fn naive_chi_es(
    target: &BigRational,
    g_max: u64,
    k_max: usize,
    m_max: u64,
) -> BTreeSet<OrbifoldSignature> {
    let lcm = (2..=m_max).fold(1u128, |acc, m| acc / gcd(acc, m as u128) * m as u128);
    let mut found = BTreeSet::new();
    // target · lcm must be an integer for anything in the box to match.
    let scaled = target * BigRational::from_integer(BigInt::from(lcm));
    let Some(scaled_target) = scaled
        .is_integer()
        .then(|| scaled.to_integer().to_i128())
        .flatten()
    else {
        return found;
    };
    let lcm = lcm as i128;
    // share[m] = lcm / m
    let share: Vec<i128> = (0..=m_max as i128)
        .map(|m| if m < 2 { 0 } else { lcm / m })
        .collect();
    let mut orders = Vec::new();
    walk(
        &mut orders,
        0,
        2,
        k_max,
        m_max,
        &share,
        &mut |orders, recips| {
            // (2 − k − 2g)·lcm + Σ lcm/m
            let k = orders.len() as i128;
            for g in 0..=g_max as i128 {
                if (2 - k - 2 * g) * lcm + recips == scaled_target {
                    found.insert(OrbifoldSignature::from_orders(g as u64, orders).unwrap());
                }
            }
        },
    );
    found
}

fn walk(
    orders: &mut Vec<u64>,
    recips: i128,
    lo: u64,
    k_max: usize,
    m_max: u64,
    share: &[i128],
    visit: &mut dyn FnMut(&[u64], i128),
) {
    visit(orders, recips);
    if orders.len() == k_max {
        return;
    }
    for m in lo..=m_max {
        orders.push(m);
        walk(
            orders,
            recips + share[m as usize],
            m,
            k_max,
            m_max,
            share,
            visit,
        );
        orders.pop();
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn in_box(sig: &OrbifoldSignature, g_max: u64, k_max: usize, m_max: u64) -> bool {
    sig.genus() <= g_max
        && sig.cone_count() <= num_bigint::BigUint::from(k_max)
        && sig.cones().keys().all(|&m| m <= m_max)
}

/// `|HOM(Z^rank ⊕ ⊕ Z/d, Z/m)|` by trying every tuple of images.
pub fn brute_hom_count(rank: u32, torsion: &[u64], m: u64) -> u64 {
    let gens = rank as usize + torsion.len();
    let mut count = 0;
    let mut tuple = vec![0u64; gens];
    loop {
        let ok = torsion
            .iter()
            .enumerate()
            .all(|(j, &d)| (d * tuple[rank as usize + j]).is_multiple_of(m));
        if ok {
            count += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == gens {
                return count;
            }
            tuple[i] += 1;
            if tuple[i] < m {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// `Σ_i m_i^e` straight from the flattened order list.
pub fn brute_power_sum(orders: &[u64], e: u32) -> BigInt {
    orders.iter().map(|&m| BigInt::from(m).pow(e)).sum()
}
