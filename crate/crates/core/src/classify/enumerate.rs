//! Every signature with a prescribed Euler-Satake characteristic.
//!
//! `χ_ES = 2 − 2g − Σ_i (1 − 1/m_i)`, and each summand lies in `[1/2, 1)`.
//! For a target `χ` the genus satisfies `2 − 2g ≥ χ`; writing
//! `s = 2 − 2g − χ`, the cone count obeys `s < k ≤ 2s` (or `k = s = 0`), and
//! the orders solve `Σ 1/m_i = k − s`. Tuples are generated nondecreasing, so
//! at each step the next order `m` is pinned between `1/u` and `r/u` where
//! `u` is the reciprocal sum still owed by the `r` remaining cone points.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::rational::Rational;
use crate::signature::OrbifoldSignature;

/// All signatures with `χ_ES = target`, sorted canonically (genus, cone
/// count, order tuple). Empty when `target > 2`.
pub fn enumerate_by_chi_es(target: &Rational) -> Vec<OrbifoldSignature> {
    let mut out = Vec::new();
    for_each_with_chi_es(target, |s| out.push(s.clone()));
    out
}

/// Streams the signatures with `χ_ES = target` in canonical order and
/// returns how many there were.
pub fn for_each_with_chi_es<F>(target: &Rational, mut emit: F) -> u64
where
    F: FnMut(&OrbifoldSignature),
{
    let two = Rational::from(2);
    let mut emitted = 0u64;
    let mut genus = 0u64;
    loop {
        let top = &two - &Rational::from(2 * genus as i64);
        if &top < target {
            break;
        }
        let slack = &top - target;
        let max_k = (Rational::from(2) * &slack).floor();
        let max_k = max_k.to_u64().expect("cone count bound fits in u64");
        for k in 0..=max_k {
            let owed = Rational::from(k as i64) - &slack;
            if k == 0 {
                if owed.is_zero() {
                    emit(&OrbifoldSignature::manifold(genus));
                    emitted += 1;
                }
                continue;
            }
            if !owed.is_positive() {
                continue;
            }
            let mut prefix = Vec::with_capacity(k as usize);
            egyptian(k as usize, &owed, 2, &mut prefix, &mut |orders| {
                let sig = OrbifoldSignature::from_orders(genus, orders).expect("orders ≥ 2");
                emit(&sig);
                emitted += 1;
            });
        }
        genus += 1;
    }
    emitted
}

// Nondecreasing tuples (m_1 ≤ … ≤ m_r), m_1 ≥ lo, with Σ 1/m_i = owed.
fn egyptian<F>(remaining: usize, owed: &Rational, lo: u64, prefix: &mut Vec<u64>, emit: &mut F)
where
    F: FnMut(&[u64]),
{
    // Each remaining term is at most 1/lo.
    if owed > &(Rational::new(remaining as i64, lo as i64)) {
        return;
    }
    match remaining {
        1 => {
            if owed.numer().is_one() {
                if let Some(m) = owed.denom().to_u64() {
                    if m >= lo {
                        prefix.push(m);
                        emit(prefix);
                        prefix.pop();
                    }
                }
            }
        }
        2 => egyptian_pair(owed, lo, prefix, emit),
        r => {
            let first = lo.max(floor_recip_plus_one(owed));
            let last = (Rational::from(r as i64) / owed).floor();
            let Some(last) = last.to_u64() else { return };
            for m in first..=last {
                let rest = owed - &Rational::new(1, m as i64);
                prefix.push(m);
                egyptian(r - 1, &rest, m, prefix, emit);
                prefix.pop();
            }
        }
    }
}

// Smallest m with 1/m < owed.
fn floor_recip_plus_one(owed: &Rational) -> u64 {
    (owed.recip().floor() + BigInt::one())
        .to_u64()
        .expect("order bound fits in u64")
}

// 1/a + 1/b = p/q with lo ≤ a ≤ b. Substituting X = pa − q, Y = pb − q gives
// XY = q², so the candidates for a come from divisors X ≤ q of q².
fn egyptian_pair<F>(owed: &Rational, lo: u64, prefix: &mut Vec<u64>, emit: &mut F)
where
    F: FnMut(&[u64]),
{
    let (Some(p), Some(q)) = (owed.numer().to_u64(), owed.denom().to_u64()) else {
        return egyptian_pair_scan(owed, lo, prefix, emit);
    };
    let (p, q) = (p as u128, q as u128);
    let first = lo.max(floor_recip_plus_one(owed)) as u128;
    let last = (2 * q) / p;
    if first > last {
        return;
    }
    let span = last - first + 1;
    let mut candidates: Vec<u128> = if span > isqrt(q) {
        let q2 = q * q;
        divisors_of_square(q as u64)
            .into_iter()
            .filter(|&x| x <= q && q2 % x == 0)
            .filter_map(|x| {
                let num = x + q;
                (num % p == 0).then(|| num / p)
            })
            .filter(|&a| a >= first && a <= last)
            .collect()
    } else {
        (first..=last).collect()
    };
    candidates.sort_unstable();
    candidates.dedup();
    for a in candidates {
        // b = a q / (p a − q)
        let den = p * a - q;
        if den == 0 || (a * q) % den != 0 {
            continue;
        }
        let b = (a * q) / den;
        if b < a {
            continue;
        }
        let (Ok(a), Ok(b)) = (u64::try_from(a), u64::try_from(b)) else {
            continue;
        };
        prefix.push(a);
        prefix.push(b);
        emit(prefix);
        prefix.pop();
        prefix.pop();
    }
}

fn egyptian_pair_scan<F>(owed: &Rational, lo: u64, prefix: &mut Vec<u64>, emit: &mut F)
where
    F: FnMut(&[u64]),
{
    let first = lo.max(floor_recip_plus_one(owed));
    let Some(last) = (Rational::from(2) / owed).floor().to_u64() else {
        return;
    };
    for a in first..=last {
        let rest = owed - &Rational::new(1, a as i64);
        if rest.numer().is_one() {
            if let Some(b) = rest.denom().to_u64() {
                if b >= a {
                    prefix.push(a);
                    prefix.push(b);
                    emit(prefix);
                    prefix.pop();
                    prefix.pop();
                }
            }
        }
    }
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = x.div_ceil(2);
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

fn divisors_of_square(q: u64) -> Vec<u128> {
    let mut factors = Vec::new();
    let mut n = q;
    let mut d = 2u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            factors.push((d as u128, 2 * e));
        }
        d += 1;
    }
    if n > 1 {
        factors.push((n as u128, 2));
    }
    let mut divisors = vec![1u128];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for &d in &divisors {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divisors = next;
    }
    divisors
}
