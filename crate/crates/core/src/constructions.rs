//! Surgery operations on signatures and the collision-family builders.
//!
//! The three operations act on signatures of a common genus:
//!
//! * [`scale`] multiplies every cone order by `s`;
//! * [`repeat`] multiplies every multiplicity by `t`;
//! * [`combine`] takes the union of the cone multisets.
//!
//! Applying the same operation to two signatures with equal cone counts
//! preserves any agreement of their `χ_(l)`. The builders use that to splice
//! base pairs into pairs agreeing on ever more characteristics.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::characteristic::{chi_gamma, chi_l, power_sum};
use crate::error::{Error, Result};
use crate::gamma::GammaDescriptor;
use crate::signature::OrbifoldSignature;

pub type SignaturePair = (OrbifoldSignature, OrbifoldSignature);

/// `s ⋄ Q`: every cone order multiplied by `s`.
pub fn scale(sig: &OrbifoldSignature, s: u64) -> Result<OrbifoldSignature> {
    if s == 0 {
        return Err(Error::InvalidArgument(
            "scale factor must be at least 1".into(),
        ));
    }
    let mut out = OrbifoldSignature::manifold(sig.genus());
    for (&m, c) in sig.cones() {
        let order = m
            .checked_mul(s)
            .ok_or_else(|| Error::Overflow(format!("cone order {m}·{s}")))?;
        out.add_cones(order, c.clone())?;
    }
    Ok(out)
}

/// `t ⋆ Q`: every cone point repeated `t` times.
pub fn repeat(sig: &OrbifoldSignature, t: impl Into<BigUint>) -> Result<OrbifoldSignature> {
    let t = t.into();
    if t.is_zero() {
        return Err(Error::InvalidArgument(
            "repeat count must be at least 1".into(),
        ));
    }
    Ok(repeat_unchecked(sig, &t))
}

// Also accepts t = 0, giving the bare surface.
fn repeat_unchecked(sig: &OrbifoldSignature, t: &BigUint) -> OrbifoldSignature {
    let mut out = sig.clone();
    for c in out.cones_mut().values_mut() {
        *c *= t;
    }
    out.cones_mut().retain(|_, c| !c.is_zero());
    out
}

/// `Q ⊛ Q'`: the union of the cone points of two signatures of equal genus.
pub fn combine(a: &OrbifoldSignature, b: &OrbifoldSignature) -> Result<OrbifoldSignature> {
    if a.genus() != b.genus() {
        return Err(Error::GenusMismatch(a.genus(), b.genus()));
    }
    let mut out = a.clone();
    for (&m, c) in b.cones() {
        out.add_cones(m, c.clone())?;
    }
    Ok(out)
}

/// Drops one cone point of order `m`.
pub fn remove_cone_point(sig: &OrbifoldSignature, m: u64) -> Result<OrbifoldSignature> {
    if !sig.cones().contains_key(&m) {
        return Err(Error::MissingConeOrder(m));
    }
    let mut out = sig.clone();
    out.take_cones(m, &BigUint::one());
    Ok(out)
}

/// `Q[g,q] = Σ_g(2q+1, 2q+1, 2q²+q)` and `Q'[g,q] = Σ_g(q+2, q²+2q, q²+2q)`,
/// which agree on `χ_(0)`, `χ_(1)` and `χ_(2)`.
pub fn base_pair(g: u64, q: u64) -> Result<SignaturePair> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "base pair needs q ≥ 2, got {q}"
        )));
    }
    let overflow = || Error::Overflow(format!("base pair orders for q = {q}"));
    let two_q_plus_1 = q
        .checked_mul(2)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(overflow)?;
    let big = q.checked_mul(two_q_plus_1).ok_or_else(overflow)?;
    let q_plus_2 = q.checked_add(2).ok_or_else(overflow)?;
    let mid = q.checked_mul(q_plus_2).ok_or_else(overflow)?;
    let first = OrbifoldSignature::from_counts(g, [(two_q_plus_1, 2u32), (big, 1)])?;
    let second = OrbifoldSignature::from_counts(g, [(q_plus_2, 1u32), (mid, 2)])?;
    Ok((first, second))
}

/// How [`equalize_cone_counts`] chooses the repeat factors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EqualizeMode {
    /// `t_j = lcm(k_1, …, k_N) / k_j`.
    #[default]
    Lcm,
    /// `t_j = Π_{i≠j} k_i`.
    Product,
}

impl std::str::FromStr for EqualizeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lcm" => Ok(EqualizeMode::Lcm),
            "product" => Ok(EqualizeMode::Product),
            other => Err(Error::Parse(format!("unknown equalize mode {other:?}"))),
        }
    }
}

/// Repeat factors `t_j` making `t_j · k_j` the same for every `j`.
pub fn equalization_factors(counts: &[BigUint], mode: EqualizeMode) -> Result<Vec<BigUint>> {
    if counts.iter().any(Zero::is_zero) {
        return Err(Error::InvalidArgument(
            "cannot equalize a pair with no cone points".into(),
        ));
    }
    Ok(match mode {
        EqualizeMode::Lcm => {
            let lcm = counts.iter().fold(BigUint::one(), |acc, k| acc.lcm(k));
            counts.iter().map(|k| &lcm / k).collect()
        }
        EqualizeMode::Product => (0..counts.len())
            .map(|j| {
                counts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, k)| k)
                    .product()
            })
            .collect(),
    })
}

/// Replaces each pair `(Q_j, Q'_j)` by `(t_j ⋆ Q_j, t_j ⋆ Q'_j)` so that all
/// outputs share one cone count.
pub fn equalize_cone_counts(
    pairs: &[SignaturePair],
    mode: EqualizeMode,
) -> Result<Vec<SignaturePair>> {
    let mut counts = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let k = a.cone_count();
        if k != b.cone_count() {
            return Err(Error::InvalidArgument(format!(
                "pair members {a} and {b} have different cone counts"
            )));
        }
        if a.genus() != b.genus() || a.genus() != pairs[0].0.genus() {
            return Err(Error::GenusMismatch(pairs[0].0.genus(), a.genus()));
        }
        counts.push(k);
    }
    let factors = equalization_factors(&counts, mode)?;
    Ok(pairs
        .iter()
        .zip(&factors)
        .map(|((a, b), t)| (repeat_unchecked(a, t), repeat_unchecked(b, t)))
        .collect())
}

/// Number of base orders the collision builder needs for `levels`.
pub fn required_base_orders(levels: u32) -> usize {
    if levels <= 2 {
        1
    } else {
        1usize << (levels - 2)
    }
}

/// Two distinct signatures of genus `g`, with equal cone counts, whose
/// `χ_(l)` agree for every `l ≤ levels`.
///
/// `orders` supplies the base parameters `q`; it must hold exactly
/// [`required_base_orders`]`(levels)` distinct integers ≥ 2. The builder
/// starts from the base pairs for those `q` (ascending) and halves the number
/// of pairs per level, splicing two pairs agreeing through `χ_(n)` into one
/// agreeing through `χ_(n+1)`. Cone counts are re-equalized after every level.
pub fn build_collision_pair(
    levels: u32,
    g: u64,
    orders: &[u64],
    mode: EqualizeMode,
) -> Result<SignaturePair> {
    let mut qs = orders.to_vec();
    qs.sort_unstable();
    qs.dedup();
    if qs.len() != orders.len() {
        return Err(Error::InvalidArgument(
            "base orders must be distinct".into(),
        ));
    }
    let needed = required_base_orders(levels);
    if qs.len() != needed {
        return Err(Error::InvalidArgument(format!(
            "L = {levels} needs {needed} base orders, got {}",
            qs.len()
        )));
    }
    let mut pairs = qs
        .iter()
        .map(|&q| base_pair(g, q))
        .collect::<Result<Vec<_>>>()?;

    for n in 2..levels {
        let next: Vec<SignaturePair> = pairs
            .chunks(2)
            .map(|chunk| splice_level(&chunk[0], &chunk[1], n))
            .collect::<Result<_>>()?;
        pairs = equalize_cone_counts(&next, mode)?;
    }

    let (a, b) = pairs.pop().expect("one pair remains");
    verify_pair(&a, &b, levels)?;
    Ok((a, b))
}

// Given pairs agreeing through χ_(n), produce one agreeing through χ_(n+1).
// χ_(n+1) depends on the power sum of exponent n.
fn splice_level(first: &SignaturePair, second: &SignaturePair, n: u32) -> Result<SignaturePair> {
    let gap =
        |p: &SignaturePair| BigInt::from(power_sum(&p.0, n)) - BigInt::from(power_sum(&p.1, n));
    let d1 = gap(first);
    if d1.is_zero() {
        return Ok(first.clone());
    }
    let d2 = gap(second);
    if d2.is_zero() {
        return Ok(second.clone());
    }
    // Orient so that δ1 = Σa^n − Σb^n > 0 and δ2 = Σd^n − Σc^n > 0.
    let (a, b) = if d1 > BigInt::zero() {
        (&first.0, &first.1)
    } else {
        (&first.1, &first.0)
    };
    let (c, d) = if d2 < BigInt::zero() {
        (&second.0, &second.1)
    } else {
        (&second.1, &second.0)
    };
    let delta1 = d1.magnitude().clone();
    let delta2 = d2.magnitude().clone();
    let q = combine(&repeat_unchecked(a, &delta2), &repeat_unchecked(c, &delta1))?;
    let q_prime = combine(&repeat_unchecked(b, &delta2), &repeat_unchecked(d, &delta1))?;
    Ok((q, q_prime))
}

fn verify_pair(a: &OrbifoldSignature, b: &OrbifoldSignature, levels: u32) -> Result<()> {
    if a == b {
        return Err(Error::Verification(format!(
            "constructed pair coincides: {a}"
        )));
    }
    if a.genus() != b.genus() || a.cone_count() != b.cone_count() {
        return Err(Error::Verification(
            "constructed pair differs in genus or cone count".into(),
        ));
    }
    if let Some(l) = (0..=levels).find(|&l| chi_l(a, l) != chi_l(b, l)) {
        return Err(Error::Verification(format!(
            "constructed pair disagrees at l = {l}"
        )));
    }
    Ok(())
}

/// Turns a colliding pair into `n` pairwise distinct signatures whose
/// `χ_(l)` agree for `l ≤ levels`.
///
/// Cone orders shared by `a` and `b` are stripped first, leaving an order `m`
/// present in `a` only, with multiplicity `r`. Member `j` (1-based) is
/// `(n − j) ⋆ a ⊛ (j − 1) ⋆ b`, which has exactly `(n − j)·r` cone points of
/// order `m`.
pub fn expand_family(
    a: &OrbifoldSignature,
    b: &OrbifoldSignature,
    n: usize,
    levels: u32,
) -> Result<Vec<OrbifoldSignature>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "family size must be at least 2".into(),
        ));
    }
    if a.genus() != b.genus() {
        return Err(Error::GenusMismatch(a.genus(), b.genus()));
    }
    if a.cone_count() != b.cone_count() {
        return Err(Error::InvalidArgument(
            "pair must have equal cone counts".into(),
        ));
    }
    if let Some(l) = (0..=levels).find(|&l| chi_l(a, l) != chi_l(b, l)) {
        return Err(Error::InvalidArgument(format!("pair disagrees at l = {l}")));
    }
    let (a, b) = strip_shared_orders(a, b);
    if a == b {
        return Err(Error::InvalidArgument(
            "pair is identical once shared cone points are removed".into(),
        ));
    }
    let family: Vec<OrbifoldSignature> = (1..=n)
        .map(|j| {
            let from_a = repeat_unchecked(&a, &BigUint::from(n - j));
            let from_b = repeat_unchecked(&b, &BigUint::from(j - 1));
            combine(&from_a, &from_b)
        })
        .collect::<Result<_>>()?;
    verify_family(&family, |s, l| Ok(chi_l(s, l)), levels)?;
    Ok(family)
}

/// Removes cone points common to both signatures, one matching pair at a
/// time, until no order occurs in both.
pub fn strip_shared_orders(a: &OrbifoldSignature, b: &OrbifoldSignature) -> SignaturePair {
    let mut a = a.clone();
    let mut b = b.clone();
    let shared: Vec<(u64, BigUint)> = a
        .cones()
        .iter()
        .filter_map(|(&m, ca)| b.cones().get(&m).map(|cb| (m, ca.min(cb).clone())))
        .collect();
    for (m, c) in shared {
        a.take_cones(m, &c);
        b.take_cones(m, &c);
    }
    (a, b)
}

fn verify_family<F>(family: &[OrbifoldSignature], chi: F, levels: u32) -> Result<()>
where
    F: Fn(&OrbifoldSignature, u32) -> Result<crate::Rational>,
{
    for (i, x) in family.iter().enumerate() {
        if family[i + 1..].contains(x) {
            return Err(Error::Verification(format!("family repeats {x}")));
        }
    }
    for l in 0..=levels {
        let first = chi(&family[0], l)?;
        for x in &family[1..] {
            if chi(x, l)? != first {
                return Err(Error::Verification(format!("family disagrees at l = {l}")));
            }
        }
    }
    Ok(())
}

/// `q(j) = j · 2Π_{p∈P} p − 1` for `j = 1..=count`. None of `q`, `2q+1`,
/// `q+2` is divisible by a prime in `P`.
pub fn prime_avoiding_q(primes: &[u64], count: usize) -> Result<Vec<u64>> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("prime set must be nonempty".into()));
    }
    let mut set = primes.to_vec();
    set.sort_unstable();
    set.dedup();
    let mut step = 2u64;
    for &p in &set {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        step = step
            .checked_mul(p)
            .ok_or_else(|| Error::Overflow("prime product".into()))?;
    }
    (1..=count as u64)
        .map(|j| {
            j.checked_mul(step)
                .map(|x| x - 1)
                .ok_or_else(|| Error::Overflow(format!("q({j})")))
        })
        .collect()
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
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

/// The primes dividing the order of some torsion element of some
/// abelianization, together with the largest free rank.
pub fn gamma_family_parameters(groups: &[GammaDescriptor]) -> Result<(u32, Vec<u64>)> {
    let mut rank = 0;
    let mut primes = Vec::new();
    for gamma in groups {
        let (l, torsion) = gamma.abelian_invariants()?;
        rank = rank.max(l);
        for d in torsion {
            primes.extend(prime_factors(d));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok((rank, primes))
}

/// `n` distinct signatures of genus `g` on which `χ_Γ` agrees for every Γ in
/// `groups`.
///
/// With `L` the largest abelianized rank, the family agrees on `χ_(l)` for
/// `l ≤ L`. When torsion is present the base orders avoid every prime that
/// divides a torsion order, so each torsion summand maps trivially into every
/// cone group and `χ_Γ` reduces to `χ_(l)`.
pub fn general_gamma_family(
    groups: &[GammaDescriptor],
    n: usize,
    g: u64,
    mode: EqualizeMode,
) -> Result<Vec<OrbifoldSignature>> {
    if groups.is_empty() {
        return Err(Error::InvalidArgument("need at least one group".into()));
    }
    let (levels, primes) = gamma_family_parameters(groups)?;
    let count = required_base_orders(levels);
    let orders: Vec<u64> = if primes.is_empty() {
        (2..2 + count as u64).collect()
    } else {
        prime_avoiding_q(&primes, count)?
    };
    let (a, b) = build_collision_pair(levels, g, &orders, mode)?;
    let family = expand_family(&a, &b, n, levels)?;
    for gamma in groups {
        verify_family(&family, |s, _| chi_gamma(s, gamma), 0)?;
    }
    Ok(family)
}

/// Signatures `Q_k` for odd `k = 1, 3, 5, …` (`count` terms) with genus
/// `k(j^(l-1) − 1)/2` and `k` cone points of order `j`; each has
/// `χ_(l)(Q_k) = 2`.
pub fn same_chi_l_family(j: u64, l: u32, count: usize) -> Result<Vec<OrbifoldSignature>> {
    if j < 3 || j.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "j must be odd and ≥ 3, got {j}"
        )));
    }
    if l < 2 {
        return Err(Error::InvalidArgument(format!("l must be ≥ 2, got {l}")));
    }
    let per_cone: BigUint = (Pow::pow(BigUint::from(j), l - 1) - 1u32) / 2u32;
    (0..count as u64)
        .map(|i| {
            let k = 2 * i + 1;
            let genus = u64::try_from(&per_cone * k)
                .map_err(|_| Error::Overflow(format!("genus for k = {k}")))?;
            OrbifoldSignature::from_counts(genus, [(j, k)])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn sig(g: u64, orders: &[u64]) -> OrbifoldSignature {
        OrbifoldSignature::from_orders(g, orders).unwrap()
    }

    #[test]
    fn scale_examples() {
        assert_eq!(scale(&sig(0, &[2, 3]), 2).unwrap(), sig(0, &[4, 6]));
        assert_eq!(scale(&sig(1, &[5]), 1).unwrap(), sig(1, &[5]));
        assert_eq!(scale(&sig(0, &[2, 2]), 3).unwrap(), sig(0, &[6, 6]));
        assert!(scale(&sig(0, &[2]), 0).is_err());
        assert!(matches!(
            scale(&sig(0, &[u64::MAX / 2]), 3),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn repeat_examples() {
        assert_eq!(
            repeat(&sig(0, &[5, 10]), 3u32).unwrap(),
            sig(0, &[5, 5, 5, 10, 10, 10])
        );
        assert_eq!(repeat(&sig(2, &[3, 7]), 1u32).unwrap(), sig(2, &[3, 7]));
        assert_eq!(repeat(&sig(4, &[]), 9u32).unwrap(), sig(4, &[]));
        assert!(repeat(&sig(0, &[2]), 0u32).is_err());
    }

    #[test]
    fn combine_examples() {
        let a = sig(0, &[5, 5, 10]);
        let b = sig(0, &[4, 8, 8]);
        assert_eq!(combine(&a, &b).unwrap(), sig(0, &[4, 5, 5, 8, 8, 10]));
        assert_eq!(combine(&sig(0, &[]), &a).unwrap(), a);
        assert_eq!(combine(&a, &b).unwrap(), combine(&b, &a).unwrap());
        assert_eq!(combine(&a, &sig(1, &[])), Err(Error::GenusMismatch(0, 1)));
    }

    #[test]
    fn remove_examples() {
        let base = sig(0, &[5, 5, 10]);
        let removed = remove_cone_point(&base, 5).unwrap();
        assert_eq!(removed, sig(0, &[5, 10]));
        assert_eq!(chi_l(&removed, 2), Rational::from(15));
        assert_eq!(remove_cone_point(&sig(0, &[3]), 3).unwrap(), sig(0, &[]));
        assert_eq!(remove_cone_point(&base, 7), Err(Error::MissingConeOrder(7)));
    }

    #[test]
    fn base_pair_examples() {
        let (a, b) = base_pair(0, 2).unwrap();
        assert_eq!(a, sig(0, &[5, 5, 10]));
        assert_eq!(b, sig(0, &[4, 8, 8]));
        assert_eq!(chi_l(&a, 0), Rational::new(-1, 2));
        assert_eq!(chi_l(&b, 0), Rational::new(-1, 2));
        assert_eq!(chi_l(&a, 2), Rational::from(19));
        assert_eq!(chi_l(&b, 2), Rational::from(19));
        assert!(base_pair(0, 1).is_err());
    }

    #[test]
    fn equalize_examples() {
        let p3 = base_pair(0, 2).unwrap();
        let p3b = base_pair(0, 3).unwrap();
        let same = equalize_cone_counts(&[p3.clone(), p3b.clone()], EqualizeMode::Lcm).unwrap();
        assert_eq!(same, vec![p3.clone(), p3b]);

        let p4 = (sig(0, &[2, 3, 5, 7]), sig(0, &[2, 3, 5, 7]));
        let counts = [BigUint::from(3u8), BigUint::from(4u8)];
        assert_eq!(
            equalization_factors(&counts, EqualizeMode::Product).unwrap(),
            vec![BigUint::from(4u8), BigUint::from(3u8)]
        );
        let out = equalize_cone_counts(&[p3, p4], EqualizeMode::Product).unwrap();
        assert!(out
            .iter()
            .all(|(a, b)| a.cone_count() == BigUint::from(12u8)
                && b.cone_count() == BigUint::from(12u8)));

        let counts = [BigUint::from(4u8), BigUint::from(6u8)];
        assert_eq!(
            equalization_factors(&counts, EqualizeMode::Lcm).unwrap(),
            vec![BigUint::from(3u8), BigUint::from(2u8)]
        );
        let empty = (sig(0, &[]), sig(0, &[]));
        assert!(equalize_cone_counts(&[empty], EqualizeMode::Lcm).is_err());
    }

    #[test]
    fn prime_avoiding_examples() {
        assert_eq!(prime_avoiding_q(&[3], 2).unwrap(), vec![5, 11]);
        assert_eq!(prime_avoiding_q(&[2, 3], 1).unwrap(), vec![11]);
        assert!(prime_avoiding_q(&[], 1).is_err());
        assert!(prime_avoiding_q(&[4], 1).is_err());
        for q in prime_avoiding_q(&[3, 5, 7], 20).unwrap() {
            for order in [q, 2 * q + 1, q + 2] {
                assert!(order % 3 != 0 && order % 5 != 0 && order % 7 != 0);
            }
        }
    }

    #[test]
    fn same_chi_l_examples() {
        let fam = same_chi_l_family(3, 2, 2).unwrap();
        assert_eq!(fam[0], sig(1, &[3]));
        assert_eq!(fam[1], sig(3, &[3, 3, 3]));
        let fam = same_chi_l_family(5, 3, 1).unwrap();
        assert_eq!(fam[0].genus(), 12);
        assert_eq!(chi_l(&fam[0], 3), Rational::from(2));
        assert!(same_chi_l_family(4, 2, 1).is_err());
        assert!(same_chi_l_family(3, 1, 1).is_err());
    }

    #[test]
    fn expand_family_example() {
        let (a, b) = base_pair(0, 2).unwrap();
        let fam = expand_family(&a, &b, 3, 2).unwrap();
        assert_eq!(fam[0], sig(0, &[5, 5, 5, 5, 10, 10]));
        for s in &fam {
            assert_eq!(chi_l(s, 2), Rational::from(36));
        }
        assert_eq!(
            expand_family(&a, &b, 2, 2).unwrap(),
            vec![a.clone(), b.clone()]
        );
        assert!(expand_family(&a, &a, 3, 2).is_err());
        assert!(expand_family(&a, &b, 3, 3).is_err());
    }

    #[test]
    fn expand_family_strips_shared_orders() {
        let (a, b) = base_pair(1, 3).unwrap();
        let extra = sig(1, &[7, 7, 13]);
        let a2 = combine(&a, &extra).unwrap();
        let b2 = combine(&b, &extra).unwrap();
        let fam = expand_family(&a2, &b2, 4, 2).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(fam.iter().all(|s| s.multiplicity(13).is_zero()));
    }
}
