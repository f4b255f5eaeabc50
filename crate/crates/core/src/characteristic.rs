//! Closed-form characteristics of orientable signatures.
//!
//! For `Q = Σ_g(m_1, …, m_k)` the l-th Euler-Satake characteristic is
//!
//! ```text
//! χ_(l)(Q) = 2 - 2g - k + Σ_i m_i^(l-1)
//! ```
//!
//! with `m^(-1)` read as the exact rational `1/m` at `l = 0`. For a general
//! finitely generated Γ, each cone point of order `m` contributes
//! `|HOM(Γ, Z/m)| / m` in place of `m^(l-1)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Pow;

use crate::error::Result;
use crate::gamma::GammaDescriptor;
use crate::rational::Rational;
use crate::signature::OrbifoldSignature;

/// Euler characteristic of the underlying surface, `2 - 2g`.
pub fn chi_top(sig: &OrbifoldSignature) -> BigInt {
    BigInt::from(2) - BigInt::from(2) * BigInt::from(sig.genus())
}

/// The Euler-Satake characteristic `χ_(0)`.
pub fn chi_es(sig: &OrbifoldSignature) -> Rational {
    chi_l(sig, 0)
}

/// `χ_(l)` for `Γ = Z^l`.
pub fn chi_l(sig: &OrbifoldSignature, l: u32) -> Rational {
    let base = Rational::from(chi_top(sig) - BigInt::from(sig.cone_count()));
    if l == 0 {
        let recips: Rational = sig
            .cones()
            .iter()
            .map(|(&m, c)| Rational::new(BigInt::from(c.clone()), BigInt::from(m)))
            .sum();
        base + recips
    } else {
        base + Rational::from(BigInt::from(power_sum(sig, l - 1)))
    }
}

/// `Σ_i m_i^e` over the cone points, counted with multiplicity.
pub fn power_sum(sig: &OrbifoldSignature, e: u32) -> BigUint {
    sig.cones()
        .iter()
        .map(|(&m, c)| Pow::pow(BigUint::from(m), e) * c)
        .sum()
}

/// `|HOM(Γ, Z/m)|`.
///
/// Γ is first abelianized; for `Z^l ⊕ ⊕_j Z/d_j` the count is
/// `m^l · Π_j gcd(d_j, m)`.
pub fn hom_count_cyclic(gamma: &GammaDescriptor, m: u64) -> Result<BigUint> {
    let (rank, torsion) = gamma.abelian_invariants()?;
    Ok(hom_count_from_invariants(rank, &torsion, m))
}

pub(crate) fn hom_count_from_invariants(rank: u32, torsion: &[u64], m: u64) -> BigUint {
    let mut count = Pow::pow(BigUint::from(m), rank);
    for &d in torsion {
        count *= d.gcd(&m);
    }
    count
}

/// `χ_Γ` of an orientable signature.
pub fn chi_gamma(sig: &OrbifoldSignature, gamma: &GammaDescriptor) -> Result<Rational> {
    let (rank, torsion) = gamma.abelian_invariants()?;
    let base = Rational::from(chi_top(sig) - BigInt::from(sig.cone_count()));
    let sectors: Rational = sig
        .cones()
        .iter()
        .map(|(&m, c)| {
            let homs = hom_count_from_invariants(rank, &torsion, m) * c;
            Rational::new(BigInt::from(homs), BigInt::from(m))
        })
        .sum();
    Ok(base + sectors)
}

/// `χ_Γ(Q × M) = χ_Γ(Q) · χ(M)` for a closed manifold factor `M`.
pub fn chi_gamma_times_manifold(
    sig: &OrbifoldSignature,
    gamma: &GammaDescriptor,
    manifold_chi: i64,
) -> Result<Rational> {
    Ok(chi_gamma(sig, gamma)? * Rational::from(manifold_chi))
}

/// Orientable signatures classify closed orientable 2-orbifolds, so this is
/// multiset equality together with the genus.
pub fn is_diffeomorphic(a: &OrbifoldSignature, b: &OrbifoldSignature) -> bool {
    a == b
}
