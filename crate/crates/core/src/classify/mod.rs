//! Characteristic sequences and the classification direction: recovering a
//! signature from `(χ_(0), …, χ_(L))`, listing every signature with a given
//! `χ_ES`, and searching bounded regions for collisions.

mod enumerate;
pub mod recurrence;
mod search;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characteristic::chi_l;
use crate::rational::Rational;
use crate::signature::OrbifoldSignature;

pub use enumerate::{enumerate_by_chi_es, for_each_with_chi_es};
pub use search::{search_collisions, CollisionGroup};

/// `(χ_(0), χ_(1), …, χ_(L))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharSequence(pub Vec<Rational>);

impl CharSequence {
    /// Index of the last entry, `L`.
    pub fn last_index(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for CharSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Rational::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl std::str::FromStr for CharSequence {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<crate::Result<Vec<_>>>()
            .map(CharSequence)
    }
}

pub fn char_sequence(sig: &OrbifoldSignature, last: u32) -> CharSequence {
    CharSequence((0..=last).map(|l| chi_l(sig, l)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReconstructError {
    /// The sequence is consistent with at least one signature but too short
    /// to pin it down.
    #[error("insufficient data: {have} difference terms available, {need} needed")]
    InsufficientData { have: usize, need: usize },
    #[error("not a valid characteristic sequence: {0}")]
    Invalid(String),
}

/// Recovers the signature whose characteristic sequence is `seq`.
///
/// With `v_l = χ_(l+1) − χ_(l) = Σ_m c_m (m − 1) m^(l−1)`, the terms
/// `v_1, …, v_(L−1)` form an exponential sum in the distinct cone orders. A
/// minimal recurrence of order `D` is trusted only when at least `2D` terms
/// are available; its characteristic roots are the orders and a Vandermonde
/// solve gives the multiplicities. The result is checked against the full
/// input before it is returned.
pub fn reconstruct(seq: &CharSequence) -> Result<OrbifoldSignature, ReconstructError> {
    let values = seq.values();
    let invalid = |why: String| Err(ReconstructError::Invalid(why));
    if values.len() < 2 {
        return Err(ReconstructError::InsufficientData { have: 0, need: 2 });
    }

    let chi1 = match values[1].to_integer() {
        Some(x) => x,
        None => return invalid(format!("χ_(1) = {} is not an integer", values[1])),
    };
    let two = BigInt::from(2);
    if chi1 > two || (&two - &chi1) % 2 != BigInt::zero() {
        return invalid(format!("χ_(1) = {chi1} is not 2 − 2g for any genus g ≥ 0"));
    }
    let genus = match ((&two - &chi1) / BigInt::from(2)).to_u64() {
        Some(g) => g,
        None => return invalid("genus does not fit in 64 bits".into()),
    };
    if let Some((l, v)) = values
        .iter()
        .enumerate()
        .skip(2)
        .find(|(_, v)| !v.is_integer())
    {
        return invalid(format!("χ_({l}) = {v} is not an integer"));
    }

    // v_0 = Σ c_m (1 − 1/m) ∈ [k/2, k).
    let v0 = &values[1] - &values[0];
    if v0.is_negative() {
        return invalid("χ_(0) exceeds χ_(1)".into());
    }
    let diffs: Vec<Rational> = values.windows(2).skip(1).map(|w| &w[1] - &w[0]).collect();
    let manifold = OrbifoldSignature::manifold(genus);

    if v0.is_zero() {
        return if diffs.iter().all(Rational::is_zero) {
            Ok(manifold)
        } else {
            invalid("χ_(0) = χ_(1) forces a manifold, but higher terms differ".into())
        };
    }
    if diffs.is_empty() {
        return Err(ReconstructError::InsufficientData { have: 0, need: 2 });
    }
    // Every order is at least 2, so each difference at least doubles.
    let mut previous = &v0;
    for (l, v) in diffs.iter().enumerate() {
        if v < &(Rational::from(2) * previous) {
            return invalid(format!(
                "χ_({}) − χ_({}) grows too slowly for cone orders ≥ 2",
                l + 2,
                l + 1
            ));
        }
        previous = v;
    }

    // Any valid signature behind these values has at most this many distinct
    // orders: each order contributes at least 1 to v_1, and k ≤ 2·v_0.
    let max_orders = diffs[0]
        .floor()
        .min((Rational::from(2) * &v0).floor())
        .to_usize()
        .unwrap_or(usize::MAX);
    let have = diffs.len();
    let undetermined = |need: usize| -> Result<OrbifoldSignature, ReconstructError> {
        if have >= max_orders.saturating_mul(2) {
            Err(ReconstructError::Invalid(
                "no signature with few enough cone orders fits these values".into(),
            ))
        } else {
            Err(ReconstructError::InsufficientData { have, need })
        }
    };

    let connection = recurrence::berlekamp_massey(&diffs);
    let depth = connection.len() - 1;
    if 2 * depth > have {
        return undetermined(2 * depth);
    }
    // x^D + c_1 x^(D−1) + … + c_D, which must have integer coefficients if
    // its roots are integers.
    let mut poly = Vec::with_capacity(depth + 1);
    for c in &connection {
        match c.to_integer() {
            Some(x) => poly.push(x),
            None => return undetermined(2 * depth + 2),
        }
    }
    let Some(roots) = recurrence::integer_roots(&poly) else {
        return undetermined(2 * depth + 2);
    };
    if roots.windows(2).any(|w| w[0] == w[1]) || roots.iter().any(|r| r < &two) {
        return undetermined(2 * depth + 2);
    }
    let Some(weights) = recurrence::solve_vandermonde(&roots, &diffs[..depth]) else {
        return undetermined(2 * depth + 2);
    };

    let mut sig = manifold;
    for (m, a) in roots.iter().zip(&weights) {
        let c = a / &Rational::from(m - BigInt::one());
        let count = match c.to_integer().and_then(|c| c.to_biguint()) {
            Some(c) if !c.is_zero() => c,
            _ => return undetermined(2 * depth + 2),
        };
        let Some(order) = m.to_u64() else {
            return undetermined(2 * depth + 2);
        };
        if sig.add_cones(order, count).is_err() {
            return undetermined(2 * depth + 2);
        }
    }

    let last = (values.len() - 1) as u32;
    if char_sequence(&sig, last).values() != values {
        return undetermined(2 * depth + 2);
    }
    Ok(sig)
}
