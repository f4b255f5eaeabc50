//! Mirrored cylinders: `S¹ × [0,1]` with both boundary circles reflector
//! lines, carrying corner reflectors of odd order.
//!
//! A corner of order `n` has dihedral isotropy `D_2n`. The Euler-Satake
//! characteristic is the corner-reflector form of the Satake formula,
//! `χ_top - ½ Σ_j (1 - 1/n_j)` with `χ_top = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct MirroredCylinder {
    boundary0: Vec<u64>,
    boundary1: Vec<u64>,
}

impl MirroredCylinder {
    /// Corner orders must be odd and at least 3. Each boundary list is
    /// stored sorted.
    pub fn new(mut boundary0: Vec<u64>, mut boundary1: Vec<u64>) -> Result<Self> {
        for &n in boundary0.iter().chain(&boundary1) {
            if n < 2 {
                return Err(Error::InvalidArgument(format!(
                    "corner order {n} is below 2"
                )));
            }
            if n % 2 == 0 {
                return Err(Error::Unsupported(format!(
                    "corner order {n} is even; only odd corner orders are modelled"
                )));
            }
        }
        boundary0.sort_unstable();
        boundary1.sort_unstable();
        Ok(MirroredCylinder {
            boundary0,
            boundary1,
        })
    }

    pub fn boundary0(&self) -> &[u64] {
        &self.boundary0
    }

    pub fn boundary1(&self) -> &[u64] {
        &self.boundary1
    }

    pub fn corners(&self) -> impl Iterator<Item = u64> + '_ {
        self.boundary0.iter().chain(&self.boundary1).copied()
    }

    /// Two mirrored cylinders are diffeomorphic iff the unordered pair of
    /// per-boundary corner multisets agree.
    pub fn is_diffeomorphic(&self, other: &MirroredCylinder) -> bool {
        (self.boundary0 == other.boundary0 && self.boundary1 == other.boundary1)
            || (self.boundary0 == other.boundary1 && self.boundary1 == other.boundary0)
    }
}

impl fmt::Display for MirroredCylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{{{} | {}}}",
            join(&self.boundary0),
            join(&self.boundary1)
        )
    }
}

pub fn chi_es_mirrored(mc: &MirroredCylinder) -> Rational {
    let deficit: Rational = mc
        .corners()
        .map(|n| Rational::one() - Rational::new(1, n))
        .sum();
    -(deficit / Rational::from(2))
}
