//! Γ-Euler-Satake characteristics of global quotients `M ⋊ G`, and of the
//! mirrored-cylinder family.
//!
//! The Γ-sectors of `M ⋊ G` are `⊔_(φ) M^⟨φ⟩ ⋊ C_G(φ)` over conjugacy classes
//! of homomorphisms `φ: Γ → G`. Only the Euler characteristics `χ(M^H)` are
//! needed, so the manifold is represented by a [`FixedPointCharacter`].

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::GammaDescriptor;
use crate::mirrored::{chi_es_mirrored, MirroredCylinder};
use crate::rational::Rational;

use super::group::{cyclic_group, dihedral_group, FiniteGroup};
use super::homs::{enumerate_homs, hom_classes};

/// `H ↦ χ(M^H)` on subgroups given as sorted element lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixedPointCharacter {
    values: BTreeMap<Vec<usize>, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixedPointEntry {
    pub subgroup: Vec<usize>,
    pub chi: i64,
}

impl FixedPointCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rejects sets that are not subgroups of `group`.
    pub fn insert(
        &mut self,
        group: &FiniteGroup,
        mut subgroup: Vec<usize>,
        chi: i64,
    ) -> Result<()> {
        subgroup.sort_unstable();
        subgroup.dedup();
        if !group.is_subgroup(&subgroup) {
            return Err(Error::InvalidGroup(format!(
                "{subgroup:?} is not a subgroup"
            )));
        }
        self.values.insert(subgroup, chi);
        Ok(())
    }

    pub fn get(&self, subgroup: &[usize]) -> Option<i64> {
        self.values.get(subgroup).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.values.iter().map(|(h, &c)| (h.as_slice(), c))
    }

    pub fn from_json(group: &FiniteGroup, entries: &[FixedPointEntry]) -> Result<Self> {
        let mut fpc = Self::new();
        for e in entries {
            fpc.insert(group, e.subgroup.clone(), e.chi)?;
        }
        Ok(fpc)
    }

    pub fn to_json(&self) -> Vec<FixedPointEntry> {
        self.entries()
            .map(|(h, chi)| FixedPointEntry {
                subgroup: h.to_vec(),
                chi,
            })
            .collect()
    }

    fn lookup(&self, subgroup: &[usize]) -> Result<i64> {
        self.get(subgroup)
            .ok_or_else(|| Error::MissingFixedPointData(subgroup.to_vec()))
    }
}

/// `χ_Γ(M ⋊ G) = Σ_(φ) χ(M^⟨φ⟩) / |C_G(φ)|`.
///
/// The same value is also computed as `(1/|G|) Σ_φ χ(M^⟨φ⟩)` over all
/// homomorphisms; a disagreement (e.g. an fpc that is not constant on
/// conjugate subgroups) is reported as [`Error::Verification`].
pub fn chi_gamma_quotient(
    group: &FiniteGroup,
    fpc: &FixedPointCharacter,
    gamma: &GammaDescriptor,
    budget: u64,
) -> Result<Rational> {
    let classes = hom_classes(gamma, group, budget)?;
    let mut by_class = Rational::zero();
    for class in &classes {
        let chi = fpc.lookup(&class.image)?;
        by_class += Rational::new(chi, class.centralizer_order as i64);
    }
    let mut images: HashMap<Vec<usize>, i64> = HashMap::new();
    let mut total = 0i128;
    for hom in enumerate_homs(gamma, group, budget)? {
        let image = group.generated_subgroup(&hom);
        let chi = match images.get(&image) {
            Some(&c) => c,
            None => {
                let c = fpc.lookup(&image)?;
                images.insert(image, c);
                c
            }
        };
        total += chi as i128;
    }
    let averaged = Rational::new(total, group.order() as i128);
    if averaged != by_class {
        return Err(Error::Verification(format!(
            "class sum {by_class} differs from averaged sum {averaged}"
        )));
    }
    Ok(by_class)
}

/// Fixed set of a subgroup under a rotation action on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedSet {
    /// The subgroup acts trivially.
    Sphere,
    /// The two poles of the rotation axis.
    Poles,
}

/// `Z/n` acting on `S²`, the generator rotating by `2πr/n`.
#[derive(Clone, Debug)]
pub struct RotationAction {
    pub group: FiniteGroup,
    pub fpc: FixedPointCharacter,
    /// Elements acting trivially, `⟨g^(n/gcd(n, r))⟩`.
    pub kernel: Vec<usize>,
    pub fixed_sets: BTreeMap<Vec<usize>, FixedSet>,
}

impl RotationAction {
    pub fn is_effective(&self) -> bool {
        self.kernel.len() == 1
    }
}

pub fn rotation_sphere_action(n: usize, r: usize) -> Result<RotationAction> {
    if n == 0 || r == 0 || r >= n {
        return Err(Error::InvalidArgument(format!(
            "rotation step {r} must satisfy 1 ≤ r < n = {n}"
        )));
    }
    let group = cyclic_group(n);
    let kernel = group.generated_subgroup(&[(n / n.gcd(&r)) % n]);
    let mut fpc = FixedPointCharacter::new();
    let mut fixed_sets = BTreeMap::new();
    // Every subgroup of Z/n is cyclic, generated by a divisor of n.
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let h = group.generated_subgroup(&[d % n]);
        let set = if h.iter().all(|x| kernel.contains(x)) {
            FixedSet::Sphere
        } else {
            FixedSet::Poles
        };
        // χ(S²) = χ(two points) = 2
        fpc.insert(&group, h.clone(), 2)?;
        fixed_sets.insert(h, set);
    }
    Ok(RotationAction {
        group,
        fpc,
        kernel,
        fixed_sets,
    })
}

/// `χ_Γ` of a mirrored cylinder.
///
/// Away from the corners the Γ-sectors are the cylinder itself and, for each
/// homomorphism onto a reflection, a copy of a boundary circle; circles add
/// nothing. At a corner of order `n` (isotropy `D_2n`) every other class of
/// nontrivial homomorphisms fixes only the corner point and contributes
/// `1/|C(φ)|`. Reflection-image classes are taken to close into circles,
/// which is a model assumption rather than a proven fact for every Γ.
pub fn chi_gamma_mirrored(
    mc: &MirroredCylinder,
    gamma: &GammaDescriptor,
    budget: u64,
) -> Result<Rational> {
    let mut total = chi_es_mirrored(mc);
    let mut per_order: HashMap<u64, Rational> = HashMap::new();
    for n in mc.corners() {
        if n % 2 == 0 {
            return Err(Error::Unsupported(format!("corner order {n} is even")));
        }
        if let std::collections::hash_map::Entry::Vacant(e) = per_order.entry(n) {
            e.insert(corner_contribution(n, gamma, budget)?);
        }
        total += &per_order[&n];
    }
    Ok(total)
}

fn corner_contribution(n: u64, gamma: &GammaDescriptor, budget: u64) -> Result<Rational> {
    let n = usize::try_from(n).map_err(|_| Error::Overflow(format!("corner order {n}")))?;
    let group = dihedral_group(n);
    let mut sum = Rational::zero();
    for class in hom_classes(gamma, &group, budget)? {
        let reflection_line = class.image.len() == 2 && class.image[1] >= n;
        if class.image.len() == 1 || reflection_line {
            continue;
        }
        sum += Rational::new(1, class.centralizer_order as i64);
    }
    Ok(sum)
}
