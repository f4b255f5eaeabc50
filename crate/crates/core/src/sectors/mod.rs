//! Finite-group machinery: homomorphism classes, global-quotient
//! characteristics and the mirrored-cylinder sectors.

mod group;
mod homs;
mod quotient;

pub use group::{cyclic_group, dihedral_group, direct_product, FiniteGroup, GroupTableJson};
pub use homs::{enumerate_homs, hom_classes, Hom, HomClass, DEFAULT_HOM_BUDGET};
pub use quotient::{
    chi_gamma_mirrored, chi_gamma_quotient, rotation_sphere_action, FixedPointCharacter,
    FixedPointEntry, FixedSet, RotationAction,
};
