//! Exact Γ-Euler-Satake characteristics of closed 2-orbifolds.
//!
//! The crate is organised around four areas:
//!
//! * closed-form characteristics of orientable signatures `Σ_g(m_1, …, m_k)`
//!   ([`characteristic`]), built on exact [`Rational`] arithmetic;
//! * surgery operations and collision-family builders ([`constructions`]);
//! * recovering a signature from its characteristic sequence, plus bounded
//!   enumeration and collision search ([`classify`]);
//! * finite-group machinery for global quotients and the mirrored-cylinder
//!   family ([`sectors`]).
//!
//! Everything is exact. There is no floating point anywhere in the crate.

pub mod characteristic;
pub mod classify;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod gamma;
pub mod mirrored;
pub mod rational;
pub mod sectors;
pub mod signature;

pub use characteristic::{
    chi_es, chi_gamma, chi_gamma_times_manifold, chi_l, chi_top, hom_count_cyclic, is_diffeomorphic,
};
pub use error::{Error, Result};
pub use gamma::GammaDescriptor;
pub use mirrored::MirroredCylinder;
pub use rational::Rational;
pub use signature::OrbifoldSignature;
