//! Exact workbench for recollements of bounded derived categories of
//! finite-dimensional path algebras over a prime field.
//!
//! The stack, bottom up: [`linalg`] (GF(p) matrices), [`algebra`] (path
//! algebras, corners, idempotent quotients), [`module`] (right modules,
//! bimodules, Hom, duality, tensor), [`complex`] (bounded complexes, cones,
//! projective replacement, derived Hom and tensor), [`recollement`] (the six
//! functors and the axiom verifier), [`serre`] (Nakayama functor and induced
//! Serre functors) and [`reflect`] (the two reflected recollements).

pub mod algebra;
pub mod complex;
pub mod derived;
pub mod error;
pub mod linalg;
pub mod module;
pub mod recollement;
pub mod reflect;
pub mod serre;

pub use error::{Error, Result};
