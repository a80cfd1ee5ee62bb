//! Exact computation and verification of the congruence invariant
//! `σ(A) = Tr(ᵗA·A⁻¹)` of nonsingular matrices over Q and GF(p).
//!
//! `σ(ᵗX·A·X) = σ(A)` for every nonsingular `X`, so `σ` separates
//! congruence classes of nonsingular matrices. The crate provides:
//!
//! * [`field`]: exact scalars over Q (arbitrary precision) and GF(p)
//! * [`matrix`]: dense exact matrices with determinant, cofactors, adjugate
//!   and inverse
//! * [`invariant`]: `σ` by three formulas, `κ = 3 − σ`, the canonical form
//!   `A(a, b, c)` and the congruence actions
//! * [`zeropotent`]: 3-dimensional zeropotent algebras and brute-force
//!   isomorphism testing over GF(p)
//! * [`orbit`]: exhaustive congruence-orbit enumeration over GF(p)
//! * [`verify`]: property checks and seeded fuzzing
//!
//! The heavy loops run on rayon when the `parallel` feature (default) is on;
//! see [`exec::Strategy`].

pub mod error;
pub mod exec;
pub mod field;
mod gfp;
pub mod invariant;
pub mod matrix;
pub mod orbit;
pub mod random;
pub mod verify;
pub mod zeropotent;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use field::{sqrt_in_field, FieldDescriptor, FieldKind, Scalar};
pub use invariant::{
    canonical_form, congruence_transform, d_invariant, kappa, kappa_explicit,
    scaled_congruence_transform, sigma, sigma_by, SigmaMode,
};
pub use matrix::Matrix;
pub use zeropotent::{is_isomorphic_bruteforce, sigma_of_algebra, Vector3, ZeropotentAlgebra3};
