//! Exact-arithmetic models of the semisimple cyclotomic Hecke algebras of
//! types G(r,1,n) and G(r,p,n), built in seminormal form.
//!
//! The crate constructs, over the cyclotomic-rational field Q(zeta_p),
//!
//! * the matrix model of H_{r,n} acting on the direct sum of its irreducible
//!   modules, one block per multipartition of n ([`seminormal`]),
//! * the gamma-coefficient table, Jucys-Murphy idempotents and the
//!   transition elements between them ([`seminormal`]),
//! * the coefficient families (r, R, h, A) and the basis, central
//!   idempotents and twisted-center bases of the fixed-point subalgebra
//!   H_{r,p,n} ([`gprn`]),
//! * a property-check suite that verifies every structural identity at desk
//!   scale with exact equality ([`verify`]).
//!
//! Everything is computed in exact arithmetic; there is no floating point
//! anywhere in the crate.

pub mod dump;
pub mod exactfield;
pub mod gprn;
pub mod matrix;
pub mod seminormal;
pub mod tableaux;
pub mod verify;

pub use exactfield::{CycloRational, HeckeParams, SemisimplicityFailure};
pub use seminormal::Context;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("division by zero in Q(zeta_{p})")]
    DivisionByZero { p: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parameters are not semisimple: {0}")]
    NotSemisimple(SemisimplicityFailure),

    #[error("corrupted parameters: {0}")]
    CorruptedParameters(String),

    #[error("gamma table inconsistent: {0}")]
    GammaInconsistency(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("problem size {size} exceeds the oracle bound {bound} (set via ContextBuilder or HECKE_DESK_BOUND)")]
    DeskScaleExceeded { size: u128, bound: u128 },
}

pub type Result<T> = std::result::Result<T, HeckeError>;
