//! Braid monodromy, fundamental groups and central-extension models for the
//! degenerations of Hirzebruch surfaces.

pub mod arrangement;
pub mod braid;
pub mod complex;
pub mod error;
pub mod factorization;
pub mod free;
pub mod grouptheory;
pub mod model;
pub mod perm;
pub mod vankampen;

pub use error::{Error, Result};

/// Exact scalar for the real realization of the line arrangement.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer for Smith normal forms.
pub type Integer = num_bigint::BigInt;
