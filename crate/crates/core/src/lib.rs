//! Exact verification and classification of the linear-algebraic data behind
//! Dirac Lie groups and their homogeneous spaces.
//!
//! The crate is layered bottom-up:
//!
//! - [`ratlin`]: exact rational matrices and canonical subspaces.
//! - [`liealg`]: Lie algebras by structure constants, certified at construction.
//! - [`dirac_linear`]: Lagrangian subspaces of `g ⊕ g*`, reduction and pullback.
//! - [`invariant`]: left-invariant Dirac structures and their integrability.
//! - [`multiplicative`]: `(g0, δ)` data, the dual bracket on `p1` and the double.
//! - [`homogeneous`]: classification of homogeneous structures over a subalgebra `h`.
//!
//! [`json`] holds the file schemas shared with the command-line front end and
//! [`sampling`] the seeded random families used by property tests.
//!
//! Every check returns a [`Verdict`]: `Ok(())` on success, or a witness
//! describing the first violation found.

pub mod dirac_linear;
pub mod error;
pub mod homogeneous;
pub mod invariant;
pub mod json;
pub mod liealg;
pub mod multiplicative;
pub mod ratlin;
pub mod sampling;

pub use error::{Error, Result};

/// Outcome of a check: `Ok(())` when it passes, otherwise a witness.
pub type Verdict<W> = std::result::Result<(), W>;
