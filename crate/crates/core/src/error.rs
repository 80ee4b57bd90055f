use thiserror::Error;

/// Errors raised at API boundaries. Check *verdicts* (a structure failing a
/// criterion) are not errors; they are returned as witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailed(usize, usize, usize),

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("subspace is not a subalgebra")]
    NotSubalgebra,

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("subspace is not Lagrangian: {0}")]
    NotLagrangian(String),

    #[error("linear map is not surjective (rank {rank}, target dimension {target})")]
    NotSurjective { rank: usize, target: usize },

    #[error("Lie algebra is not abelian")]
    NotAbelian,

    #[error("dual bracket does not take values in p1 (structure is not N-invariant)")]
    NotNInvariant,

    #[error("δ is not a Lie algebra 1-cocycle")]
    NotCocycle,

    #[error("dual bracket is not a Lie bracket on p1 (structure is not integrable)")]
    NotIntegrable,

    #[error("candidate violates (g0 + h) x 0 ⊆ D ⊆ g x (p1 ∩ h°)")]
    SandwichViolated,

    #[error("search space too large: {size} candidates (limit {limit})")]
    SearchSpaceTooLarge { size: u128, limit: u128 },

    #[error("quotient dimension {dim} exceeds the enumeration limit {limit}")]
    QuotientTooLarge { dim: usize, limit: usize },

    #[error("vector is not in the expected subspace")]
    NotInSubspace,

    #[error("schema violation: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
