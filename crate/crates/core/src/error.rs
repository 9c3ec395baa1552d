use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Domain errors. Variants documented as "internal identity" signal that a
/// theorem-backed check failed; they are surfaced, never swallowed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("structure constants are not a Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("span is not closed under the bracket: [h{0}, h{1}] leaves it")]
    NotASubalgebra(usize, usize),

    #[error("generator {0} is not a Lie algebra automorphism")]
    NotAnAutomorphism(usize),

    #[error("generator {0} does not preserve the isotropy subalgebra")]
    GeneratorMovesH(usize),

    #[error("complement is not a complement of the isotropy subalgebra")]
    BadComplement,

    #[error("element is not in the isotropy subalgebra")]
    NotInH,

    #[error("covector does not annihilate the isotropy subalgebra")]
    NotInAnnihilator,

    #[error("bivector is not skew-symmetric")]
    NotSkew,

    #[error("bivector is not invariant under the isotropy action")]
    NotInvariant,

    #[error("bivector is not an r-matrix")]
    NotAnRMatrix,

    #[error("Jacobi identity failed for the bracket on invariant covectors at {0:?}")]
    JacobiFailure((usize, usize, usize)),

    #[error("internal identity failed: {0}")]
    ClosureFailure(String),

    #[error("radical of the 2-form differs from the isotropy subalgebra")]
    RadicalMismatch,

    #[error("2-form is not a cocycle at basis triple {0:?}")]
    NotACocycle((usize, usize, usize)),

    #[error("subspace is not closed under the bracket")]
    NotClosed,

    #[error("complement is not reductive: [h, m] is not contained in m")]
    NotReductive,

    #[error("connection is not an F-connection")]
    NotAnFConnection,
}
