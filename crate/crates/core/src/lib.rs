//! Exact computations with invariant Poisson structures on homogeneous
//! spaces `G/H`.

pub mod catalog;
pub mod document;
pub mod error;
pub mod expr;
pub mod field;
pub mod foliation;
pub mod invariants;
pub mod isotropy;
pub mod lie;
pub mod linalg;
pub mod poisson;
pub mod reductive;

pub use error::{Error, Result};
pub use field::Field;
pub use isotropy::IsotropyModel;
pub use lie::LieAlgebra;
pub use linalg::{Matrix, Subspace};
pub use poisson::{Bivector, Lift, YBTensor};

/// Arbitrary-precision rationals, the default scalar.
pub type Rational = num_rational::BigRational;
pub type RMatrix = Matrix<Rational>;
pub type RSubspace = Subspace<Rational>;
pub type RLieAlgebra = LieAlgebra<Rational>;
