//! Fixed-point subspaces of the isotropy action on `g/h`, its dual and `∧²(g/h)`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::isotropy::IsotropyModel;
use crate::lie;
use crate::linalg::{self, Matrix, Subspace};
use crate::poisson::Bivector;

/// Which part of the isotropy data a fixed-space computation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupModel {
    /// Only the subalgebra `h` (connected isotropy).
    Connected,
    /// Only the supplied generator matrices.
    Discrete,
    /// Both, intersecting the two fixed spaces.
    Full,
}

impl GroupModel {
    fn uses_h(self) -> bool {
        matches!(self, Self::Connected | Self::Full)
    }

    fn uses_generators(self) -> bool {
        matches!(self, Self::Discrete | Self::Full)
    }
}

/// The space `(∧²(g/h))^H` in lexicographic wedge coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBivectorSpace<F: Field> {
    m: usize,
    basis: Subspace<F>,
    infinitesimal: bool,
    discrete: bool,
}

impl<F: Field> InvariantBivectorSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Dimension of the quotient `g/h`.
    pub fn codim(&self) -> usize {
        self.m
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.basis
    }

    /// Whether the `h`-constraints were imposed.
    pub fn infinitesimal(&self) -> bool {
        self.infinitesimal
    }

    /// Whether the generator constraints were imposed.
    pub fn discrete(&self) -> bool {
        self.discrete
    }

    pub fn bivectors(&self) -> Vec<Bivector<F>> {
        self.basis
            .basis()
            .iter()
            .map(|w| Bivector::from_wedge(self.m, w))
            .collect()
    }

    pub fn contains(&self, r: &Bivector<F>) -> bool {
        r.dim() == self.m && self.basis.contains(&r.to_wedge())
    }
}

/// Stacked linear constraints on `∧²(g/h)` whose kernel is the invariant space.
pub fn invariance_constraints<F: Field>(iso: &IsotropyModel<F>, model: GroupModel) -> Matrix<F> {
    let w = lie::wedge2_dim(iso.codim());
    let mut stack = Matrix::zeros(0, w);
    if model.uses_h() {
        for d in iso.infinitesimal_operators() {
            stack = stack.vstack(&lie::wedge2_derivation(&d));
        }
    }
    if model.uses_generators() {
        let id = Matrix::identity(w);
        for a in iso.discrete_operators() {
            stack = stack.vstack(&(&lie::wedge2_action(&a) - &id));
        }
    }
    stack
}

/// Invariant bivectors under everything the model supplies.
pub fn invariant_bivectors<F: Field>(iso: &IsotropyModel<F>) -> InvariantBivectorSpace<F> {
    invariant_bivectors_with(iso, GroupModel::Full)
}

pub fn invariant_bivectors_with<F: Field>(iso: &IsotropyModel<F>, model: GroupModel) -> InvariantBivectorSpace<F> {
    let stack = invariance_constraints(iso, model);
    InvariantBivectorSpace {
        m: iso.codim(),
        basis: linalg::kernel(&stack),
        infinitesimal: model.uses_h() && iso.dim_h() > 0,
        discrete: model.uses_generators() && !iso.generators().is_empty(),
    }
}

fn check_square<F: Field>(dim: usize, ops: &[Matrix<F>]) -> Result<()> {
    for op in ops {
        if op.rows() != dim || op.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: if op.rows() != dim { op.rows() } else { op.cols() },
            });
        }
    }
    Ok(())
}

/// Common kernel of the infinitesimal operators `D` and of `A − I` for the
/// discrete operators `A`.
pub fn fixed_vectors<F: Field>(dim: usize, infinitesimal: &[Matrix<F>], discrete: &[Matrix<F>]) -> Result<Subspace<F>> {
    check_square(dim, infinitesimal)?;
    check_square(dim, discrete)?;
    let id = Matrix::identity(dim);
    let mut stack = Matrix::zeros(0, dim);
    for d in infinitesimal {
        stack = stack.vstack(d);
    }
    for a in discrete {
        stack = stack.vstack(&(a - &id));
    }
    Ok(linalg::kernel(&stack))
}

/// Fixed covectors of the dual actions `−Dᵀ` and `Aᵀ`.
pub fn fixed_covectors<F: Field>(
    dim: usize,
    infinitesimal: &[Matrix<F>],
    discrete: &[Matrix<F>],
) -> Result<Subspace<F>> {
    let inf: Vec<Matrix<F>> = infinitesimal.iter().map(|d| -&d.transpose()).collect();
    let disc: Vec<Matrix<F>> = discrete.iter().map(|a| a.transpose()).collect();
    fixed_vectors(dim, &inf, &disc)
}

/// `(g/h)^H` in quotient coordinates.
pub fn fixed_quotient_vectors<F: Field>(iso: &IsotropyModel<F>) -> Subspace<F> {
    fixed_vectors(iso.codim(), &iso.infinitesimal_operators(), &iso.discrete_operators())
        .expect("quotient operators are square")
}

/// `((g/h)*)^H ≅ (h°)^H` in dual quotient coordinates.
pub fn fixed_quotient_covectors<F: Field>(iso: &IsotropyModel<F>) -> Subspace<F> {
    fixed_covectors(iso.codim(), &iso.infinitesimal_operators(), &iso.discrete_operators())
        .expect("quotient operators are square")
}
