//! Symplectic-leaf data of an r-matrix: the subalgebra `a_r = q⁻¹(Im r_#)`
//! with its 2-cocycle `ω_r`, and the inverse construction.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::isotropy::IsotropyModel;
use crate::linalg::{self, Matrix, Subspace};
use crate::poisson::{self, Bivector};
use crate::reductive;

/// `a_r` with the skew form `ω_r` on its basis.
///
/// The basis is the RREF basis of `h` followed by the section of the RREF
/// basis of `Im(r_#)`, so the splitting `a_r = h ⊕ Im(r_#)` is visible.
#[derive(Clone, Debug)]
pub struct LeafData<F: Field> {
    basis: Vec<Vec<F>>,
    h_dim: usize,
    space: Subspace<F>,
    omega: Matrix<F>,
}

impl<F: Field> LeafData<F> {
    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of leading basis vectors spanning `h`.
    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    /// `ω_r(b_i, b_j)` on the basis.
    pub fn omega(&self) -> &Matrix<F> {
        &self.omega
    }

    /// `ω_r(x, y)` for `x, y ∈ a_r`.
    pub fn eval(&self, x: &[F], y: &[F]) -> Option<F> {
        eval_form(&self.basis, &self.omega, x, y)
    }

    /// `Rad(ω_r)` as a subspace of `g`.
    pub fn radical(&self) -> Subspace<F> {
        radical(self.space.ambient_dim(), &self.basis, &self.omega)
    }
}

fn coordinates_in<F: Field>(basis: &[Vec<F>], x: &[F]) -> Option<Vec<F>> {
    let n = x.len();
    let mat = Matrix::from_columns(basis, n);
    linalg::solve(&mat, x).ok().filter(|c| mat.mul_vec(c) == x)
}

fn eval_form<F: Field>(basis: &[Vec<F>], omega: &Matrix<F>, x: &[F], y: &[F]) -> Option<F> {
    let cx = coordinates_in(basis, x)?;
    let cy = coordinates_in(basis, y)?;
    Some(linalg::dot(&cx, &omega.mul_vec(&cy)))
}

fn radical<F: Field>(n: usize, basis: &[Vec<F>], omega: &Matrix<F>) -> Subspace<F> {
    let ker = linalg::kernel(omega);
    let vectors: Vec<Vec<F>> = ker
        .basis()
        .iter()
        .map(|c| linalg::combine(c, basis, n))
        .collect();
    Subspace::span(n, &vectors)
}

/// `a_r = q⁻¹(Im r_#)`; checks that it is a subalgebra containing `h`.
pub fn leaf_algebra<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> Result<Subspace<F>> {
    if !poisson::is_r_matrix(iso, r) {
        return Err(Error::NotAnRMatrix);
    }
    let basis = leaf_basis(iso, r);
    let space = Subspace::span(iso.dim_g(), &basis);
    if !is_closed(iso, &basis, &space) {
        return Err(Error::ClosureFailure("a_r is not closed under the bracket".into()));
    }
    if !iso.h().is_subspace_of(&space)? {
        return Err(Error::ClosureFailure("a_r does not contain h".into()));
    }
    Ok(space)
}

fn leaf_basis<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> Vec<Vec<F>> {
    let mut basis = iso.h_basis().to_vec();
    basis.extend(r.image().basis().iter().map(|v| iso.section(v)));
    basis
}

fn is_closed<F: Field>(iso: &IsotropyModel<F>, basis: &[Vec<F>], space: &Subspace<F>) -> bool {
    let g = iso.algebra();
    basis.iter().enumerate().all(|(i, x)| {
        basis[i + 1..]
            .iter()
            .all(|y| space.contains(&g.bracket(x, y)))
    })
}

/// `ω_r(x, y) = ⟨ξ̄, q x⟩` where `r_# ξ̄ = q y`.
fn omega_value<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>, x: &[F], y: &[F]) -> Result<F> {
    let qy = iso.project(y);
    let xi = linalg::solve(r.r_mat(), &qy).map_err(|_| Error::ClosureFailure("q(y) is not in Im r_#".into()))?;
    Ok(linalg::dot(&xi, &iso.project(x)))
}

/// Builds `(a_r, ω_r)` and verifies well-definedness, the cocycle identity,
/// `Rad(ω_r) = h` and infinitesimal `h`-invariance of `ω_r`.
pub fn leaf_cocycle<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> Result<LeafData<F>> {
    let space = leaf_algebra(iso, r)?;
    let basis = leaf_basis(iso, r);
    let d = basis.len();
    let kernel = r.kernel();
    let mut omega = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let value = omega_value(iso, r, &basis[i], &basis[j])?;
            let qx = iso.project(&basis[i]);
            let qy = iso.project(&basis[j]);
            let xi = linalg::solve(r.r_mat(), &qy)?;
            for k in kernel.basis() {
                if linalg::dot(&linalg::add(&xi, k), &qx) != value {
                    return Err(Error::ClosureFailure("ω_r depends on the choice of preimage".into()));
                }
            }
            omega[(i, j)] = value;
        }
    }
    if !omega.is_skew() {
        return Err(Error::ClosureFailure("ω_r is not skew".into()));
    }
    let data = LeafData {
        basis,
        h_dim: iso.dim_h(),
        space,
        omega,
    };
    check_cocycle(iso, &data.basis, &data.omega)?;
    if data.radical() != *iso.h() {
        return Err(Error::RadicalMismatch);
    }
    if !form_is_invariant(iso, &data.basis, &data.omega) {
        return Err(Error::ClosureFailure("ω_r is not h-invariant".into()));
    }
    Ok(data)
}

fn check_cocycle<F: Field>(iso: &IsotropyModel<F>, basis: &[Vec<F>], omega: &Matrix<F>) -> Result<()> {
    let g = iso.algebra();
    let d = basis.len();
    let w = |x: &[F], y: &[F]| eval_form(basis, omega, x, y).ok_or(Error::NotClosed);
    for i in 0..d {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                let (x, y, z) = (&basis[i], &basis[j], &basis[k]);
                let sum = w(&g.bracket(x, y), z)? + w(&g.bracket(y, z), x)? + w(&g.bracket(z, x), y)?;
                if !sum.is_zero() {
                    return Err(Error::NotACocycle((i, j, k)));
                }
            }
        }
    }
    Ok(())
}

/// `ω([u, x], y) + ω(x, [u, y]) = 0` for `u` in `h`, and `ω(Ax, Ay) = ω(x, y)`
/// for the generators.
fn form_is_invariant<F: Field>(iso: &IsotropyModel<F>, basis: &[Vec<F>], omega: &Matrix<F>) -> bool {
    let g = iso.algebra();
    let w = |x: &[F], y: &[F]| eval_form(basis, omega, x, y);
    let infinitesimal = iso.h_basis().iter().all(|u| {
        basis.iter().all(|x| {
            basis.iter().all(|y| {
                match (w(&g.bracket(u, x), y), w(x, &g.bracket(u, y))) {
                    (Some(a), Some(b)) => (a + b).is_zero(),
                    _ => false,
                }
            })
        })
    });
    infinitesimal
        && iso.generators().iter().all(|a| {
            basis.iter().all(|x| {
                basis.iter().all(|y| w(&a.mul_vec(x), &a.mul_vec(y)) == w(x, y))
            })
        })
}

/// Inverse construction: `r_# = ι ∘ ω̄_#⁻¹ ∘ ι*` from a subalgebra `a ⊇ h` and a
/// 2-cocycle on `a` with radical `h`.
///
/// `omega[(i, j)] = ω(a_i, a_j)` on the given basis of `a`.
pub fn reconstruct_r<F: Field>(iso: &IsotropyModel<F>, a_basis: &[Vec<F>], omega: &Matrix<F>) -> Result<Bivector<F>> {
    let n = iso.dim_g();
    let d = a_basis.len();
    if let Some(v) = a_basis.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if omega.rows() != d || omega.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: omega.rows(),
        });
    }
    if Matrix::from_columns(a_basis, n).rank() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: Matrix::from_columns(a_basis, n).rank(),
        });
    }
    if !omega.is_skew() {
        return Err(Error::NotSkew);
    }
    let space = Subspace::span(n, a_basis);
    if !is_closed(iso, a_basis, &space) {
        return Err(Error::NotClosed);
    }
    check_cocycle(iso, a_basis, omega)?;
    if radical(n, a_basis, omega) != *iso.h() {
        return Err(Error::RadicalMismatch);
    }
    let stable = iso
        .h_basis()
        .iter()
        .all(|u| a_basis.iter().all(|x| space.contains(&iso.algebra().bracket(u, x))))
        && iso
            .generators()
            .iter()
            .all(|a| a_basis.iter().all(|x| space.contains(&a.mul_vec(x))));
    if !stable || !form_is_invariant(iso, a_basis, omega) {
        return Err(Error::NotInvariant);
    }

    let projected: Vec<Vec<F>> = a_basis.iter().map(|x| iso.project(x)).collect();
    let image = Subspace::span(iso.codim(), &projected);
    let wm = image.basis_matrix().transpose();
    let proj_mat = Matrix::from_columns(&projected, iso.codim());
    let lifts: Vec<Vec<F>> = image
        .basis()
        .iter()
        .map(|w| {
            let c = linalg::solve(&proj_mat, w).expect("image vector has a preimage in a");
            linalg::combine(&c, a_basis, n)
        })
        .collect();
    let rho = lifts.len();
    let omega_bar = Matrix::from_fn(rho, rho, |i, j| {
        eval_form(a_basis, omega, &lifts[i], &lifts[j]).expect("lift lies in a")
    });
    let inv = omega_bar.inverse().ok_or(Error::RadicalMismatch)?;
    let r = Bivector::from_matrix(&(&wm * &inv) * &wm.transpose())?;
    if !poisson::is_invariant(iso, &r) || !poisson::is_r_matrix(iso, &r) {
        return Err(Error::ClosureFailure("reconstructed bivector is not an invariant r-matrix".into()));
    }
    Ok(r)
}

/// `a_r = h ⊕ Im(r_#)` with `Im(r_#)` realized inside the complement.
#[derive(Clone, Debug)]
pub struct LeafDecomposition<F: Field> {
    pub h_part: Subspace<F>,
    pub im_part: Subspace<F>,
    /// `[h, Im] ⊆ Im`.
    pub reductive: bool,
    /// Reductive and `[Im, Im] ⊆ h`.
    pub symmetric: bool,
}

pub fn leaf_decomposition<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> Result<LeafDecomposition<F>> {
    if !poisson::is_r_matrix(iso, r) {
        return Err(Error::NotAnRMatrix);
    }
    let g = iso.algebra();
    let n = iso.dim_g();
    let im: Vec<Vec<F>> = r.image().basis().iter().map(|v| iso.section(v)).collect();
    let im_part = Subspace::span(n, &im);
    let reductive = iso
        .h_basis()
        .iter()
        .all(|u| im.iter().all(|x| im_part.contains(&g.bracket(u, x))));
    let symmetric = reductive && im.iter().all(|x| im.iter().all(|y| iso.h().contains(&g.bracket(x, y))));
    Ok(LeafDecomposition {
        h_part: iso.h().clone(),
        im_part,
        reductive,
        symmetric,
    })
}

/// The pair `(W, ω)` of a reductive pair: `W = Im(r_#) ⊆ m` with `ω_r` restricted.
#[derive(Clone, Debug)]
pub struct WOmega<F: Field> {
    /// Basis of `W` inside `g`.
    pub basis: Vec<Vec<F>>,
    pub space: Subspace<F>,
    /// `omega[(i, j)] = ω(w_i, w_j)`.
    pub omega: Matrix<F>,
}

/// Extracts `(W, ω)` and checks `[W, W]_m ⊆ W` and
/// `ω([x,y]_m, z) + ω([z,x]_m, y) + ω([y,z]_m, x) = 0`.
pub fn w_omega_pair<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> Result<WOmega<F>> {
    if !reductive::check_reductive(iso) {
        return Err(Error::NotReductive);
    }
    if !poisson::is_r_matrix(iso, r) {
        return Err(Error::NotAnRMatrix);
    }
    let g = iso.algebra();
    let n = iso.dim_g();
    let basis: Vec<Vec<F>> = r.image().basis().iter().map(|v| iso.section(v)).collect();
    let space = Subspace::span(n, &basis);
    let d = basis.len();
    let mut omega = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            omega[(i, j)] = omega_value(iso, r, &basis[i], &basis[j])?;
        }
    }
    let m_part = |x: &[F], y: &[F]| iso.section(&iso.project(&g.bracket(x, y)));
    for x in &basis {
        for y in &basis {
            if !space.contains(&m_part(x, y)) {
                return Err(Error::ClosureFailure("[W, W]_m is not contained in W".into()));
            }
        }
    }
    let w = |x: &[F], y: &[F]| eval_form(&basis, &omega, x, y).ok_or(Error::NotClosed);
    for i in 0..d {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                let (x, y, z) = (&basis[i], &basis[j], &basis[k]);
                let sum = w(&m_part(x, y), z)? + w(&m_part(z, x), y)? + w(&m_part(y, z), x)?;
                if !sum.is_zero() {
                    return Err(Error::NotACocycle((i, j, k)));
                }
            }
        }
    }
    Ok(WOmega { basis, space, omega })
}
