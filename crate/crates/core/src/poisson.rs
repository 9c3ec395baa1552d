//! Bivectors on `g/h`, their lifts, the bracket on `h°` and the
//! Yang–Baxter tensor `⟦r, r⟧`.
//!
//! A bivector `r` is stored through its sharp map: `r_mat · α = α^#`, so
//! `r(α, β) = ⟨β, α^#⟩ = βᵀ r_mat α`. The bivector `x ∧ y` has
//! `r_mat = y xᵀ − x yᵀ`.
//!
//! The bracket on `h°` is
//! `⟨[η, ξ], u⟩ = ⟨η, [ξ^#, u]⟩ − ⟨ξ, [η^#, u]⟩`, which is the sign for which
//! `⟨ε, [η, ξ]^# − [η^#, ξ^#]⟩` equals the cyclic Schouten sum.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariants;
use crate::isotropy::IsotropyModel;
use crate::lie::{self, LieAlgebra};
use crate::linalg::{self, Matrix, Subspace};

/// A skew bivector on `g/h` in quotient coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bivector<F: Field> {
    r_mat: Matrix<F>,
}

impl<F: Field> Bivector<F> {
    pub fn from_matrix(r_mat: Matrix<F>) -> Result<Self> {
        if !r_mat.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(Self { r_mat })
    }

    pub fn zero(m: usize) -> Self {
        Self {
            r_mat: Matrix::zeros(m, m),
        }
    }

    /// `x ∧ y`.
    pub fn wedge(x: &[F], y: &[F]) -> Self {
        assert_eq!(x.len(), y.len());
        let m = x.len();
        Self {
            r_mat: Matrix::from_fn(m, m, |i, j| y[i].clone() * x[j].clone() - x[i].clone() * y[j].clone()),
        }
    }

    /// From coordinates on the basis `e_i ∧ e_j`, `i < j`, in lexicographic order.
    pub fn from_wedge(m: usize, coords: &[F]) -> Self {
        assert_eq!(coords.len(), lie::wedge2_dim(m));
        let mut r_mat = Matrix::zeros(m, m);
        for ((i, j), c) in lie::wedge2_indices(m).into_iter().zip(coords) {
            r_mat[(j, i)] = c.clone();
            r_mat[(i, j)] = -c.clone();
        }
        Self { r_mat }
    }

    pub fn to_wedge(&self) -> Vec<F> {
        lie::wedge2_indices(self.dim())
            .into_iter()
            .map(|(i, j)| self.r_mat[(j, i)].clone())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.r_mat.rows()
    }

    pub fn r_mat(&self) -> &Matrix<F> {
        &self.r_mat
    }

    pub fn is_zero(&self) -> bool {
        self.r_mat.is_zero()
    }

    pub fn sharp(&self, alpha: &[F]) -> Vec<F> {
        self.r_mat.mul_vec(alpha)
    }

    /// `r(α, β)`.
    pub fn eval(&self, alpha: &[F], beta: &[F]) -> F {
        linalg::dot(beta, &self.sharp(alpha))
    }

    pub fn rank(&self) -> usize {
        self.r_mat.rank()
    }

    /// `Im(r_#)` in quotient coordinates.
    pub fn image(&self) -> Subspace<F> {
        self.r_mat.column_space()
    }

    /// `ker(r_#)` in dual quotient coordinates.
    pub fn kernel(&self) -> Subspace<F> {
        linalg::kernel(&self.r_mat)
    }

    /// The same bivector after the change of quotient coordinates `t`.
    pub fn transform(&self, t: &Matrix<F>) -> Self {
        Self {
            r_mat: &(t * &self.r_mat) * &t.transpose(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            r_mat: &self.r_mat + &other.r_mat,
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        Self {
            r_mat: self.r_mat.scale(k),
        }
    }
}

/// A skew bivector `r̃` on `g` with `∧²q(r̃) = r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lift<F: Field> {
    rt_mat: Matrix<F>,
}

impl<F: Field> Lift<F> {
    /// `r̃ = ∧²s(r)`.
    pub fn canonical(iso: &IsotropyModel<F>, r: &Bivector<F>) -> Self {
        Self {
            rt_mat: &(iso.s() * r.r_mat()) * &iso.s().transpose(),
        }
    }

    /// Checks that `rt_mat` is skew and projects onto `r`.
    pub fn new(iso: &IsotropyModel<F>, r: &Bivector<F>, rt_mat: Matrix<F>) -> Result<Self> {
        if !rt_mat.is_skew() || rt_mat.rows() != iso.dim_g() {
            return Err(Error::NotSkew);
        }
        let projected = &(iso.q() * &rt_mat) * &iso.q().transpose();
        if &projected != r.r_mat() {
            return Err(Error::ClosureFailure("lift does not project onto the bivector".into()));
        }
        Ok(Self { rt_mat })
    }

    /// `r̃ + u ∧ x` for `u ∈ h`, which is again a lift.
    pub fn perturbed(&self, iso: &IsotropyModel<F>, u: &[F], x: &[F]) -> Result<Self> {
        if !iso.h().contains(u) {
            return Err(Error::NotInH);
        }
        let w = Bivector::wedge(u, x);
        Ok(Self {
            rt_mat: &self.rt_mat + w.r_mat(),
        })
    }

    pub fn rt_mat(&self) -> &Matrix<F> {
        &self.rt_mat
    }

    /// `η^#` with `⟨ξ, η^#⟩ = r̃(η, ξ)`.
    pub fn sharp(&self, eta: &[F]) -> Vec<F> {
        self.rt_mat.mul_vec(eta)
    }
}

/// `[η, ξ]_r̃` for `η, ξ ∈ h°`.
pub fn hcirc_bracket<F: Field>(iso: &IsotropyModel<F>, lift: &Lift<F>, eta: &[F], xi: &[F]) -> Result<Vec<F>> {
    if !iso.ann().contains(eta) || !iso.ann().contains(xi) {
        return Err(Error::NotInAnnihilator);
    }
    Ok(raw_bracket(iso.algebra(), lift, eta, xi))
}

fn raw_bracket<F: Field>(alg: &LieAlgebra<F>, lift: &Lift<F>, eta: &[F], xi: &[F]) -> Vec<F> {
    let a = alg.ad_matrix(&lift.sharp(xi)).transpose_mul_vec(eta);
    let b = alg.ad_matrix(&lift.sharp(eta)).transpose_mul_vec(xi);
    linalg::sub(&a, &b)
}

/// The bracket transported to `(g/h)*` through `α ↦ qᵀα`.
pub fn quotient_bracket<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>, alpha: &[F], beta: &[F]) -> Vec<F> {
    let lift = Lift::canonical(iso, r);
    let eta = iso.covector_to_ann(alpha);
    let xi = iso.covector_to_ann(beta);
    iso.s().transpose_mul_vec(&raw_bracket(iso.algebra(), &lift, &eta, &xi))
}

/// A trilinear form on `(g/h)*`, stored on all index triples of the basis
/// `qᵀe_a` of `h°`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YBTensor<F> {
    m: usize,
    values: Vec<F>,
}

impl<F: Field> YBTensor<F> {
    fn from_fn(m: usize, mut f: impl FnMut(usize, usize, usize) -> F) -> Self {
        let mut values = Vec::with_capacity(m * m * m);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    values.push(f(a, b, c));
                }
            }
        }
        Self { m, values }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &F {
        &self.values[(a * self.m + b) * self.m + c]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        let m = self.m;
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|c| {
                    let v = self.get(a, b, c);
                    *v == -self.get(b, a, c).clone() && *v == -self.get(a, c, b).clone()
                })
            })
        })
    }

    /// Nonzero entries with strictly increasing indices.
    pub fn nonzero_entries(&self) -> Vec<((usize, usize, usize), F)> {
        let mut out = Vec::new();
        for a in 0..self.m {
            for b in (a + 1)..self.m {
                for c in (b + 1)..self.m {
                    let v = self.get(a, b, c);
                    if !v.is_zero() {
                        out.push(((a, b, c), v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Evaluates on arbitrary covectors in quotient coordinates.
    pub fn eval(&self, x: &[F], y: &[F], z: &[F]) -> F {
        let m = self.m;
        let mut acc = F::zero();
        for a in (0..m).filter(|&a| !x[a].is_zero()) {
            for b in (0..m).filter(|&b| !y[b].is_zero()) {
                let xy = x[a].clone() * y[b].clone();
                for c in (0..m).filter(|&c| !z[c].is_zero()) {
                    acc = acc + xy.clone() * z[c].clone() * self.get(a, b, c).clone();
                }
            }
        }
        acc
    }
}

fn ann_basis<F: Field>(iso: &IsotropyModel<F>) -> Vec<Vec<F>> {
    (0..iso.codim()).map(|a| iso.q().row(a).to_vec()).collect()
}

/// `⟦r, r⟧(η, ξ, ε) = ⟨ε, [η, ξ]^# − [η^#, ξ^#]⟩` computed with `lift`.
pub fn yang_baxter_tensor_with<F: Field>(iso: &IsotropyModel<F>, lift: &Lift<F>) -> YBTensor<F> {
    let alg = iso.algebra();
    let basis = ann_basis(iso);
    let sharps: Vec<Vec<F>> = basis.iter().map(|e| lift.sharp(e)).collect();
    let m = basis.len();
    let mut diffs = vec![Vec::new(); m * m];
    for a in 0..m {
        for b in 0..m {
            let br = lift.sharp(&raw_bracket(alg, lift, &basis[a], &basis[b]));
            diffs[a * m + b] = linalg::sub(&br, &alg.bracket(&sharps[a], &sharps[b]));
        }
    }
    YBTensor::from_fn(m, |a, b, c| linalg::dot(&basis[c], &diffs[a * m + b]))
}

/// `⟦r, r⟧` through the canonical lift.
pub fn yang_baxter_tensor<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> YBTensor<F> {
    yang_baxter_tensor_with(iso, &Lift::canonical(iso, r))
}

/// The cyclic Schouten sum
/// `−⟨η, [ξ^#, ε^#]⟩ − ⟨ξ, [ε^#, η^#]⟩ − ⟨ε, [η^#, ξ^#]⟩`.
pub fn schouten_oracle<F: Field>(iso: &IsotropyModel<F>, lift: &Lift<F>) -> YBTensor<F> {
    let alg = iso.algebra();
    let basis = ann_basis(iso);
    let sharps: Vec<Vec<F>> = basis.iter().map(|e| lift.sharp(e)).collect();
    let m = basis.len();
    let mut brackets = vec![Vec::new(); m * m];
    for a in 0..m {
        for b in 0..m {
            brackets[a * m + b] = alg.bracket(&sharps[a], &sharps[b]);
        }
    }
    let pair = |x: usize, y: usize, z: usize| linalg::dot(&basis[x], &brackets[y * m + z]);
    YBTensor::from_fn(m, |a, b, c| -(pair(a, b, c) + pair(b, c, a) + pair(c, a, b)))
}

/// Whether `⟦r, r⟧` vanishes identically.
pub fn is_r_matrix<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> bool {
    yang_baxter_tensor(iso, r).is_zero()
}

/// Whether `⟦r, r⟧` vanishes on triples of invariant covectors.
pub fn is_r_matrix_on_fixed<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> bool {
    let t = yang_baxter_tensor(iso, r);
    let fixed = invariants::fixed_quotient_covectors(iso);
    let b = fixed.basis();
    b.iter()
        .all(|x| b.iter().all(|y| b.iter().all(|z| t.eval(x, y, z).is_zero())))
}

/// Whether `r` is invariant under `h` and the discrete generators.
pub fn is_invariant<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> bool {
    let rm = r.r_mat();
    iso.infinitesimal_operators()
        .iter()
        .all(|d| (&(d * rm) + &(rm * &d.transpose())).is_zero())
        && iso
            .discrete_operators()
            .iter()
            .all(|a| &(&(a * rm) * &a.transpose()) == rm)
}

/// Checks `(ad̄_u^* α)^# = −ad̄_u(α^#)` on the dual basis, with `ad̄_u^* α = α ∘ ad̄_u`.
pub fn satisfies_sharp_equivariance<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> bool {
    let m = iso.codim();
    iso.infinitesimal_operators().iter().all(|d| {
        (0..m).all(|a| {
            let alpha = linalg::unit::<F>(m, a);
            let lhs = r.sharp(&d.transpose_mul_vec(&alpha));
            let rhs = d.mul_vec(&r.sharp(&alpha));
            linalg::is_zero_vec(&linalg::add(&lhs, &rhs))
        })
    })
}

/// The Lie algebra `((g/h)*)^H` with bracket `[·,·]_r`.
#[derive(Clone, Debug)]
pub struct FixedSpaceAlgebra<F: Field> {
    /// Basis of the invariant covectors in dual quotient coordinates.
    pub basis: Vec<Vec<F>>,
    /// `[b_i, b_j] = Σ_k constants[(i*d + j)*d + k] b_k`.
    pub algebra: LieAlgebra<F>,
}

/// Computes the bracket on invariant covectors, checks the Jacobi identity
/// and that `r_#` intertwines it with the bracket of `(g/h)^H`.
pub fn fixed_space_lie_algebra<F: Field>(iso: &IsotropyModel<F>, r: &Bivector<F>) -> Result<FixedSpaceAlgebra<F>> {
    if !is_r_matrix(iso, r) {
        return Err(Error::NotAnRMatrix);
    }
    let fixed = invariants::fixed_quotient_covectors(iso);
    let basis = fixed.basis().to_vec();
    let d = basis.len();
    let mut constants = Vec::with_capacity(d * d * d);
    for a in 0..d {
        for b in 0..d {
            let br = quotient_bracket(iso, r, &basis[a], &basis[b]);
            let coords = fixed
                .coordinates(&br)
                .ok_or_else(|| Error::ClosureFailure("bracket leaves the invariant covectors".into()))?;
            constants.extend(coords);
        }
    }
    let labels = (0..d).map(|i| format!("f{}", i + 1)).collect();
    let algebra = LieAlgebra::from_constants(labels, constants);
    let report = algebra.validate();
    if let Some(&t) = report.jacobi.first() {
        return Err(Error::JacobiFailure(t));
    }
    if !report.antisymmetry.is_empty() {
        return Err(Error::ClosureFailure("bracket on invariant covectors is not antisymmetric".into()));
    }
    let g = iso.algebra();
    for a in 0..d {
        for b in 0..d {
            let lhs = r.sharp(&quotient_bracket(iso, r, &basis[a], &basis[b]));
            let x = iso.section(&r.sharp(&basis[a]));
            let y = iso.section(&r.sharp(&basis[b]));
            let rhs = iso.project(&g.bracket(&x, &y));
            if lhs != rhs {
                return Err(Error::ClosureFailure("r_# is not a Lie algebra morphism".into()));
            }
        }
    }
    Ok(FixedSpaceAlgebra { basis, algebra })
}
