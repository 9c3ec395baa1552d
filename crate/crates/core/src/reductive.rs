//! Reductive pairs `g = h ⊕ m` and invariant contravariant connections.
//!
//! Covectors on `m` use dual quotient coordinates. For `ξ ∈ m*` write
//! `ξ^# = r_# ξ ∈ m` and `l_{ξ^#} = [ξ^#, ·]_m`, whose matrix is
//! `L_ξ = q ad_{s ξ^#} s`. A connection is a bilinear `b: m* × m* → m*`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariants;
use crate::isotropy::IsotropyModel;
use crate::linalg::{self, Matrix, Subspace};
use crate::poisson::{self, Bivector};

/// Whether `[h, m] ⊆ m` for the declared complement.
pub fn check_reductive<F: Field>(iso: &IsotropyModel<F>) -> bool {
    let g = iso.algebra();
    let m = iso.complement_space();
    iso.h_basis()
        .iter()
        .all(|u| iso.complement().iter().all(|x| m.contains(&g.bracket(u, x))))
}

fn brackets_in_h<F: Field>(iso: &IsotropyModel<F>) -> bool {
    let g = iso.algebra();
    let c = iso.complement();
    c.iter()
        .enumerate()
        .all(|(i, x)| c[i + 1..].iter().all(|y| iso.h().contains(&g.bracket(x, y))))
}

/// An isotropy model whose complement is reductive.
#[derive(Clone, Debug)]
pub struct ReductivePair<F: Field> {
    iso: IsotropyModel<F>,
    symmetric: bool,
}

impl<F: Field> ReductivePair<F> {
    pub fn new(iso: IsotropyModel<F>) -> Result<Self> {
        if !check_reductive(&iso) {
            return Err(Error::NotReductive);
        }
        let symmetric = brackets_in_h(&iso);
        Ok(Self { iso, symmetric })
    }

    pub fn iso(&self) -> &IsotropyModel<F> {
        &self.iso
    }

    /// Whether `[m, m] ⊆ h`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn dim_m(&self) -> usize {
        self.iso.codim()
    }

    /// `l_x = [x, ·]_m` for `x ∈ m` in quotient coordinates.
    fn l_matrix(&self, x: &[F]) -> Matrix<F> {
        let iso = &self.iso;
        &(iso.q() * &iso.algebra().ad_matrix(&iso.section(x))) * iso.s()
    }

    /// `[x, y]_m` for `x, y ∈ m` in quotient coordinates.
    pub fn m_bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let iso = &self.iso;
        iso.project(&iso.algebra().bracket(&iso.section(x), &iso.section(y)))
    }

    /// `[x, y]_h` for `x, y ∈ m` in quotient coordinates, as an element of `g`.
    pub fn h_bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let iso = &self.iso;
        iso.h_part(&iso.algebra().bracket(&iso.section(x), &iso.section(y)))
    }
}

/// Whether `[m, m] ⊆ h`; `false` for non-reductive complements.
pub fn is_symmetric<F: Field>(iso: &IsotropyModel<F>) -> bool {
    check_reductive(iso) && brackets_in_h(iso)
}

/// `[α, β]_r` on `m*` computed from the extensions by zero on `h`:
/// `⟨[α, β], u⟩ = ⟨α̃, [β^#, u]⟩ − ⟨β̃, [α^#, u]⟩` for `u ∈ m`.
pub fn mstar_bracket<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>, alpha: &[F], beta: &[F]) -> Vec<F> {
    let iso = pair.iso();
    let g = iso.algebra();
    let at = iso.covector_to_ann(alpha);
    let bt = iso.covector_to_ann(beta);
    let a_sharp = iso.section(&r.sharp(alpha));
    let b_sharp = iso.section(&r.sharp(beta));
    iso.complement()
        .iter()
        .map(|u| linalg::dot(&at, &g.bracket(&b_sharp, u)) - linalg::dot(&bt, &g.bracket(&a_sharp, u)))
        .collect()
}

/// Whether `[α, β]_r^# = [α^#, β^#]_m` on all basis pairs.
pub fn check_reductive_r_matrix<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>) -> bool {
    let m = pair.dim_m();
    (0..m).all(|a| {
        (a + 1..m).all(|b| {
            let ea = linalg::unit(m, a);
            let eb = linalg::unit(m, b);
            r.sharp(&mstar_bracket(pair, r, &ea, &eb)) == pair.m_bracket(&r.sharp(&ea), &r.sharp(&eb))
        })
    })
}

/// `η ∘ l_{ξ^#} − ξ ∘ l_{η^#} = [η, ξ]_r` on all basis pairs.
pub fn canonical_identity_holds<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>) -> bool {
    let m = pair.dim_m();
    let ls = l_matrices(pair, r);
    (0..m).all(|a| {
        (0..m).all(|b| {
            let ea = linalg::unit(m, a);
            let eb = linalg::unit(m, b);
            let lhs = linalg::sub(&ls[b].transpose_mul_vec(&ea), &ls[a].transpose_mul_vec(&eb));
            lhs == mstar_bracket(pair, r, &ea, &eb)
        })
    })
}

/// `[ad̄*_u η, ξ]_r + [η, ad̄*_u ξ]_r = ad̄*_u [η, ξ]_r` for `u` in `h`, with
/// `ad̄*_u = −ad̄_uᵀ`.
pub fn bracket_is_equivariant<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>) -> bool {
    let m = pair.dim_m();
    pair.iso().infinitesimal_operators().iter().all(|d| {
        let dual = -&d.transpose();
        (0..m).all(|a| {
            (0..m).all(|b| {
                let ea = linalg::unit(m, a);
                let eb = linalg::unit(m, b);
                let lhs = linalg::add(
                    &mstar_bracket(pair, r, &dual.mul_vec(&ea), &eb),
                    &mstar_bracket(pair, r, &ea, &dual.mul_vec(&eb)),
                );
                lhs == dual.mul_vec(&mstar_bracket(pair, r, &ea, &eb))
            })
        })
    })
}

fn l_matrices<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>) -> Vec<Matrix<F>> {
    let m = pair.dim_m();
    (0..m)
        .map(|a| pair.l_matrix(&r.sharp(&linalg::unit(m, a))))
        .collect()
}

/// A bilinear map `b: m* × m* → m*` stored on basis pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConnectionMap<F: Field> {
    m: usize,
    values: Vec<F>,
}

impl<F: Field> ConnectionMap<F> {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            values: vec![F::zero(); m * m * m],
        }
    }

    /// Builds from `f(a, b) = b(e_a, e_b)`.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> Vec<F>) -> Self {
        let mut values = Vec::with_capacity(m * m * m);
        for a in 0..m {
            for b in 0..m {
                let v = f(a, b);
                assert_eq!(v.len(), m);
                values.extend(v);
            }
        }
        Self { m, values }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// `b(e_a, e_b)`.
    pub fn get(&self, a: usize, b: usize) -> &[F] {
        let start = (a * self.m + b) * self.m;
        &self.values[start..start + self.m]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn eval(&self, eta: &[F], xi: &[F]) -> Vec<F> {
        let m = self.m;
        let mut out = vec![F::zero(); m];
        for a in (0..m).filter(|&a| !eta[a].is_zero()) {
            for b in (0..m).filter(|&b| !xi[b].is_zero()) {
                let w = eta[a].clone() * xi[b].clone();
                for (o, v) in out.iter_mut().zip(self.get(a, b)) {
                    *o = o.clone() + w.clone() * v.clone();
                }
            }
        }
        out
    }

    /// The operator `b_η: γ ↦ b(η, γ)`.
    pub fn operator(&self, eta: &[F]) -> Matrix<F> {
        let m = self.m;
        let cols: Vec<Vec<F>> = (0..m).map(|c| self.eval(eta, &linalg::unit(m, c))).collect();
        Matrix::from_columns(&cols, m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionKind {
    /// `b = 0`.
    Canonical,
    /// `b(η, ξ) = ½[η, ξ]_r`.
    Natural,
    /// `b(η, ξ) = −ξ ∘ l_{η^#}`.
    LeftSymmetric,
    /// `b(η, ξ) = ⅓([η, ξ]_r − ξ ∘ l_{η^#})`.
    Fedosov,
}

impl ConnectionKind {
    pub const ALL: [ConnectionKind; 4] = [Self::Canonical, Self::Natural, Self::LeftSymmetric, Self::Fedosov];

    pub fn name(self) -> &'static str {
        match self {
            Self::Canonical => "canonical",
            Self::Natural => "natural",
            Self::LeftSymmetric => "left-symmetric",
            Self::Fedosov => "fedosov",
        }
    }
}

impl fmt::Display for ConnectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConnectionKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "canonical" => Ok(Self::Canonical),
            "natural" => Ok(Self::Natural),
            "left-symmetric" | "left_symmetric" => Ok(Self::LeftSymmetric),
            "fedosov" => Ok(Self::Fedosov),
            other => Err(format!("unknown connection kind `{other}`")),
        }
    }
}

pub fn build_connection<F: Field>(kind: ConnectionKind, pair: &ReductivePair<F>, r: &Bivector<F>) -> ConnectionMap<F> {
    let m = pair.dim_m();
    if kind == ConnectionKind::Canonical {
        return ConnectionMap::zero(m);
    }
    let ls = l_matrices(pair, r);
    let half = F::ratio(1, 2);
    let third = F::ratio(1, 3);
    ConnectionMap::from_fn(m, |a, b| {
        let ea = linalg::unit(m, a);
        let eb = linalg::unit(m, b);
        let lie = || mstar_bracket(pair, r, &ea, &eb);
        let left = || ls[a].transpose_mul_vec(&eb);
        match kind {
            ConnectionKind::Canonical => unreachable!(),
            ConnectionKind::Natural => linalg::scale(&half, &lie()),
            ConnectionKind::LeftSymmetric => linalg::scale(&-F::one(), &left()),
            ConnectionKind::Fedosov => linalg::scale(&third, &linalg::sub(&lie(), &left())),
        }
    })
}

/// `T(η, ξ) = b(η, ξ) − b(ξ, η) − [η, ξ]_r`.
pub fn torsion<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>, b: &ConnectionMap<F>, eta: &[F], xi: &[F]) -> Vec<F> {
    let t = linalg::sub(&b.eval(eta, xi), &b.eval(xi, eta));
    linalg::sub(&t, &mstar_bracket(pair, r, eta, xi))
}

/// `R(η, ξ) = [b_η, b_ξ] − b_{[η, ξ]_r}` as a matrix on `m*`.
pub fn curvature<F: Field>(
    pair: &ReductivePair<F>,
    r: &Bivector<F>,
    b: &ConnectionMap<F>,
    eta: &[F],
    xi: &[F],
) -> Matrix<F> {
    let be = b.operator(eta);
    let bx = b.operator(xi);
    let comm = &(&be * &bx) - &(&bx * &be);
    &comm - &b.operator(&mstar_bracket(pair, r, eta, xi))
}

fn basis_pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |a| (a + 1..m).map(move |b| (a, b)))
}

/// Torsion on all basis pairs `a < b`.
pub fn torsion_table<F: Field>(
    pair: &ReductivePair<F>,
    r: &Bivector<F>,
    b: &ConnectionMap<F>,
) -> Vec<((usize, usize), Vec<F>)> {
    let m = pair.dim_m();
    basis_pairs(m)
        .map(|(i, j)| ((i, j), torsion(pair, r, b, &linalg::unit(m, i), &linalg::unit(m, j))))
        .collect()
}

pub fn torsion_is_zero<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>, b: &ConnectionMap<F>) -> bool {
    torsion_table(pair, r, b).iter().all(|(_, t)| linalg::is_zero_vec(t))
}

/// For each basis pair `a < b`, whether `R(e_a, e_b) = 0`.
pub fn curvature_table<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>, b: &ConnectionMap<F>) -> Vec<((usize, usize), bool)> {
    let m = pair.dim_m();
    basis_pairs(m)
        .map(|(i, j)| ((i, j), curvature(pair, r, b, &linalg::unit(m, i), &linalg::unit(m, j)).is_zero()))
        .collect()
}

pub fn curvature_is_zero<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>, b: &ConnectionMap<F>) -> bool {
    curvature_table(pair, r, b).iter().all(|(_, z)| *z)
}

/// First basis triple violating `r(b(η, ξ), ε) + r(ξ, b(η, ε)) = 0`.
pub fn compat_violation<F: Field>(r: &Bivector<F>, b: &ConnectionMap<F>) -> Option<(usize, usize, usize)> {
    let m = b.dim();
    for a in 0..m {
        for c in 0..m {
            for e in 0..m {
                let ec = linalg::unit(m, c);
                let ee = linalg::unit(m, e);
                let v = r.eval(b.get(a, c), &ee) + r.eval(&ec, b.get(a, e));
                if !v.is_zero() {
                    return Some((a, c, e));
                }
            }
        }
    }
    None
}

pub fn poisson_compat<F: Field>(r: &Bivector<F>, b: &ConnectionMap<F>) -> bool {
    compat_violation(r, b).is_none()
}

/// Infinitesimal invariance `b(D*η, ξ) + b(η, D*ξ) = D* b(η, ξ)` with
/// `D* = −ad̄_uᵀ`, and `b(Āᵀη, Āᵀξ) = Āᵀ b(η, ξ)` for the generators.
pub fn ad_invariance_check<F: Field>(b: &ConnectionMap<F>, pair: &ReductivePair<F>) -> bool {
    let m = b.dim();
    let iso = pair.iso();
    let units: Vec<Vec<F>> = (0..m).map(|a| linalg::unit(m, a)).collect();
    let infinitesimal = iso.infinitesimal_operators().iter().all(|d| {
        let dual = -&d.transpose();
        units.iter().all(|x| {
            units.iter().all(|y| {
                let lhs = linalg::add(&b.eval(&dual.mul_vec(x), y), &b.eval(x, &dual.mul_vec(y)));
                lhs == dual.mul_vec(&b.eval(x, y))
            })
        })
    });
    infinitesimal
        && iso.discrete_operators().iter().all(|a| {
            let at = a.transpose();
            units.iter().all(|x| {
                units
                    .iter()
                    .all(|y| b.eval(&at.mul_vec(x), &at.mul_vec(y)) == at.mul_vec(&b.eval(x, y)))
            })
        })
}

/// Whether `b_η = 0` for every `η` with `η^# = 0`.
pub fn is_f_connection<F: Field>(b: &ConnectionMap<F>, r: &Bivector<F>) -> bool {
    r.kernel().basis().iter().all(|k| b.operator(k).is_zero())
}

/// A bilinear map `ψ: m × m → m`, `ψ(u, v) = ψ_u v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NomizuMap<F: Field> {
    /// `ψ_{e_c}` for each basis vector of `m`.
    pub matrices: Vec<Matrix<F>>,
}

impl<F: Field> NomizuMap<F> {
    pub fn zero(m: usize) -> Self {
        Self {
            matrices: vec![Matrix::zeros(m, m); m],
        }
    }

    pub fn operator(&self, u: &[F]) -> Matrix<F> {
        let m = self.matrices.len();
        let mut out = Matrix::zeros(m, m);
        for (c, mat) in self.matrices.iter().enumerate() {
            if !u[c].is_zero() {
                out = &out + &mat.scale(&u[c]);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(|m| m.is_zero())
    }
}

/// Projection onto `Im(r_#)` along a complement `V`, both in quotient coordinates.
struct ImageSplitting<F: Field> {
    image: Vec<Vec<F>>,
    /// Rows give `Im`-coordinates of a vector of `m`.
    coords: Matrix<F>,
}

impl<F: Field> ImageSplitting<F> {
    fn new(r: &Bivector<F>, complement: Option<&[Vec<F>]>) -> Result<Self> {
        let m = r.dim();
        let image_space = r.image();
        let image = image_space.basis().to_vec();
        let v: Vec<Vec<F>> = match complement {
            Some(v) => v.to_vec(),
            None => image_space
                .standard_complement()
                .into_iter()
                .map(|i| linalg::unit(m, i))
                .collect(),
        };
        if image.len() + v.len() != m || v.iter().any(|x| x.len() != m) {
            return Err(Error::BadComplement);
        }
        let mut cols = image.clone();
        cols.extend(v);
        let inv = Matrix::from_columns(&cols, m).inverse().ok_or(Error::BadComplement)?;
        let rho = image.len();
        let coords = Matrix::from_fn(rho, m, |i, j| inv[(i, j)].clone());
        Ok(Self { image, coords })
    }

    fn rank(&self) -> usize {
        self.image.len()
    }

    fn dim(&self) -> usize {
        self.coords.cols()
    }

    fn image_coords(&self, u: &[F]) -> Vec<F> {
        self.coords.mul_vec(u)
    }

    fn project(&self, u: &[F]) -> Vec<F> {
        linalg::combine(&self.image_coords(u), &self.image, self.dim())
    }
}

/// Nomizu map of an F-connection, zero on the greedy complement `V` of
/// `Im(r_#)` and `ψ_w = b_ηᵀ` for `w = η^#`.
pub fn f_connection_to_nomizu<F: Field>(b: &ConnectionMap<F>, r: &Bivector<F>) -> Result<NomizuMap<F>> {
    if !is_f_connection(b, r) {
        return Err(Error::NotAnFConnection);
    }
    let m = r.dim();
    let split = ImageSplitting::new(r, None)?;
    let matrices = (0..m)
        .map(|c| {
            let w = split.project(&linalg::unit(m, c));
            let eta = linalg::solve(r.r_mat(), &w).expect("w lies in Im r_#");
            b.operator(&eta).transpose()
        })
        .collect();
    Ok(NomizuMap { matrices })
}

/// `b(η, ξ) = (ψ_{η^#})ᵀ ξ`.
pub fn nomizu_to_contravariant<F: Field>(psi: &NomizuMap<F>, r: &Bivector<F>) -> ConnectionMap<F> {
    let m = r.dim();
    ConnectionMap::from_fn(m, |a, b| {
        let w = r.sharp(&linalg::unit(m, a));
        psi.operator(&w).transpose_mul_vec(&linalg::unit(m, b))
    })
}

/// Results of the identities of a left-symmetric product on `(m*)^H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeftSymmetricReport {
    /// `α·β − β·α = [α, β]_r`.
    pub commutator: bool,
    /// `(α·β)·γ − α·(β·γ)` is symmetric in `α, β`.
    pub associator: bool,
}

/// Checks `α·β = b(α, β)` as a left-symmetric product compatible with
/// `[·,·]_r` on the invariant covectors.
pub fn left_symmetric_check<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>, b: &ConnectionMap<F>) -> LeftSymmetricReport {
    let fixed = invariants::fixed_quotient_covectors(pair.iso());
    let basis = fixed.basis();
    let commutator = basis.iter().all(|x| {
        basis.iter().all(|y| linalg::sub(&b.eval(x, y), &b.eval(y, x)) == mstar_bracket(pair, r, x, y))
    });
    let assoc = |x: &[F], y: &[F], z: &[F]| linalg::sub(&b.eval(&b.eval(x, y), z), &b.eval(x, &b.eval(y, z)));
    let associator = basis
        .iter()
        .all(|x| basis.iter().all(|y| basis.iter().all(|z| assoc(x, y, z) == assoc(y, x, z))));
    LeftSymmetricReport { commutator, associator }
}

/// The connection induced on the leaf through the base point.
#[derive(Clone, Debug)]
pub struct LeafConnection<F: Field> {
    /// RREF basis of `Im(r_#)` in quotient coordinates.
    pub basis: Vec<Vec<F>>,
    /// `b^r(u_i, u_j) = Σ_k br[(i*ρ + j)*ρ + k] u_k`.
    pub br: Vec<F>,
    /// `ω_r(u_i, u_j)`.
    pub omega: Matrix<F>,
    pub torsionless: bool,
    /// `ω_r(b^r(u, v), w) + ω_r(v, b^r(u, w)) = 0`.
    pub symplectic: bool,
    /// Torsionless and symplectic.
    pub fedosov: bool,
    /// Whether the curvature of `b` vanishes on `m*`.
    pub base_flat: bool,
    /// Whether `[[u, v]_h, w] = 0` for all `u, v, w ∈ Im(r_#)`.
    pub bracket_criterion: bool,
    /// Flatness of the leaf connection, reported when `b` is flat.
    pub flat: Option<bool>,
    /// Flatness computed directly from the leaf curvature.
    pub leaf_curvature_zero: bool,
}

impl<F: Field> LeafConnection<F> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `b^r(u_i, u_j)` in `Im`-coordinates.
    pub fn get(&self, i: usize, j: usize) -> &[F] {
        let rho = self.rank();
        let start = (i * rho + j) * rho;
        &self.br[start..start + rho]
    }
}

pub fn induced_leaf_connection<F: Field>(
    pair: &ReductivePair<F>,
    r: &Bivector<F>,
    b: &ConnectionMap<F>,
) -> Result<LeafConnection<F>> {
    induced_leaf_connection_with(pair, r, b, None)
}

/// As [`induced_leaf_connection`] with an explicit complement of `Im(r_#)` in `m`.
pub fn induced_leaf_connection_with<F: Field>(
    pair: &ReductivePair<F>,
    r: &Bivector<F>,
    b: &ConnectionMap<F>,
    complement: Option<&[Vec<F>]>,
) -> Result<LeafConnection<F>> {
    if !poisson::is_r_matrix(pair.iso(), r) {
        return Err(Error::NotAnRMatrix);
    }
    let m = pair.dim_m();
    let split = ImageSplitting::new(r, complement)?;
    let rho = split.rank();
    let image = split.image.clone();
    // `ξ_u` with `r_# ξ_u = u_r` for the basis units of `m`.
    let preimages: Vec<Vec<F>> = (0..m)
        .map(|c| linalg::solve(r.r_mat(), &split.project(&linalg::unit(m, c))).expect("projection lies in Im r_#"))
        .collect();
    let omega_im = |x: &[F], y: &[F]| -> F {
        let xi = linalg::solve(r.r_mat(), y).expect("vector lies in Im r_#");
        linalg::dot(&xi, x)
    };
    // `⟨η_v, u⟩ = ω_r(v, u_r)`.
    let eta: Vec<Vec<F>> = image
        .iter()
        .map(|v| preimages.iter().map(|xi| linalg::dot(xi, v)).collect())
        .collect();
    let mut br = Vec::with_capacity(rho * rho * rho);
    for i in 0..rho {
        for j in 0..rho {
            let w = r.sharp(&b.eval(&eta[i], &eta[j]));
            br.extend(split.image_coords(&w));
        }
    }
    let lambda = |i: usize, j: usize| -> Vec<F> {
        let start = (i * rho + j) * rho;
        linalg::combine(&br[start..start + rho], &image, m)
    };
    let im_coords = |x: &[F]| split.image_coords(x);
    let lambda_vec = |u: &[F], v: &[F]| -> Vec<F> {
        let cu = im_coords(u);
        let cv = im_coords(v);
        let mut out = vec![F::zero(); m];
        for (i, a) in cu.iter().enumerate() {
            for (j, b) in cv.iter().enumerate() {
                let w = a.clone() * b.clone();
                if !w.is_zero() {
                    out = linalg::add(&out, &linalg::scale(&w, &lambda(i, j)));
                }
            }
        }
        out
    };

    let omega = Matrix::from_fn(rho, rho, |i, j| omega_im(&image[i], &image[j]));
    let mut torsionless = true;
    let mut symplectic = true;
    let mut bracket_criterion = true;
    let mut leaf_curvature_zero = true;
    let g = pair.iso().algebra();
    for i in 0..rho {
        for j in 0..rho {
            let (u, v) = (&image[i], &image[j]);
            let t = linalg::sub(&linalg::sub(&lambda(i, j), &lambda(j, i)), &pair.m_bracket(u, v));
            torsionless &= linalg::is_zero_vec(&t);
            let uv_h = pair.h_bracket(u, v);
            let uv_m = pair.m_bracket(u, v);
            for (k, w) in image.iter().enumerate() {
                let s = omega_im(&lambda(i, j), w) + omega_im(v, &lambda(i, k));
                symplectic &= s.is_zero();
                let hw = g.bracket(&uv_h, &pair.iso().section(w));
                bracket_criterion &= linalg::is_zero_vec(&hw);
                let curv = linalg::sub(
                    &linalg::sub(
                        &linalg::sub(&lambda_vec(u, &lambda(j, k)), &lambda_vec(v, &lambda(i, k))),
                        &lambda_vec(&uv_m, w),
                    ),
                    &pair.iso().project(&hw),
                );
                leaf_curvature_zero &= linalg::is_zero_vec(&curv);
            }
        }
    }
    let base_flat = curvature_is_zero(pair, r, b);
    Ok(LeafConnection {
        basis: image,
        br,
        omega,
        torsionless,
        symplectic,
        fedosov: torsionless && symplectic,
        base_flat,
        bracket_criterion,
        flat: base_flat.then_some(bracket_criterion),
        leaf_curvature_zero,
    })
}

/// `Im(r_#)` realized inside `m ⊆ g`.
pub fn image_subspace<F: Field>(pair: &ReductivePair<F>, r: &Bivector<F>) -> Subspace<F> {
    let iso = pair.iso();
    let vectors: Vec<Vec<F>> = r.image().basis().iter().map(|v| iso.section(v)).collect();
    Subspace::span(iso.dim_g(), &vectors)
}
