//! The quotient model of `g/h`: isotropy subalgebra, complement, projection
//! `q`, section `s` and the annihilator `h°`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::LieAlgebra;
use crate::linalg::{self, Matrix, Subspace};

/// A Lie algebra `g` with an isotropy subalgebra `h` and a complement `m`.
///
/// Quotient coordinates are coordinates in the complement basis: `q x` are
/// the `m`-coordinates of `x` in the splitting `g = h ⊕ m`, and `s` embeds
/// `F^{n-k}` as `m`. Covectors on `g/h` are identified with `h°` via `qᵀ`.
#[derive(Clone)]
pub struct IsotropyModel<F> {
    algebra: LieAlgebra<F>,
    h: Subspace<F>,
    complement: Vec<Vec<F>>,
    complement_indices: Option<Vec<usize>>,
    q: Matrix<F>,
    s: Matrix<F>,
    h_coords: Matrix<F>,
    ann: Subspace<F>,
    generators: Vec<Matrix<F>>,
}

impl<F: Field> IsotropyModel<F> {
    /// Builds the model with the greedy standard-basis complement.
    pub fn new(algebra: LieAlgebra<F>, h_vectors: &[Vec<F>], generators: Vec<Matrix<F>>) -> Result<Self> {
        let n = algebra.dim();
        check_vectors(n, h_vectors)?;
        let h = Subspace::span(n, h_vectors);
        let indices = h.standard_complement();
        let complement: Vec<Vec<F>> = indices.iter().map(|&i| linalg::unit(n, i)).collect();
        Self::build(algebra, h, complement, Some(indices), generators)
    }

    /// Builds the model with an explicit complement basis.
    pub fn with_complement(
        algebra: LieAlgebra<F>,
        h_vectors: &[Vec<F>],
        complement: Vec<Vec<F>>,
        generators: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let n = algebra.dim();
        check_vectors(n, h_vectors)?;
        check_vectors(n, &complement)?;
        let h = Subspace::span(n, h_vectors);
        Self::build(algebra, h, complement, None, generators)
    }

    fn build(
        algebra: LieAlgebra<F>,
        h: Subspace<F>,
        complement: Vec<Vec<F>>,
        complement_indices: Option<Vec<usize>>,
        generators: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let n = algebra.dim();
        let report = algebra.validate();
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(describe(&report)));
        }
        let hb = h.basis();
        for (a, x) in hb.iter().enumerate() {
            for (b, y) in hb.iter().enumerate().skip(a + 1) {
                if !h.contains(&algebra.bracket(x, y)) {
                    return Err(Error::NotASubalgebra(a, b));
                }
            }
        }
        let k = h.dim();
        if complement.len() + k != n {
            return Err(Error::BadComplement);
        }
        let mut columns = hb.to_vec();
        columns.extend(complement.iter().cloned());
        let p = Matrix::from_columns(&columns, n);
        let p_inv = p.inverse().ok_or(Error::BadComplement)?;
        let m = n - k;
        let q = Matrix::from_fn(m, n, |i, j| p_inv[(k + i, j)].clone());
        let h_coords = Matrix::from_fn(k, n, |i, j| p_inv[(i, j)].clone());
        let s = Matrix::from_columns(&complement, n);
        let ann = h.annihilator();
        for (idx, a) in generators.iter().enumerate() {
            if !algebra.is_automorphism(a) {
                return Err(Error::NotAnAutomorphism(idx));
            }
            if !hb.iter().all(|x| h.contains(&a.mul_vec(x))) {
                return Err(Error::GeneratorMovesH(idx));
            }
        }
        Ok(Self {
            algebra,
            h,
            complement,
            complement_indices,
            q,
            s,
            h_coords,
            ann,
            generators,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.algebra
    }

    pub fn dim_g(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    /// Dimension of `g/h`.
    pub fn codim(&self) -> usize {
        self.complement.len()
    }

    pub fn h(&self) -> &Subspace<F> {
        &self.h
    }

    pub fn h_basis(&self) -> &[Vec<F>] {
        self.h.basis()
    }

    /// Complement basis vectors, the columns of `s`.
    pub fn complement(&self) -> &[Vec<F>] {
        &self.complement
    }

    /// The standard-basis indices of the complement when it was chosen greedily.
    pub fn complement_indices(&self) -> Option<&[usize]> {
        self.complement_indices.as_deref()
    }

    pub fn complement_space(&self) -> Subspace<F> {
        Subspace::span(self.dim_g(), &self.complement)
    }

    /// Labels of the complement basis: the algebra label for standard unit
    /// vectors, `m1, m2, ...` otherwise.
    pub fn complement_labels(&self) -> Vec<String> {
        self.complement
            .iter()
            .enumerate()
            .map(|(k, v)| match unit_index(v) {
                Some(i) => self.algebra.labels()[i].clone(),
                None => format!("m{}", k + 1),
            })
            .collect()
    }

    pub fn q(&self) -> &Matrix<F> {
        &self.q
    }

    pub fn s(&self) -> &Matrix<F> {
        &self.s
    }

    /// `h°` as a subspace of `g*`.
    pub fn ann(&self) -> &Subspace<F> {
        &self.ann
    }

    pub fn generators(&self) -> &[Matrix<F>] {
        &self.generators
    }

    pub fn project(&self, x: &[F]) -> Vec<F> {
        self.q.mul_vec(x)
    }

    pub fn section(&self, v: &[F]) -> Vec<F> {
        self.s.mul_vec(v)
    }

    /// The `h`-component of `x` in the splitting `g = h ⊕ m`.
    pub fn h_part(&self, x: &[F]) -> Vec<F> {
        linalg::sub(x, &self.section(&self.project(x)))
    }

    /// Coordinates of an element of `h` in the RREF basis of `h`.
    pub fn h_coordinates(&self, x: &[F]) -> Vec<F> {
        self.h_coords.mul_vec(x)
    }

    /// The element `qᵀα` of `h°` corresponding to `α ∈ (g/h)*`.
    pub fn covector_to_ann(&self, alpha: &[F]) -> Vec<F> {
        self.q.transpose_mul_vec(alpha)
    }

    /// Inverse of [`covector_to_ann`](Self::covector_to_ann).
    pub fn ann_to_covector(&self, eta: &[F]) -> Result<Vec<F>> {
        if eta.len() != self.dim_g() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_g(),
                found: eta.len(),
            });
        }
        if !self.ann.contains(eta) {
            return Err(Error::NotInAnnihilator);
        }
        Ok(self.s.transpose_mul_vec(eta))
    }

    /// Matrix of `x + h ↦ [u, x] + h` on `g/h`.
    pub fn induced_ad_bar(&self, u: &[F]) -> Result<Matrix<F>> {
        if u.len() != self.dim_g() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_g(),
                found: u.len(),
            });
        }
        if !self.h.contains(u) {
            return Err(Error::NotInH);
        }
        Ok(&(&self.q * &self.algebra.ad_matrix(u)) * &self.s)
    }

    /// `ad̄_u` for each vector of the RREF basis of `h`.
    pub fn infinitesimal_operators(&self) -> Vec<Matrix<F>> {
        self.h
            .basis()
            .iter()
            .map(|u| &(&self.q * &self.algebra.ad_matrix(u)) * &self.s)
            .collect()
    }

    /// The maps induced on `g/h` by the discrete generators.
    pub fn discrete_operators(&self) -> Vec<Matrix<F>> {
        self.generators.iter().map(|a| &(&self.q * a) * &self.s).collect()
    }

    /// Matrix `q' s` taking quotient coordinates of `self` to those of `other`.
    pub fn transition_to(&self, other: &Self) -> Matrix<F> {
        &other.q * &self.s
    }
}

impl<F: Field> std::fmt::Debug for IsotropyModel<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IsotropyModel")
            .field("dim_g", &self.dim_g())
            .field("h", &self.h)
            .field("complement", &self.complement)
            .field("generators", &self.generators.len())
            .finish()
    }
}

fn check_vectors<F: Field>(n: usize, vectors: &[Vec<F>]) -> Result<()> {
    match vectors.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

fn unit_index<F: Field>(v: &[F]) -> Option<usize> {
    let mut found = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if !x.is_one() || found.is_some() {
            return None;
        }
        found = Some(i);
    }
    found
}

fn describe(report: &crate::lie::Report) -> String {
    if let Some(t) = report.antisymmetry.first() {
        format!("antisymmetry fails at {t:?}")
    } else if let Some(t) = report.jacobi.first() {
        format!("Jacobi identity fails at {t:?}")
    } else {
        String::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn heisenberg1() -> LieAlgebra<Rational> {
        LieAlgebra::from_sparse(
            vec!["u1".into(), "v1".into(), "w".into()],
            &[(0, 1, vec![(2, q(1))])],
        )
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn trivial_isotropy_is_identity() {
        let iso = IsotropyModel::new(heisenberg1(), &[], vec![]).unwrap();
        assert_eq!(iso.q(), &Matrix::identity(3));
        assert_eq!(iso.s(), &Matrix::identity(3));
        assert_eq!(iso.ann().dim(), 3);
    }

    #[test]
    fn section_and_projection() {
        let iso = IsotropyModel::new(heisenberg1(), &[v(&[1, 1, 0]), v(&[0, 0, 1])], vec![]).unwrap();
        assert_eq!(iso.codim(), 1);
        assert_eq!(iso.complement_indices(), Some(&[0][..]));
        assert_eq!(iso.q() * iso.s(), Matrix::identity(1));
        for i in 0..3 {
            let e = linalg::unit(3, i);
            assert!(iso.h().contains(&iso.h_part(&e)));
        }
        assert_eq!(iso.complement_labels(), vec!["u1".to_string()]);
    }

    #[test]
    fn non_subalgebra_rejected() {
        let err = IsotropyModel::new(heisenberg1(), &[v(&[1, 0, 0]), v(&[0, 1, 0])], vec![]).unwrap_err();
        assert_eq!(err, Error::NotASubalgebra(0, 1));
    }

    #[test]
    fn generator_checks() {
        let swap = Matrix::from_rows(&[v(&[0, 1, 0]), v(&[1, 0, 0]), v(&[0, 0, 1])]);
        let err = IsotropyModel::new(heisenberg1(), &[], vec![swap]).unwrap_err();
        assert_eq!(err, Error::NotAnAutomorphism(0));
        // v1 -> v1 + w is an automorphism that does not preserve span{v1}.
        let shear = Matrix::from_rows(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 1, 1])]);
        let err = IsotropyModel::new(heisenberg1(), &[v(&[0, 1, 0])], vec![shear]).unwrap_err();
        assert_eq!(err, Error::GeneratorMovesH(0));
    }

    #[test]
    fn induced_ad_bar_requires_h() {
        let iso = IsotropyModel::new(heisenberg1(), &[v(&[1, 0, 0])], vec![]).unwrap();
        assert_eq!(iso.induced_ad_bar(&v(&[0, 1, 0])).unwrap_err(), Error::NotInH);
        let ad = iso.induced_ad_bar(&v(&[1, 0, 0])).unwrap();
        // complement {v1, w}: [u1, v1] = w
        assert_eq!(ad, Matrix::from_rows(&[v(&[0, 0]), v(&[1, 0])]));
    }

    #[test]
    fn explicit_complement_must_be_complementary() {
        let err = IsotropyModel::with_complement(
            heisenberg1(),
            &[v(&[1, 0, 0])],
            vec![v(&[2, 0, 0]), v(&[0, 0, 1])],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, Error::BadComplement);
    }

    #[test]
    fn annihilator_identification() {
        let iso = IsotropyModel::new(heisenberg1(), &[v(&[1, 0, 0])], vec![]).unwrap();
        let eta = iso.covector_to_ann(&v(&[3, -2]));
        assert!(iso.ann().contains(&eta));
        assert_eq!(iso.ann_to_covector(&eta).unwrap(), v(&[3, -2]));
        assert_eq!(iso.ann_to_covector(&v(&[1, 0, 0])).unwrap_err(), Error::NotInAnnihilator);
    }
}
