//! Lie algebras given by structure constants, plus the `∧²` functor on
//! linear maps.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};

/// `(i, j, [(k, c)])` meaning `[e_i, e_j] = Σ c e_k`.
pub type SparseBracket<F> = (usize, usize, Vec<(usize, F)>);

/// A Lie algebra on `F^n` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra<F> {
    labels: Vec<String>,
    constants: Vec<F>,
}

/// Axiom violations found by [`LieAlgebra::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// `(i, j, k)` with `c[i][j][k] != -c[j][i][k]`, reported once with `i <= j`.
    pub antisymmetry: Vec<(usize, usize, usize)>,
    /// Basis triples `i < j < k` whose Jacobi sum is nonzero.
    pub jacobi: Vec<(usize, usize, usize)>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

impl<F: Field> LieAlgebra<F> {
    /// Abelian algebra with the given basis labels.
    pub fn abelian(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self {
            labels,
            constants: vec![F::zero(); n * n * n],
        }
    }

    /// Raw constructor; `constants[(i*n + j)*n + k] = c[i][j][k]`. No checks.
    pub fn from_constants(labels: Vec<String>, constants: Vec<F>) -> Self {
        let n = labels.len();
        assert_eq!(constants.len(), n * n * n, "constant array has wrong size");
        Self { labels, constants }
    }

    /// Builds from sparse brackets `(i, j, [(k, c_ijk)])`.
    ///
    /// The reverse pair `(j, i)` is filled in antisymmetrically unless the
    /// input lists it explicitly, in which case the given values are kept
    /// verbatim so that [`validate`](Self::validate) can report conflicts.
    pub fn from_sparse(labels: Vec<String>, brackets: &[SparseBracket<F>]) -> Self {
        let n = labels.len();
        let mut alg = Self::abelian(labels);
        let mut given = vec![false; n * n];
        for (i, j, coeffs) in brackets {
            given[i * n + j] = true;
            for (k, c) in coeffs {
                let idx = alg.index(*i, *j, *k);
                alg.constants[idx] = alg.constants[idx].clone() + c.clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                if given[i * n + j] && !given[j * n + i] {
                    for k in 0..n {
                        let v = -alg.constant(i, j, k).clone();
                        let idx = alg.index(j, i, k);
                        alg.constants[idx] = v;
                    }
                }
            }
        }
        alg
    }

    /// Structure constants of the span of square matrices under the
    /// commutator. Fails if the span is not closed or the matrices are
    /// linearly dependent.
    pub fn from_matrix_basis(labels: Vec<String>, basis: &[Matrix<F>]) -> Result<Self> {
        let n = basis.len();
        assert_eq!(labels.len(), n);
        let flat = |m: &Matrix<F>| -> Vec<F> { m.row_vectors().concat() };
        let coords = Matrix::from_columns(&basis.iter().map(flat).collect::<Vec<_>>(), {
            let d = basis.first().map_or(0, |m| m.rows());
            d * d
        });
        if coords.rank() != n {
            return Err(Error::InvalidAlgebra("matrix basis is linearly dependent".into()));
        }
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let comm = &(&basis[i] * &basis[j]) - &(&basis[j] * &basis[i]);
                let c = linalg::solve(&coords, &flat(&comm))
                    .map_err(|_| Error::InvalidAlgebra("span not closed under commutator".into()))?;
                let entries: Vec<(usize, F)> = c
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                brackets.push((i, j, entries));
            }
        }
        Ok(Self::from_sparse(labels, &brackets))
    }

    /// Direct sum `self ⊕ other`; basis of `self` first.
    pub fn direct_sum(&self, other: &Self, other_suffix: &str) -> Self {
        let n1 = self.dim();
        let n2 = other.dim();
        let n = n1 + n2;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}{other_suffix}")));
        let mut c = vec![F::zero(); n * n * n];
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    c[(i * n + j) * n + k] = self.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for k in 0..n2 {
                    c[((n1 + i) * n + n1 + j) * n + n1 + k] = other.constant(i, j, k).clone();
                }
            }
        }
        Self::from_constants(labels, c)
    }

    /// Same algebra in the basis `e'_i = Σ_k p[k][i] e_k` (columns of `p`).
    pub fn change_basis(&self, p: &Matrix<F>, labels: Vec<String>) -> Result<Self> {
        let n = self.dim();
        let p_inv = p.inverse().ok_or(Error::InvalidAlgebra("singular change of basis".into()))?;
        let cols = p.column_vectors();
        let mut c = vec![F::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let v = p_inv.mul_vec(&self.bracket(&cols[i], &cols[j]));
                for (k, x) in v.into_iter().enumerate() {
                    c[(i * n + j) * n + k] = x;
                }
            }
        }
        Ok(Self::from_constants(labels, c))
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.constants[self.index(i, j, k)]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<F> {
        (0..self.dim()).map(|k| self.constant(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        let mut out = vec![F::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi.clone() * yj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`, so that `ad_matrix(x) · y = [x, y]`.
    pub fn ad_matrix(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.bracket(x, &linalg::unit(n, j))).collect();
        Matrix::from_columns(&cols, n)
    }

    pub fn validate(&self) -> Report {
        let n = self.dim();
        let mut report = Report::default();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if *self.constant(i, j, k) != -self.constant(j, i, k).clone() {
                        report.antisymmetry.push((i, j, k));
                    }
                }
            }
        }
        let e = |i: usize| linalg::unit::<F>(n, i);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let a = self.bracket(&self.bracket_basis(i, j), &e(k));
                    let b = self.bracket(&self.bracket_basis(j, k), &e(i));
                    let c = self.bracket(&self.bracket_basis(k, i), &e(j));
                    if !linalg::is_zero_vec(&linalg::add(&linalg::add(&a, &b), &c)) {
                        report.jacobi.push((i, j, k));
                    }
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Whether `A[x, y] = [Ax, Ay]` on all basis pairs.
    pub fn is_automorphism(&self, a: &Matrix<F>) -> bool {
        let n = self.dim();
        if a.rows() != n || a.cols() != n || a.inverse().is_none() {
            return false;
        }
        let cols = a.column_vectors();
        (0..n).all(|i| {
            (i + 1..n).all(|j| a.mul_vec(&self.bracket_basis(i, j)) == self.bracket(&cols[i], &cols[j]))
        })
    }
}

/// Index pairs `(i, j)`, `i < j`, of `∧²` of an `m`-dimensional space in
/// lexicographic order.
pub fn wedge2_indices(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            out.push((i, j));
        }
    }
    out
}

pub fn wedge2_dim(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Position of `(i, j)` (`i < j`) in [`wedge2_indices`].
pub fn wedge2_position(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// Matrix of `x ∧ y ↦ Ax ∧ Ay` on `∧²`.
pub fn wedge2_action<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    assert!(a.is_square());
    let m = a.rows();
    let idx = wedge2_indices(m);
    Matrix::from_fn(idx.len(), idx.len(), |row, col| {
        let (k, l) = idx[row];
        let (i, j) = idx[col];
        a[(k, i)].clone() * a[(l, j)].clone() - a[(l, i)].clone() * a[(k, j)].clone()
    })
}

/// Matrix of the derivation `x ∧ y ↦ Dx ∧ y + x ∧ Dy` on `∧²`.
pub fn wedge2_derivation<F: Field>(d: &Matrix<F>) -> Matrix<F> {
    assert!(d.is_square());
    let m = d.rows();
    let idx = wedge2_indices(m);
    let delta = |a: usize, b: usize| if a == b { F::one() } else { F::zero() };
    Matrix::from_fn(idx.len(), idx.len(), |row, col| {
        let (k, l) = idx[row];
        let (i, j) = idx[col];
        d[(k, i)].clone() * delta(l, j) + delta(k, i) * d[(l, j)].clone()
            - d[(l, i)].clone() * delta(k, j)
            - delta(l, i) * d[(k, j)].clone()
    })
}
