//! Builtin example families.

use std::fmt;

use crate::document::AlgebraDocument;
use crate::field::Field;
use crate::isotropy::IsotropyModel;
use crate::lie::LieAlgebra;
use crate::linalg::{self, Matrix};
use crate::poisson::Bivector;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Abelian algebra of dimension `n`, trivial isotropy.
    Abelian(usize),
    /// `h_{2n+1}` with trivial isotropy and the `2n + 1` lattice generators.
    Heisenberg(usize),
    /// The Poincaré algebra `iso(1,1)` with one lattice generator.
    Iso11,
    /// `gl_n` with isotropy `so_n` and complement the symmetric matrices.
    GlSym(usize),
    /// `so_4` with isotropy `so_2 × so_2`.
    So4Grassmann,
    /// `g ⊕ g` with the diagonal as isotropy and the antidiagonal as complement.
    Double(Box<Builtin>),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Abelian(n) => write!(f, "abelian({n})"),
            Self::Heisenberg(n) => write!(f, "heisenberg({n})"),
            Self::Iso11 => write!(f, "iso11"),
            Self::GlSym(n) => write!(f, "gl_sym({n})"),
            Self::So4Grassmann => write!(f, "so4_grassmann"),
            Self::Double(inner) => write!(f, "double({inner})"),
        }
    }
}

impl Builtin {
    /// Looks up a family by name. `n` is required by the parametrized
    /// families; `of` names the inner family of `double`.
    pub fn from_name(name: &str, n: Option<usize>, of: Option<&str>) -> Result<Self, String> {
        let need_n = |family: &str, min: usize| -> Result<usize, String> {
            match n {
                Some(v) if v >= min => Ok(v),
                Some(v) => Err(format!("{family} needs n >= {min}, got {v}")),
                None => Err(format!("{family} needs a parameter n")),
            }
        };
        match name {
            "abelian" => Ok(Self::Abelian(need_n("abelian", 0)?)),
            "heisenberg" => Ok(Self::Heisenberg(need_n("heisenberg", 1)?)),
            "iso11" => Ok(Self::Iso11),
            "gl_sym" => Ok(Self::GlSym(need_n("gl_sym", 1)?)),
            "so4_grassmann" => Ok(Self::So4Grassmann),
            "double" => {
                let inner = of.ok_or("double needs an inner family")?;
                if inner == "double" {
                    return Err("double of double is not supported".into());
                }
                Ok(Self::Double(Box::new(Self::from_name(inner, n, None)?)))
            }
            other => Err(format!("unknown example `{other}`")),
        }
    }

    pub fn document(&self) -> AlgebraDocument {
        let q = |n: i64| Rational::from_int(n);
        let name = self.to_string();
        match self {
            Self::Abelian(n) => {
                let alg = LieAlgebra::abelian((1..=*n).map(|i| format!("e{i}")).collect());
                AlgebraDocument::from_parts(&name, &alg, None, None, None)
            }
            Self::Heisenberg(n) => {
                let (alg, gens) = heisenberg(*n);
                AlgebraDocument::from_parts(&name, &alg, None, None, Some(&gens))
            }
            Self::Iso11 => {
                let (alg, gens) = iso11();
                AlgebraDocument::from_parts(&name, &alg, None, None, Some(&gens))
            }
            Self::GlSym(n) => {
                let (alg, h) = gl_sym(*n);
                AlgebraDocument::from_parts(&name, &alg, Some(&h), None, None)
            }
            Self::So4Grassmann => {
                let alg = so4_grassmann();
                let h = vec![linalg::unit(6, 0), linalg::unit(6, 1)];
                AlgebraDocument::from_parts(&name, &alg, Some(&h), None, None)
            }
            Self::Double(inner) => {
                let alg = inner.document().algebra().expect("builtin documents are well formed");
                let n = alg.dim();
                let doubled = alg.direct_sum(&alg, "'");
                let diag: Vec<Vec<Rational>> = (0..n)
                    .map(|i| {
                        let mut v = linalg::unit(2 * n, i);
                        v[n + i] = q(1);
                        v
                    })
                    .collect();
                let anti: Vec<Vec<Rational>> = (0..n)
                    .map(|i| {
                        let mut v = linalg::unit(2 * n, i);
                        v[n + i] = q(-1);
                        v
                    })
                    .collect();
                AlgebraDocument::from_parts(&name, &doubled, Some(&diag), Some(&anti), None)
            }
        }
    }

    pub fn model(&self) -> IsotropyModel<Rational> {
        self.document().model().expect("builtin documents are valid")
    }
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `h_{2n+1}` on `u_1..u_n, v_1..v_n, w` and the generators
/// `Ad_{γ(e_i,0,0)}`, `Ad_{γ(0,e_i,0)}`, `Ad_{γ(0,0,1)}`.
fn heisenberg(n: usize) -> (LieAlgebra<Rational>, Vec<Matrix<Rational>>) {
    let dim = 2 * n + 1;
    let w = 2 * n;
    let mut names = labels("u", n);
    names.extend(labels("v", n));
    names.push("w".into());
    let brackets: Vec<_> = (0..n).map(|i| (i, n + i, vec![(w, Rational::from_int(1))])).collect();
    let alg = LieAlgebra::from_sparse(names, &brackets);
    let mut gens = Vec::new();
    // v_i -> v_i + m_i w
    for i in 0..n {
        let mut a = Matrix::identity(dim);
        a[(w, n + i)] = Rational::from_int(1);
        gens.push(a);
    }
    // u_i -> u_i - q_i w
    for i in 0..n {
        let mut a = Matrix::identity(dim);
        a[(w, i)] = Rational::from_int(-1);
        gens.push(a);
    }
    gens.push(Matrix::identity(dim));
    (alg, gens)
}

/// `[e1, e3] = e1`, `[e2, e3] = −e2`, and `Ad_γ(e3) = e3 + ½(e1 − e2)`.
fn iso11() -> (LieAlgebra<Rational>, Vec<Matrix<Rational>>) {
    let one = Rational::from_int(1);
    let alg = LieAlgebra::from_sparse(
        labels("e", 3),
        &[(0, 2, vec![(0, one.clone())]), (1, 2, vec![(1, -one)])],
    );
    let mut a = Matrix::identity(3);
    a[(0, 2)] = Rational::ratio(1, 2);
    a[(1, 2)] = Rational::ratio(-1, 2);
    (alg, vec![a])
}

fn elementary(n: usize, i: usize, j: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Rational::from_int(1);
    m
}

/// Basis: `s_ii = E_ii`, `s_ij = E_ij + E_ji` (`i < j`) in lexicographic
/// order, then `f_ij = E_ij − E_ji`.
fn gl_sym(n: usize) -> (LieAlgebra<Rational>, Vec<Vec<Rational>>) {
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in i..n {
            names.push(format!("s{}{}", i + 1, j + 1));
            mats.push(if i == j {
                elementary(n, i, i)
            } else {
                &elementary(n, i, j) + &elementary(n, j, i)
            });
        }
    }
    let sym = mats.len();
    for i in 0..n {
        for j in (i + 1)..n {
            names.push(format!("f{}{}", i + 1, j + 1));
            mats.push(&elementary(n, i, j) - &elementary(n, j, i));
        }
    }
    let dim = mats.len();
    let alg = LieAlgebra::from_matrix_basis(names, &mats).expect("gl_n is closed");
    let h = (sym..dim).map(|k| linalg::unit(dim, k)).collect();
    (alg, h)
}

/// Basis `F12, F34, e1 = F13, e2 = F23, e3 = F14, e4 = F24` with
/// `F_ij = E_ij − E_ji`.
fn so4_grassmann() -> LieAlgebra<Rational> {
    let f = |i: usize, j: usize| &elementary(4, i - 1, j - 1) - &elementary(4, j - 1, i - 1);
    let mats = [f(1, 2), f(3, 4), f(1, 3), f(2, 3), f(1, 4), f(2, 4)];
    let names = ["F12", "F34", "e1", "e2", "e3", "e4"].map(String::from).to_vec();
    LieAlgebra::from_matrix_basis(names, &mats).expect("so_4 is closed")
}

/// A catalog model paired with one of its invariant r-matrices.
#[derive(Clone, Debug)]
pub struct CatalogInstance {
    pub label: String,
    pub builtin: Builtin,
    pub model: IsotropyModel<Rational>,
    pub r: Bivector<Rational>,
}

/// The r-matrices used throughout the examples: invariant bivectors with
/// vanishing Yang–Baxter tensor on each builtin family.
pub fn r_matrix_instances() -> Vec<CatalogInstance> {
    let q = |n: i64| Rational::from_int(n);
    let v = |xs: &[i64]| xs.iter().map(|&x| q(x)).collect::<Vec<_>>();
    let mut out = Vec::new();
    let mut push = |label: &str, builtin: Builtin, r: Bivector<Rational>| {
        let model = builtin.model();
        out.push(CatalogInstance {
            label: label.to_string(),
            builtin,
            model,
            r,
        });
    };
    push("abelian(3) e1^e2", Builtin::Abelian(3), Bivector::wedge(&v(&[1, 0, 0]), &v(&[0, 1, 0])));
    push("abelian(4) e1^e2+e3^e4", Builtin::Abelian(4), Bivector::from_wedge(4, &v(&[1, 0, 0, 0, 0, 1])));
    push("heisenberg(1) u1^w", Builtin::Heisenberg(1), Bivector::wedge(&v(&[1, 0, 0]), &v(&[0, 0, 1])));
    push("heisenberg(1) v1^w", Builtin::Heisenberg(1), Bivector::wedge(&v(&[0, 1, 0]), &v(&[0, 0, 1])));
    push(
        "heisenberg(1) (u1+v1)^w",
        Builtin::Heisenberg(1),
        Bivector::wedge(&v(&[1, 1, 0]), &v(&[0, 0, 1])),
    );
    push(
        "heisenberg(2) (u1+2v2)^w",
        Builtin::Heisenberg(2),
        Bivector::wedge(&v(&[1, 0, 0, 2, 0]), &v(&[0, 0, 0, 0, 1])),
    );
    push("iso11 e1^e2", Builtin::Iso11, Bivector::wedge(&v(&[1, 0, 0]), &v(&[0, 1, 0])));
    push(
        "so4_grassmann (e1-e4)^(e2+e3)",
        Builtin::So4Grassmann,
        Bivector::wedge(&v(&[1, 0, 0, -1]), &v(&[0, 1, 1, 0])),
    );
    push(
        "so4_grassmann e1^e2+e3^e4",
        Builtin::So4Grassmann,
        Bivector::wedge(&v(&[1, 0, 0, 0]), &v(&[0, 1, 0, 0])).add(&Bivector::wedge(&v(&[0, 0, 1, 0]), &v(&[0, 0, 0, 1]))),
    );
    push(
        "so4_grassmann e1^e3+e2^e4",
        Builtin::So4Grassmann,
        Bivector::wedge(&v(&[1, 0, 0, 0]), &v(&[0, 0, 1, 0])).add(&Bivector::wedge(&v(&[0, 1, 0, 0]), &v(&[0, 0, 0, 1]))),
    );
    push(
        "gl_sym(2) s11^s12+s12^s22",
        Builtin::GlSym(2),
        crate::invariants::invariant_bivectors(&Builtin::GlSym(2).model()).bivectors()[0].clone(),
    );
    let double = Builtin::Double(Box::new(Builtin::Heisenberg(1)));
    push("double(heisenberg(1)) m1^m3", double.clone(), Bivector::wedge(&v(&[1, 0, 0]), &v(&[0, 0, 1])));
    push("double(heisenberg(1)) m2^m3", double, Bivector::wedge(&v(&[0, 1, 0]), &v(&[0, 0, 1])));
    out
}
