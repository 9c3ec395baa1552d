#![allow(dead_code)]

use rand::Rng;

use lieps::catalog::Builtin;
use lieps::invariants;
use lieps::linalg;
use lieps::poisson::Bivector;
use lieps::{Field, IsotropyModel, LieAlgebra, Matrix, Rational, Subspace};

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| q(x)).collect()
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn unit_matrix(n: usize, i: usize, j: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = q(1);
    m
}

fn matrix_algebra(prefix: &str, mats: &[Matrix<Rational>]) -> LieAlgebra<Rational> {
    LieAlgebra::from_matrix_basis(labels(prefix, mats.len()), mats).expect("closed matrix algebra")
}

/// Small algebras of dimension at most 6 used for randomized checks.
pub fn base_algebras() -> Vec<(&'static str, LieAlgebra<Rational>)> {
    let e = |i, j| unit_matrix(2, i, j);
    let gl2 = matrix_algebra("x", &[e(0, 0), e(0, 1), e(1, 0), e(1, 1)]);
    let sl2 = matrix_algebra("x", &[&e(0, 0) - &e(1, 1), e(0, 1), e(1, 0)]);
    let f = |i, j| &unit_matrix(3, i, j) - &unit_matrix(3, j, i);
    let so3 = matrix_algebra("x", &[f(0, 1), f(0, 2), f(1, 2)]);
    let so3_ab = so3.direct_sum(&LieAlgebra::abelian(vec!["z".into()]), "'");
    let t = |i, j| unit_matrix(3, i, j);
    let b3 = matrix_algebra("x", &[t(0, 0), t(1, 1), t(2, 2), t(0, 1), t(0, 2), t(1, 2)]);
    let aff = matrix_algebra("x", &[e(0, 0), e(0, 1)]);
    let aff2 = aff.direct_sum(&aff, "'");
    vec![
        ("gl2", gl2),
        ("sl2", sl2),
        ("so3+r", so3_ab),
        ("b3", b3),
        ("aff1+aff1", aff2),
        ("heisenberg(1)", Builtin::Heisenberg(1).model().algebra().clone()),
        ("heisenberg(2)", Builtin::Heisenberg(2).model().algebra().clone()),
        ("iso11", Builtin::Iso11.model().algebra().clone()),
        ("so4", Builtin::So4Grassmann.model().algebra().clone()),
    ]
}

pub fn random_vector(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| q(rng.gen_range(-bound..=bound))).collect()
}

pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| q(rng.gen_range(-2..=2)));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Random integer vectors completing a basis of `space` to the whole ambient space.
pub fn random_complement(rng: &mut impl Rng, space: &Subspace<Rational>) -> Vec<Vec<Rational>> {
    let n = space.ambient_dim();
    let mut vectors = space.basis().to_vec();
    let mut complement = Vec::new();
    while vectors.len() < n {
        let c = random_vector(rng, n, 2);
        vectors.push(c.clone());
        if Subspace::span(n, &vectors).dim() == vectors.len() {
            complement.push(c);
        } else {
            vectors.pop();
        }
    }
    complement
}

/// Smallest subalgebra containing `vectors`.
pub fn closure(alg: &LieAlgebra<Rational>, vectors: &[Vec<Rational>]) -> Subspace<Rational> {
    let n = alg.dim();
    let mut space = Subspace::span(n, vectors);
    loop {
        let basis = space.basis().to_vec();
        let mut grown = basis.clone();
        for x in &basis {
            for y in &basis {
                grown.push(alg.bracket(x, y));
            }
        }
        let next = Subspace::span(n, &grown);
        if next.dim() == space.dim() {
            return space;
        }
        space = next;
    }
}

/// `exp(ad_x)` when `ad_x` is nilpotent.
pub fn exp_nilpotent_ad(alg: &LieAlgebra<Rational>, x: &[Rational]) -> Option<Matrix<Rational>> {
    let n = alg.dim();
    let ad = alg.ad_matrix(x);
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    for k in 1..=n {
        term = (&term * &ad).scale(&Rational::ratio(1, k as i64));
        if term.is_zero() {
            return Some(sum);
        }
        sum = &sum + &term;
    }
    term = &term * &ad;
    term.is_zero().then_some(sum)
}

pub struct RandomInstance {
    pub name: String,
    pub model: IsotropyModel<Rational>,
    pub r: Bivector<Rational>,
}

/// A random isotropy model in a random basis of one of the base algebras,
/// with a nonzero invariant bivector `r`. `None` when the sampled model has
/// no invariant bivectors.
pub fn random_instance(rng: &mut impl Rng, bases: &[(&'static str, LieAlgebra<Rational>)]) -> Option<RandomInstance> {
    let (name, base) = &bases[rng.gen_range(0..bases.len())];
    let n = base.dim();
    let p = random_invertible(rng, n);
    let alg = base.change_basis(&p, labels("g", n)).expect("invertible change of basis");
    let h = match rng.gen_range(0..4) {
        0 => Subspace::zero(n),
        1 => closure(&alg, &[random_vector(rng, n, 2)]),
        _ => closure(&alg, &[random_vector(rng, n, 2), random_vector(rng, n, 2)]),
    };
    if h.dim() == n {
        return None;
    }
    let generators: Vec<Matrix<Rational>> = h
        .basis()
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .filter_map(|x| exp_nilpotent_ad(&alg, x))
        .filter(|a| !(a - &Matrix::identity(n)).is_zero())
        .collect();
    let model = if rng.gen_bool(0.5) {
        let complement = random_complement(rng, &h);
        IsotropyModel::with_complement(alg, h.basis(), complement, generators).expect("valid model")
    } else {
        IsotropyModel::new(alg, h.basis(), generators).expect("valid model")
    };
    let inv = invariants::invariant_bivectors(&model);
    if inv.dim() == 0 {
        return None;
    }
    let coeffs = loop {
        let c = random_vector(rng, inv.dim(), 3);
        if !linalg::is_zero_vec(&c) {
            break c;
        }
    };
    let wedge = linalg::combine(&coeffs, inv.space().basis(), inv.space().ambient_dim());
    let r = Bivector::from_wedge(model.codim(), &wedge);
    Some(RandomInstance {
        name: format!("{name} dim_h={}", model.dim_h()),
        model,
        r,
    })
}
