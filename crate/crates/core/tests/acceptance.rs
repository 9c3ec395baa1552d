mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{q, v};
use lieps::catalog::{self, Builtin};
use lieps::foliation;
use lieps::invariants;
use lieps::linalg;
use lieps::poisson::{self, Bivector, Lift};
use lieps::reductive::{self, ConnectionKind, ReductivePair};
use lieps::{Rational, Subspace};

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn heisenberg() -> Check {
    let start = Instant::now();
    for n in 1..=2 {
        let iso = Builtin::Heisenberg(n).model();
        ensure(iso.generators().len() == 2 * n + 1, "generator count")?;
        let inv = invariants::invariant_bivectors(&iso);
        ensure(inv.dim() == 2 * n, format!("heisenberg({n}) dim {}", inv.dim()))?;
        let dim = 2 * n + 1;
        let w = linalg::unit(dim, 2 * n);
        let expected: Vec<Vec<Rational>> = (0..2 * n)
            .map(|i| Bivector::wedge(&linalg::unit(dim, i), &w).to_wedge())
            .collect();
        ensure(
            inv.space() == &Subspace::span(inv.space().ambient_dim(), &expected),
            "basis is not the x^w family",
        )?;
        let basis = inv.bivectors();
        for (i, a) in basis.iter().enumerate() {
            ensure(poisson::is_r_matrix(&iso, a), format!("basis {i} fails"))?;
            for b in &basis[i + 1..] {
                ensure(poisson::is_r_matrix(&iso, &a.add(b)), "pairwise sum fails")?;
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok("dims 2, 4".into())
}

fn poincare() -> Check {
    let start = Instant::now();
    let iso = Builtin::Iso11.model();
    let inv = invariants::invariant_bivectors(&iso);
    ensure(inv.dim() == 2, format!("dim {}", inv.dim()))?;
    let r = Bivector::wedge(&v(&[1, 0, 0]), &v(&[0, 1, 0]));
    let s = Bivector::wedge(&v(&[1, -1, 0]), &v(&[0, 0, 1]));
    ensure(inv.contains(&r) && inv.contains(&s), "e1^e2 or (e1-e2)^e3 not invariant")?;
    ensure(poisson::is_r_matrix(&iso, &r), "e1^e2 is not an r-matrix")?;
    ensure(!poisson::is_r_matrix(&iso, &s), "(e1-e2)^e3 is an r-matrix")?;
    let t = poisson::yang_baxter_tensor(&iso, &s);
    let oracle = poisson::schouten_oracle(&iso, &Lift::canonical(&iso, &s));
    ensure(t == oracle, "tensor differs from the Schouten oracle")?;
    ensure(t.get(0, 1, 2).abs() == q(2), format!("|[[s,s]](e1*,e2*,e3*)| = {}", t.get(0, 1, 2).abs()))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("[[s,s]](e1*,e2*,e3*) = {}", t.get(0, 1, 2)))
}

fn grassmannian() -> Check {
    let start = Instant::now();
    let iso = Builtin::So4Grassmann.model();
    let inv = invariants::invariant_bivectors(&iso);
    let lambda = Bivector::from_wedge(4, &v(&[1, 0, 0, 0, 0, 1]));
    let mu = Bivector::from_wedge(4, &v(&[0, 1, 0, 0, 1, 0]));
    let family = Subspace::span(6, &[lambda.to_wedge(), mu.to_wedge()]);
    ensure(inv.space() == &family, "invariant space is not the lambda, mu family")?;
    let r = Bivector::wedge(&v(&[1, 0, 0, -1]), &v(&[0, 1, 1, 0]));
    ensure(poisson::is_r_matrix(&iso, &r), "not an r-matrix")?;
    let pair = ReductivePair::new(iso.clone()).map_err(|e| e.to_string())?;
    ensure(pair.is_symmetric(), "pair is not symmetric")?;
    ensure(reductive::check_reductive_r_matrix(&pair, &r), "reductive criterion fails")?;
    let a = foliation::leaf_algebra(&iso, &r).map_err(|e| e.to_string())?;
    let expected = Subspace::span(
        6,
        &[v(&[1, 0, 0, 0, 0, 0]), v(&[0, 1, 0, 0, 0, 0]), v(&[0, 0, 1, 0, 0, -1]), v(&[0, 0, 0, 1, 1, 0])],
    );
    ensure(a == expected, "leaf algebra is not span{F12, F34, e1-e4, e2+e3}")?;
    let leaf = foliation::leaf_cocycle(&iso, &r).map_err(|e| e.to_string())?;
    ensure(&leaf.radical() == iso.h(), "radical differs from h")?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("dim a_r = {}", a.dim()))
}

fn symmetric_gl() -> Check {
    let two = invariants::invariant_bivectors(&Builtin::GlSym(2).model());
    let remark = Bivector::wedge(&v(&[1, 0, -1]), &v(&[0, 1, 0]));
    ensure(two.dim() == 1 && two.contains(&remark), "gl_sym(2) is not span{e1^e2}")?;
    let three = invariants::invariant_bivectors(&Builtin::GlSym(3).model());
    ensure(three.dim() == 0, format!("gl_sym(3) dim {}", three.dim()))?;
    let start = Instant::now();
    let iso = Builtin::GlSym(4).model();
    let constraints = invariants::invariance_constraints(&iso, invariants::GroupModel::Full);
    let four = invariants::invariant_bivectors(&iso);
    ensure(four.dim() == 0, format!("gl_sym(4) dim {}", four.dim()))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "dims 1, 0, 0; n = 4 with {}x{} constraints in {:?}",
        constraints.rows(),
        constraints.cols(),
        start.elapsed()
    ))
}

fn oracle_equivalence() -> Check {
    let bases = common::base_algebras();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut instances = 0;
    let mut perturbations = 0;
    let mut attempts = 0;
    while instances < 200 {
        attempts += 1;
        ensure(attempts < 5000, "could not sample enough instances")?;
        let Some(inst) = common::random_instance(&mut rng, &bases) else {
            continue;
        };
        let iso = &inst.model;
        let t = poisson::yang_baxter_tensor(iso, &inst.r);
        let lift = Lift::canonical(iso, &inst.r);
        ensure(
            poisson::schouten_oracle(iso, &lift) == t,
            format!("instance {instances} ({}): oracle mismatch", inst.name),
        )?;
        if iso.dim_h() > 0 {
            for _ in 0..2 {
                let coeffs = common::random_vector(&mut rng, iso.dim_h(), 3);
                let u = linalg::combine(&coeffs, iso.h_basis(), iso.dim_g());
                let x = common::random_vector(&mut rng, iso.dim_g(), 3);
                let moved = lift.perturbed(iso, &u, &x).map_err(|e| e.to_string())?;
                ensure(
                    poisson::yang_baxter_tensor_with(iso, &moved) == t && poisson::schouten_oracle(iso, &moved) == t,
                    format!("instance {instances} ({}): lift dependence", inst.name),
                )?;
                perturbations += 1;
            }
        }
        instances += 1;
    }
    Ok(format!("{instances} instances, {perturbations} perturbed lifts, 0 mismatches"))
}

fn bijection() -> Check {
    let mut count = 0;
    for inst in catalog::r_matrix_instances() {
        let iso = &inst.model;
        let leaf = foliation::leaf_cocycle(iso, &inst.r).map_err(|e| format!("{}: {e}", inst.label))?;
        let back = foliation::reconstruct_r(iso, leaf.basis(), leaf.omega()).map_err(|e| format!("{}: {e}", inst.label))?;
        ensure(back == inst.r, format!("{}: r not recovered", inst.label))?;
        let again = foliation::leaf_cocycle(iso, &back).map_err(|e| format!("{}: {e}", inst.label))?;
        ensure(again.space() == leaf.space(), format!("{}: a not recovered", inst.label))?;
        for x in leaf.basis() {
            for y in leaf.basis() {
                ensure(again.eval(x, y) == leaf.eval(x, y), format!("{}: omega not recovered", inst.label))?;
            }
        }
        count += 1;
    }
    Ok(format!("{count} catalog r-matrices, both directions"))
}

fn connections() -> Check {
    let mut count = 0;
    for inst in catalog::r_matrix_instances() {
        let pair = ReductivePair::new(inst.model.clone()).map_err(|e| format!("{}: {e}", inst.label))?;
        let r = &inst.r;
        let name = &inst.label;
        let natural = reductive::build_connection(ConnectionKind::Natural, &pair, r);
        ensure(reductive::torsion_is_zero(&pair, r, &natural), format!("{name}: natural torsion"))?;
        let fedosov = reductive::build_connection(ConnectionKind::Fedosov, &pair, r);
        ensure(reductive::torsion_is_zero(&pair, r, &fedosov), format!("{name}: fedosov torsion"))?;
        ensure(reductive::poisson_compat(r, &fedosov), format!("{name}: fedosov compatibility"))?;
        let canonical = reductive::build_connection(ConnectionKind::Canonical, &pair, r);
        ensure(reductive::curvature_is_zero(&pair, r, &canonical), format!("{name}: canonical curvature"))?;
        ensure(reductive::canonical_identity_holds(&pair, r), format!("{name}: canonical bracket identity"))?;
        count += 1;
    }
    Ok(format!("{count} catalog pairs"))
}

fn morphism() -> Check {
    let mut count = 0;
    for inst in catalog::r_matrix_instances() {
        let iso = &inst.model;
        let fixed = poisson::fixed_space_lie_algebra(iso, &inst.r).map_err(|e| format!("{}: {e}", inst.label))?;
        ensure(fixed.algebra.is_valid(), format!("{}: Jacobi", inst.label))?;
        let g = iso.algebra();
        for a in &fixed.basis {
            for b in &fixed.basis {
                let lhs = inst.r.sharp(&poisson::quotient_bracket(iso, &inst.r, a, b));
                let x = iso.section(&inst.r.sharp(a));
                let y = iso.section(&inst.r.sharp(b));
                ensure(lhs == iso.project(&g.bracket(&x, &y)), format!("{}: intertwining", inst.label))?;
            }
        }
        count += 1;
    }
    Ok(format!("{count} catalog r-matrices"))
}

fn leaf_connection() -> Check {
    let iso = Builtin::So4Grassmann.model();
    let pair = ReductivePair::new(iso).map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for r in [
        Bivector::wedge(&v(&[1, 0, 0, -1]), &v(&[0, 1, 1, 0])),
        Bivector::from_wedge(4, &v(&[1, 0, 0, 0, 0, 1])),
        Bivector::from_wedge(4, &v(&[2, 0, 0, 0, 0, 1])),
    ] {
        let b = reductive::build_connection(ConnectionKind::Fedosov, &pair, &r);
        let lc = reductive::induced_leaf_connection(&pair, &r, &b).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let complement = common::random_complement(&mut rng, &r.image());
            let other = reductive::induced_leaf_connection_with(&pair, &r, &b, Some(&complement)).map_err(|e| e.to_string())?;
            ensure(other.br == lc.br, "leaf connection depends on the complement")?;
        }
        ensure(lc.torsionless, "leaf connection has torsion")?;
        ensure(lc.symplectic, "leaf connection is not symplectic")?;
        ensure(lc.leaf_curvature_zero == lc.bracket_criterion, "flatness disagrees with the bracket criterion")?;
        if lc.base_flat {
            ensure(lc.flat == Some(lc.bracket_criterion), "reported flatness")?;
        }
        reports.push(format!("flat {}", lc.leaf_curvature_zero));
    }
    Ok(reports.join(", "))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Heisenberg invariants", heisenberg),
        ("Poincare dichotomy", poincare),
        ("Grassmannian", grassmannian),
        ("symmetric spaces of gl_n", symmetric_gl),
        ("oracle equivalence", oracle_equivalence),
        ("leaf bijection roundtrip", bijection),
        ("connection identities", connections),
        ("morphism property", morphism),
        ("induced leaf connection", leaf_connection),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
