mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::v;
use lieps::catalog::{self, Builtin};
use lieps::invariants;
use lieps::linalg;
use lieps::poisson::{self, Bivector};
use lieps::reductive::{self, ConnectionKind, ConnectionMap, ReductivePair};
use lieps::Error;

#[test]
fn nomizu_roundtrip_on_catalog() {
    for inst in catalog::r_matrix_instances() {
        let pair = ReductivePair::new(inst.model.clone()).unwrap();
        for kind in ConnectionKind::ALL {
            let b = reductive::build_connection(kind, &pair, &inst.r);
            if !reductive::is_f_connection(&b, &inst.r) {
                assert_eq!(
                    reductive::f_connection_to_nomizu(&b, &inst.r).unwrap_err(),
                    Error::NotAnFConnection
                );
                continue;
            }
            let psi = reductive::f_connection_to_nomizu(&b, &inst.r).unwrap();
            assert_eq!(reductive::nomizu_to_contravariant(&psi, &inst.r), b, "{} {kind}", inst.label);
        }
    }
}

#[test]
fn fedosov_is_an_f_connection_on_catalog() {
    for inst in catalog::r_matrix_instances() {
        let pair = ReductivePair::new(inst.model.clone()).unwrap();
        let b = reductive::build_connection(ConnectionKind::Fedosov, &pair, &inst.r);
        assert!(reductive::is_f_connection(&b, &inst.r), "{}", inst.label);
    }
}

#[test]
fn nomizu_of_any_map_gives_an_f_connection() {
    let r = Bivector::wedge(&v(&[1, 0, 0]), &v(&[0, 0, 1]));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut psi = reductive::NomizuMap::zero(3);
    for m in psi.matrices.iter_mut() {
        *m = lieps::Matrix::from_fn(3, 3, |_, _| common::q(rand::Rng::gen_range(&mut rng, -3..=3)));
    }
    let b = reductive::nomizu_to_contravariant(&psi, &r);
    assert!(reductive::is_f_connection(&b, &r));
    let back = reductive::f_connection_to_nomizu(&b, &r).unwrap();
    assert_eq!(reductive::nomizu_to_contravariant(&back, &r), b);
}

fn random_connection(rng: &mut ChaCha8Rng, m: usize) -> ConnectionMap<lieps::Rational> {
    ConnectionMap::from_fn(m, |_, _| common::random_vector(rng, m, 3))
}

#[test]
fn random_connections_fail_compatibility() {
    let iso = Builtin::GlSym(2).model();
    let r = invariants::invariant_bivectors(&iso).bivectors()[0].clone();
    let pair = ReductivePair::new(iso).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let b = random_connection(&mut rng, pair.dim_m());
        assert!(!reductive::poisson_compat(&r, &b));
        assert!(reductive::compat_violation(&r, &b).is_some());
    }
    let fedosov = reductive::build_connection(ConnectionKind::Fedosov, &pair, &r);
    assert_eq!(reductive::compat_violation(&r, &fedosov), None);
}

#[test]
fn random_connections_fail_invariance() {
    let iso = Builtin::So4Grassmann.model();
    let pair = ReductivePair::new(iso).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10 {
        let b = random_connection(&mut rng, pair.dim_m());
        assert!(!reductive::ad_invariance_check(&b, &pair));
    }
    assert!(reductive::ad_invariance_check(&ConnectionMap::zero(4), &pair));
}

#[test]
fn canonical_torsion_is_minus_the_bracket() {
    for inst in catalog::r_matrix_instances() {
        let pair = ReductivePair::new(inst.model.clone()).unwrap();
        let b = reductive::build_connection(ConnectionKind::Canonical, &pair, &inst.r);
        assert!(b.is_zero());
        let m = pair.dim_m();
        for ((i, j), t) in reductive::torsion_table(&pair, &inst.r, &b) {
            let br = reductive::mstar_bracket(&pair, &inst.r, &linalg::unit(m, i), &linalg::unit(m, j));
            assert_eq!(linalg::add(&t, &br), vec![common::q(0); m]);
        }
    }
}

#[test]
fn reductive_bracket_matches_quotient_bracket() {
    for inst in catalog::r_matrix_instances() {
        let pair = ReductivePair::new(inst.model.clone()).unwrap();
        let m = pair.dim_m();
        for a in 0..m {
            for b in 0..m {
                let (x, y) = (linalg::unit(m, a), linalg::unit(m, b));
                assert_eq!(
                    reductive::mstar_bracket(&pair, &inst.r, &x, &y),
                    poisson::quotient_bracket(&inst.model, &inst.r, &x, &y),
                    "{}",
                    inst.label
                );
            }
        }
    }
}

#[test]
fn reductive_criterion_agrees_with_yang_baxter() {
    let models = [
        Builtin::Heisenberg(1),
        Builtin::Heisenberg(2),
        Builtin::Iso11,
        Builtin::So4Grassmann,
        Builtin::GlSym(2),
        Builtin::Abelian(4),
        Builtin::Double(Box::new(Builtin::Iso11)),
    ];
    for builtin in models {
        let iso = builtin.model();
        let pair = ReductivePair::new(iso.clone()).unwrap();
        let basis = invariants::invariant_bivectors(&iso).bivectors();
        let mut candidates = basis.clone();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                candidates.push(basis[i].add(&basis[j]));
                candidates.push(basis[i].add(&basis[j].scale(&common::q(-2))));
            }
        }
        for r in candidates {
            assert_eq!(
                reductive::check_reductive_r_matrix(&pair, &r),
                poisson::is_r_matrix(&iso, &r),
                "{builtin}"
            );
        }
    }
}

#[test]
fn connection_kinds_parse() {
    for kind in ConnectionKind::ALL {
        assert_eq!(kind.name().parse::<ConnectionKind>().unwrap(), kind);
    }
    assert_eq!("left_symmetric".parse::<ConnectionKind>().unwrap(), ConnectionKind::LeftSymmetric);
    assert!("flat".parse::<ConnectionKind>().is_err());
}
