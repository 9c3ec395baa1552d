mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lieps::foliation;
use lieps::invariants::{self, GroupModel};
use lieps::linalg;
use lieps::poisson::{self, Lift};
use lieps::{IsotropyModel, LieAlgebra, Rational};

fn instance(seed: u64) -> Option<(ChaCha8Rng, common::RandomInstance)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = common::base_algebras();
    (0..20).find_map(|_| common::random_instance(&mut rng, &bases)).map(|inst| (rng, inst))
}

fn other_complement(rng: &mut ChaCha8Rng, iso: &IsotropyModel<Rational>) -> IsotropyModel<Rational> {
    let complement = common::random_complement(rng, iso.h());
    let alg: LieAlgebra<Rational> = iso.algebra().clone();
    IsotropyModel::with_complement(alg, iso.h_basis(), complement, iso.generators().to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tensor_matches_oracle_for_any_lift(seed in any::<u64>()) {
        let Some((mut rng, inst)) = instance(seed) else { return Ok(()); };
        let iso = &inst.model;
        let t = poisson::yang_baxter_tensor(iso, &inst.r);
        prop_assert!(t.is_antisymmetric());
        let lift = Lift::canonical(iso, &inst.r);
        prop_assert_eq!(&poisson::schouten_oracle(iso, &lift), &t);
        if iso.dim_h() > 0 {
            let coeffs = common::random_vector(&mut rng, iso.dim_h(), 2);
            let u = linalg::combine(&coeffs, iso.h_basis(), iso.dim_g());
            let x = common::random_vector(&mut rng, iso.dim_g(), 2);
            let moved = lift.perturbed(iso, &u, &x).unwrap();
            prop_assert_eq!(&poisson::yang_baxter_tensor_with(iso, &moved), &t);
        }
    }

    #[test]
    fn results_do_not_depend_on_the_complement(seed in any::<u64>()) {
        let Some((mut rng, inst)) = instance(seed) else { return Ok(()); };
        let a = &inst.model;
        let b = other_complement(&mut rng, a);
        let t = a.transition_to(&b);
        let r_b = inst.r.transform(&t);
        prop_assert!(poisson::is_invariant(&b, &r_b));
        prop_assert_eq!(invariants::invariant_bivectors(&b).dim(), invariants::invariant_bivectors(a).dim());
        let ta = poisson::yang_baxter_tensor(a, &inst.r);
        let tb = poisson::yang_baxter_tensor(&b, &r_b);
        let m = a.codim();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let pull = |c: usize| t.transpose_mul_vec(&linalg::unit(m, c));
                    prop_assert_eq!(tb.get(i, j, k), &ta.eval(&pull(i), &pull(j), &pull(k)));
                }
            }
        }
        prop_assert_eq!(b.transition_to(a), t.inverse().unwrap());
    }

    #[test]
    fn invariant_bivectors_keep_the_annihilator_closed(seed in any::<u64>()) {
        let Some((_, inst)) = instance(seed) else { return Ok(()); };
        let iso = &inst.model;
        prop_assert!(poisson::satisfies_sharp_equivariance(iso, &inst.r));
        let lift = Lift::canonical(iso, &inst.r);
        let ann = iso.ann().basis().to_vec();
        for eta in &ann {
            for xi in &ann {
                let br = poisson::hcirc_bracket(iso, &lift, eta, xi).unwrap();
                prop_assert!(iso.ann().contains(&br));
            }
        }
    }

    #[test]
    fn group_models_are_nested(seed in any::<u64>()) {
        let Some((_, inst)) = instance(seed) else { return Ok(()); };
        let iso = &inst.model;
        let full = invariants::invariant_bivectors_with(iso, GroupModel::Full);
        let connected = invariants::invariant_bivectors_with(iso, GroupModel::Connected);
        let discrete = invariants::invariant_bivectors_with(iso, GroupModel::Discrete);
        prop_assert!(full.space().is_subspace_of(connected.space()).unwrap());
        prop_assert!(full.space().is_subspace_of(discrete.space()).unwrap());
        for r in full.bivectors() {
            prop_assert!(poisson::is_invariant(iso, &r));
        }
        let fixed = invariants::fixed_quotient_covectors(iso);
        let vectors = invariants::fixed_quotient_vectors(iso);
        prop_assert!(fixed.dim() <= iso.codim() && vectors.dim() <= iso.codim());
    }

    #[test]
    fn r_matrices_roundtrip_through_their_leaf(seed in any::<u64>()) {
        let Some((_, inst)) = instance(seed) else { return Ok(()); };
        let iso = &inst.model;
        if !poisson::is_r_matrix(iso, &inst.r) {
            return Ok(());
        }
        let leaf = foliation::leaf_cocycle(iso, &inst.r).unwrap();
        prop_assert_eq!(&leaf.radical(), iso.h());
        let back = foliation::reconstruct_r(iso, leaf.basis(), leaf.omega()).unwrap();
        prop_assert_eq!(back, inst.r.clone());
        let fixed = poisson::fixed_space_lie_algebra(iso, &inst.r).unwrap();
        prop_assert!(fixed.algebra.is_valid());
    }
}
