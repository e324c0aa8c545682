use num_bigint::BigUint;
use oddfact::atlas::{nonsingular_vector, omega_group, sl_generators, standard, vector_stabilizer};
use oddfact::engine::action::encode;
use oddfact::engine::{
    orbit, schreier_sims, suborbit_transitivity, Action, CosetSpace, LineAction, Natural, Perm, ProductReplacement,
    SsOptions, Strategy,
};
use oddfact::gf::make_field;
use oddfact::orthospace::{Mat, WittType};
use oddfact::verifier::fingerprint::closure_size;
use proptest::prelude::*;

fn sl33() -> (Vec<Mat>, Mat) {
    let f = make_field(3, 1).unwrap();
    (sl_generators(&f, 3), Mat::identity(&f, 3))
}

/// A few random elements of SL3(3); their span is a random subgroup.
fn random_subgroup(seed: u64, k: usize) -> (Vec<Mat>, Mat) {
    let (gens, id) = sl33();
    let mut pr = ProductReplacement::new(&gens, &id, seed);
    ((0..k).map(|_| pr.next_element()).collect(), id)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bsgs_order_matches_closure(seed in any::<u64>(), k in 1usize..3) {
        let (gens, id) = random_subgroup(seed, k);
        let b = schreier_sims(&gens, &id, &SsOptions::seeded(seed)).unwrap();
        if let Some(n) = closure_size(&gens, &id, 5000) {
            prop_assert_eq!(b.order(), BigUint::from(n));
        }
        prop_assert!(BigUint::from(5616u32) % b.order() == BigUint::ZERO);
    }

    #[test]
    fn strong_generators_sift_to_identity(seed in any::<u64>(), k in 1usize..3) {
        let (gens, id) = random_subgroup(seed, k);
        let b = schreier_sims(&gens, &id, &SsOptions::seeded(seed)).unwrap();
        prop_assert!(b.contains(&id));
        for g in b.strong_generators().iter().chain(&gens) {
            prop_assert!(b.contains(g));
        }
        let product: BigUint = b.orbit_sizes().iter().map(|&n| BigUint::from(n)).product();
        prop_assert_eq!(product, b.order());
    }

    #[test]
    fn orbits_divide_the_group_order(seed in any::<u64>(), v in prop::collection::vec(0u32..3, 3)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let (gens, id) = random_subgroup(seed, 2);
        let b = schreier_sims(&gens, &id, &SsOptions::seeded(seed)).unwrap();
        let o = orbit(&Natural, &gens, encode(3, &v), 100_000).unwrap();
        prop_assert!(b.order() % BigUint::from(o.len()) == BigUint::ZERO);
        let la = LineAction::new(gens[0].field(), 3);
        let lo = orbit(&la, &gens, la.point(&v), 100_000).unwrap();
        prop_assert!(b.order() % BigUint::from(lo.len()) == BigUint::ZERO);
    }

    #[test]
    fn natural_action_axioms(seed in any::<u64>(), v in prop::collection::vec(0u32..3, 3)) {
        let (gens, id) = random_subgroup(seed, 2);
        let (g, h) = (&gens[0], &gens[1]);
        let x = encode(3, &v);
        prop_assert_eq!(Natural.act(&id, x), x);
        prop_assert_eq!(Natural.act(&g.mul(h), x), Natural.act(h, Natural.act(g, x)));
    }

    #[test]
    fn permutation_bsgs_matches_closure(seed in any::<u64>()) {
        let id = Perm::identity(7);
        let s7 = [Perm::from_cycles(7, &[&[0, 1]]), Perm::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]])];
        let mut pr = ProductReplacement::new(&s7, &id, seed);
        let gens: Vec<Perm> = (0..2).map(|_| pr.next_element()).collect();
        let b = schreier_sims(&gens, &id, &SsOptions::seeded(seed)).unwrap();
        prop_assert_eq!(b.order(), BigUint::from(closure_size(&gens, &id, 6000).unwrap()));
    }
}

#[test]
fn suborbit_consistency_in_omega7() {
    // X = Ω6^+ vector stabilizer acting on the cosets of the Ω6^- stabilizer.
    let s = standard(3, 3).unwrap();
    let z = omega_group(&s);
    let zb = z.certify(1).unwrap();
    let vm = nonsingular_vector(&s, WittType::Minus).unwrap();
    let vp = nonsingular_vector(&s, WittType::Plus).unwrap();
    let y = vector_stabilizer(&s, &vm).unwrap();
    let x = vector_stabilizer(&s, &vp).unwrap();
    let yb = y.certify(2).unwrap();
    let xb = x.certify(3).unwrap();
    let c = CosetSpace::from_invariant(
        Strategy::VectorOrbit,
        Box::new(Natural),
        encode(3, &vm),
        &z.gens,
        &zb.order(),
        &yb.order(),
        5_000_000,
    )
    .unwrap();
    assert_eq!(BigUint::from(c.index()), zb.order() / yb.order());
    let sub = suborbit_transitivity(&c, &xb, &x.gens, 4, 5_000_000).unwrap();
    assert_eq!(BigUint::from(sub.orbit_size) * sub.intersection.order(), xb.order());
    assert!(sub.orbit_size < sub.index);
}

#[test]
fn pairwise_cosets_of_a_point_stabilizer() {
    // Y = S4 fixing 4 inside S5: five cosets, enumerated without any invariant.
    let id = Perm::identity(5);
    let s5 = vec![
        Perm::from_cycles(5, &[&[0, 1]]),
        Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]),
    ];
    let s4 = vec![Perm::from_cycles(5, &[&[0, 1]]), Perm::from_cycles(5, &[&[0, 1, 2, 3]])];
    let zb = schreier_sims(&s5, &id, &SsOptions::seeded(1)).unwrap();
    let yb = schreier_sims(&s4, &id, &SsOptions::seeded(2)).unwrap();
    let c = CosetSpace::generic_pairwise(&s5, &zb.order(), &yb, &s4, &[0, 1, 2, 3, 4], 1000).unwrap();
    assert_eq!(c.index(), 5);
    assert_eq!(c.strategy(), Strategy::GenericPairwise);
    let cases: [(Vec<Perm>, usize, u32); 3] = [
        (
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2]]),
                Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]),
            ],
            5,
            12,
        ),
        (vec![Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]])], 5, 1),
        (s4.clone(), 1, 24),
    ];
    for (x, orbit_size, inter) in cases {
        let xb = schreier_sims(&x, &id, &SsOptions::seeded(3)).unwrap();
        let sub = suborbit_transitivity(&c, &xb, &x, 4, 1000).unwrap();
        assert_eq!(sub.orbit_size, orbit_size);
        assert_eq!(sub.intersection.order(), BigUint::from(inter));
    }
}
