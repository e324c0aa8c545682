use num_bigint::BigUint;
use oddfact::atlas::{omega_group, sl_generators, standard};
use oddfact::engine::{schreier_sims, ProductReplacement, SsOptions};
use oddfact::gf::make_field;
use oddfact::orthospace::Mat;
use oddfact::verifier::{
    cases, discover_subgroup, fingerprint, negative_controls, registry_consistency, run_case, Mode, Report, RunOptions,
    Verdict, VerifierError, Workbench,
};
use proptest::prelude::*;
use serde_json::Value;

fn bench(seed: u64, mode: Mode) -> Workbench {
    Workbench::new(RunOptions {
        seed,
        mode,
        ..RunOptions::default()
    })
}

fn case(row: u8, m: Option<usize>, id: &str) -> oddfact::verifier::FactorCase {
    cases(row, 3, m, 5_000_000)
        .into_iter()
        .find(|c| c.id.contains(id))
        .unwrap_or_else(|| panic!("no case {id}"))
}

fn intersection_order(r: &Report) -> String {
    r.measured["intersection"]["order"].as_str().unwrap().to_string()
}

#[test]
fn registry_is_self_consistent() {
    let r = registry_consistency(&[3, 5, 7, 9, 11, 13, 25, 27, 81], 5_000_000);
    assert_eq!(r.verdict, Verdict::Holds, "{:?}", r.measured["inconsistencies"]);
}

#[test]
fn parabolic_row_intersection_cross_check() {
    let r = run_case(&bench(1, Mode::Constructive), &case(1, Some(3), "SL3(q^1)"));
    assert_eq!(r.verdict, Verdict::Holds);
    assert!(r.matches);
    assert_eq!(intersection_order(&r), (BigUint::from(3u32).pow(5) * 24u32).to_string());
}

#[test]
fn holds_verdicts_satisfy_the_product_identity() {
    let wb = bench(3, Mode::Constructive);
    for c in cases(3, 3, None, 5_000_000)
        .into_iter()
        .chain(cases(4, 3, None, 5_000_000))
    {
        let r = run_case(&wb, &c);
        assert_eq!(r.verdict, Verdict::Holds, "{}", c.id);
        assert_eq!(r.measured["productIdentity"], Value::Bool(true), "{}", c.id);
        assert_eq!(r.measured["orbitSize"], r.measured["index"], "{}", c.id);
    }
}

#[test]
fn results_do_not_depend_on_the_seed() {
    for (row, id) in [(3u8, "su3"), (9, "S8"), (8, "omega6plus-vs-A9")] {
        let c = case(row, None, id);
        let a = run_case(&bench(11, Mode::Constructive), &c);
        let b = run_case(&bench(12345, Mode::Constructive), &c);
        assert_eq!(a.verdict, b.verdict, "{id}");
        assert_eq!(a.measured["intersection"], b.measured["intersection"], "{id}");
        assert_eq!(a.measured["orbitSize"], b.measured["orbitSize"], "{id}");
    }
}

#[test]
fn cache_does_not_change_results() {
    let dir = std::env::temp_dir().join(format!("oddfact-cache-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let c = case(2, None, "omega5");
    let plain = run_case(&bench(5, Mode::Constructive), &c);
    let cached = || {
        let wb = Workbench::new(RunOptions {
            seed: 5,
            mode: Mode::Constructive,
            cache_dir: Some(dir.clone()),
            ..RunOptions::default()
        });
        run_case(&wb, &c)
    };
    let first = cached();
    let second = cached();
    assert!(second.timings.cache_hits > 0);
    for r in [&first, &second] {
        assert_eq!(r.to_json(false), plain.to_json(false));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn negative_controls_fail_as_expected() {
    let reports = negative_controls(&bench(1, Mode::Both));
    assert_eq!(reports.len(), 3);
    for r in &reports {
        assert!(r.matches, "{}", r.case_id);
    }
    let ree = reports.iter().find(|r| r.case_id.contains("ree-derived")).unwrap();
    assert_eq!(ree.verdict, Verdict::Fails);
    assert!(ree.notes.iter().any(|n| n.contains("504 < 756")));
    let inside = reports.iter().find(|r| r.case_id.contains("inside-y")).unwrap();
    assert_eq!(inside.verdict, Verdict::Fails);
    let full = reports.iter().find(|r| r.case_id.starts_with("row3/ree")).unwrap();
    assert_eq!(full.verdict, Verdict::Holds);
}

#[test]
fn declared_caps_skip_in_constructive_mode() {
    let r = run_case(&bench(1, Mode::Constructive), &case(6, None, "f4"));
    assert!(r.skipped());
    assert!(r.matches);
    let a = run_case(&bench(1, Mode::Both), &case(6, None, "f4"));
    assert_eq!(a.verdict, Verdict::ArithmeticOnly);
}

#[test]
fn discovery_errors() {
    let s = standard(3, 3).unwrap();
    let z = omega_group(&s);
    let zb = z.certify(1).unwrap();
    let bad = discover_subgroup(&z, &zb, &BigUint::from(11u32), &[11], 10, 1);
    assert!(matches!(bad, Err(VerifierError::BadTarget(_))));
    // Involutions generate no group of order 7.
    let none = discover_subgroup(&z, &zb, &BigUint::from(7u32), &[2], 5, 1);
    assert!(matches!(none, Err(VerifierError::NotFound(5))));
    let found = discover_subgroup(&z, &zb, &BigUint::from(13u32), &[13], 5, 1).unwrap();
    assert_eq!(found.certify(1).unwrap().order(), BigUint::from(13u32));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fingerprint_invariants(seed in any::<u64>(), k in 1usize..3) {
        let f = make_field(3, 1).unwrap();
        let id = Mat::identity(&f, 3);
        let mut pr = ProductReplacement::new(&sl_generators(&f, 3), &id, seed);
        let gens: Vec<Mat> = (0..k).map(|_| pr.next_element()).collect();
        let b = schreier_sims(&gens, &id, &SsOptions::seeded(seed)).unwrap();
        let fp = fingerprint(&b, &gens);
        prop_assert!(&fp.order % &fp.derived_order == BigUint::ZERO);
        prop_assert_eq!(fp.is_perfect, fp.derived_order == fp.order);
        let total: u64 = fp.histogram.as_ref().unwrap().values().sum();
        prop_assert_eq!(BigUint::from(total), fp.order.clone());
        if let Some(inv) = &fp.abelian_invariants {
            let prod: u64 = inv.iter().product();
            prop_assert_eq!(BigUint::from(prod) * &fp.derived_order, fp.order.clone());
        }
    }
}
