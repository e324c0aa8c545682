use num_bigint::BigUint;
use oddfact::atlas::*;
use oddfact::orthospace::WittType;

fn n(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn certified_orders_at_q3() {
    let s = standard(3, 3).unwrap();
    let z = omega_group(&s);
    let zb = z.certify(1).unwrap();
    assert_eq!(zb.order(), n(4_585_351_680));
    let g2 = g2_group(&s, &z, &zb, 2).unwrap();
    assert_eq!(g2.bsgs.order(), n(4_245_696));
    assert_eq!(sl3_adjoint(&s).unwrap().certify(3).unwrap().order(), n(5616));
    let plus = vector_stabilizer(&s, &nonsingular_vector(&s, WittType::Plus).unwrap()).unwrap();
    let minus = vector_stabilizer(&s, &nonsingular_vector(&s, WittType::Minus).unwrap()).unwrap();
    assert_eq!(plus.certify(4).unwrap().order(), n(6_065_280));
    assert_eq!(minus.certify(5).unwrap().order(), n(6_531_840));
    assert_eq!(pm_group(&s).certify(6).unwrap().order(), n(4_094_064));
}

#[test]
fn certified_orders_match_formulas() {
    for q in [3u64, 5] {
        let s = standard(3, q).unwrap();
        let (r, t) = parabolic_rt(&s);
        assert_eq!(r.certify(1).unwrap().order(), n(q).pow(6));
        assert_eq!(t.certify(2).unwrap().order(), ord(Family::SL, 3, q));
    }
    let s = standard(2, 5).unwrap();
    assert_eq!(omega_group(&s).certify(3).unwrap().order(), ord(Family::OmegaOdd, 2, 5));
    let s = standard(3, 3).unwrap();
    assert_eq!(
        embed_field_ext(&s, 1, 3, ExtKind::SL)
            .unwrap()
            .certify(4)
            .unwrap()
            .order(),
        n(1)
    );
    let s4 = standard(4, 3).unwrap();
    let sp = embed_field_ext(&s4, 2, 2, ExtKind::Sp).unwrap();
    assert_eq!(sp.certify(5).unwrap().order(), ord(Family::Sp, 2, 9));
    let sl = embed_field_ext(&s4, 2, 2, ExtKind::SL).unwrap();
    assert_eq!(sl.certify(6).unwrap().order(), ord(Family::SL, 2, 9));
}

#[test]
fn generators_preserve_the_form() {
    let s = standard(3, 3).unwrap();
    let groups = [
        omega_group(&s),
        e1_stabilizer(&s),
        pointwise_e1f1(&s),
        su3_adjoint(&s).unwrap(),
        ree_group(&s, false).unwrap(),
        a9_group(&s).unwrap(),
        sp62_group(&s).unwrap(),
        p1_monomial(&s).unwrap(),
        affine_omega4_minus(&s).unwrap().group,
    ];
    for g in &groups {
        assert!(g.gens.iter().all(|m| s.is_isometry(m)), "{}", g.name);
    }
}

#[test]
fn field_extension_normalizes_r() {
    let s = standard(4, 3).unwrap();
    let (r, _) = parabolic_rt(&s);
    let rb = r.certify(1).unwrap();
    for kind in [ExtKind::SL, ExtKind::Sp] {
        let x = embed_field_ext(&s, 2, 2, kind).unwrap();
        for g in &x.gens {
            let gi = g.inverse().unwrap();
            for h in &r.gens {
                assert!(rb.contains(&gi.mul(h).mul(g)));
            }
        }
    }
}

#[test]
fn generator_file_round_trip_and_tamper() {
    let s = standard(3, 3).unwrap();
    let g = su3_adjoint(&s).unwrap();
    let text = g.to_text();
    let back = Group::from_text(&text).unwrap();
    assert_eq!(back.gens, g.gens);
    assert_eq!(back.claimed_order, g.claimed_order);
    assert_eq!(back.provenance.to_string(), g.provenance.to_string());
    let tampered = text.replacen("GF 3 1", "GF 5 1", 1);
    assert!(Group::from_text(&tampered).is_err());
    assert!(Group::from_text("GF 3 1 1 1\nDIM x\n").is_err());
}

#[test]
fn order_formula_examples() {
    assert_eq!(ord(Family::G2, 0, 3), n(4_245_696));
    assert_eq!(ord(Family::OmegaOdd, 3, 3), n(4_585_351_680));
    assert_eq!(ord(Family::SL, 1, 9), n(1));
    for q in [3u64, 5, 7, 9, 25, 27] {
        for m in 2..6u32 {
            let odd = ord(Family::OmegaOdd, m, q);
            assert_eq!(odd % ord(Family::OmegaMinus, m, q), n(0), "m={m} q={q}");
        }
    }
}
