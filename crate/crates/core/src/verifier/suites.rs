//! Property suites, negative controls, registry consistency and the
//! discovery wrapper.

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};

use super::fingerprint::derived_subgroup;
use super::registry::{cases, controls, Row2X};
use super::report::{Expectation, Report, Verdict};
use super::run::run_case;
use super::{big, VerifierError, Workbench};
use crate::atlas::{
    discover_subgroup as search, e1_stabilizer, line_stabilizer_elements, nonsingular_vector, parabolic_rt,
    perp_model_space, pointwise_e1f1, proof_elements, r_extended, standard, vector_stabilizer, Group, Provenance,
};
use crate::engine::action::encode;
use crate::engine::{
    schreier_sims, stabilizer, suborbit_transitivity, Bsgs, CosetSpace, Element, FormAction, Natural,
    ProductReplacement, SsOptions, Strategy,
};
use crate::gf::make_field;
use crate::orthospace::{Mat, OrthSpace, WittType};

fn suite_report(id: &str, seed: u64) -> Report {
    let mut r = Report::new(id, seed);
    r.expectation = Expectation::Holds;
    r
}

fn finish(mut r: Report, ok: bool) -> Report {
    r.verdict = if ok { Verdict::Holds } else { Verdict::Fails };
    r.matches = ok;
    r
}

fn fail_report(id: &str, seed: u64, e: VerifierError) -> Report {
    let mut r = suite_report(id, seed);
    r.verdict = Verdict::Skipped(format!("construction error: {e}"));
    r.construction_error = true;
    r.matches = false;
    r
}

/// The two failing controls plus the full Ree group, which must hold.
pub fn negative_controls(wb: &Workbench) -> Vec<Report> {
    let mut list = controls();
    list.extend(
        cases(3, 3, None, wb.opts.cap_points)
            .into_iter()
            .filter(|c| c.id.contains("ree")),
    );
    list.iter().map(|c| run_case(wb, c)).collect()
}

/// Registry self-consistency over every row and a sweep of q: the index
/// times the expected intersection equals |X|, and admissible cases pass
/// the order screen exactly when they are expected to.
pub fn registry_consistency(q_list: &[u64], cap_points: usize) -> Report {
    let mut r = suite_report("suite/registry-consistency", 0);
    let mut bad = Vec::new();
    let mut checked = 0u64;
    for &q in q_list {
        for row in 1..=11u8 {
            for c in cases(row, q, None, cap_points) {
                checked += 1;
                if let (Some(index), Some(inter)) = (c.index(), &c.intersection) {
                    if &index * inter != c.x_order {
                        bad.push(format!("{}: index * intersection != |X|", c.id));
                    }
                }
                let screen = c.screen().is_ok();
                if (c.expectation == Expectation::Holds) != screen && c.expectation != Expectation::Open {
                    bad.push(format!("{}: order screen disagrees with the expectation", c.id));
                }
            }
        }
    }
    r.measured.insert("casesChecked".into(), Value::from(checked));
    r.measured.insert("inconsistencies".into(), json!(bad));
    finish(r, bad.is_empty() && checked > 0)
}

/// The Row 2 X options as built groups.
fn row2_groups(wb: &Workbench) -> Result<Vec<(Row2X, Group)>, VerifierError> {
    let a = wb.ambient(3, 3)?;
    let s = &a.space;
    Ok(vec![
        (
            Row2X::Omega6Plus,
            vector_stabilizer(s, &nonsingular_vector(s, WittType::Plus)?)?,
        ),
        (
            Row2X::Omega6Minus,
            vector_stabilizer(s, &nonsingular_vector(s, WittType::Minus)?)?,
        ),
        (Row2X::Omega5, pointwise_e1f1(s)),
        (Row2X::Q5Omega5, e1_stabilizer(s)),
        (Row2X::Q4Omega4Minus, wb.affine_omega4(3)?.group.clone()),
    ])
}

/// `(orbit, |X^x ∩ G2^y|)` for X conjugated by x and G2 by y.
fn conjugate_pair(wb: &Workbench, x_group: &Group, x: &Mat, y: &Mat) -> Result<(usize, BigUint), VerifierError> {
    let a = wb.ambient(3, 3)?;
    let g2 = wb.g2(3)?;
    let fa = FormAction::new(a.space.field(), 7);
    let point = crate::engine::Action::act(&fa, y, g2.point);
    let c = CosetSpace::from_invariant(
        Strategy::InvariantSignature,
        Box::new(fa),
        point,
        &a.z.gens,
        &a.zb.order(),
        &g2.bsgs.order(),
        wb.opts.cap_points,
    )?;
    let xc = x_group.conjugated(x);
    let xb = schreier_sims(
        &xc.gens,
        &xc.identity(),
        &SsOptions::with_target(wb.seed(), x_group.claimed_order.clone().unwrap_or_default()),
    )?;
    let s = suborbit_transitivity(&c, &xb, &xc.gens, wb.seed(), wb.opts.cap_points)?;
    Ok((s.orbit_size, s.intersection.order()))
}

/// Conjugation closure: factorizations and intersection orders are
/// unchanged when X and Y are replaced by conjugates under Z.
pub fn conjugation_closure_suite(wb: &Workbench, pairs: usize) -> Report {
    let id = "suite/conjugation-closure";
    let run = || -> Result<Report, VerifierError> {
        let mut r = suite_report(id, wb.seed());
        let a = wb.ambient(3, 3)?;
        let xs = row2_groups(wb)?;
        let id_m = a.z.identity();
        let index = a.zb.order() / wb.g2(3)?.bsgs.order();
        let base: Vec<BigUint> = xs
            .iter()
            .map(|(_, g)| conjugate_pair(wb, g, &id_m, &id_m).map(|(_, i)| i))
            .collect::<Result<_, _>>()?;
        let mut pr = ProductReplacement::new(&a.z.gens, &id_m, wb.seed());
        let mut rows = Vec::new();
        let mut ok = true;
        for k in 0..pairs {
            let x = pr.next_element();
            let y = pr.next_element();
            let (kind, g) = &xs[k % xs.len()];
            let (orbit, inter) = conjugate_pair(wb, g, &x, &y)?;
            let holds = BigUint::from(orbit) == index && inter == base[k % xs.len()];
            ok &= holds;
            rows.push(json!({ "pair": k, "x": format!("{kind:?}"), "orbitSize": orbit, "intersectionOrder": inter.to_string(), "preserved": holds }));
        }
        // Identity pair: same values as the unconjugated run.
        let (orbit, inter) = conjugate_pair(wb, &xs[0].1, &id_m, &id_m)?;
        let identity_ok = BigUint::from(orbit) == index && inter == base[0];
        ok &= identity_ok;
        // Out-of-hypothesis probe: conjugation by the reflection r_d (not in Z).
        let rd = a
            .space
            .reflection(&a.space.d())
            .map_err(|e| VerifierError::Construction(e.to_string()))?;
        let (p_orbit, p_inter) = conjugate_pair(wb, &xs[0].1, &rd, &id_m)?;
        r.measured.insert("pairs".into(), Value::Array(rows));
        r.measured
            .insert("identityPairPreserved".into(), Value::Bool(identity_ok));
        r.measured.insert(
            "reflectionProbe".into(),
            json!({ "orbitSize": p_orbit, "intersectionOrder": p_inter.to_string(), "asserted": false }),
        );
        r.expected.insert("index".into(), Value::String(index.to_string()));
        r.expected.insert(
            "intersectionOrders".into(),
            Value::Array(base.iter().map(|b| Value::String(b.to_string())).collect()),
        );
        Ok(finish(r, ok))
    };
    run().unwrap_or_else(|e| fail_report(id, wb.seed(), e))
}

/// Whether `g` commutes with every element of `gens`.
fn central(g: &Mat, gens: &[Mat]) -> bool {
    gens.iter().all(|s| g.mul(s) == s.mul(g))
}

/// R is special: `R' = Z(R)` of order `q^{m(m-1)/2}` and `R/R'` is
/// elementary abelian of order `q^m`.
pub fn special_group_suite(wb: &Workbench, params: &[(usize, u64)]) -> Report {
    let id = "suite/special-group";
    let mut r = suite_report(id, wb.seed());
    let mut ok = true;
    let mut rows = Vec::new();
    for &(m, q) in params {
        let res = (|| -> Result<Value, VerifierError> {
            let space = standard(m, q)?;
            let p = space.field().characteristic() as u64;
            let (rg, _) = parabolic_rt(&space);
            let rb = rg.certify(wb.seed())?;
            let mu = m as u32;
            let expect_r = big(q).pow(mu * (mu - 1) / 2 + mu);
            let expect_d = big(q).pow(mu * (mu - 1) / 2);
            let id_m = rg.identity();
            let d = derived_subgroup(&rg.gens, &id_m);
            let mut center = Bsgs::trivial(&id_m);
            let mut center_size = 0u64;
            rb.for_each_element(|g| {
                if central(g, &rg.gens) {
                    center_size += 1;
                    center.add_element(g);
                }
            });
            let d_in_center = d.strong_generators().iter().all(|g| central(g, &rg.gens));
            let center_in_d = center.strong_generators().iter().all(|g| d.contains(g));
            let exponent_p = rg.gens.iter().all(|g| d.contains(&g.pow(p)));
            // Generators outside R' together with R' regenerate R.
            let mut regen = d.clone();
            for g in rg.gens.iter().filter(|g| !d.contains(g)) {
                regen.add_element(g);
            }
            let pass = rb.order() == expect_r
                && d.order() == expect_d
                && BigUint::from(center_size) == expect_d
                && d_in_center
                && center_in_d
                && exponent_p
                && regen.order() == expect_r
                && &expect_r / &expect_d == big(q).pow(mu);
            Ok(json!({
                "m": m, "q": q,
                "rOrder": rb.order().to_string(),
                "derivedOrder": d.order().to_string(),
                "centerOrder": center_size.to_string(),
                "derivedEqualsCenter": d_in_center && center_in_d,
                "quotientExponentP": exponent_p,
                "regenerates": regen.order() == expect_r,
                "passes": pass,
            }))
        })();
        match res {
            Ok(v) => {
                ok &= v["passes"] == Value::Bool(true);
                rows.push(v);
            }
            Err(e) => return fail_report(id, wb.seed(), e),
        }
    }
    r.measured.insert("cases".into(), Value::Array(rows));
    finish(r, ok)
}

/// The group induced on `U = ⟨e_1..e_m⟩` by matrices that stabilize it.
fn induced_on_u(space: &OrthSpace, g: &Mat) -> Mat {
    let m = space.m();
    let mut a = Mat::zeros(space.field(), m, m);
    for i in 0..m {
        for j in 0..m {
            a.set(i, j, g.get(2 * i, 2 * j));
        }
    }
    a
}

/// Intersections of `M = R:T` with `K = Z_v`: `|R∩K| = q^{(m-1)(m-2)/2+m-1}`
/// and the group induced on U has order `q^{m-1}|SL_{m-1}(q)|`.
pub fn parabolic_intersection_suite(wb: &Workbench, params: &[(usize, u64)]) -> Report {
    let id = "suite/parabolic-intersection";
    let mut r = suite_report(id, wb.seed());
    let mut ok = true;
    let mut rows = Vec::new();
    for &(m, q) in params {
        let res = (|| -> Result<Value, VerifierError> {
            let space = standard(m, q)?;
            let (rg, t) = parabolic_rt(&space);
            let mg = r_extended(&space, &t);
            let v = nonsingular_vector(&space, WittType::Minus)?;
            let pt = encode(space.field().order(), &v);
            let cap = wb.opts.cap_points;
            let mb = mg.certify(wb.seed())?;
            let rb = rg.certify(wb.seed())?;
            let (mk, m_orbit) = stabilizer(&mb, &mg.gens, &Natural, pt, wb.seed(), cap)?;
            let (rk, _) = stabilizer(&rb, &rg.gens, &Natural, pt, wb.seed(), cap)?;
            let induced: Vec<Mat> = mk.generators().iter().map(|g| induced_on_u(&space, g)).collect();
            let id_u = Mat::identity(space.field(), m);
            let ib = schreier_sims(&induced, &id_u, &SsOptions::seeded(wb.seed()))?;
            let mu = m as u32;
            let expect_rk = big(q).pow((mu - 1) * (mu - 2) / 2 + mu - 1);
            let expect_ind = big(q).pow(mu - 1) * crate::atlas::ord(crate::atlas::Family::SL, mu - 1, q);
            let index = big(q).pow(mu) * (big(q).pow(mu) - BigUint::one());
            let pass = rk.order() == expect_rk && ib.order() == expect_ind && BigUint::from(m_orbit.len()) == index;
            Ok(json!({
                "m": m, "q": q,
                "mOrbit": m_orbit.len(),
                "mCapK": mk.order().to_string(),
                "rCapK": rk.order().to_string(),
                "inducedOnU": ib.order().to_string(),
                "expectedRCapK": expect_rk.to_string(),
                "expectedInduced": expect_ind.to_string(),
                "passes": pass,
            }))
        })();
        match res {
            Ok(v) => {
                ok &= v["passes"] == Value::Bool(true);
                rows.push(v);
            }
            Err(e) => return fail_report(id, wb.seed(), e),
        }
    }
    r.measured.insert("cases".into(), Value::Array(rows));
    finish(r, ok)
}

/// `h(a)k(a) = σ(a)` for every a, σ(a) an isometry of order p for a ≠ 0,
/// and the ρ, σ2 elements: isometries stabilizing ⟨e1⟩ of orders p and 2.
pub fn proof_element_suite(q_list: &[u64]) -> Report {
    let id = "suite/proof-elements";
    let mut r = suite_report(id, 0);
    let mut ok = true;
    let mut rows = Vec::new();
    for &q in q_list {
        let res = (|| -> Result<Value, VerifierError> {
            let (p, f) = crate::atlas::orders::prime_power(q)
                .ok_or_else(|| VerifierError::BadTarget(format!("{q} is not a prime power")))?;
            let field = make_field(p, f).map_err(crate::atlas::AtlasError::from)?;
            let xs = perp_model_space(&field)?;
            let mut identities = true;
            for a in 0..field.order() {
                let e = proof_elements(&field, a);
                identities &= e.h.mul(&e.k) == e.sigma && xs.is_isometry(&e.sigma);
                let want = if a == 0 { 1 } else { p };
                identities &= e.sigma.order_upto(p) == Some(want);
            }
            let space = standard(3, q)?;
            let (rho, sigma2) = line_stabilizer_elements(&space);
            let e1 = space.e(0);
            let fixes_line = |g: &Mat| {
                let img = g.apply(&e1);
                img.iter().enumerate().all(|(i, &x)| i == 0 || x == 0) && img[0] != 0
            };
            let l71 = space.is_isometry(&rho)
                && space.is_isometry(&sigma2)
                && fixes_line(&rho)
                && fixes_line(&sigma2)
                && rho.order_upto(p) == Some(p)
                && sigma2.order_upto(2) == Some(2);
            Ok(json!({ "q": q, "hkEqualsSigma": identities, "rhoSigma2": l71, "passes": identities && l71 }))
        })();
        match res {
            Ok(v) => {
                ok &= v["passes"] == Value::Bool(true);
                rows.push(v);
            }
            Err(e) => return fail_report(id, 0, e),
        }
    }
    r.measured.insert("cases".into(), Value::Array(rows));
    finish(r, ok)
}

/// Seeded search for a subgroup of `z` of the given order. The target must
/// divide `|Z|`; an accepted group is certified exactly.
pub fn discover_subgroup(
    z: &Group,
    zb: &Bsgs<Mat>,
    target: &BigUint,
    hints: &[u64],
    attempts: usize,
    seed: u64,
) -> Result<Group, VerifierError> {
    if target == &BigUint::ZERO || zb.order() % target != BigUint::ZERO {
        return Err(VerifierError::BadTarget(format!(
            "{target} does not divide |Z| = {}",
            zb.order()
        )));
    }
    let gens =
        search(&z.gens, &z.identity(), target, hints, attempts, seed).ok_or(VerifierError::NotFound(attempts))?;
    let mut g = z.clone();
    g.name = format!("discovered-{target}-in-{}", z.name);
    g.gens = gens;
    g.claimed_order = Some(target.clone());
    g.provenance = Provenance::Discovered(seed);
    Ok(g)
}
