//! Running a registered case: order screen, construction, certification,
//! coset space, suborbit and intersection fingerprint.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use super::fingerprint::{fingerprint, EXACT_LIMIT};
use super::identities::audit_identities;
use super::registry::{build, cases, Built, CosetPlan, FactorCase, Scope, Survey};
use super::report::{Expectation, Report, Verdict};
use super::{Mode, VerifierError, Workbench};
use crate::atlas::Group;
use crate::engine::action::encode;
use crate::engine::{suborbit_transitivity, Bsgs, CosetSpace, FormAction, Natural, Strategy, SubspaceAction};
use crate::orthospace::Mat;

fn s(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// One X measured against the coset space.
struct Outcome {
    name: String,
    provenance: String,
    x_order: BigUint,
    orbit: usize,
    index: usize,
    intersection: Bsgs<Mat>,
}

impl Outcome {
    fn holds(&self) -> bool {
        self.orbit == self.index
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "provenance": self.provenance,
            "xOrder": s(&self.x_order),
            "orbitSize": self.orbit,
            "index": self.index,
            "intersectionOrder": s(&self.intersection.order()),
            "factorizes": self.holds(),
        })
    }
}

fn expected_block(case: &FactorCase) -> Map<String, Value> {
    let mut e = Map::new();
    e.insert("zOrder".into(), s(&case.z_order));
    e.insert("xOrder".into(), s(&case.x_order));
    e.insert("yOrder".into(), s(&case.y_order));
    if let Some(i) = case.index() {
        e.insert("index".into(), s(&i));
    }
    let mut inter = match case.reference {
        Some(r) => {
            e.insert("intersectionReference".into(), Value::String(r.label()));
            r.fingerprint().to_json()
        }
        None => json!({}),
    };
    if let Some(i) = &case.intersection {
        inter["order"] = s(i);
    }
    if inter.as_object().is_some_and(|o| !o.is_empty()) {
        e.insert("intersection".into(), inter);
    }
    e.insert(
        "survey".into(),
        Value::String(
            match case.survey {
                Survey::Single => "single",
                Survey::AnyHolds => "at least one candidate factorizes",
                Survey::HoldsAndFails => "at least one candidate factorizes and one does not",
            }
            .into(),
        ),
    );
    e
}

fn arithmetic_verdict(case: &FactorCase, r: &mut Report) {
    match case.screen() {
        Ok(()) => {
            r.verdict = Verdict::ArithmeticOnly;
            r.matches = case.expectation != Expectation::Fails;
        }
        Err(obstruction) => {
            r.verdict = Verdict::Fails;
            r.matches = case.expectation != Expectation::Holds;
            r.notes.push(obstruction);
        }
    }
}

/// The cosets of `stab` in Z. Only the pairwise plan needs its BSGS.
fn cosets(
    wb: &Workbench,
    b: &Built,
    plan: &CosetPlan,
    stab: &Group,
    order: &BigUint,
    stab_b: Option<&Bsgs<Mat>>,
) -> Result<CosetSpace<Mat>, VerifierError> {
    let cap = wb.opts.cap_cosets.max(wb.opts.cap_points);
    let q = b.field.order();
    let c = match plan {
        CosetPlan::Vector(v) => CosetSpace::from_invariant(
            Strategy::VectorOrbit,
            Box::new(Natural),
            encode(q, v),
            &b.z_gens,
            &b.z_order,
            order,
            cap,
        )?,
        CosetPlan::Form(pt) => CosetSpace::from_invariant(
            Strategy::InvariantSignature,
            Box::new(FormAction::new(&b.field, b.dim)),
            *pt,
            &b.z_gens,
            &b.z_order,
            order,
            cap,
        )?,
        CosetPlan::Subspace(rows) => {
            let sa = SubspaceAction::new(&b.field, b.dim, rows.len());
            let pt = sa.point(rows);
            CosetSpace::from_invariant(
                Strategy::SubspaceOrbit,
                Box::new(sa),
                pt,
                &b.z_gens,
                &b.z_order,
                order,
                cap,
            )?
        }
        CosetPlan::Pairwise => {
            let probes: Vec<u64> = (0..b.dim as u32)
                .map(|i| (q as u64).pow(i))
                .chain((0..300).map(|i| i * 7 + 1))
                .collect();
            let stab_b =
                stab_b.ok_or_else(|| VerifierError::Construction("pairwise cosets need a certified Y".into()))?;
            CosetSpace::generic_pairwise(&b.z_gens, &b.z_order, stab_b, &stab.gens, &probes, wb.opts.cap_cosets)?
        }
    };
    Ok(c)
}

/// Builds the case and measures every candidate.
fn constructive(wb: &Workbench, case: &FactorCase, r: &mut Report) -> Result<(), VerifierError> {
    let t = Instant::now();
    let b = build(wb, case)?;
    r.timings.build_ms = ms(t);

    let t = Instant::now();
    let mut tally = |hit: bool| {
        if hit {
            r.timings.cache_hits += 1;
        } else {
            r.timings.cache_misses += 1;
        }
    };
    r.measured.insert("zOrder".into(), s(&b.z_order));
    r.measured.insert("zCertified".into(), Value::Bool(b.z_certified));
    let yb = if b.certify_y || b.swap || matches!(b.plan, CosetPlan::Pairwise) {
        let (yb, hit) = wb.certify(&b.y)?;
        tally(hit);
        Some(yb)
    } else {
        None
    };
    let y_order = yb.as_ref().map_or_else(|| case.y_order.clone(), |yb| yb.order());
    r.measured.insert("yOrder".into(), s(&y_order));
    r.measured.insert("yCertified".into(), Value::Bool(yb.is_some()));
    if y_order != case.y_order {
        return Err(VerifierError::Construction(format!(
            "certified |Y| = {y_order}, expected {}",
            case.y_order
        )));
    }
    let mut xbs = Vec::new();
    for x in &b.xs {
        let (xb, hit) = wb.certify(x)?;
        tally(hit);
        if xb.order() != case.x_order {
            return Err(VerifierError::Construction(format!(
                "certified |{}| = {}, expected {}",
                x.name,
                xb.order(),
                case.x_order
            )));
        }
        xbs.push(xb);
    }
    r.measured.insert("xOrder".into(), s(&case.x_order));
    r.timings.bsgs_ms = ms(t);

    let t = Instant::now();
    let mut outcomes = Vec::new();
    let strategy;
    if b.swap {
        let yb = yb.as_ref().expect("certified");
        let c = cosets(wb, &b, &b.plan, &b.xs[0], &xbs[0].order(), Some(&xbs[0]))?;
        strategy = Some(c.strategy());
        let sub = suborbit_transitivity(&c, yb, &b.y.gens, wb.seed(), wb.opts.cap_points)?;
        outcomes.push(Outcome {
            name: b.xs[0].name.clone(),
            provenance: b.xs[0].provenance.to_string(),
            x_order: xbs[0].order(),
            orbit: sub.orbit_size,
            index: sub.index,
            intersection: sub.intersection,
        });
    } else {
        let c = cosets(wb, &b, &b.plan, &b.y, &y_order, yb.as_ref())?;
        strategy = Some(c.strategy());
        for (x, xb) in b.xs.iter().zip(&xbs) {
            let sub = suborbit_transitivity(&c, xb, &x.gens, wb.seed(), wb.opts.cap_points)?;
            outcomes.push(Outcome {
                name: x.name.clone(),
                provenance: x.provenance.to_string(),
                x_order: xb.order(),
                orbit: sub.orbit_size,
                index: sub.index,
                intersection: sub.intersection,
            });
        }
    }
    r.timings.coset_ms = ms(t);
    if let Some(st) = strategy {
        r.measured
            .insert("strategy".into(), serde_json::to_value(st).expect("strategy"));
    }
    r.measured.insert(
        "cosetRoles".into(),
        Value::String(
            if b.swap {
                "Y acts on cosets of X"
            } else {
                "X acts on cosets of Y"
            }
            .into(),
        ),
    );
    judge(case, r, &outcomes, b.swap);
    Ok(())
}

fn judge(case: &FactorCase, r: &mut Report, outcomes: &[Outcome], swap: bool) {
    let any_holds = outcomes.iter().any(Outcome::holds);
    let any_fails = outcomes.iter().any(|o| !o.holds());
    let primary = outcomes.iter().find(|o| o.holds()).unwrap_or(&outcomes[0]);
    let inter = primary.intersection.order();
    r.measured.insert("index".into(), Value::from(primary.index));
    r.measured.insert("orbitSize".into(), Value::from(primary.orbit));
    if primary.holds() {
        let identity = &primary.x_order * &case.y_order == &case.z_order * &inter;
        r.measured.insert("productIdentity".into(), Value::Bool(identity));
    }
    let mut fp_ok = true;
    if inter > BigUint::from(EXACT_LIMIT) {
        r.measured.insert("intersection".into(), json!({ "order": s(&inter) }));
    } else {
        let gens = primary.intersection.generators();
        let fp = fingerprint(&primary.intersection, &gens);
        r.measured.insert("intersection".into(), fp.to_json());
        if let (Some(reference), true) = (case.reference, primary.holds()) {
            let mism = fp.mismatches(&reference.fingerprint());
            fp_ok = mism.is_empty();
            r.measured.insert("fingerprintMismatches".into(), json!(mism));
        }
    }
    if outcomes.len() > 1 || case.survey != Survey::Single {
        r.measured.insert(
            "candidates".into(),
            Value::Array(outcomes.iter().map(Outcome::to_json).collect()),
        );
    } else {
        r.measured
            .insert("provenance".into(), Value::String(primary.provenance.clone()));
    }
    r.verdict = if any_holds { Verdict::Holds } else { Verdict::Fails };
    let inter_ok = case.intersection.as_ref().is_none_or(|e| e == &inter);
    let product_ok = r
        .measured
        .get("productIdentity")
        .is_none_or(|v| v == &Value::Bool(true));
    r.matches = match (case.expectation, case.survey) {
        (Expectation::Open, _) => true,
        (Expectation::Fails, _) => !any_holds,
        (Expectation::Holds, Survey::HoldsAndFails) => any_holds && any_fails && inter_ok && product_ok,
        (Expectation::Holds, _) => any_holds && inter_ok && fp_ok && product_ok,
    };
    let expected_index = if swap {
        Some(&case.z_order / &case.x_order)
    } else {
        case.index()
    };
    if expected_index.is_some_and(|i| i != BigUint::from(primary.index)) {
        r.matches = false;
        r.notes.push("coset space size differs from |Z|/|Y|".into());
    }
}

/// Runs one case under the workbench options.
pub fn run_case(wb: &Workbench, case: &FactorCase) -> Report {
    let mut r = Report::new(case.id.clone(), wb.seed());
    r.params = case.params.clone();
    r.expectation = case.expectation;
    r.notes = case.notes.clone();
    r.expected = expected_block(case);
    r.measured.insert(
        "orderScreen".into(),
        Value::String(match case.screen() {
            Ok(()) => "passes".into(),
            Err(e) => e,
        }),
    );
    let mode = wb.opts.mode;
    if mode == Mode::Arithmetic {
        arithmetic_verdict(case, &mut r);
        return r;
    }
    let blocked = match &case.scope {
        Scope::Constructive => None,
        Scope::Stretch if wb.opts.stretch => None,
        Scope::Stretch => Some("needs --stretch".to_string()),
        Scope::ArithmeticOnly(reason) => Some(reason.clone()),
    };
    if let Some(reason) = blocked {
        if mode == Mode::Constructive {
            r.verdict = Verdict::Skipped(reason);
            r.matches = true;
        } else {
            arithmetic_verdict(case, &mut r);
            r.notes.push(format!("constructive check not run: {reason}"));
        }
        return r;
    }
    if let Err(obstruction) = case.screen() {
        r.notes.push(obstruction);
    }
    if let Err(e) = constructive(wb, case, &mut r) {
        r.verdict = Verdict::Skipped(format!("construction error: {e}"));
        r.construction_error = true;
        r.matches = false;
    }
    r
}

/// Runs cases on `jobs` threads, returning reports in input order.
pub fn run_cases(wb: &Workbench, list: &[FactorCase], jobs: usize) -> Vec<Report> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<Report>>> = Mutex::new(vec![None; list.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1).min(list.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(case) = list.get(i) else { break };
                let rep = run_case(wb, case);
                out.lock().expect("report lock")[i] = Some(rep);
            });
        }
    });
    out.into_inner()
        .expect("report lock")
        .into_iter()
        .map(|r| r.expect("every case ran"))
        .collect()
}

/// The verification run behind `oddfact verify`: identity audit (unless
/// the mode is purely constructive) followed by the cases of every row.
pub fn verify(wb: &Workbench, rows: &[u8], q_list: &[u64], m: Option<usize>, jobs: usize) -> Vec<Report> {
    let mut reports = Vec::new();
    if wb.opts.mode != Mode::Constructive {
        reports.extend(audit_identities(q_list, rows, wb.seed()));
    }
    let list: Vec<FactorCase> = q_list
        .iter()
        .flat_map(|&q| rows.iter().flat_map(move |&row| cases(row, q, m, wb.opts.cap_points)))
        .collect();
    reports.extend(run_cases(wb, &list, jobs));
    reports
}
