//! The case registry: every factorization the verifier knows about, with
//! its expected verdict, orders and intersection, and how to build it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde_json::Value;

use super::reference::Reference;
use super::report::Expectation;
use super::{big, VerifierError, Workbench};
use crate::atlas::orders::prime_power;
use crate::atlas::{
    a8_group, a9_group, e1_stabilizer, embed_field_ext, monomial_2_6_a7, nonsingular_vector, omega_group,
    omega_of_subspace, ord, p1_monomial, perp_of, pm_group, pointwise_e1f1, psp6_wedge, r_derived_t, r_extended,
    ree_group, s8_group, sl2_13_levi, sl3_adjoint, sp62_group, standard, su3_adjoint, vector_stabilizer, ExtKind,
    Family, Group,
};
use crate::gf::Field;
use crate::orthospace::{Mat, WittType};

/// Whether a case can be run constructively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    Constructive,
    /// Constructive, but only with `--stretch`.
    Stretch,
    /// Only the ratio identity is checked; the string says why.
    ArithmeticOnly(String),
}

/// How several candidate X are judged together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Survey {
    Single,
    /// At least one candidate factorizes.
    AnyHolds,
    /// At least one candidate factorizes and at least one does not.
    HoldsAndFails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row2X {
    Omega6Plus,
    Omega6Minus,
    Omega5,
    Q5Omega5,
    Q4Omega4Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row7X {
    S5Classes,
    Monomial,
    Q4A6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row8X {
    RDerivedT,
    Omega6Plus,
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row8Y {
    A9,
    Sp62,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row9X {
    Monomial,
    A8,
    S8,
    A9,
    TwoL34,
    Sp62,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row10S {
    TwoS5,
    EightA5,
    Extraspecial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    Row1 {
        m: usize,
        a: usize,
        b: usize,
        kind: ExtKind,
    },
    Row2(Row2X),
    Row3Su3,
    Row3Ree,
    Row4Sl3,
    Row5,
    Row6,
    Row7(Row7X),
    Row8(Row8X, Row8Y),
    Row9(Row9X),
    Row10(Row10S),
    Row11,
    ControlDerivedRee,
    ControlInsideY,
}

#[derive(Clone, Debug)]
pub struct FactorCase {
    pub id: String,
    pub row: u8,
    pub q: u64,
    pub params: BTreeMap<String, Value>,
    pub z_name: String,
    pub x_name: String,
    pub y_name: String,
    pub z_order: BigUint,
    pub x_order: BigUint,
    pub y_order: BigUint,
    pub expectation: Expectation,
    /// Expected `|X ∩ Y|` when the factorization holds.
    pub intersection: Option<BigUint>,
    pub reference: Option<Reference>,
    pub survey: Survey,
    pub scope: Scope,
    pub recipe: Recipe,
    pub notes: Vec<String>,
}

impl FactorCase {
    #[allow(clippy::too_many_arguments)]
    fn new(
        id: String,
        row: u8,
        q: u64,
        m: usize,
        (x_name, x_order): (String, BigUint),
        (y_name, y_order): (String, BigUint),
        recipe: Recipe,
    ) -> FactorCase {
        let mut params = BTreeMap::new();
        params.insert("row".into(), Value::from(row));
        params.insert("q".into(), Value::from(q));
        params.insert("m".into(), Value::from(m));
        params.insert("x".into(), Value::from(x_name.clone()));
        params.insert("y".into(), Value::from(y_name.clone()));
        let z_order = ord(Family::OmegaOdd, m as u32, q);
        let intersection = Some(&x_order * &y_order / &z_order);
        FactorCase {
            id,
            row,
            q,
            params,
            z_name: format!("Omega{}({q})", 2 * m + 1),
            x_name,
            y_name,
            z_order,
            x_order,
            y_order,
            expectation: Expectation::Holds,
            intersection,
            reference: None,
            survey: Survey::Single,
            scope: Scope::Constructive,
            recipe,
            notes: Vec::new(),
        }
    }

    fn expect(mut self, e: Expectation) -> Self {
        if e != Expectation::Holds {
            self.intersection = None;
        }
        self.expectation = e;
        self
    }

    fn reference(mut self, r: Reference) -> Self {
        self.reference = Some(r);
        self
    }

    fn survey(mut self, s: Survey) -> Self {
        self.survey = s;
        self
    }

    fn scope(mut self, s: Scope) -> Self {
        self.scope = s;
        self
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    fn param(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.params.insert(k.into(), v.into());
        self
    }

    /// `|Z| / |Y|`, when it is an integer.
    pub fn index(&self) -> Option<BigUint> {
        let (d, r) = num_integer::Integer::div_rem(&self.z_order, &self.y_order);
        (r == BigUint::ZERO).then_some(d)
    }

    /// The order screen: `|X∩Y| = |X||Y|/|Z|` must be a positive integer,
    /// equivalently the index `|Z:Y|` must divide `|X|`. Returns the
    /// obstruction when the screen fails.
    pub fn screen(&self) -> Result<(), String> {
        let Some(index) = self.index() else {
            return Err(format!("|Y| = {} does not divide |Z| = {}", self.y_order, self.z_order));
        };
        if self.x_order < index {
            return Err(format!("order obstruction {} < {}", self.x_order, index));
        }
        if &self.x_order % &index != BigUint::ZERO {
            return Err(format!("index {} does not divide |X| = {}", index, self.x_order));
        }
        Ok(())
    }
}

fn pw(q: u64, e: u32) -> BigUint {
    big(q).pow(e)
}

fn o(f: Family, n: u32, q: u64) -> BigUint {
    ord(f, n, q)
}

fn named(name: impl Into<String>, order: BigUint) -> (String, BigUint) {
    (name.into(), order)
}

fn omega_minus_y(m: usize, q: u64) -> (String, BigUint) {
    named(format!("Omega{}-({q})", 2 * m), o(Family::OmegaMinus, m as u32, q))
}

fn omega_plus_y(m: usize, q: u64) -> (String, BigUint) {
    named(format!("Omega{}+({q})", 2 * m), o(Family::OmegaPlus, m as u32, q))
}

fn g2_y(q: u64) -> (String, BigUint) {
    named(format!("G2({q})"), o(Family::G2, 0, q))
}

/// Largest natural module the default constructive runs accept.
fn natural_fits(q: u64, m: usize, cap: usize) -> bool {
    big(q).pow(2 * m as u32 + 1) <= big(cap as u64)
}

/// Row 1: `R:S` with `S` an extension-field subgroup of the Levi factor,
/// against the stabilizer of a minus-type vector.
fn row1(q: u64, m: usize, cap_points: usize) -> Vec<FactorCase> {
    let Some((_, f)) = prime_power(q) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mu = m as u32;
    let r_order = pw(q, mu * (mu - 1) / 2 + mu);
    for a in 1..=m {
        if !m.is_multiple_of(a) {
            continue;
        }
        let b = m / a;
        let qb = q.pow(b as u32);
        let mut kinds = vec![(ExtKind::SL, "SL", o(Family::SL, a as u32, qb))];
        if a % 2 == 0 {
            kinds.push((ExtKind::Sp, "Sp", o(Family::Sp, a as u32, qb)));
        }
        for (kind, kname, s_order) in kinds {
            let x = named(
                format!("{q}^{}.{q}^{m}:{kname}{a}({q}^{b})", mu * (mu - 1) / 2),
                &r_order * &s_order,
            );
            let mut c = FactorCase::new(
                format!("row1/m={m}/{kname}{a}(q^{b})/q={q}"),
                1,
                q,
                m,
                x,
                omega_minus_y(m, q),
                Recipe::Row1 { m, a, b, kind },
            )
            .param("a", a)
            .param("b", b)
            .param("kind", kname);
            if a == 1 {
                c = c
                    .expect(Expectation::Fails)
                    .note("SL1(q^m) is trivial, so X = R and |Z:Y| does not divide |R|");
            }
            if f != 1 {
                c = c.scope(Scope::ArithmeticOnly(
                    "the extension-field embedding is built for prime q".into(),
                ));
            } else if m > 4 || !natural_fits(q, m, cap_points) {
                c = c.scope(Scope::ArithmeticOnly(
                    "natural module beyond the default constructive range".into(),
                ));
            }
            out.push(c);
        }
    }
    out
}

fn row2(q: u64) -> Vec<FactorCase> {
    let sl2 = o(Family::SL, 2, q);
    let list = [
        (
            Row2X::Omega6Plus,
            "omega6plus",
            omega_plus_y(3, q),
            Some(Reference::SL(3, q)),
        ),
        (
            Row2X::Omega6Minus,
            "omega6minus",
            omega_minus_y(3, q),
            (q == 3).then_some(Reference::SU3),
        ),
        (
            Row2X::Omega5,
            "omega5",
            named(format!("Omega5({q})"), o(Family::OmegaOdd, 2, q)),
            Some(Reference::SL(2, q)),
        ),
        (
            Row2X::Q5Omega5,
            "q5-omega5",
            named(format!("{q}^5:Omega5({q})"), pw(q, 5) * o(Family::OmegaOdd, 2, q)),
            None,
        ),
        (
            Row2X::Q4Omega4Minus,
            "q4-omega4minus",
            named(format!("{q}^4:Omega4-({q})"), pw(q, 4) * o(Family::OmegaMinus, 2, q)),
            None,
        ),
    ];
    let _ = sl2;
    list.into_iter()
        .map(|(x, key, xn, r)| {
            let mut c = FactorCase::new(format!("row2/{key}/q={q}"), 2, q, 3, xn, g2_y(q), Recipe::Row2(x));
            if let Some(r) = r {
                c = c.reference(r);
            }
            if q != 3 {
                c = c.scope(Scope::ArithmeticOnly("3-form codes exceed 64 bits for q > 3".into()));
            }
            c
        })
        .collect()
}

fn row3_4(q: u64, f: u32) -> Vec<FactorCase> {
    let scope = if q == 3 {
        Scope::Constructive
    } else {
        Scope::ArithmeticOnly("the adjoint-module construction is built for q = 3".into())
    };
    let mut out = vec![
        FactorCase::new(
            format!("row3/su3/q={q}"),
            3,
            q,
            3,
            named(format!("SU3({q})"), o(Family::SU, 3, q)),
            omega_plus_y(3, q),
            Recipe::Row3Su3,
        )
        .scope(scope.clone()),
        FactorCase::new(
            format!("row4/sl3/q={q}"),
            4,
            q,
            3,
            named(format!("SL3({q})"), o(Family::SL, 3, q)),
            omega_minus_y(3, q),
            Recipe::Row4Sl3,
        )
        .scope(scope),
    ];
    if q == 3 {
        out[0] = out[0]
            .clone()
            .reference(Reference::Cyclic(8))
            .note("intersection is cyclic of order q^2 - 1");
        out[1] = out[1]
            .clone()
            .reference(Reference::Cyclic(8))
            .note("intersection is cyclic of order q^2 - 1");
    }
    if f % 2 == 1 {
        let (name, order, scope) = if q == 3 {
            ("2G2(3) = PGammaL2(8)".to_string(), big(1512), Scope::Constructive)
        } else {
            (
                format!("2G2({q})"),
                o(Family::TwistedG2, 0, q),
                Scope::ArithmeticOnly("the Ree group is built for q = 3 only".into()),
            )
        };
        let mut c = FactorCase::new(
            format!("row3/ree/q={q}"),
            3,
            q,
            3,
            named(name, order),
            omega_plus_y(3, q),
            Recipe::Row3Ree,
        )
        .scope(scope);
        if q == 3 {
            c = c.note("the full group is used at q = 3; its derived subgroup is a negative control");
        }
        out.push(c);
    }
    out
}

fn row5(q: u64) -> FactorCase {
    let scope = if q == 3 {
        Scope::Stretch
    } else {
        Scope::ArithmeticOnly("the 13-dimensional module is built for q = 3 only".into())
    };
    FactorCase::new(
        format!("row5/psp6/q={q}"),
        5,
        q,
        6,
        named(format!("PSp6({q})"), o(Family::PSp, 6, q)),
        omega_minus_y(6, q),
        Recipe::Row5,
    )
    .scope(scope)
}

fn row6(q: u64) -> FactorCase {
    FactorCase::new(
        format!("row6/f4/q={q}"),
        6,
        q,
        12,
        named(format!("F4({q})"), o(Family::F4, 0, q)),
        omega_minus_y(12, q),
        Recipe::Row6,
    )
    .scope(Scope::ArithmeticOnly(
        "F4(q) on the 25-dimensional module is beyond the engine caps".into(),
    ))
}

fn row7() -> Vec<FactorCase> {
    vec![
        FactorCase::new(
            "row7/3^4:S5/q=3".into(),
            7,
            3,
            3,
            named("3^4:S5", pw(3, 4) * big(120)),
            g2_y(3),
            Recipe::Row7(Row7X::S5Classes),
        )
        .survey(Survey::HoldsAndFails)
        .note("candidates are the distinct S5 classes found by seeded search; some factorize and some do not"),
        FactorCase::new(
            "row7/3^5:2^4:A5/q=3".into(),
            7,
            3,
            3,
            named("3^5:2^4:A5", pw(3, 5) * big(960)),
            g2_y(3),
            Recipe::Row7(Row7X::Monomial),
        )
        .reference(Reference::ASL2of3),
        FactorCase::new(
            "row7/3^4:A6/q=3".into(),
            7,
            3,
            3,
            named("3^4:A6", pw(3, 4) * big(360)),
            g2_y(3),
            Recipe::Row7(Row7X::Q4A6),
        ),
    ]
}

fn row8() -> Vec<FactorCase> {
    let mut out = Vec::new();
    for (y, yname, yord) in [(Row8Y::A9, "A9", big(181440)), (Row8Y::Sp62, "Sp6(2)", big(1451520))] {
        for (x, key, xn) in [
            (
                Row8X::RDerivedT,
                "3^3:SL3",
                named("3^3:SL3(3)", pw(3, 3) * o(Family::SL, 3, 3)),
            ),
            (Row8X::Omega6Plus, "omega6plus", omega_plus_y(3, 3)),
            (Row8X::G2, "g2", g2_y(3)),
        ] {
            let mut c = FactorCase::new(
                format!("row8/{key}-vs-{yname}/q=3"),
                8,
                3,
                3,
                xn,
                named(yname, yord.clone()),
                Recipe::Row8(x, y),
            );
            if x == Row8X::Omega6Plus && y == Row8Y::A9 {
                c = c.reference(Reference::TwoTimesS5);
            }
            if x != Row8X::RDerivedT {
                c = c.note("Y acts on the cosets of X");
            }
            out.push(c);
        }
    }
    out
}

fn row9() -> Vec<FactorCase> {
    let p3 = named("P3 = 3^(3+3):SL3(3)", pw(3, 6) * o(Family::SL, 3, 3));
    [
        (Row9X::Monomial, "2^6:A7", big(161280)),
        (Row9X::A8, "A8", big(20160)),
        (Row9X::S8, "S8", big(40320)),
        (Row9X::A9, "A9", big(181440)),
        (Row9X::TwoL34, "2.L3(4)", big(40320)),
        (Row9X::Sp62, "Sp6(2)", big(1451520)),
    ]
    .into_iter()
    .map(|(x, name, order)| {
        let mut c = FactorCase::new(
            format!("row9/{name}/q=3"),
            9,
            3,
            3,
            named(name, order),
            p3.clone(),
            Recipe::Row9(x),
        );
        match x {
            Row9X::A8 => {
                c = c
                    .expect(Expectation::Open)
                    .note("the table entry admits A8 or S8; both are run and A8 is recorded without expectation")
            }
            Row9X::S8 => c = c.reference(Reference::S3TimesS3),
            _ => {}
        }
        c
    })
    .collect()
}

fn row10() -> Vec<FactorCase> {
    let r = pw(3, 10);
    [
        (Row10S::TwoS5, "2.S5", 240u64, Survey::AnyHolds),
        (Row10S::EightA5, "8.A5", 480, Survey::Single),
        (Row10S::Extraspecial, "2^(1+4).A5", 1920, Survey::Single),
    ]
    .into_iter()
    .map(|(s, name, order, survey)| {
        let mut c = FactorCase::new(
            format!("row10/{name}/q=3"),
            10,
            3,
            4,
            named(format!("3^10:{name}"), &r * big(order)),
            omega_minus_y(4, 3),
            Recipe::Row10(s),
        )
        .survey(survey);
        if s == Row10S::TwoS5 {
            c = c.note("candidates are the 2.S5 classes in SL4(3) found by seeded search; at least one must factorize");
        }
        c
    })
    .collect()
}

fn row11() -> FactorCase {
    FactorCase::new(
        "row11/sl2(13)/q=3".into(),
        11,
        3,
        6,
        named("3^21:SL2(13)", pw(3, 21) * o(Family::SL, 2, 13)),
        omega_minus_y(6, 3),
        Recipe::Row11,
    )
    .scope(Scope::Stretch)
}

/// All cases of one row at one q. `m` restricts row 1 to one rank.
pub fn cases(row: u8, q: u64, m: Option<usize>, cap_points: usize) -> Vec<FactorCase> {
    let Some((p, f)) = prime_power(q) else {
        return Vec::new();
    };
    if p == 2 {
        return Vec::new();
    }
    match row {
        1 => {
            let ms = match m {
                Some(m) => vec![m],
                None if q == 3 => vec![3, 4],
                None => vec![3],
            };
            ms.into_iter()
                .filter(|&m| m >= 2)
                .flat_map(|m| row1(q, m, cap_points))
                .collect()
        }
        2 => row2(q),
        3 | 4 if p == 3 => row3_4(q, f).into_iter().filter(|c| c.row == row).collect(),
        5 if p == 3 => vec![row5(q)],
        6 if p == 3 => vec![row6(q)],
        7 if q == 3 => row7(),
        8 if q == 3 => row8(),
        9 if q == 3 => row9(),
        10 if q == 3 => row10(),
        11 if q == 3 => vec![row11()],
        _ => Vec::new(),
    }
}

/// Negative controls: cases that must fail, each for a stated reason.
pub fn controls() -> Vec<FactorCase> {
    vec![
        FactorCase::new(
            "control/ree-derived-vs-omega6plus/q=3".into(),
            0,
            3,
            3,
            named("2G2(3)' = PSL2(8)", big(504)),
            omega_plus_y(3, 3),
            Recipe::ControlDerivedRee,
        )
        .expect(Expectation::Fails)
        .note("the derived subgroup is smaller than the index"),
        FactorCase::new(
            "control/omega5-inside-y/q=3".into(),
            0,
            3,
            3,
            named("Omega5(3) < Omega6-(3)", o(Family::OmegaOdd, 2, 3)),
            omega_minus_y(3, 3),
            Recipe::ControlInsideY,
        )
        .expect(Expectation::Fails)
        .note("X lies inside Y, so it fixes the trivial coset"),
    ]
}

/// How the cosets are identified.
#[derive(Clone, Debug)]
pub enum CosetPlan {
    /// Y is the stabilizer of this vector.
    Vector(Vec<u32>),
    /// Y is the stabilizer of this 3-form (point code).
    Form(u64),
    /// Y is the stabilizer of the span of these rows.
    Subspace(Vec<Vec<u32>>),
    /// Cosets of Y enumerated explicitly.
    Pairwise,
}

/// A built case: the ambient group, Y, the candidate X groups and the
/// coset plan. With `swap` the plan describes the single X and Y acts.
pub struct Built {
    pub field: Arc<Field>,
    pub dim: usize,
    pub z_gens: Vec<Mat>,
    pub z_order: BigUint,
    pub z_certified: bool,
    pub y: Group,
    /// Y is certified unless it is too large to be worth it.
    pub certify_y: bool,
    pub xs: Vec<Group>,
    pub plan: CosetPlan,
    pub swap: bool,
}

fn vm(space: &crate::orthospace::OrthSpace) -> Result<Vec<u32>, VerifierError> {
    Ok(nonsingular_vector(space, WittType::Minus)?)
}

fn vp(space: &crate::orthospace::OrthSpace) -> Result<Vec<u32>, VerifierError> {
    Ok(nonsingular_vector(space, WittType::Plus)?)
}

pub fn build(wb: &Workbench, case: &FactorCase) -> Result<Built, VerifierError> {
    let q = case.q;
    if let Recipe::Row5 | Recipe::Row11 = case.recipe {
        return build_stretch(wb, case);
    }
    let m = match case.recipe {
        Recipe::Row1 { m, .. } => m,
        Recipe::Row10(_) => 4,
        Recipe::Row6 => return Err(VerifierError::Construction("no constructive path for row 6".into())),
        _ => 3,
    };
    let amb = wb.ambient(m, q)?;
    let space = &amb.space;
    let mut built = Built {
        field: Arc::clone(space.field()),
        dim: space.dim(),
        z_gens: amb.z.gens.clone(),
        z_order: amb.zb.order(),
        z_certified: true,
        y: amb.z.clone(),
        certify_y: true,
        xs: Vec::new(),
        plan: CosetPlan::Pairwise,
        swap: false,
    };
    let minus = |b: &mut Built| -> Result<(), VerifierError> {
        let v = vm(space)?;
        b.y = vector_stabilizer(space, &v)?;
        b.plan = CosetPlan::Vector(v);
        Ok(())
    };
    let plus = |b: &mut Built| -> Result<(), VerifierError> {
        let v = vp(space)?;
        b.y = vector_stabilizer(space, &v)?;
        b.plan = CosetPlan::Vector(v);
        Ok(())
    };
    let g2 = |b: &mut Built| -> Result<(), VerifierError> {
        let g = wb.g2(q)?;
        b.y = g.group.clone();
        b.plan = CosetPlan::Form(g.point);
        Ok(())
    };
    match case.recipe {
        Recipe::Row1 { a, b, kind, .. } => {
            minus(&mut built)?;
            let s = embed_field_ext(space, a, b, kind)?;
            built.xs = vec![r_extended(space, &s)];
        }
        Recipe::Row2(x) => {
            g2(&mut built)?;
            built.xs = vec![match x {
                Row2X::Omega6Plus => vector_stabilizer(space, &vp(space)?)?,
                Row2X::Omega6Minus => vector_stabilizer(space, &vm(space)?)?,
                Row2X::Omega5 => pointwise_e1f1(space),
                Row2X::Q5Omega5 => e1_stabilizer(space),
                Row2X::Q4Omega4Minus => wb.affine_omega4(q)?.group.clone(),
            }];
        }
        Recipe::Row3Su3 => {
            plus(&mut built)?;
            built.xs = vec![su3_adjoint(space)?];
        }
        Recipe::Row3Ree => {
            plus(&mut built)?;
            built.xs = vec![ree_group(space, false)?];
        }
        Recipe::Row4Sl3 => {
            minus(&mut built)?;
            built.xs = vec![sl3_adjoint(space)?];
        }
        Recipe::Row7(x) => {
            g2(&mut built)?;
            built.xs = match x {
                Row7X::S5Classes => wb.s5_candidates()?.as_ref().clone(),
                Row7X::Monomial => vec![p1_monomial(space)?],
                Row7X::Q4A6 => vec![wb.affine_omega4(q)?.group.clone()],
            };
        }
        Recipe::Row8(x, y) => {
            let yg = match y {
                Row8Y::A9 => a9_group(space)?,
                Row8Y::Sp62 => sp62_group(space)?,
            };
            match x {
                Row8X::RDerivedT => {
                    built.y = yg;
                    built.xs = vec![r_derived_t(space)?];
                    built.plan = CosetPlan::Pairwise;
                }
                Row8X::Omega6Plus => {
                    plus(&mut built)?;
                    built.xs = vec![std::mem::replace(&mut built.y, yg)];
                    built.swap = true;
                }
                Row8X::G2 => {
                    g2(&mut built)?;
                    built.xs = vec![std::mem::replace(&mut built.y, yg)];
                    built.swap = true;
                }
            }
        }
        Recipe::Row9(x) => {
            built.y = pm_group(space);
            built.plan = CosetPlan::Subspace((0..3).map(|i| space.e(i)).collect());
            built.xs = vec![match x {
                Row9X::Monomial => monomial_2_6_a7(space)?,
                Row9X::A8 => a8_group(space)?,
                Row9X::S8 => s8_group(space)?,
                Row9X::A9 => a9_group(space)?,
                Row9X::TwoL34 => wb.two_l34()?.as_ref().clone(),
                Row9X::Sp62 => sp62_group(space)?,
            }];
        }
        Recipe::Row10(s) => {
            minus(&mut built)?;
            let r = wb.row10()?;
            let ss: Vec<&Group> = match s {
                Row10S::TwoS5 => r.two_s5.iter().collect(),
                Row10S::EightA5 => vec![&r.eight_a5],
                Row10S::Extraspecial => vec![&r.extraspecial],
            };
            built.xs = ss.into_iter().map(|s| r_extended(space, s)).collect();
        }
        Recipe::ControlDerivedRee => {
            plus(&mut built)?;
            built.xs = vec![ree_group(space, true)?];
        }
        Recipe::ControlInsideY => {
            minus(&mut built)?;
            let v = vm(space)?;
            let perp = perp_of(space, std::slice::from_ref(&v));
            let u = perp
                .basis()
                .iter()
                .find(|u| space.quad(u) != 0)
                .cloned()
                .ok_or_else(|| VerifierError::Construction("no nonsingular vector in v^perp".into()))?;
            let w = perp_of(space, &[v, u]);
            built.xs = vec![omega_of_subspace(space, "Omega5(3) < Omega6-(3)", w.basis())?];
        }
        Recipe::Row5 | Recipe::Row6 | Recipe::Row11 => unreachable!(),
    }
    if built.xs.is_empty() {
        return Err(VerifierError::Construction("no candidate subgroups were found".into()));
    }
    Ok(built)
}

/// Rows 5 and 11 live in Ω13(3). Its order comes from the formula and Y is
/// not certified; X is.
fn build_stretch(wb: &Workbench, case: &FactorCase) -> Result<Built, VerifierError> {
    let space = standard(6, case.q)?;
    let z = omega_group(&space);
    let v = vm(&space)?;
    let y = vector_stabilizer(&space, &v)?;
    let x = match case.recipe {
        Recipe::Row5 => psp6_wedge(&space)?,
        _ => sl2_13_levi(&space, wb.seed())?,
    };
    let x = if case.recipe == Recipe::Row11 {
        r_extended(&space, &x)
    } else {
        x
    };
    Ok(Built {
        field: Arc::clone(space.field()),
        dim: space.dim(),
        z_gens: z.gens,
        z_order: ord(Family::OmegaOdd, 6, case.q),
        z_certified: false,
        y,
        certify_y: false,
        xs: vec![x],
        plan: CosetPlan::Vector(v),
        swap: false,
    })
}

/// `|X ∩ Y||Z| = |X||Y|` whenever an intersection order is recorded.
pub fn total_order_check(c: &FactorCase) -> bool {
    c.intersection
        .as_ref()
        .is_none_or(|i| (i * &c.z_order) == (&c.x_order * &c.y_order))
        && c.z_order > BigUint::one()
}
