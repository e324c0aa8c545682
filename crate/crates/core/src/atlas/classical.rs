//! Classical subgroups of Ω(V): Siegel generating sets, the parabolic R:T,
//! field-extension embeddings into T, vector and subspace stabilizers, and
//! the explicit elements used in the q^4:Ω4^-(q) and ⟨e1⟩-stabilizer arguments.

use std::sync::Arc;

use num_bigint::BigUint;

use super::orders::{ord, Family};
use super::{AtlasError, Group, Provenance};
use crate::gf::{make_field, Field};
use crate::orthospace::{similarity_to_standard, vec_axpy, vec_scale, Mat, OrthSpace, Similarity, Subspace, WittType};

/// `1, α, α², …`: a basis of GF(q) over its prime field.
pub fn fp_basis(field: &Field) -> Vec<u32> {
    let p = field.characteristic();
    (0..field.degree()).map(|i| p.pow(i)).collect()
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn qpow(q: u64, e: u32) -> BigUint {
    big(q).pow(e)
}

/// A hyperbolic pair `(u, f)` inside the span of `basis`.
pub fn hyperbolic_pair(space: &OrthSpace, basis: &[Vec<u32>]) -> Option<(Vec<u32>, Vec<u32>)> {
    let f = &**space.field();
    let u = crate::orthospace::search_span(f, basis, |x| space.quad(x) == 0)?;
    let y = basis.iter().find(|b| space.beta_raw(&u, b) != 0)?;
    let y = vec_scale(f, f.inv(space.beta_raw(&u, y)), y);
    let c = f.neg(f.mul(space.quad(&y), f.inv(2)));
    Some((u.clone(), vec_axpy(f, &y, c, &u)))
}

/// Basis of `span(basis) ∩ ⟨u, w⟩^⊥` for a hyperbolic pair `(u, w)` in the span.
fn complement(space: &OrthSpace, basis: &[Vec<u32>], u: &[u32], w: &[u32]) -> Vec<Vec<u32>> {
    let f = &**space.field();
    let proj: Vec<Vec<u32>> = basis
        .iter()
        .map(|b| {
            let x = vec_axpy(f, b, f.neg(space.beta_raw(b, w)), u);
            vec_axpy(f, &x, f.neg(space.beta_raw(b, u)), w)
        })
        .collect();
    Subspace::span(f, space.dim(), &proj).basis().to_vec()
}

/// Siegel maps `ρ_{u,tw}` and `ρ_{f,tw}` for a hyperbolic pair `(u, f)` of
/// the nondegenerate subspace spanned by `basis`, `w` running over a basis
/// of the rest and `t` over a prime-field basis. They generate Ω of the
/// subspace and fix its perp pointwise.
pub fn omega_on(space: &OrthSpace, basis: &[Vec<u32>]) -> Result<Vec<Mat>, AtlasError> {
    let (u, w) =
        hyperbolic_pair(space, basis).ok_or_else(|| AtlasError::BadParams("subspace has Witt index 0".into()))?;
    Ok(siegel_pairs(space, &u, &w, &complement(space, basis, &u, &w)))
}

fn siegel_pairs(space: &OrthSpace, u: &[u32], w: &[u32], rest: &[Vec<u32>]) -> Vec<Mat> {
    let f = &**space.field();
    let mut gens = Vec::new();
    for x in rest {
        for &t in &fp_basis(f) {
            let tx = vec_scale(f, t, x);
            gens.push(space.siegel(u, &tx));
            gens.push(space.siegel(w, &tx));
        }
    }
    gens
}

fn q_of(space: &OrthSpace) -> u64 {
    space.field().order() as u64
}

/// Ω(V) from the Siegel maps attached to the pair (e1, f1).
pub fn omega_group(space: &Arc<OrthSpace>) -> Group {
    let rest: Vec<Vec<u32>> = (2..space.dim()).map(|i| space.basis_vector(i)).collect();
    let gens = siegel_pairs(space, &space.e(0), &space.f(0), &rest);
    let m = space.m() as u32;
    Group::new(
        format!("Omega{}({})", 2 * m + 1, q_of(space)),
        space,
        gens,
        Some(ord(Family::OmegaOdd, m, q_of(space))),
        Provenance::Constructed,
    )
    .expect("Siegel maps are isometries")
}

/// Ω of a nondegenerate subspace, fixing its perp pointwise. The claimed
/// order comes from the computed Witt type.
pub fn omega_of_subspace(
    space: &Arc<OrthSpace>,
    name: impl Into<String>,
    basis: &[Vec<u32>],
) -> Result<Group, AtlasError> {
    let sub = Subspace::span(space.field(), space.dim(), basis);
    let k = sub.dim() as u32;
    let q = q_of(space);
    let order = match space.witt_type(&sub) {
        WittType::Plus => ord(Family::OmegaPlus, k / 2, q),
        WittType::Minus => ord(Family::OmegaMinus, k / 2, q),
        WittType::OddDim => ord(Family::OmegaOdd, k / 2, q),
        WittType::Degenerate(_) => return Err(AtlasError::BadParams("degenerate subspace".into())),
    };
    let gens = omega_on(space, sub.basis())?;
    Group::new(name, space, gens, Some(order), Provenance::Constructed)
}

/// `e1 + λ f1` with the least λ (in the order 1, nonsquare, rest) whose perp
/// has the requested type.
pub fn nonsingular_vector(space: &OrthSpace, ty: WittType) -> Result<Vec<u32>, AtlasError> {
    if ty == WittType::Minus {
        return Ok(space.v_of(space.choose_lambda()?));
    }
    let f = &**space.field();
    let ns = f.nonsquare();
    let mut order = vec![1, ns];
    order.extend((1..f.order()).filter(|&a| a != 1 && a != ns));
    order
        .into_iter()
        .map(|l| space.v_of(l))
        .find(|v| space.witt_type(&perp_of(space, std::slice::from_ref(v))) == ty)
        .ok_or_else(|| AtlasError::BadParams(format!("no vector with perp of type {ty:?}")))
}

pub fn perp_of(space: &OrthSpace, vecs: &[Vec<u32>]) -> Subspace {
    space.perp(&Subspace::span(space.field(), space.dim(), vecs))
}

/// The stabilizer `Z_v = Ω(v^⊥)` of a nonsingular vector.
pub fn vector_stabilizer(space: &Arc<OrthSpace>, v: &[u32]) -> Result<Group, AtlasError> {
    let p = perp_of(space, &[v.to_vec()]);
    let sign = match space.witt_type(&p) {
        WittType::Plus => "+",
        WittType::Minus => "-",
        _ => return Err(AtlasError::BadParams("v must be nonsingular".into())),
    };
    let name = format!("Omega{}{}({})", p.dim(), sign, q_of(space));
    omega_of_subspace(space, name, p.basis())
}

/// The stabilizer `q^{2m-1}:Ω_{2m-1}(q)` of the singular vector e1.
pub fn e1_stabilizer(space: &Arc<OrthSpace>) -> Group {
    let rest: Vec<Vec<u32>> = (2..space.dim()).map(|i| space.basis_vector(i)).collect();
    let f = &**space.field();
    let mut gens = pointwise_e1f1(space).gens;
    for x in &rest {
        for &t in &fp_basis(f) {
            gens.push(space.siegel(&space.e(0), &vec_scale(f, t, x)));
        }
    }
    let m = space.m() as u32;
    let q = q_of(space);
    let order = qpow(q, 2 * m - 1) * ord(Family::OmegaOdd, m - 1, q);
    Group::new(
        format!("{q}^{}:Omega{}({q})", 2 * m - 1, 2 * m - 1),
        space,
        gens,
        Some(order),
        Provenance::Constructed,
    )
    .expect("isometries")
}

/// Ω of `⟨e1, f1⟩^⊥`, fixing e1 and f1.
pub fn pointwise_e1f1(space: &Arc<OrthSpace>) -> Group {
    let rest: Vec<Vec<u32>> = (2..space.dim()).map(|i| space.basis_vector(i)).collect();
    let m = space.m() as u32;
    let q = q_of(space);
    let gens = if m >= 2 {
        siegel_pairs(space, &space.e(1), &space.f(1), &rest[2..])
    } else {
        Vec::new()
    };
    Group::new(
        format!("Omega{}({q})", 2 * m - 1),
        space,
        gens,
        Some(ord(Family::OmegaOdd, m - 1, q)),
        Provenance::Constructed,
    )
    .expect("isometries")
}

/// The element of Ω(V) acting as `A` on U = ⟨e_i⟩, as `A^{-T}` on ⟨f_i⟩ and
/// trivially on d.
pub fn levi(space: &OrthSpace, a: &Mat) -> Mat {
    let m = space.m();
    assert_eq!(a.rows(), m);
    let b = a.inverse().expect("invertible").transpose();
    let mut g = Mat::zeros(space.field(), space.dim(), space.dim());
    for i in 0..m {
        for j in 0..m {
            g.set(2 * i, 2 * j, a.get(i, j));
            g.set(2 * i + 1, 2 * j + 1, b.get(i, j));
        }
    }
    g.set(2 * m, 2 * m, 1);
    g
}

/// Elementary transvections generating SL_n over `field`.
pub fn sl_generators(field: &Arc<Field>, n: usize) -> Vec<Mat> {
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        for &t in &fp_basis(field) {
            for (r, c) in [(i, i + 1), (i + 1, i)] {
                let mut g = Mat::identity(field, n);
                g.set(r, c, t);
                gens.push(g);
            }
        }
    }
    gens
}

/// Symplectic transvections `x -> x + t B(x,v) v` generating Sp_n, where
/// `B(e_i, e_{k+i}) = 1` for `n = 2k`.
pub fn sp_generators(field: &Arc<Field>, n: usize) -> Vec<Mat> {
    assert!(n.is_multiple_of(2));
    let k = n / 2;
    let f = &**field;
    let form = |x: &[u32], y: &[u32]| -> u32 {
        (0..k).fold(0, |acc, i| {
            let t = f.sub(f.mul(x[i], y[k + i]), f.mul(x[k + i], y[i]));
            f.add(acc, t)
        })
    };
    let unit = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let mut vs: Vec<Vec<u32>> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            vs.push(vec_axpy(f, &unit(i), 1, &unit(j)));
        }
    }
    let mut gens = Vec::new();
    for v in &vs {
        for &t in &fp_basis(f) {
            let rows: Vec<Vec<u32>> = (0..n)
                .map(|i| vec_axpy(f, &unit(i), f.mul(t, form(&unit(i), v)), v))
                .collect();
            gens.push(Mat::from_rows(field, &rows));
        }
    }
    gens
}

/// R (kernel of the stabilizer of U on U) and T ≅ SL_m(q).
pub fn parabolic_rt(space: &Arc<OrthSpace>) -> (Group, Group) {
    let f = &**space.field();
    let m = space.m();
    let q = q_of(space);
    let mut r = r_derived_gens(space);
    for i in 0..m {
        for &t in &fp_basis(f) {
            r.push(space.siegel(&space.e(i), &vec_scale(f, t, &space.d())));
        }
    }
    let mu = m as u32;
    let rg = Group::new(
        format!("{q}^{}.{q}^{}", mu * (mu - 1) / 2, mu),
        space,
        r,
        Some(qpow(q, mu * (mu - 1) / 2 + mu)),
        Provenance::Constructed,
    )
    .expect("isometries");
    let t: Vec<Mat> = sl_generators(space.field(), m).iter().map(|a| levi(space, a)).collect();
    let tg = Group::new(
        format!("SL{m}({q})"),
        space,
        t,
        Some(ord(Family::SL, mu, q)),
        Provenance::Embedded,
    )
    .expect("isometries");
    (rg, tg)
}

/// Generators `ρ_{e_i, t e_j}` (i<j) of `R' = Z(R)`.
pub fn r_derived_gens(space: &OrthSpace) -> Vec<Mat> {
    let f = &**space.field();
    let m = space.m();
    let mut gens = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for &t in &fp_basis(f) {
                gens.push(space.siegel(&space.e(i), &vec_scale(f, t, &space.e(j))));
            }
        }
    }
    gens
}

/// The stabilizer `P_m` of U: R together with the Levi elements whose
/// determinant on U is a square.
pub fn pm_group(space: &Arc<OrthSpace>) -> Group {
    let (r, t) = parabolic_rt(space);
    let f = space.field();
    let q = q_of(space);
    let m = space.m() as u32;
    let mut gens = r.gens;
    gens.extend(t.gens);
    if q > 3 {
        let mut a = Mat::identity(f, space.m());
        a.set(0, 0, f.mul(f.primitive(), f.primitive()));
        gens.push(levi(space, &a));
    }
    let order = qpow(q, m * (m - 1) / 2 + m) * ord(Family::SL, m, q) * big((q - 1) / 2);
    Group::new(format!("P{m}"), space, gens, Some(order), Provenance::Constructed).expect("isometries")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ExtKind {
    SL,
    Sp,
}

/// Multiplication by `c` on GF(q^b) written over GF(q) in the basis `α^r`.
pub(crate) fn mult_matrix(big_field: &Field, c: u32) -> Vec<Vec<u32>> {
    let p = big_field.characteristic();
    (0..big_field.degree())
        .map(|r| big_field.coeffs(big_field.mul(p.pow(r), c)))
        .collect()
}

/// SL_a(q^b) or Sp_a(q^b) inside T ≅ SL_m(q), m = ab, for prime q.
pub fn embed_field_ext(space: &Arc<OrthSpace>, a: usize, b: usize, kind: ExtKind) -> Result<Group, AtlasError> {
    let m = space.m();
    if a * b != m || a == 0 {
        return Err(AtlasError::BadFactorization);
    }
    let small = space.field();
    if !small.is_prime_field() {
        return Err(AtlasError::BadParams("field extension embedding needs prime q".into()));
    }
    if kind == ExtKind::Sp && a % 2 == 1 {
        return Err(AtlasError::BadParams("Sp needs even a".into()));
    }
    let q = small.order() as u64;
    let bigf = make_field(q, b as u32)?;
    let gens_big = match kind {
        ExtKind::SL => sl_generators(&bigf, a),
        ExtKind::Sp => sp_generators(&bigf, a),
    };
    let mut gens = Vec::new();
    for g in &gens_big {
        let mut big_mat = Mat::zeros(small, m, m);
        for i in 0..a {
            for j in 0..a {
                let blk = mult_matrix(&bigf, g.get(i, j));
                for (r, row) in blk.iter().enumerate() {
                    for (c, &x) in row.iter().enumerate() {
                        big_mat.set(i * b + r, j * b + c, x);
                    }
                }
            }
        }
        gens.push(levi(space, &big_mat));
    }
    let qb = q.pow(b as u32);
    let (fam, label) = match kind {
        ExtKind::SL => (Family::SL, "SL"),
        ExtKind::Sp => (Family::Sp, "Sp"),
    };
    Group::new(
        format!("{label}{a}({qb})"),
        space,
        gens,
        Some(ord(fam, a as u32, qb)),
        Provenance::Embedded,
    )
}

/// `R:S` for a subgroup S of T given by generators and order.
pub fn r_extended(space: &Arc<OrthSpace>, s: &Group) -> Group {
    let (r, _) = parabolic_rt(space);
    let mut gens = r.gens.clone();
    gens.extend(s.gens.iter().cloned());
    let order = s
        .claimed_order
        .as_ref()
        .map(|o| o * r.claimed_order.clone().expect("R order"));
    Group::new(
        format!("{}:{}", r.name, s.name),
        space,
        gens,
        order,
        s.provenance.clone(),
    )
    .expect("isometries")
}

/// The q^4:Ω4^-(q) construction in its own basis `(x1,x8,x2,x7,x3,x6,y)`
/// of `x^⊥`, where `β(x_i,x_j) = δ_{i+j,9}`, `x = x4+x5`, `y = x4-x5`.
#[derive(Clone, Debug)]
pub struct AffineOmega4Minus {
    /// The space `x^⊥` with its own Gram matrix (`β(y,y) = -2`).
    pub xspace: Arc<OrthSpace>,
    /// Change of basis onto the standard space.
    pub similarity: Similarity,
    pub mu: u32,
    pub mu_is_square: bool,
    /// E:S written in the standard basis.
    pub group: Group,
    /// Witt type of `w^⊥ ∩ W_1 = ⟨x2, x7, y, z⟩`.
    pub s_type: WittType,
    /// `w = x3 + μ x6` in the x-basis.
    pub w: Vec<u32>,
    /// Generators of E (x-basis).
    pub e_gens: Vec<Mat>,
    /// Basis of `W_1 = ⟨x1, x8⟩^⊥` (x-basis).
    pub w1: Vec<Vec<u32>>,
}

/// Coordinates in the x-basis order `(x1,x8,x2,x7,x3,x6,y)`.
pub const X1: usize = 0;
pub const X8: usize = 1;
pub const X2: usize = 2;
pub const X7: usize = 3;
pub const X3: usize = 4;
pub const X6: usize = 5;
pub const Y: usize = 6;

pub fn perp_model_space(field: &Arc<Field>) -> Result<Arc<OrthSpace>, AtlasError> {
    let mut gram = Mat::zeros(field, 7, 7);
    for (a, b) in [(X1, X8), (X2, X7), (X3, X6)] {
        gram.set(a, b, 1);
        gram.set(b, a, 1);
    }
    gram.set(Y, Y, field.from_int(-2));
    let labels = ["x1", "x8", "x2", "x7", "x3", "x6", "y"].map(String::from).to_vec();
    Ok(Arc::new(OrthSpace::from_gram(field, gram, labels)?))
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Builds `E = R_w` (Siegel maps `ρ_{x1,u}`, u ∈ {x2, x7, y, z}) and
/// `S = Ω(⟨x2,x7,y,z⟩)` with `z = x3 - μ x6`, `w = x3 + μ x6`. μ is the
/// first value (nonsquares first) making `⟨x2,x7,y,z⟩` of minus type.
pub fn affine_omega4_minus(std: &Arc<OrthSpace>) -> Result<AffineOmega4Minus, AtlasError> {
    if std.m() != 3 {
        return Err(AtlasError::BadParams("needs m = 3".into()));
    }
    let field = std.field();
    let f = &**field;
    let xs = perp_model_space(field)?;
    let ns = f.nonsquare();
    let mut candidates: Vec<u32> = (1..f.order()).filter(|&a| !f.is_square(a).unwrap_or(true)).collect();
    candidates.extend((1..f.order()).filter(|&a| f.is_square(a).unwrap_or(false)));
    debug_assert_eq!(candidates.first(), Some(&ns));
    let mut chosen = None;
    for mu in candidates {
        let z = vec_axpy(f, &unit(7, X3), f.neg(mu), &unit(7, X6));
        let sub = [unit(7, X2), unit(7, X7), unit(7, Y), z.clone()];
        let ty = xs.witt_type(&Subspace::span(f, 7, &sub));
        if ty == WittType::Minus {
            chosen = Some((mu, z, sub));
            break;
        }
    }
    let (mu, z, sub) = chosen.ok_or_else(|| AtlasError::BadParams("no μ gives minus type".into()))?;
    let mut e_gens = Vec::new();
    for u in [unit(7, X2), unit(7, X7), unit(7, Y), z] {
        for &t in &fp_basis(f) {
            e_gens.push(xs.siegel(&unit(7, X1), &vec_scale(f, t, &u)));
        }
    }
    let mut gens_x = e_gens.clone();
    gens_x.extend(omega_on(&xs, &sub)?);
    let w = vec_axpy(f, &unit(7, X3), mu, &unit(7, X6));
    let w1 = [X2, X7, X3, X6, Y].iter().map(|&i| unit(7, i)).collect();
    let sim = similarity_to_standard(field, xs.gram())?;
    let gens: Vec<Mat> = gens_x.iter().map(|g| sim.transport(g)).collect();
    let q = field.order() as u64;
    let group = Group::new(
        format!("{q}^4:Omega4-({q})"),
        std,
        gens,
        Some(qpow(q, 4) * ord(Family::OmegaMinus, 2, q)),
        Provenance::Constructed,
    )?;
    Ok(AffineOmega4Minus {
        xspace: xs,
        similarity: sim,
        mu,
        mu_is_square: f.is_square(mu).unwrap_or(false),
        group,
        s_type: WittType::Minus,
        w,
        e_gens,
        w1,
    })
}

/// σ(a), h(a), k(a) in the x-basis.
#[derive(Clone, Debug)]
pub struct ProofElements {
    pub sigma: Mat,
    pub h: Mat,
    pub k: Mat,
}

/// σ: x3 ↦ x3 − a x1, x8 ↦ x8 + a x6.
/// h: x7 ↦ x7 + a y + a² x2, y ↦ y + 2a x2.
/// k: x3 ↦ x3 − a x1, x7 ↦ x7 − a y + a² x2, x8 ↦ x8 + a x6, y ↦ y − 2a x2.
pub fn proof_elements(field: &Arc<Field>, a: u32) -> ProofElements {
    let f = &**field;
    let a2 = f.mul(a, a);
    let two_a = f.mul(2, a);
    let build = |images: &[(usize, Vec<(usize, u32)>)]| {
        let mut g = Mat::identity(field, 7);
        for (row, terms) in images {
            for &(c, v) in terms {
                g.set(*row, c, f.add(g.get(*row, c), v));
            }
        }
        g
    };
    let sigma = build(&[(X3, vec![(X1, f.neg(a))]), (X8, vec![(X6, a)])]);
    let h = build(&[(X7, vec![(Y, a), (X2, a2)]), (Y, vec![(X2, two_a)])]);
    let k = build(&[
        (X3, vec![(X1, f.neg(a))]),
        (X7, vec![(Y, f.neg(a)), (X2, a2)]),
        (X8, vec![(X6, a)]),
        (Y, vec![(X2, f.neg(two_a))]),
    ]);
    ProofElements { sigma, h, k }
}

/// ρ: f2 ↦ f2 − d − ½e2, d ↦ d + e2; σ2 negates e2, f2, e3, f3.
pub fn line_stabilizer_elements(space: &OrthSpace) -> (Mat, Mat) {
    let f = &**space.field();
    let field = space.field();
    let n = space.dim();
    let mut rho = Mat::identity(field, n);
    let (e2, f2, d) = (2, 3, n - 1);
    rho.set(f2, d, f.neg(1));
    rho.set(f2, e2, f.neg(f.inv(2)));
    rho.set(d, e2, 1);
    let mut sigma = Mat::identity(field, n);
    for i in 2..6 {
        sigma.set(i, i, f.neg(1));
    }
    (rho, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{orbit, Natural};

    fn sp(m: usize, p: u64) -> Arc<OrthSpace> {
        Arc::new(OrthSpace::standard(m, &make_field(p, 1).unwrap()).unwrap())
    }

    #[test]
    fn r_acts_trivially_on_u_and_t_is_block_diagonal() {
        let v = sp(3, 3);
        let (r, t) = parabolic_rt(&v);
        for g in &r.gens {
            for i in 0..3 {
                assert_eq!(g.apply(&v.e(i)), v.e(i));
            }
        }
        for g in &t.gens {
            assert_eq!(g.apply(&v.d()), v.d());
            for i in 0..3 {
                let img = g.apply(&v.e(i));
                assert!((0..3).all(|j| img[2 * j + 1] == 0) && img[6] == 0);
            }
        }
    }

    #[test]
    fn embedding_identity_case_matches_t() {
        let v = sp(3, 3);
        let s = embed_field_ext(&v, 3, 1, ExtKind::SL).unwrap();
        let (_, t) = parabolic_rt(&v);
        assert_eq!(s.gens, t.gens);
        let triv = embed_field_ext(&v, 1, 3, ExtKind::SL).unwrap();
        assert!(triv.gens.is_empty());
        assert_eq!(triv.claimed_order, Some(big(1)));
        assert!(matches!(
            embed_field_ext(&v, 2, 2, ExtKind::SL),
            Err(AtlasError::BadFactorization)
        ));
    }

    #[test]
    fn stabilizers_fix_their_vectors() {
        let v = sp(3, 3);
        let x = nonsingular_vector(&v, WittType::Minus).unwrap();
        let y = vector_stabilizer(&v, &x).unwrap();
        let code = crate::engine::action::encode(3, &x);
        assert_eq!(orbit(&Natural, &y.gens, code, 10).unwrap().len(), 1);
        let e1 = e1_stabilizer(&v);
        assert_eq!(orbit(&Natural, &e1.gens, 1, 10).unwrap().len(), 1);
    }

    #[test]
    fn proof_identity_small() {
        for p in [3u64, 5] {
            let f = make_field(p, 1).unwrap();
            let xs = perp_model_space(&f).unwrap();
            for a in 0..p as u32 {
                let e = proof_elements(&f, a);
                assert_eq!(e.h.mul(&e.k), e.sigma);
                assert!(xs.is_isometry(&e.sigma) && xs.is_isometry(&e.h) && xs.is_isometry(&e.k));
            }
        }
    }

    #[test]
    fn line_stabilizer_element_checks() {
        let v = sp(3, 5);
        let (rho, s) = line_stabilizer_elements(&v);
        assert!(v.is_isometry(&rho) && v.is_isometry(&s));
        assert_eq!(rho.apply(&v.e(0)), v.e(0));
        assert_eq!(rho.order(10), Some(5));
        assert!(s.mul(&s).is_identity());
    }
}
