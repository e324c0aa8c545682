//! G2(q) as a 3-form stabilizer, and subgroups of it.
//!
//! The form is `a f1∧f2∧f3 + b e1∧e2∧e3 + c Σ e_i∧f_i∧d`; the coefficients
//! are searched until the Ω7-orbit has size `|Ω7(q)|/|G2(q)|`. The second
//! class of G2 is its conjugate under the reflection `r_d`.
//!
//! The SL3(3) and SU3(3) that factorize against N1 stabilizers act
//! irreducibly, so they are built from the adjoint module (trace-zero
//! matrices modulo scalars, 7-dimensional in characteristic 3).

use std::sync::Arc;

use num_bigint::BigUint;

use super::orders::{ord, Family};
use super::{AtlasError, Group, Provenance};
use crate::engine::{orbit, stabilizer, Bsgs, FormAction};
use crate::gf::{make_field, Field};
use crate::orthospace::{null_space, similarity_to_standard, solve_left, Mat, OrthSpace, Similarity};

/// G2 with the form it fixes.
#[derive(Clone, Debug)]
pub struct G2Data {
    pub coeffs: Vec<u32>,
    pub point: u64,
    pub group: Group,
    pub bsgs: Bsgs<Mat>,
}

fn form_coeffs(fa: &FormAction, a: u32, b: u32, c: u32) -> Vec<u32> {
    let mut coeffs = vec![0; fa.triples().len()];
    for (s, t) in fa.triples().iter().enumerate() {
        coeffs[s] = match *t {
            [1, 3, 5] => a,
            [0, 2, 4] => b,
            [i, j, 6] if j == i + 1 && i % 2 == 0 => c,
            _ => 0,
        };
    }
    coeffs
}

/// The index `|Ω7(q)| / |G2(q)|`.
pub fn g2_index(q: u64) -> usize {
    let idx: BigUint = ord(Family::OmegaOdd, 3, q) / ord(Family::G2, 0, q);
    usize::try_from(idx).expect("small index")
}

/// Stabilizer in `z` of the first form in the family whose orbit has the
/// right size. `z` must be Ω7(q) with its certified BSGS.
pub fn g2_group(space: &Arc<OrthSpace>, z: &Group, zb: &Bsgs<Mat>, seed: u64) -> Result<G2Data, AtlasError> {
    if space.m() != 3 {
        return Err(AtlasError::BadParams("G2 needs m = 3".into()));
    }
    let field = space.field();
    let q = field.order() as u64;
    let fa = FormAction::new(field, 7);
    let index = g2_index(q);
    for a in 1..field.order() {
        for b in 1..field.order() {
            for c in 1..field.order() {
                let coeffs = form_coeffs(&fa, a, b, c);
                let pt = fa.point(&coeffs);
                match orbit(&fa, &z.gens, pt, index) {
                    Ok(o) if o.len() == index => {}
                    _ => continue,
                }
                let (bsgs, _) = stabilizer(zb, &z.gens, &fa, pt, seed, index)?;
                let group = Group::new(
                    format!("G2({q})"),
                    space,
                    bsgs.generators(),
                    Some(ord(Family::G2, 0, q)),
                    Provenance::Constructed,
                )?;
                return Ok(G2Data {
                    coeffs,
                    point: pt,
                    group,
                    bsgs,
                });
            }
        }
    }
    Err(AtlasError::CertificationFailure {
        name: "G2".into(),
        detail: "no form in the family has the expected orbit".into(),
    })
}

impl G2Data {
    /// The other class: conjugate by `r_d`, fixing the transformed form.
    pub fn other_class(&self, space: &OrthSpace, seed: u64) -> Result<G2Data, AtlasError> {
        let r = space.reflection(&space.d())?;
        let fa = FormAction::new(space.field(), 7);
        let coeffs = fa.pull_back(&self.coeffs, &r);
        let gens: Vec<Mat> = self.group.gens.iter().map(|g| r.mul(g).mul(&r)).collect();
        let mut group = self.group.clone();
        group.gens = gens;
        group.name = format!("{}^r", self.group.name);
        let bsgs = group.certify(seed)?;
        Ok(G2Data {
            point: fa.point(&coeffs),
            coeffs,
            group,
            bsgs,
        })
    }
}

/// Flattens a matrix over GF(p^f) into prime-field coordinates.
fn flatten(m: &Mat) -> Vec<u32> {
    let f = m.field();
    m.to_rows().iter().flatten().flat_map(|&x| f.coeffs(x)).collect()
}

fn unflatten(field: &Arc<Field>, v: &[u32], n: usize) -> Mat {
    let deg = field.degree() as usize;
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = (i * n + j) * deg;
                    field.from_coeffs(&v[k..k + deg])
                })
                .collect()
        })
        .collect();
    Mat::from_rows(field, &rows)
}

fn trace(m: &Mat) -> u32 {
    let f = m.field();
    (0..m.rows()).fold(0, |acc, i| f.add(acc, m.get(i, i)))
}

/// A conjugation module `L / ⟨c⟩` with the trace form, over the prime field.
pub struct AdjointModule {
    pub gram: Mat,
    pub images: Vec<Mat>,
}

/// Right action `X ↦ g⁻¹ X g` on `span(lie) / ⟨center⟩`. `lie` spans the
/// algebra over the prime field and contains `center`.
pub fn adjoint_module(gens: &[Mat], lie: &[Mat], center: &Mat) -> Result<AdjointModule, AtlasError> {
    let kf = center.field();
    let prime = make_field(kf.characteristic() as u64, 1)?;
    let cvec = flatten(center);
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    let mut rank_rows = vec![cvec.clone()];
    for x in lie {
        let v = flatten(x);
        let mut trial = rank_rows.clone();
        trial.push(v.clone());
        if Mat::from_rows(&prime, &trial).rank() == trial.len() {
            rank_rows = trial;
            chosen.push(v);
        }
    }
    let k = chosen.len();
    let mut all = chosen.clone();
    all.push(cvec);
    let basis_mat = Mat::from_rows(&prime, &all);
    let n = center.rows();
    let coords = |x: &Mat| -> Result<Vec<u32>, AtlasError> {
        let c = solve_left(&prime, &basis_mat, &flatten(x))
            .ok_or_else(|| AtlasError::BadParams("not invariant under conjugation".into()))?;
        Ok(c[..k].to_vec())
    };
    let mats: Vec<Mat> = chosen.iter().map(|v| unflatten(kf, v, n)).collect();
    let mut gram = Mat::zeros(&prime, k, k);
    for i in 0..k {
        for j in 0..k {
            let t = kf.coeffs(trace(&mats[i].mul(&mats[j])));
            if t[1..].iter().any(|&c| c != 0) {
                return Err(AtlasError::BadParams("trace form is not prime-field valued".into()));
            }
            gram.set(i, j, t[0]);
        }
    }
    let mut images = Vec::new();
    for g in gens {
        let gi = g
            .inverse()
            .ok_or_else(|| AtlasError::BadParams("singular generator".into()))?;
        let rows: Result<Vec<Vec<u32>>, AtlasError> = mats.iter().map(|b| coords(&gi.mul(b).mul(g))).collect();
        images.push(Mat::from_rows(&prime, &rows?));
    }
    Ok(AdjointModule { gram, images })
}

fn transported(space: &Arc<OrthSpace>, module: &AdjointModule) -> Result<(Vec<Mat>, Similarity), AtlasError> {
    if module.gram.rows() != space.dim() {
        return Err(AtlasError::BadParams("module has the wrong dimension".into()));
    }
    let sim = similarity_to_standard(space.field(), &module.gram)?;
    Ok((module.images.iter().map(|g| sim.transport(g)).collect(), sim))
}

fn elementary(field: &Arc<Field>, n: usize, r: usize, c: usize, v: u32) -> Mat {
    let mut m = Mat::zeros(field, n, n);
    m.set(r, c, v);
    m
}

/// SL3(3) acting on sl3 / ⟨I⟩.
pub fn sl3_adjoint(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    let field = space.field();
    if field.order() != 3 {
        return Err(AtlasError::BadCharacteristic);
    }
    let gens = super::classical::sl_generators(field, 3);
    let mut lie = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                lie.push(elementary(field, 3, i, j, 1));
            }
        }
    }
    lie.push(elementary(field, 3, 0, 0, 1).add(&elementary(field, 3, 1, 1, 2)));
    lie.push(elementary(field, 3, 1, 1, 1).add(&elementary(field, 3, 2, 2, 2)));
    let module = adjoint_module(&gens, &lie, &Mat::identity(field, 3))?;
    let (images, _) = transported(space, &module)?;
    Group::new(
        "SL3(3)",
        space,
        images,
        Some(ord(Family::SL, 3, 3)),
        Provenance::Constructed,
    )
}

fn conj_transpose(m: &Mat) -> Mat {
    let f = m.field();
    let rows: Vec<Vec<u32>> = (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| f.frobenius(m.get(i, j))).collect())
        .collect();
    Mat::from_rows(f, &rows)
}

fn antidiag(field: &Arc<Field>) -> Mat {
    Mat::from_ints(field, &[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]])
}

/// Generators of SU3(3) for the Hermitian form with antidiagonal Gram
/// matrix: all upper and lower unitriangular isometries.
pub fn su3_natural(f9: &Arc<Field>) -> Vec<Mat> {
    let j = antidiag(f9);
    let q = f9.order();
    let mut gens = Vec::new();
    for lower in [false, true] {
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let mut g = Mat::identity(f9, 3);
                    let (p01, p02, p12) = if lower {
                        ((1, 0), (2, 0), (2, 1))
                    } else {
                        ((0, 1), (0, 2), (1, 2))
                    };
                    g.set(p01.0, p01.1, a);
                    g.set(p02.0, p02.1, b);
                    g.set(p12.0, p12.1, c);
                    if !g.is_identity() && g.mul(&j).mul(&conj_transpose(&g)) == j {
                        gens.push(g);
                    }
                }
            }
        }
    }
    gens
}

/// SU3(3) acting on su3 / ⟨iI⟩ with the trace form.
pub fn su3_adjoint(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    let field = space.field();
    if field.order() != 3 {
        return Err(AtlasError::BadCharacteristic);
    }
    let f9 = make_field(3, 2)?;
    let gens = su3_natural(&f9);
    let j = antidiag(&f9);
    // X J + J X̄ᵀ = 0 and tr X = 0, linear over GF(3) in 18 coordinates.
    let dim = 18;
    let cols: Vec<Vec<u32>> = (0..dim)
        .map(|k| {
            let mut v = vec![0; dim];
            v[k] = 1;
            let x = unflatten(&f9, &v, 3);
            let mut out = flatten(&x.mul(&j).add(&j.mul(&conj_transpose(&x))));
            out.extend(f9.coeffs(trace(&x)));
            out
        })
        .collect();
    let eqs: Vec<Vec<u32>> = (0..cols[0].len())
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let lie: Vec<Mat> = null_space(field, &eqs, dim)
        .iter()
        .map(|v| unflatten(&f9, v, 3))
        .collect();
    let i = f9.sqrt(f9.from_int(-1)).expect("-1 is a square in GF(9)");
    let center = Mat::identity(&f9, 3).scale(i);
    let module = adjoint_module(&gens, &lie, &center)?;
    let (images, _) = transported(space, &module)?;
    Group::new(
        "SU3(3)",
        space,
        images,
        Some(ord(Family::SU, 3, 3)),
        Provenance::Constructed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::standard;

    #[test]
    fn adjoint_groups_are_isometries_of_the_right_order() {
        let v = standard(3, 3).unwrap();
        let sl = sl3_adjoint(&v).unwrap();
        assert_eq!(sl.certify(1).unwrap().order(), BigUint::from(5616u32));
        let su = su3_adjoint(&v).unwrap();
        assert_eq!(su.certify(1).unwrap().order(), BigUint::from(6048u32));
    }

    #[test]
    fn g2_from_form() {
        let v = standard(3, 3).unwrap();
        let z = crate::atlas::omega_group(&v);
        let zb = z.certify(1).unwrap();
        let g = g2_group(&v, &z, &zb, 2).unwrap();
        assert_eq!(g.bsgs.order(), BigUint::from(4245696u32));
        let fa = FormAction::new(v.field(), 7);
        for x in &g.group.gens {
            assert_eq!(crate::engine::Action::act(&fa, x, g.point), g.point);
        }
        let h = g.other_class(&v, 3).unwrap();
        for x in &h.group.gens {
            assert_eq!(crate::engine::Action::act(&fa, x, h.point), h.point);
        }
    }

    #[test]
    fn index_values() {
        assert_eq!(g2_index(3), 1080);
    }
}
