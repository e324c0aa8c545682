//! The 13-dimensional module for PSp6(3^f).
//!
//! Sp6 acts on `Λ²N`, N the natural module. The contraction with the
//! symplectic form has a 14-dimensional kernel V1, and in characteristic 3
//! the invariant bivector `ω = Σ e_i∧f_i` lies in V1 and spans the radical
//! of the induced symmetric form. `V1/⟨ω⟩` is a nondegenerate 13-space on
//! which `−1` acts trivially, giving `PSp6(3) < Ω13(3)`.

use std::sync::Arc;

use super::classical::sp_generators;
use super::orders::{ord, Family};
use super::{AtlasError, Group, Provenance};
use crate::gf::Field;
use crate::orthospace::{null_space, similarity_to_standard, solve_left, Mat, OrthSpace};

const N: usize = 6;
const K: usize = 3;

fn pairs() -> Vec<(usize, usize)> {
    (0..N).flat_map(|i| (i + 1..N).map(move |j| (i, j))).collect()
}

/// `J(e_i, e_j)` for the form of [`sp_generators`]: `J(e_i, e_{3+i}) = 1`.
fn j(i: usize, k: usize, f: &Field) -> u32 {
    if k == i + K {
        1
    } else if i == k + K {
        f.neg(1)
    } else {
        0
    }
}

/// `g` acting on `Λ²N`: `e_i∧e_j ↦ e_i g ∧ e_j g`.
fn wedge_matrix(g: &Mat) -> Mat {
    let f = g.field();
    let ps = pairs();
    let mut w = Mat::zeros(f, ps.len(), ps.len());
    for (r, &(i, jj)) in ps.iter().enumerate() {
        for (c, &(k, l)) in ps.iter().enumerate() {
            let minor = f.sub(f.mul(g.get(i, k), g.get(jj, l)), f.mul(g.get(i, l), g.get(jj, k)));
            w.set(r, c, minor);
        }
    }
    w
}

/// `B(a∧b, c∧d) = J(a,c)J(b,d) − J(a,d)J(b,c)` on the pair basis.
fn wedge_gram(f: &Arc<Field>) -> Mat {
    let ps = pairs();
    let mut g = Mat::zeros(f, ps.len(), ps.len());
    for (r, &(a, b)) in ps.iter().enumerate() {
        for (c, &(x, y)) in ps.iter().enumerate() {
            let v = f.sub(f.mul(j(a, x, f), j(b, y, f)), f.mul(j(a, y, f), j(b, x, f)));
            g.set(r, c, v);
        }
    }
    g
}

/// The quotient `V1/⟨ω⟩`: a basis of 13 vectors of V1 completing ω, its
/// Gram matrix, and the projection of Sp6 generators.
struct Quotient {
    basis: Mat,
    gram: Mat,
}

fn quotient(f: &Arc<Field>) -> Result<Quotient, AtlasError> {
    let ps = pairs();
    let contraction: Vec<u32> = ps.iter().map(|&(a, b)| j(a, b, f)).collect();
    let v1 = null_space(f, &[contraction], ps.len());
    let mut omega = vec![0u32; ps.len()];
    for i in 0..K {
        omega[ps.iter().position(|&p| p == (i, i + K)).expect("pair")] = 1;
    }
    // Complete ω to a basis of V1 greedily.
    let mut rows = vec![omega];
    for v in v1 {
        let mut trial = rows.clone();
        trial.push(v);
        if crate::orthospace::echelon(f, trial.clone()).len() == trial.len() {
            rows = trial;
        }
    }
    if rows.len() != 14 {
        return Err(AtlasError::BadParams("contraction kernel does not contain ω".into()));
    }
    let big_gram = wedge_gram(f);
    let basis = Mat::from_rows(f, &rows);
    let full = basis.mul(&big_gram).mul(&basis.transpose());
    let mut gram = Mat::zeros(f, 13, 13);
    for r in 0..13 {
        for c in 0..13 {
            gram.set(r, c, full.get(r + 1, c + 1));
        }
        if full.get(0, r + 1) != 0 {
            return Err(AtlasError::BadParams("ω is not in the radical".into()));
        }
    }
    Ok(Quotient { basis, gram })
}

impl Quotient {
    /// `g` on `V1/⟨ω⟩` in the completing basis.
    fn project(&self, g: &Mat) -> Result<Mat, AtlasError> {
        let f = g.field();
        let w = wedge_matrix(g);
        let mut m = Mat::zeros(f, 13, 13);
        for r in 0..13 {
            let img = w.apply(&self.basis.to_rows()[r + 1]);
            let coords =
                solve_left(f, &self.basis, &img).ok_or_else(|| AtlasError::BadParams("V1 is not invariant".into()))?;
            for c in 0..13 {
                m.set(r, c, coords[c + 1]);
            }
        }
        Ok(m)
    }
}

/// PSp6(q) in `Ω13(q)` for q a power of 3, written in the standard basis of
/// `space` (m = 6).
pub fn psp6_wedge(space: &Arc<OrthSpace>) -> Result<Group, AtlasError> {
    let f = space.field();
    if f.characteristic() != 3 {
        return Err(AtlasError::BadCharacteristic);
    }
    if space.m() != 6 {
        return Err(AtlasError::BadParams("needs m = 6".into()));
    }
    let quo = quotient(f)?;
    if quo.gram.det() == 0 {
        return Err(AtlasError::BadParams("quotient form is degenerate".into()));
    }
    let sim = similarity_to_standard(f, &quo.gram)?;
    let gens = sp_generators(f, N)
        .iter()
        .map(|g| quo.project(g).map(|m| sim.transport(&m)))
        .collect::<Result<Vec<_>, _>>()?;
    let q = f.order() as u64;
    Group::new(
        format!("PSp6({q})"),
        space,
        gens,
        Some(ord(Family::PSp, 6, q)),
        Provenance::Constructed,
    )
}

/// The ambient `Ω13(q)` together with the image of `Sp6(q)`.
pub fn wedge_embedding(q: u64) -> Result<(Group, Group), AtlasError> {
    let space = super::standard(6, q)?;
    let x = psp6_wedge(&space)?;
    Ok((super::omega_group(&space), x))
}

/// Dimensions of the contraction kernel and of the quotient module.
pub fn wedge_dims(field: &Arc<Field>) -> Result<(usize, usize), AtlasError> {
    let quo = quotient(field)?;
    Ok((quo.basis.rows(), quo.gram.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::standard;

    #[test]
    fn module_is_nondegenerate_and_invariant() {
        let space = standard(6, 3).unwrap();
        let g = psp6_wedge(&space).unwrap();
        assert_eq!(g.dim, 13);
        assert!(g.gens.iter().all(|m| space.is_isometry(m)));
        assert_eq!(wedge_dims(space.field()).unwrap(), (14, 13));
    }

    #[test]
    fn minus_one_acts_trivially() {
        let space = standard(6, 3).unwrap();
        let quo = quotient(space.field()).unwrap();
        let f = space.field();
        let mut minus = Mat::zeros(f, N, N);
        for i in 0..N {
            minus.set(i, i, f.neg(1));
        }
        assert_eq!(quo.project(&minus).unwrap(), Mat::identity(f, 13));
    }
}
