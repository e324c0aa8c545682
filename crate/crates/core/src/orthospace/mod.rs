//! Orthogonal geometry over GF(q), q odd: the standard basis
//! `e_1, f_1, ..., e_m, f_m, d`, reflections, perpendicular spaces,
//! Witt type, and the Ω membership test via spinor norm.

pub mod mat;

use std::sync::Arc;

use thiserror::Error;

use crate::gf::Field;
pub use mat::{echelon, null_space, solve_left, vec_add, vec_axpy, vec_scale, vec_sub, Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthError {
    #[error("vector or matrix has the wrong dimension")]
    DimensionMismatch,
    #[error("vector is singular (isotropic)")]
    SingularVector,
    #[error("no λ gives a minus-type perpendicular space")]
    NoMinusVector,
    #[error("form is degenerate")]
    Degenerate,
    #[error("m must be at least 2")]
    BadRank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WittType {
    Plus,
    Minus,
    OddDim,
    Degenerate(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaClass {
    InOmega,
    InSONotOmega,
    InONotSO,
    NotIsometry,
}

/// A space with a nondegenerate symmetric form given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct OrthSpace {
    m: usize,
    field: Arc<Field>,
    gram: Mat,
    labels: Vec<String>,
}

/// Subspace held as a reduced echelon basis, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn span(field: &Field, n: usize, vectors: &[Vec<u32>]) -> Subspace {
        let rows: Vec<Vec<u32>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
        for r in &rows {
            assert_eq!(r.len(), n);
        }
        Subspace {
            n,
            basis: echelon(field, rows),
        }
    }
    pub fn whole(n: usize) -> Subspace {
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { n, basis }
    }
    pub fn zero(n: usize) -> Subspace {
        Subspace { n, basis: vec![] }
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }
    pub fn contains(&self, field: &Field, v: &[u32]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        echelon(field, rows).len() == self.basis.len()
    }
    /// Image under a matrix, re-echelonized.
    pub fn image(&self, field: &Field, g: &Mat) -> Subspace {
        let rows: Vec<Vec<u32>> = self.basis.iter().map(|b| g.apply(b)).collect();
        Subspace::span(field, self.n, &rows)
    }
    pub fn intersect(&self, field: &Field, other: &Subspace) -> Subspace {
        // Solve a.A = b.B; the intersection is spanned by a.A.
        let k1 = self.dim();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for j in 0..self.n {
            let mut r = Vec::with_capacity(k1 + other.dim());
            for b in &self.basis {
                r.push(b[j]);
            }
            for b in &other.basis {
                r.push(field.neg(b[j]));
            }
            rows.push(r);
        }
        let ns = null_space(field, &rows, k1 + other.dim());
        let vecs: Vec<Vec<u32>> = ns
            .iter()
            .map(|coef| {
                let mut v = vec![0u32; self.n];
                for (c, b) in coef[..k1].iter().zip(&self.basis) {
                    v = vec_axpy(field, &v, *c, b);
                }
                v
            })
            .collect();
        Subspace::span(field, self.n, &vecs)
    }
}

impl OrthSpace {
    /// The standard (2m+1)-dimensional space with β(e_i,f_i)=1 and β(d,d)=1.
    pub fn standard(m: usize, field: &Arc<Field>) -> Result<OrthSpace, OrthError> {
        if m < 2 {
            return Err(OrthError::BadRank);
        }
        let n = 2 * m + 1;
        let mut gram = Mat::zeros(field, n, n);
        let mut labels = Vec::with_capacity(n);
        for i in 0..m {
            gram.set(2 * i, 2 * i + 1, 1);
            gram.set(2 * i + 1, 2 * i, 1);
            labels.push(format!("e{}", i + 1));
            labels.push(format!("f{}", i + 1));
        }
        gram.set(n - 1, n - 1, 1);
        labels.push("d".to_string());
        Ok(OrthSpace {
            m,
            field: Arc::clone(field),
            gram,
            labels,
        })
    }

    /// A space with an arbitrary symmetric nondegenerate Gram matrix.
    pub fn from_gram(field: &Arc<Field>, gram: Mat, labels: Vec<String>) -> Result<OrthSpace, OrthError> {
        if !gram.is_square() || gram != gram.transpose() || labels.len() != gram.rows() {
            return Err(OrthError::DimensionMismatch);
        }
        if gram.det() == 0 {
            return Err(OrthError::Degenerate);
        }
        Ok(OrthSpace {
            m: gram.rows() / 2,
            field: Arc::clone(field),
            gram,
            labels,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn gram(&self) -> &Mat {
        &self.gram
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }
    /// `e_{i+1}` in the standard basis.
    pub fn e(&self, i: usize) -> Vec<u32> {
        self.basis_vector(2 * i)
    }
    /// `f_{i+1}` in the standard basis.
    pub fn f(&self, i: usize) -> Vec<u32> {
        self.basis_vector(2 * i + 1)
    }
    pub fn d(&self) -> Vec<u32> {
        self.basis_vector(self.dim() - 1)
    }

    pub fn beta(&self, u: &[u32], w: &[u32]) -> Result<u32, OrthError> {
        if u.len() != self.dim() || w.len() != self.dim() {
            return Err(OrthError::DimensionMismatch);
        }
        Ok(self.beta_raw(u, w))
    }

    pub(crate) fn beta_raw(&self, u: &[u32], w: &[u32]) -> u32 {
        bilinear(&self.field, &self.gram, u, w)
    }

    /// Q(u) = β(u,u).
    pub fn quad(&self, u: &[u32]) -> u32 {
        self.beta_raw(u, u)
    }

    pub fn is_isometry(&self, g: &Mat) -> bool {
        g.rows() == self.dim() && g.is_square() && g.mul(&self.gram).mul(&g.transpose()) == self.gram
    }

    /// Reflection `x -> x - 2β(x,u)/β(u,u) u`.
    pub fn reflection(&self, u: &[u32]) -> Result<Mat, OrthError> {
        if u.len() != self.dim() {
            return Err(OrthError::DimensionMismatch);
        }
        let f = &*self.field;
        let qu = self.quad(u);
        if qu == 0 {
            return Err(OrthError::SingularVector);
        }
        let c = f.mul(f.from_int(2), f.inv(qu));
        let n = self.dim();
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let b = self.basis_vector(i);
                let s = f.neg(f.mul(c, self.beta_raw(&b, u)));
                vec_axpy(f, &b, s, u)
            })
            .collect();
        Ok(Mat::from_rows(&self.field, &rows))
    }

    /// Siegel transformation `x -> x + β(x,w)u - β(x,u)w - ½β(w,w)β(x,u)u`
    /// for singular `u` and `w ⊥ u`.
    pub fn siegel(&self, u: &[u32], w: &[u32]) -> Mat {
        let f = &*self.field;
        debug_assert_eq!(self.quad(u), 0);
        debug_assert_eq!(self.beta_raw(u, w), 0);
        let half_qw = f.mul(self.quad(w), f.inv(2));
        let n = self.dim();
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let x = self.basis_vector(i);
                let bxw = self.beta_raw(&x, w);
                let bxu = self.beta_raw(&x, u);
                let mut y = vec_axpy(f, &x, bxw, u);
                y = vec_axpy(f, &y, f.neg(bxu), w);
                vec_axpy(f, &y, f.neg(f.mul(half_qw, bxu)), u)
            })
            .collect();
        Mat::from_rows(&self.field, &rows)
    }

    pub fn perp(&self, s: &Subspace) -> Subspace {
        let rows: Vec<Vec<u32>> = s.basis().iter().map(|b| self.gram.apply(b)).collect();
        // gram symmetric, so β(x, b) = x · (b G)^T
        let ns = null_space(&self.field, &rows, self.dim());
        Subspace::span(&self.field, self.dim(), &ns)
    }

    pub fn witt_type(&self, s: &Subspace) -> WittType {
        witt_type_of(&self.field, &self.gram, s.basis())
    }

    /// Least λ in the order 1, nonsquare, remaining nonzero elements such that
    /// `(e_1 + λ f_1)^⊥` has minus type.
    pub fn choose_lambda(&self) -> Result<u32, OrthError> {
        let f = &*self.field;
        let ns = f.nonsquare();
        let mut order = vec![1, ns];
        order.extend((1..f.order()).filter(|&a| a != 1 && a != ns));
        for lambda in order {
            if self.witt_type(&self.perp(&Subspace::span(f, self.dim(), &[self.v_of(lambda)]))) == WittType::Minus {
                return Ok(lambda);
            }
        }
        Err(OrthError::NoMinusVector)
    }

    /// `e_1 + λ f_1`.
    pub fn v_of(&self, lambda: u32) -> Vec<u32> {
        let mut v = self.e(0);
        v[1] = lambda;
        v
    }

    /// Decomposes an isometry into reflections: `g = r_{u_k} ... r_{u_1}`
    /// (apply `r_{u_k}` first). The returned list is `[u_1, ..., u_k]` and
    /// `reflections_product` rebuilds `g` from it.
    pub fn reflection_decomposition(&self, g: &Mat) -> Option<Vec<Vec<u32>>> {
        if !self.is_isometry(g) {
            return None;
        }
        let f = &*self.field;
        let n = self.dim();
        let mut h = g.clone();
        let mut used = Vec::new();
        for k in 0..n {
            let b = self.basis_vector(k);
            let u = vec_sub(f, &h.apply(&b), &b);
            if u.iter().all(|&x| x == 0) {
                continue;
            }
            if self.quad(&u) != 0 {
                h = h.mul(&self.reflection(&u).unwrap());
                used.push(u);
                continue;
            }
            // Isotropic difference: first reflect in an anisotropic a fixing
            // the earlier basis vectors so that the new difference is anisotropic.
            let fixed: Vec<Vec<u32>> = (0..k).map(|i| self.basis_vector(i)).collect();
            let allowed = self.perp(&Subspace::span(f, n, &fixed));
            let a = search_span(f, allowed.basis(), |a| {
                if self.quad(a) == 0 {
                    return false;
                }
                let ra = self.reflection(a).unwrap();
                let h2 = h.mul(&ra);
                let u2 = vec_sub(f, &h2.apply(&b), &b);
                u2.iter().all(|&x| x == 0) || self.quad(&u2) != 0
            })?;
            h = h.mul(&self.reflection(&a).unwrap());
            used.push(a);
            let u2 = vec_sub(f, &h.apply(&b), &b);
            if u2.iter().any(|&x| x != 0) {
                h = h.mul(&self.reflection(&u2).unwrap());
                used.push(u2);
            }
        }
        debug_assert!(h.is_identity());
        Some(used)
    }

    /// Rebuilds the isometry from a reflection list produced above.
    pub fn reflections_product(&self, vectors: &[Vec<u32>]) -> Mat {
        let mut g = Mat::identity(&self.field, self.dim());
        for u in vectors.iter().rev() {
            g = g.mul(&self.reflection(u).unwrap());
        }
        g
    }

    /// Square class of the spinor norm, `None` if `g` is not an isometry.
    pub fn spinor_norm_is_square(&self, g: &Mat) -> Option<bool> {
        let vs = self.reflection_decomposition(g)?;
        let f = &*self.field;
        let prod = vs.iter().fold(1u32, |acc, u| f.mul(acc, self.quad(u)));
        Some(f.is_square(prod).unwrap())
    }

    pub fn in_omega(&self, g: &Mat) -> OmegaClass {
        if g.rows() != self.dim() || !g.is_square() || !self.is_isometry(g) {
            return OmegaClass::NotIsometry;
        }
        if g.det() != 1 {
            return OmegaClass::InONotSO;
        }
        match self.spinor_norm_is_square(g) {
            Some(true) => OmegaClass::InOmega,
            Some(false) => OmegaClass::InSONotOmega,
            None => OmegaClass::NotIsometry,
        }
    }
}

pub(crate) fn bilinear(field: &Field, gram: &Mat, u: &[u32], w: &[u32]) -> u32 {
    let gw = gram.apply(w);
    u.iter()
        .zip(&gw)
        .fold(0u32, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
}

/// Enumerates nonzero vectors of the span of `basis` (coefficients as a
/// base-q counter) and returns the first satisfying `pred`.
pub(crate) fn search_span<F: FnMut(&[u32]) -> bool>(
    field: &Field,
    basis: &[Vec<u32>],
    mut pred: F,
) -> Option<Vec<u32>> {
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let n = basis[0].len();
    let q = field.order() as u64;
    let total = q.checked_pow(k as u32)?;
    let mut coeffs = vec![0u32; k];
    for _ in 1..total {
        // increment counter
        for c in coeffs.iter_mut() {
            *c += 1;
            if (*c as u64) < q {
                break;
            }
            *c = 0;
        }
        let mut v = vec![0u32; n];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                v = vec_axpy(field, &v, *c, b);
            }
        }
        if pred(&v) {
            return Some(v);
        }
    }
    None
}

/// Projective search: only vectors whose last nonzero coefficient is 1.
fn search_projective<F: FnMut(&[u32]) -> bool>(field: &Field, basis: &[Vec<u32>], mut pred: F) -> Option<Vec<u32>> {
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let q = field.order();
    for lead in 0..k {
        // coefficient `lead` is 1, higher ones 0, lower ones free
        let free = lead;
        let total = (q as u64).pow(free as u32);
        let mut coeffs = vec![0u32; free];
        for step in 0..total {
            if step > 0 {
                for c in coeffs.iter_mut() {
                    *c += 1;
                    if *c < q {
                        break;
                    }
                    *c = 0;
                }
            }
            let mut v = basis[lead].clone();
            for (c, b) in coeffs.iter().zip(basis) {
                if *c != 0 {
                    v = vec_axpy(field, &v, *c, b);
                }
            }
            if pred(&v) {
                return Some(v);
            }
        }
    }
    None
}

/// Result of peeling hyperbolic pairs off a nondegenerate subspace.
pub(crate) struct Peeled {
    pub pairs: Vec<(Vec<u32>, Vec<u32>)>,
    /// Basis of the anisotropic remainder.
    pub rest: Vec<Vec<u32>>,
}

/// Splits off hyperbolic pairs (β(x,y)=1, x,y singular) from the span of
/// `basis` (assumed nondegenerate) until the remainder is anisotropic.
pub(crate) fn peel_hyperbolic(field: &Field, gram: &Mat, basis: &[Vec<u32>]) -> Peeled {
    let f = field;
    let n = gram.rows();
    let mut w: Vec<Vec<u32>> = basis.to_vec();
    let mut pairs = Vec::new();
    loop {
        if w.len() < 2 {
            break;
        }
        let Some(x) = search_projective(f, &w, |v| bilinear(f, gram, v, v) == 0) else {
            break;
        };
        let z = w
            .iter()
            .find(|b| bilinear(f, gram, &x, b) != 0)
            .expect("nondegenerate")
            .clone();
        let s = f.inv(bilinear(f, gram, &x, &z));
        let y0 = vec_scale(f, s, &z);
        let t = f.mul(bilinear(f, gram, &y0, &y0), f.inv(2));
        let y = vec_axpy(f, &y0, f.neg(t), &x);
        debug_assert_eq!(bilinear(f, gram, &x, &y), 1);
        debug_assert_eq!(bilinear(f, gram, &y, &y), 0);
        // remainder: vectors in span(w) orthogonal to x and y
        let k = w.len();
        let eqs: Vec<Vec<u32>> = [&x, &y]
            .iter()
            .map(|t| w.iter().map(|b| bilinear(f, gram, b, t)).collect())
            .collect();
        let ns = null_space(f, &eqs, k);
        w = ns
            .iter()
            .map(|coef| {
                let mut v = vec![0u32; n];
                for (c, b) in coef.iter().zip(&w) {
                    v = vec_axpy(f, &v, *c, b);
                }
                v
            })
            .collect();
        pairs.push((x, y));
    }
    Peeled { pairs, rest: w }
}

pub(crate) fn witt_type_of(field: &Field, gram: &Mat, basis: &[Vec<u32>]) -> WittType {
    let k = basis.len();
    if k == 0 {
        return WittType::Plus;
    }
    let restricted: Vec<Vec<u32>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| bilinear(field, gram, a, b)).collect())
        .collect();
    let rank = echelon(field, restricted).len();
    if rank < k {
        return WittType::Degenerate(k - rank);
    }
    if k % 2 == 1 {
        return WittType::OddDim;
    }
    let peeled = peel_hyperbolic(field, gram, basis);
    if peeled.pairs.len() * 2 == k {
        WittType::Plus
    } else {
        debug_assert_eq!(peeled.pairs.len() * 2 + 2, k);
        WittType::Minus
    }
}

/// Change of basis taking a nondegenerate odd-dimensional form to a scalar
/// multiple of the standard form: `matrix * gram * matrix^T = scale * standard`.
#[derive(Clone, Debug)]
pub struct Similarity {
    pub matrix: Mat,
    pub scale: u32,
}

impl Similarity {
    /// Conjugates a transformation written in the source basis into the standard basis.
    pub fn transport(&self, g: &Mat) -> Mat {
        let inv = self.matrix.inverse().expect("invertible change of basis");
        self.matrix.mul(g).mul(&inv)
    }
    /// Coordinates in the standard basis of a vector given in the source basis.
    pub fn transport_vector(&self, v: &[u32]) -> Vec<u32> {
        let inv = self.matrix.inverse().expect("invertible change of basis");
        inv.apply(v)
    }
}

/// Witt-style matching of an odd-dimensional nondegenerate form onto the standard one.
pub fn similarity_to_standard(field: &Arc<Field>, gram: &Mat) -> Result<Similarity, OrthError> {
    let n = gram.rows();
    if n.is_multiple_of(2) || gram != &gram.transpose() {
        return Err(OrthError::DimensionMismatch);
    }
    if gram.det() == 0 {
        return Err(OrthError::Degenerate);
    }
    let basis: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let peeled = peel_hyperbolic(field, gram, &basis);
    if peeled.rest.len() != 1 {
        return Err(OrthError::Degenerate);
    }
    let w = &peeled.rest[0];
    let c = bilinear(field, gram, w, w);
    let mut rows = Vec::with_capacity(n);
    for (x, y) in &peeled.pairs {
        rows.push(vec_scale(field, c, x));
        rows.push(y.clone());
    }
    rows.push(w.clone());
    let matrix = Mat::from_rows(field, &rows);
    Ok(Similarity { matrix, scale: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn sp(m: usize, p: u64) -> OrthSpace {
        OrthSpace::standard(m, &make_field(p, 1).unwrap()).unwrap()
    }

    #[test]
    fn standard_gram_shape() {
        let v = sp(3, 3);
        let g = v.gram();
        assert_eq!(g.rows(), 7);
        assert_eq!(g.get(0, 1), 1);
        assert_eq!(g.get(1, 0), 1);
        assert_eq!(g.get(6, 6), 1);
        assert_eq!(g.get(0, 0), 0);
        assert_eq!(v.beta(&v.e(0), &v.f(0)).unwrap(), 1);
        assert_eq!(v.beta(&v.e(0), &v.e(0)).unwrap(), 0);
        assert_eq!(v.beta(&v.d(), &v.d()).unwrap(), 1);
        assert!(v.beta(&[1, 0], &v.d()).is_err());
        assert_ne!(sp(4, 3).gram().det(), 0);
    }

    #[test]
    fn beta_of_v_is_two_lambda() {
        let v = sp(3, 5);
        let f = v.field().clone();
        for lambda in 1..5 {
            let x = v.v_of(lambda);
            assert_eq!(v.quad(&x), f.mul(2, lambda));
        }
    }

    #[test]
    fn reflection_properties() {
        let v = sp(3, 3);
        let f = v.field().clone();
        let rd = v.reflection(&v.d()).unwrap();
        assert_eq!(rd.apply(&v.e(0)), v.e(0));
        assert_eq!(rd.apply(&v.d()), vec_scale(&f, 2, &v.d()));
        let u = vec_add(&f, &v.e(0), &v.f(0));
        let ru = v.reflection(&u).unwrap();
        assert!(ru.mul(&ru).is_identity());
        let w = vec_axpy(&f, &v.e(0), 2, &v.f(0));
        assert_eq!(v.reflection(&w).unwrap().det(), f.neg(1));
        assert_eq!(v.reflection(&v.e(0)).unwrap_err(), OrthError::SingularVector);
        assert!(v.is_isometry(&ru));
    }

    #[test]
    fn perp_dimensions() {
        let v = sp(3, 3);
        let f = v.field().clone();
        let line = Subspace::span(&f, 7, &[v.v_of(1)]);
        assert_eq!(v.perp(&line).dim(), 6);
        assert_eq!(v.perp(&Subspace::whole(7)).dim(), 0);
        let e1 = Subspace::span(&f, 7, &[v.e(0)]);
        assert!(v.perp(&e1).contains(&f, &v.e(0)));
    }

    #[test]
    fn witt_types() {
        let v = sp(3, 3);
        let f = v.field().clone();
        let plane = Subspace::span(&f, 7, &[v.e(0), v.f(0)]);
        assert_eq!(v.witt_type(&plane), WittType::Plus);
        let dline = Subspace::span(&f, 7, &[v.d()]);
        assert_eq!(v.witt_type(&dline), WittType::OddDim);
        let lam = v.choose_lambda().unwrap();
        assert_ne!(lam, 0);
        let vp = v.perp(&Subspace::span(&f, 7, &[v.v_of(lam)]));
        assert_eq!(v.witt_type(&vp), WittType::Minus);
        let iso = Subspace::span(&f, 7, &[v.e(0), v.e(1)]);
        assert_eq!(v.witt_type(&iso), WittType::Degenerate(2));
    }

    #[test]
    fn valid_lambdas_form_one_square_class() {
        for p in [3u64, 5, 7] {
            let v = sp(3, p);
            let f = v.field().clone();
            let good: Vec<u32> = (1..f.order())
                .filter(|&l| {
                    let s = v.perp(&Subspace::span(&f, 7, &[v.v_of(l)]));
                    v.witt_type(&s) == WittType::Minus
                })
                .collect();
            assert_eq!(good.len() as u32, (f.order() - 1) / 2);
            let cls = f.is_square(good[0]).unwrap();
            assert!(good.iter().all(|&l| f.is_square(l).unwrap() == cls));
        }
    }

    #[test]
    fn omega_classification_basics() {
        let v = sp(3, 3);
        let f = v.field().clone();
        assert_eq!(v.in_omega(&Mat::identity(&f, 7)), OmegaClass::InOmega);
        assert_eq!(v.in_omega(&v.reflection(&v.d()).unwrap()), OmegaClass::InONotSO);
        let mut bad = Mat::identity(&f, 7);
        bad.set(0, 1, 1);
        assert_eq!(v.in_omega(&bad), OmegaClass::NotIsometry);
        // Siegel maps are in Ω.
        let s = v.siegel(&v.e(0), &v.d());
        assert!(v.is_isometry(&s));
        assert_eq!(v.in_omega(&s), OmegaClass::InOmega);
    }

    #[test]
    fn minus_one_on_two_hyperbolic_planes_is_in_omega() {
        // -1 on <e2,f2,e3,f3>, identity elsewhere.
        let v = sp(3, 3);
        let f = v.field().clone();
        let mut g = Mat::identity(&f, 7);
        for i in 2..6 {
            g.set(i, i, f.neg(1));
        }
        assert_eq!(v.in_omega(&g), OmegaClass::InOmega);
        let v5 = sp(3, 5);
        let f5 = v5.field().clone();
        let mut g5 = Mat::identity(&f5, 7);
        for i in 2..6 {
            g5.set(i, i, f5.neg(1));
        }
        assert_eq!(v5.in_omega(&g5), OmegaClass::InOmega);
    }

    #[test]
    fn decomposition_round_trip() {
        let v = sp(3, 3);
        let f = v.field().clone();
        let a = v.siegel(&v.e(0), &v.d());
        let b = v.siegel(&v.f(1), &v.e(2));
        let c = v.reflection(&vec_add(&f, &v.e(2), &v.f(2))).unwrap();
        let g = a.mul(&b).mul(&c).mul(&a);
        let vs = v.reflection_decomposition(&g).unwrap();
        assert!(vs.len() <= 14);
        assert_eq!(v.reflections_product(&vs), g);
    }

    #[test]
    fn similarity_maps_to_standard() {
        let f = make_field(5, 1).unwrap();
        // diagonal form diag(1,1,1,1,1,1,2)
        let mut gram = Mat::identity(&f, 7);
        gram.set(6, 6, 2);
        let sim = similarity_to_standard(&f, &gram).unwrap();
        let std = OrthSpace::standard(3, &f).unwrap();
        let lhs = sim.matrix.mul(&gram).mul(&sim.matrix.transpose());
        assert_eq!(lhs, std.gram().scale(sim.scale));
    }
}
