//! Right actions of matrices on encoded vectors, lines, subspaces and
//! alternating 3-forms.

use std::sync::Arc;

use super::Element;
use crate::gf::Field;
use crate::orthospace::{echelon, Mat};

/// A right action on `u64` point codes: `act(g*h, x) = act(h, act(g, x))`.
pub trait Action<E>: Sync {
    fn act(&self, g: &E, pt: u64) -> u64;
}

impl<E, A: Action<E> + ?Sized> Action<E> for &A {
    fn act(&self, g: &E, pt: u64) -> u64 {
        (**self).act(g, pt)
    }
}

/// The element's own faithful action.
#[derive(Clone, Copy, Debug, Default)]
pub struct Natural;

impl<E: Element> Action<E> for Natural {
    fn act(&self, g: &E, pt: u64) -> u64 {
        g.image(pt)
    }
}

pub fn encode(q: u32, v: &[u32]) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

pub fn decode(q: u32, n: usize, mut code: u64) -> Vec<u32> {
    let q = q as u64;
    (0..n)
        .map(|_| {
            let d = (code % q) as u32;
            code /= q;
            d
        })
        .collect()
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize_line(field: &Field, v: &[u32]) -> Vec<u32> {
    match v.iter().find(|&&x| x != 0) {
        None => v.to_vec(),
        Some(&lead) => {
            let s = field.inv(lead);
            v.iter().map(|&x| field.mul(x, s)).collect()
        }
    }
}

/// Projective points, each coded by its normalized representative.
#[derive(Clone, Debug)]
pub struct LineAction {
    field: Arc<Field>,
    n: usize,
}

impl LineAction {
    pub fn new(field: &Arc<Field>, n: usize) -> Self {
        LineAction {
            field: Arc::clone(field),
            n,
        }
    }
    pub fn point(&self, v: &[u32]) -> u64 {
        encode(self.field.order(), &normalize_line(&self.field, v))
    }
}

impl Action<Mat> for LineAction {
    fn act(&self, g: &Mat, pt: u64) -> u64 {
        let v = decode(self.field.order(), self.n, pt);
        self.point(&g.apply(&v))
    }
}

/// k-dimensional subspaces, coded by their reduced echelon basis.
#[derive(Clone, Debug)]
pub struct SubspaceAction {
    field: Arc<Field>,
    n: usize,
    k: usize,
}

impl SubspaceAction {
    pub fn new(field: &Arc<Field>, n: usize, k: usize) -> Self {
        let digits = (n * k) as f64 * (field.order() as f64).log2();
        assert!(digits < 64.0, "subspace codes do not fit in 64 bits");
        SubspaceAction {
            field: Arc::clone(field),
            n,
            k,
        }
    }

    /// Code of the span of `rows`, which must have dimension k.
    pub fn point(&self, rows: &[Vec<u32>]) -> u64 {
        let ech = echelon(&self.field, rows.to_vec());
        assert_eq!(ech.len(), self.k, "spanning set has the wrong rank");
        let flat: Vec<u32> = ech.into_iter().flatten().collect();
        encode(self.field.order(), &flat)
    }

    pub fn basis(&self, pt: u64) -> Vec<Vec<u32>> {
        let flat = decode(self.field.order(), self.n * self.k, pt);
        flat.chunks(self.n).map(|c| c.to_vec()).collect()
    }
}

impl Action<Mat> for SubspaceAction {
    fn act(&self, g: &Mat, pt: u64) -> u64 {
        let rows: Vec<Vec<u32>> = self.basis(pt).iter().map(|r| g.apply(r)).collect();
        self.point(&rows)
    }
}

/// Alternating trilinear forms on an n-space, coded by their coefficients on
/// `b_i ∧ b_j ∧ b_k` (i<j<k, lexicographic). The right action is
/// `(φ·g)(x,y,z) = φ(x g⁻¹, y g⁻¹, z g⁻¹)`.
#[derive(Clone, Debug)]
pub struct FormAction {
    field: Arc<Field>,
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl FormAction {
    pub fn new(field: &Arc<Field>, n: usize) -> Self {
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    triples.push([i, j, k]);
                }
            }
        }
        let bits = triples.len() as f64 * (field.order() as f64).log2();
        assert!(bits < 64.0, "form codes do not fit in 64 bits");
        FormAction {
            field: Arc::clone(field),
            n,
            triples,
        }
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Code of the form with the given coefficients (indexed like `triples`).
    pub fn point(&self, coeffs: &[u32]) -> u64 {
        assert_eq!(coeffs.len(), self.triples.len());
        encode(self.field.order(), coeffs)
    }

    pub fn coeffs(&self, pt: u64) -> Vec<u32> {
        decode(self.field.order(), self.triples.len(), pt)
    }

    /// Coefficient vector of `φ(x h, y h, z h)` as a form in (x, y, z).
    pub fn pull_back(&self, coeffs: &[u32], h: &Mat) -> Vec<u32> {
        let f = &*self.field;
        let t = &self.triples;
        let minor = |rows: &[usize; 3], cols: &[usize; 3]| -> u32 {
            let a = |r: usize, c: usize| h.get(rows[r], cols[c]);
            let pos = f.add(
                f.add(
                    f.mul(a(0, 0), f.mul(a(1, 1), a(2, 2))),
                    f.mul(a(0, 1), f.mul(a(1, 2), a(2, 0))),
                ),
                f.mul(a(0, 2), f.mul(a(1, 0), a(2, 1))),
            );
            let neg = f.add(
                f.add(
                    f.mul(a(0, 2), f.mul(a(1, 1), a(2, 0))),
                    f.mul(a(0, 0), f.mul(a(1, 2), a(2, 1))),
                ),
                f.mul(a(0, 1), f.mul(a(1, 0), a(2, 2))),
            );
            f.sub(pos, neg)
        };
        let support: Vec<usize> = (0..t.len()).filter(|&s| coeffs[s] != 0).collect();
        t.iter()
            .map(|rows| {
                support
                    .iter()
                    .fold(0u32, |acc, &s| f.add(acc, f.mul(coeffs[s], minor(rows, &t[s]))))
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

impl Action<Mat> for FormAction {
    fn act(&self, g: &Mat, pt: u64) -> u64 {
        let h = g.inverse().expect("invertible");
        self.point(&self.pull_back(&self.coeffs(pt), &h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn encode_round_trip() {
        let v = vec![2, 0, 1, 1];
        assert_eq!(decode(3, 4, encode(3, &v)), v);
    }

    #[test]
    fn actions_compose_on_the_right() {
        let f = make_field(3, 1).unwrap();
        let g = Mat::from_ints(
            &f,
            &[vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]],
        );
        let h = Mat::from_ints(
            &f,
            &[vec![1, 0, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 1, 2], vec![0, 0, 0, 1]],
        );
        let gh = g.mul(&h);
        let x = encode(3, &[1, 2, 0, 1]);
        assert_eq!(Natural.act(&gh, x), Natural.act(&h, Natural.act(&g, x)));
        let la = LineAction::new(&f, 4);
        let lx = la.point(&[2, 1, 0, 2]);
        assert_eq!(la.act(&gh, lx), la.act(&h, la.act(&g, lx)));
        let sa = SubspaceAction::new(&f, 4, 2);
        let sx = sa.point(&[vec![1, 0, 1, 0], vec![0, 1, 0, 2]]);
        assert_eq!(sa.act(&gh, sx), sa.act(&h, sa.act(&g, sx)));
        let fa = FormAction::new(&f, 4);
        let phi = fa.point(&[1, 2, 0, 1]);
        assert_eq!(fa.act(&gh, phi), fa.act(&h, fa.act(&g, phi)));
        assert_eq!(fa.act(&Mat::identity(&f, 4), phi), phi);
    }
}
