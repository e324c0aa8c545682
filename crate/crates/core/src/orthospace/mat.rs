//! Dense matrices over a finite field.
//!
//! Vectors are rows and matrices act on the right: the image of `x` under `g`
//! is `x * g`, so row `i` of `g` is the image of the `i`-th basis vector and
//! `g * h` means "apply `g`, then `h`".

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::gf::{Field, GfError};

#[derive(Clone)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Arc<Field>,
    data: Vec<u16>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}
impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.field.format_elem(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> Mat {
        assert!(field.order() <= u16::MAX as u32 + 1, "field too large for matrices");
        Mat {
            rows,
            cols,
            field: Arc::clone(field),
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<u32>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                assert!(v < field.order());
                m.data[i * c + j] = v as u16;
            }
        }
        m
    }

    /// Integer entries reduced into the prime field.
    pub fn from_ints(field: &Arc<Field>, rows: &[Vec<i64>]) -> Mat {
        let conv: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Mat::from_rows(field, &conv)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c] as u32
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.order());
        self.data[r * self.cols + c] = v as u16;
    }

    pub fn row(&self, r: usize) -> Vec<u32> {
        self.data[r * self.cols..(r + 1) * self.cols]
            .iter()
            .map(|&v| v as u32)
            .collect()
    }

    pub fn row_slice(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn raw(&self) -> &[u16] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let n = self.rows;
        self.data
            .iter()
            .enumerate()
            .all(|(k, &v)| v == if k / n == k % n { 1 } else { 0 })
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = Mat::zeros(&self.field, n, m);
        let f = &*self.field;
        if f.is_prime_field() {
            let p = f.characteristic() as u64;
            let mut acc = vec![0u64; m];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                let arow = &self.data[i * k..(i + 1) * k];
                for (l, &a) in arow.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let a = a as u64;
                    let brow = &other.data[l * m..(l + 1) * m];
                    for (slot, &b) in acc.iter_mut().zip(brow) {
                        *slot += a * b as u64;
                    }
                }
                for (j, &v) in acc.iter().enumerate() {
                    out.data[i * m + j] = (v % p) as u16;
                }
            }
        } else {
            for i in 0..n {
                for l in 0..k {
                    let a = self.data[i * k + l] as u32;
                    if a == 0 {
                        continue;
                    }
                    for j in 0..m {
                        let b = other.data[l * m + j] as u32;
                        if b != 0 {
                            let idx = i * m + j;
                            out.data[idx] = f.add(out.data[idx] as u32, f.mul(a, b)) as u16;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &*self.field;
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o = f.add(*o as u32, b as u32) as u16;
        }
        out
    }

    pub fn scale(&self, s: u32) -> Mat {
        let f = &*self.field;
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = f.mul(*o as u32, s) as u16;
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        let f = &*self.field;
        let m = self.cols;
        if f.is_prime_field() {
            let p = f.characteristic() as u64;
            let mut acc = vec![0u64; m];
            for (l, &a) in v.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let row = &self.data[l * m..(l + 1) * m];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot += a as u64 * b as u64;
                }
            }
            acc.into_iter().map(|x| (x % p) as u32).collect()
        } else {
            let mut out = vec![0u32; m];
            for (l, &a) in v.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    let b = self.data[l * m + j] as u32;
                    if b != 0 {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
            out
        }
    }

    /// Image of an encoded vector. Codes are base-q digit strings with
    /// coordinate 0 least significant.
    pub fn image_code(&self, code: u64) -> u64 {
        let n = self.rows;
        let m = self.cols;
        assert!(n <= 32 && m <= 32);
        let f = &*self.field;
        let q = f.order() as u64;
        let mut digits = [0u32; 32];
        let mut c = code;
        for d in digits.iter_mut().take(n) {
            *d = (c % q) as u32;
            c /= q;
        }
        let mut out = [0u64; 32];
        if f.is_prime_field() {
            for (l, &a) in digits[..n].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let row = &self.data[l * m..(l + 1) * m];
                for (slot, &b) in out.iter_mut().zip(row) {
                    *slot += a as u64 * b as u64;
                }
            }
            out[..m].iter().rev().fold(0u64, |acc, &x| acc * q + x % q)
        } else {
            for (l, &a) in digits[..n].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, o) in out.iter_mut().take(m).enumerate() {
                    let b = self.data[l * m + j] as u32;
                    if b != 0 {
                        *o = f.add(*o as u32, f.mul(a, b)) as u64;
                    }
                }
            }
            out[..m].iter().rev().fold(0u64, |acc, &x| acc * q + x)
        }
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, searching up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=limit {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let f = &*self.field;
        let mut a: Vec<Vec<u32>> = self.to_rows();
        let mut inv: Vec<Vec<u32>> = Mat::identity(&self.field, n).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let s = f.inv(a[col][col]);
            for j in 0..n {
                a[col][j] = f.mul(a[col][j], s);
                inv[col][j] = f.mul(inv[col][j], s);
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let factor = a[r][col];
                    for j in 0..n {
                        a[r][j] = f.sub(a[r][j], f.mul(factor, a[col][j]));
                        inv[r][j] = f.sub(inv[r][j], f.mul(factor, inv[col][j]));
                    }
                }
            }
        }
        Some(Mat::from_rows(&self.field, &inv))
    }

    pub fn det(&self) -> u32 {
        assert!(self.is_square());
        let n = self.rows;
        let f = &*self.field;
        let mut a = self.to_rows();
        let mut det = 1u32;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r][col] != 0) else {
                return 0;
            };
            if pivot != col {
                a.swap(col, pivot);
                det = f.neg(det);
            }
            det = f.mul(det, a[col][col]);
            let s = f.inv(a[col][col]);
            for r in col + 1..n {
                if a[r][col] != 0 {
                    let factor = f.mul(a[r][col], s);
                    for j in col..n {
                        a[r][j] = f.sub(a[r][j], f.mul(factor, a[col][j]));
                    }
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        echelon(&self.field, self.to_rows()).len()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(&self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    /// Text form: rows separated by `;`, entries by spaces.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.field.format_elem(self.get(r, c)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_text(field: &Arc<Field>, text: &str, n: usize) -> Result<Mat, GfError> {
        let rows: Vec<&str> = text.trim().split(';').collect();
        if rows.len() != n {
            return Err(GfError::Parse(format!("expected {n} rows")));
        }
        let mut m = Mat::zeros(field, n, n);
        for (i, row) in rows.iter().enumerate() {
            let entries: Vec<&str> = row.split_whitespace().collect();
            if entries.len() != n {
                return Err(GfError::Parse(format!("row {i} has {} entries", entries.len())));
            }
            for (j, e) in entries.iter().enumerate() {
                m.set(i, j, field.parse_elem(e)?);
            }
        }
        Ok(m)
    }
}

/// Reduced row echelon form of the span of `rows`, zero rows dropped.
pub fn echelon(field: &Field, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let s = field.inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = field.mul(*v, s);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Basis of `{x : A x^T = 0}` where `A` has the given rows (right null space).
pub fn null_space(field: &Field, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let ech = echelon(field, rows.to_vec());
    let mut pivots = Vec::new();
    for row in &ech {
        let c = row.iter().position(|&v| v != 0).unwrap();
        pivots.push(c);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in ech.iter().zip(&pivots) {
            v[pc] = field.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Solve `x * A = b` for a row vector x, if solvable.
pub fn solve_left(field: &Field, a: &Mat, b: &[u32]) -> Option<Vec<u32>> {
    // x A = b  <=>  A^T x^T = b^T; augment and eliminate.
    let at = a.transpose();
    let n = at.rows();
    let k = at.cols();
    let mut aug: Vec<Vec<u32>> = (0..n)
        .map(|r| {
            let mut row = at.row(r);
            row.push(b[r]);
            row
        })
        .collect();
    let ech = echelon(field, std::mem::take(&mut aug));
    let mut x = vec![0u32; k];
    for row in &ech {
        let c = row.iter().position(|&v| v != 0).unwrap();
        if c == k {
            return None;
        }
        x[c] = row[k];
    }
    // Free variables were set to 0; pivot values are already solved in RREF.
    Some(x)
}

pub fn vec_add(field: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn vec_sub(field: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn vec_scale(field: &Field, s: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| field.mul(s, x)).collect()
}

/// `a + s*b`
pub fn vec_axpy(field: &Field, a: &[u32], s: u32, b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, field.mul(s, y))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn inverse_and_det() {
        let f = make_field(5, 1).unwrap();
        let a = Mat::from_ints(&f, &[vec![1, 2, 0], vec![0, 1, 4], vec![3, 0, 1]]);
        // det = 1*(1-0) - 2*(0-12) = 25 = 0 mod 5
        assert_eq!(a.det(), 0);
        assert!(a.inverse().is_none());
        let c = Mat::from_ints(&f, &[vec![1, 2, 0], vec![0, 1, 4], vec![3, 0, 2]]);
        // det = 2 - 2*(0-12) = 26 = 1 mod 5
        assert_eq!(c.det(), 1);
        let inv = c.inverse().unwrap();
        assert!(c.mul(&inv).is_identity());
        assert!(inv.mul(&c).is_identity());
        let b = Mat::from_ints(&f, &[vec![2, 1], vec![1, 1]]);
        assert_eq!(b.det(), 1);
    }

    #[test]
    fn extension_field_product() {
        let f = make_field(3, 2).unwrap();
        let x = f.from_coeffs(&[0, 1]);
        let a = Mat::from_rows(&f, &[vec![x, 1], vec![0, x]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.pow(8).det(), f.pow(f.mul(x, x), 8));
    }

    #[test]
    fn text_round_trip() {
        let f = make_field(3, 2).unwrap();
        let a = Mat::from_rows(&f, &[vec![1, 5], vec![7, 0]]);
        let t = a.to_text();
        assert_eq!(Mat::from_text(&f, &t, 2).unwrap(), a);
    }

    #[test]
    fn null_space_dimension() {
        let f = make_field(3, 1).unwrap();
        let rows = vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]];
        let ns = null_space(&f, &rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                let dot = r.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn solve_left_finds_combination() {
        let f = make_field(5, 1).unwrap();
        let a = Mat::from_ints(&f, &[vec![1, 0, 2], vec![0, 1, 3]]);
        let b = vec![2, 3, f.add(f.mul(2, 2), f.mul(3, 3))];
        let x = solve_left(&f, &a, &b).unwrap();
        assert_eq!(a.apply(&x), b);
        assert!(solve_left(&f, &a, &[0, 0, 1]).is_none());
    }
}
