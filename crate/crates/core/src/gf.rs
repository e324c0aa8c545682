//! Arithmetic in GF(p^f) for odd primes p.
//!
//! Elements are stored as their index in the polynomial basis:
//! `c_0 + c_1 p + ... + c_{f-1} p^{f-1}` for `c_0 + c_1 x + ... + c_{f-1} x^{f-1}`.
//! All matrix code works on these raw `u32` indices through the `Field`
//! methods; [`FieldElement`] is the owned value type for everything else.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order for which we build lookup tables.
const MAX_ORDER: u64 = 1 << 20;
/// Full addition/multiplication tables below this order.
const FULL_TABLE_ORDER: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("degree must be at least 1")]
    BadDegree,
    #[error("field order {0} is too large")]
    TooLarge(u64),
    #[error("modulus is not a monic irreducible polynomial")]
    Reducible,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no square class")]
    ZeroArgument,
    #[error("cannot parse field header: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The finite field GF(p^f) with a fixed monic irreducible modulus.
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    /// Monic modulus, coefficients low to high, length f+1.
    modulus: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.f)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}
impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p^f) with the lexicographically least monic irreducible modulus
/// (coefficients compared from x^{f-1} down to x^0). For `f = 1` the modulus is `x`.
pub fn make_field(p: u64, f: u32) -> Result<Arc<Field>, GfError> {
    if !is_prime(p) {
        return Err(GfError::NonPrime(p));
    }
    if p == 2 {
        return Err(GfError::EvenCharacteristic);
    }
    if f == 0 {
        return Err(GfError::BadDegree);
    }
    let q = p
        .checked_pow(f)
        .filter(|&q| q <= MAX_ORDER)
        .ok_or(GfError::TooLarge(p.saturating_pow(f)))?;
    let p32 = p as u32;
    let modulus = if f == 1 {
        vec![0, 1]
    } else {
        least_irreducible(p32, f as usize)
    };
    Field::with_modulus(p32, f, q as u32, modulus).map(Arc::new)
}

/// Builds a field from an explicit modulus, checking irreducibility.
pub fn field_with_modulus(p: u64, modulus: Vec<u32>) -> Result<Arc<Field>, GfError> {
    if !is_prime(p) {
        return Err(GfError::NonPrime(p));
    }
    if p == 2 {
        return Err(GfError::EvenCharacteristic);
    }
    if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
        return Err(GfError::Reducible);
    }
    let f = (modulus.len() - 1) as u32;
    let q = p
        .checked_pow(f)
        .filter(|&q| q <= MAX_ORDER)
        .ok_or(GfError::TooLarge(p.saturating_pow(f)))?;
    let p32 = p as u32;
    if modulus.iter().any(|&c| c >= p32) {
        return Err(GfError::Reducible);
    }
    if f == 1 {
        if modulus != [0, 1] {
            // Any monic linear modulus gives the same prime field; keep one convention.
            return Err(GfError::Reducible);
        }
    } else if !poly_irreducible(p32, &modulus) {
        return Err(GfError::Reducible);
    }
    Field::with_modulus(p32, f, q as u32, modulus).map(Arc::new)
}

fn least_irreducible(p: u32, f: usize) -> Vec<u32> {
    // Enumerate the f lower coefficients as a base-p counter whose most
    // significant digit is c_{f-1}.
    let count = (p as u64).pow(f as u32);
    for n in 0..count {
        let mut coeffs = vec![0u32; f + 1];
        let mut r = n;
        for i in 0..f {
            coeffs[i] = (r % p as u64) as u32;
            r /= p as u64;
        }
        coeffs[f] = 1;
        if poly_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(crate) fn poly_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut divisor = vec![0u32; d + 1];
            let mut r = n;
            for c in divisor.iter_mut().take(d) {
                *c = (r % p as u64) as u32;
                r /= p as u64;
            }
            divisor[d] = 1;
            if poly_rem(p, poly, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m`, both low-to-high.
pub(crate) fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u32> = a.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64) % p as u64;
                let idx = shift + i;
                r[idx] = ((r[idx] as u64 + p as u64 - t) % p as u64) as u32;
            }
        }
        r.pop();
    }
    r.resize(dm, 0);
    r
}

impl Field {
    fn with_modulus(p: u32, f: u32, q: u32, modulus: Vec<u32>) -> Result<Field, GfError> {
        let mut field = Field {
            p,
            f,
            q,
            modulus,
            neg: Vec::new(),
            inv: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
            mul_table: None,
        };
        field.neg = (0..q).map(|a| field.slow_neg(a)).collect();
        // Find a primitive element and build exp/log tables.
        let order = q - 1;
        let prime_factors = factor_small(order as u64);
        let mut generator = None;
        for g in 1..q {
            if prime_factors
                .iter()
                .all(|&r| field.slow_pow(g, (order as u64) / r) != 1)
            {
                generator = Some(g);
                break;
            }
        }
        let g = generator.ok_or(GfError::Reducible)?;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            if log[x as usize] != u32::MAX {
                // The multiplicative order of g was smaller than q-1: modulus reducible.
                return Err(GfError::Reducible);
            }
            log[x as usize] = i as u32;
            x = field.slow_mul(x, g);
        }
        field.exp = exp;
        field.log = log;
        field.inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    let l = field.log[a as usize];
                    field.exp[((order - l) % order) as usize]
                }
            })
            .collect();
        if q <= FULL_TABLE_ORDER {
            let mut add = vec![0u32; (q * q) as usize];
            let mut mul = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = field.slow_add(a, b);
                    mul[(a * q + b) as usize] = field.log_mul(a, b);
                }
            }
            field.add_table = Some(add);
            field.mul_table = Some(mul);
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.f
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.f == 1
    }

    /// Coefficients `c_0..c_{f-1}` of an element index.
    pub fn coeffs(&self, mut a: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(self.f as usize);
        for _ in 0..self.f {
            c.push(a % self.p);
            a /= self.p;
        }
        c
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        let mut a = 0u32;
        for &c in coeffs.iter().rev() {
            a = a * self.p + (c % self.p);
        }
        a
    }

    /// Image of an integer under Z -> GF(p).
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn slow_neg(&self, a: u32) -> u32 {
        let c: Vec<u32> = self.coeffs(a).into_iter().map(|x| (self.p - x) % self.p).collect();
        self.from_coeffs(&c)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u32; ca.len() + cb.len() - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let r = poly_rem(self.p, &prod, &self.modulus);
        self.from_coeffs(&r)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    fn log_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= order { s - order } else { s }) as usize]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.slow_add(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else if let Some(t) = &self.mul_table {
            t[(a * self.q + b) as usize]
        } else {
            self.log_mul(a, b)
        }
    }

    /// Multiplicative inverse; `inv(0)` is 0 and callers must check.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, GfError> {
        if b == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.mul(a, self.inv(b)))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// A fixed primitive element (generator of the multiplicative group).
    pub fn primitive(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    pub fn is_square(&self, a: u32) -> Result<bool, GfError> {
        if a == 0 {
            return Err(GfError::ZeroArgument);
        }
        Ok(self.pow(a, ((self.q - 1) / 2) as u64) == 1)
    }

    /// Least nonsquare in index order.
    pub fn nonsquare(&self) -> u32 {
        (1..self.q)
            .find(|&a| !self.is_square(a).unwrap())
            .expect("odd fields have nonsquares")
    }

    /// Square root if one exists.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        let l = self.log[a as usize];
        if l % 2 == 1 {
            None
        } else {
            Some(self.exp[(l / 2) as usize])
        }
    }

    /// The Frobenius map a -> a^p.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Serialization line `GF p f c0 .. cf`.
    pub fn header(&self) -> String {
        let mut s = format!("GF {} {}", self.p, self.f);
        for c in &self.modulus {
            s.push_str(&format!(" {c}"));
        }
        s
    }

    pub fn parse_header(line: &str) -> Result<Arc<Field>, GfError> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 4 || toks[0] != "GF" {
            return Err(GfError::Parse(line.to_string()));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| GfError::Parse(line.to_string()));
        let p = num(toks[1])?;
        let f = num(toks[2])? as usize;
        if toks.len() != 3 + f + 1 {
            return Err(GfError::Parse(line.to_string()));
        }
        let modulus = toks[3..]
            .iter()
            .map(|t| num(t).map(|v| v as u32))
            .collect::<Result<Vec<_>, _>>()?;
        field_with_modulus(p, modulus)
    }

    /// Text form of one element: an integer for prime fields, else comma-joined coefficients.
    pub fn format_elem(&self, a: u32) -> String {
        if self.f == 1 {
            a.to_string()
        } else {
            self.coeffs(a)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<u32, GfError> {
        let parts: Vec<&str> = s.trim().split(',').collect();
        if parts.len() != self.f as usize {
            return Err(GfError::Parse(s.to_string()));
        }
        let mut coeffs = Vec::with_capacity(parts.len());
        for part in parts {
            let c: u32 = part.trim().parse().map_err(|_| GfError::Parse(s.to_string()))?;
            if c >= self.p {
                return Err(GfError::Parse(s.to_string()));
            }
            coeffs.push(c);
        }
        Ok(self.from_coeffs(&coeffs))
    }

    pub fn elem(self: &Arc<Self>, idx: u32) -> FieldElement {
        assert!(idx < self.q, "element index out of range");
        FieldElement {
            field: Arc::clone(self),
            idx,
        }
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.elem(0)
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.elem(1)
    }

    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.elem(i))
    }
}

pub(crate) fn factor_small(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of a specific field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<Field>,
    idx: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn index(&self) -> u32 {
        self.idx
    }
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.idx)
    }
    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement, GfError> {
        if !Arc::ptr_eq(&self.field, &other.field) && *self.field != *other.field {
            return Err(GfError::FieldMismatch);
        }
        let f = &self.field;
        let idx = match op {
            ArithOp::Add => f.add(self.idx, other.idx),
            ArithOp::Sub => f.sub(self.idx, other.idx),
            ArithOp::Mul => f.mul(self.idx, other.idx),
            ArithOp::Div => f.div(self.idx, other.idx)?,
        };
        Ok(FieldElement {
            field: Arc::clone(f),
            idx,
        })
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.elem(self.field.pow(self.idx, e))
    }

    pub fn inv(&self) -> Result<FieldElement, GfError> {
        if self.idx == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.field.elem(self.field.inv(self.idx)))
    }

    pub fn is_square(&self) -> Result<bool, GfError> {
        self.field.is_square(self.idx)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.idx == other.idx && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}
impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_elem(self.idx))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_elem(self.idx))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:expr) => {
        impl std::ops::$tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.arith(rhs, $op).expect("field arithmetic")
            }
        }
        impl std::ops::$tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).arith(&rhs, $op).expect("field arithmetic")
            }
        }
    };
}
binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);
binop!(Div, div, ArithOp::Div);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.elem(self.field.neg(self.idx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!((f3.elem(1) + f3.elem(2)).index(), 0);
        assert_eq!((f3.elem(2) * f3.elem(2)).index(), 1);
        assert_eq!(f3.header(), "GF 3 1 0 1");
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(make_field(2, 1).unwrap_err(), GfError::EvenCharacteristic);
        assert_eq!(make_field(9, 1).unwrap_err(), GfError::NonPrime(9));
        assert_eq!(make_field(15, 2).unwrap_err(), GfError::NonPrime(15));
    }

    #[test]
    fn gf9_modulus_is_least_irreducible() {
        // Oracle: root search over GF(3) for every monic quadratic, in the same order.
        let mut expected = None;
        'outer: for c1 in 0..3u32 {
            for c0 in 0..3u32 {
                let has_root = (0..3u32).any(|x| (x * x + c1 * x + c0) % 3 == 0);
                if !has_root {
                    expected = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), expected.unwrap().as_slice());
        assert_eq!(f9.order(), 9);
    }

    #[test]
    fn x_squared_reduces_by_modulus() {
        let f9 = make_field(3, 2).unwrap();
        let x = f9.elem(f9.from_coeffs(&[0, 1]));
        let sq = &x * &x;
        // x^2 = -(c1 x + c0)
        let m = f9.modulus();
        let expect = f9.from_coeffs(&[(3 - m[0]) % 3, (3 - m[1]) % 3]);
        assert_eq!(sq.index(), expect);
    }

    #[test]
    fn division_and_errors() {
        let f5 = make_field(5, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(
            f5.elem(3).arith(&f5.zero(), ArithOp::Div).unwrap_err(),
            GfError::DivisionByZero
        );
        assert_eq!(
            f5.elem(1).arith(&f3.elem(1), ArithOp::Add).unwrap_err(),
            GfError::FieldMismatch
        );
        let a = f5.elem(3);
        assert_eq!((&(&a / &f5.elem(4)) * &f5.elem(4)), a);
    }

    #[test]
    fn square_classes_small_fields() {
        let f3 = make_field(3, 1).unwrap();
        assert!(f3.is_square(1).unwrap());
        assert!(!f3.is_square(2).unwrap());
        assert_eq!(f3.is_square(0), Err(GfError::ZeroArgument));
        assert_eq!(f3.nonsquare(), 2);
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.nonsquare(), 2);

        let f9 = make_field(3, 2).unwrap();
        let squares: Vec<u32> = (1..9).map(|a| f9.mul(a, a)).collect();
        let brute_least = (1..9).find(|a| !squares.contains(a)).unwrap();
        assert_eq!(f9.nonsquare(), brute_least);
        // A generator of the multiplicative group is never a square.
        let g = f9.primitive();
        assert!(!squares.contains(&g));
        assert!(!f9.is_square(g).unwrap());
    }

    #[test]
    fn square_count_is_half() {
        for (p, f) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (3, 4), (7, 2)] {
            let k = make_field(p, f).unwrap();
            let q = k.order();
            let squares = (1..q).filter(|&a| k.is_square(a).unwrap()).count();
            assert_eq!(squares as u32, (q - 1) / 2, "GF({p}^{f})");
            let brute: std::collections::HashSet<u32> = (1..q).map(|a| k.mul(a, a)).collect();
            assert_eq!(brute.len() as u32, (q - 1) / 2);
        }
    }

    #[test]
    fn header_round_trip_and_tamper() {
        let f27 = make_field(3, 3).unwrap();
        let back = Field::parse_header(&f27.header()).unwrap();
        assert_eq!(*back, *f27);
        assert!(Field::parse_header("GF 3 2 0 0 1").is_err());
        assert!(Field::parse_header("GF 3 2 1 0").is_err());
    }
}
