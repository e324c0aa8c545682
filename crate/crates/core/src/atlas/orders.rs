//! Exact orders of the group families that occur in the factorization table.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::AtlasError;
use crate::gf::{factor_small, is_prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    OmegaOdd,
    OmegaPlus,
    OmegaMinus,
    SL,
    SU,
    Sp,
    PSp,
    G2,
    TwistedG2,
    F4,
    Spin9,
    SpinMinus8,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::OmegaOdd,
        Family::OmegaPlus,
        Family::OmegaMinus,
        Family::SL,
        Family::SU,
        Family::Sp,
        Family::PSp,
        Family::G2,
        Family::TwistedG2,
        Family::F4,
        Family::Spin9,
        Family::SpinMinus8,
    ];

    /// Whether the family takes a rank/dimension parameter before q.
    pub fn has_rank(self) -> bool {
        matches!(
            self,
            Family::OmegaOdd
                | Family::OmegaPlus
                | Family::OmegaMinus
                | Family::SL
                | Family::SU
                | Family::Sp
                | Family::PSp
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl FromStr for Family {
    type Err = AtlasError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| AtlasError::UnknownFamily(s.to_string()))
    }
}

/// A family with parameters. For the Ω families `n` is m (dimension 2m+1 or
/// 2m); for SL, SU, Sp, PSp it is the matrix dimension; otherwise unused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrderFormula {
    pub family: Family,
    pub n: u32,
    pub q: u64,
}

impl OrderFormula {
    pub fn new(family: Family, n: u32, q: u64) -> Self {
        OrderFormula { family, n, q }
    }
    pub fn q_only(family: Family, q: u64) -> Self {
        OrderFormula { family, n: 0, q }
    }
}

/// `(p, f)` with `q = p^f`, or `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    match factor_small(q).as_slice() {
        &[p] if is_prime(p) => {
            let mut f = 0;
            let mut r = q;
            while r > 1 {
                r /= p;
                f += 1;
            }
            Some((p, f))
        }
        _ => None,
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn qpow(q: u64, e: u32) -> BigUint {
    big(q).pow(e)
}

/// `q^e - 1`, `q^e + 1` and friends with a sign.
fn qpm(q: u64, e: u32, plus: bool) -> BigUint {
    if plus {
        qpow(q, e) + 1u32
    } else {
        qpow(q, e) - 1u32
    }
}

/// One multiplicative term of a formula, kept for printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Power(u64, u32),
    Cyclotomic { q: u64, e: u32, plus: bool },
    Times(u64),
    Over(u64),
}

impl Term {
    fn value(&self) -> (BigUint, bool) {
        match *self {
            Term::Power(q, e) => (qpow(q, e), false),
            Term::Cyclotomic { q, e, plus } => (qpm(q, e, plus), false),
            Term::Times(k) => (big(k), false),
            Term::Over(k) => (big(k), true),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Power(q, e) => write!(f, "{q}^{e}"),
            Term::Cyclotomic { q, e, plus } => write!(f, "({q}^{e}{}1)", if *plus { "+" } else { "-" }),
            Term::Times(k) => write!(f, "{k}"),
            Term::Over(k) => write!(f, "1/{k}"),
        }
    }
}

/// The terms whose product is the order.
pub fn order_terms(of: &OrderFormula) -> Result<Vec<Term>, AtlasError> {
    use Family::*;
    use Term::*;
    let q = of.q;
    let n = of.n;
    let (p, f) = prime_power(q).ok_or(AtlasError::BadParams("q must be a prime power".into()))?;
    let odd_q = || -> Result<(), AtlasError> {
        if p == 2 {
            Err(AtlasError::BadParams("q must be odd".into()))
        } else {
            Ok(())
        }
    };
    let cyc = |e: u32, plus: bool| Cyclotomic { q, e, plus };
    let mut t = Vec::new();
    match of.family {
        // Spin is twice Ω, so the spin families simply drop the 1/2.
        OmegaOdd | Spin9 => {
            odd_q()?;
            let m = if of.family == Spin9 { 4 } else { n };
            if m < 1 {
                return Err(AtlasError::BadParams("m must be positive".into()));
            }
            t.push(Power(q, m * m));
            for i in 1..=m {
                t.push(cyc(2 * i, false));
            }
            if of.family == OmegaOdd {
                t.push(Over(2));
            }
        }
        OmegaPlus | OmegaMinus | SpinMinus8 => {
            odd_q()?;
            let m = if of.family == SpinMinus8 { 4 } else { n };
            if m < 1 {
                return Err(AtlasError::BadParams("m must be positive".into()));
            }
            t.push(Power(q, m * (m - 1)));
            t.push(cyc(m, of.family != OmegaPlus));
            for i in 1..m {
                t.push(cyc(2 * i, false));
            }
            if of.family != SpinMinus8 {
                t.push(Over(2));
            }
        }
        SL | SU => {
            if n < 1 {
                return Err(AtlasError::BadParams("n must be positive".into()));
            }
            t.push(Power(q, n * (n - 1) / 2));
            for i in 2..=n {
                t.push(cyc(i, of.family == SU && i % 2 == 1));
            }
        }
        Sp | PSp => {
            if n == 0 || n % 2 == 1 {
                return Err(AtlasError::BadParams("symplectic dimension must be even".into()));
            }
            let m = n / 2;
            t.push(Power(q, m * m));
            for i in 1..=m {
                t.push(cyc(2 * i, false));
            }
            if of.family == PSp && p != 2 {
                t.push(Over(2));
            }
        }
        G2 => {
            t.push(Power(q, 6));
            t.push(cyc(6, false));
            t.push(cyc(2, false));
        }
        TwistedG2 => {
            if p != 3 || f % 2 == 0 {
                return Err(AtlasError::BadParams("twisted G2 needs q = 3^(2k+1)".into()));
            }
            t.push(Power(q, 3));
            t.push(cyc(3, true));
            t.push(cyc(1, false));
        }
        F4 => {
            t.push(Power(q, 24));
            for e in [12, 8, 6, 2] {
                t.push(cyc(e, false));
            }
        }
    }
    t.retain(|x| !matches!(x, Power(_, 0)));
    Ok(t)
}

pub fn order_of(of: &OrderFormula) -> Result<BigUint, AtlasError> {
    let terms = order_terms(of)?;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for t in &terms {
        let (v, over) = t.value();
        if over {
            den *= v;
        } else {
            num *= v;
        }
    }
    let (quo, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(AtlasError::BadParams("formula is not integral".into()));
    }
    Ok(quo)
}

/// Convenience for the frequent `order_of(OrderFormula::new(..))`.
pub fn ord(family: Family, n: u32, q: u64) -> BigUint {
    order_of(&OrderFormula::new(family, n, q)).expect("valid parameters")
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(ord(Family::SL, 3, 3), big(5616));
        assert_eq!(ord(Family::SU, 3, 3), big(6048));
        assert_eq!(ord(Family::OmegaOdd, 3, 3), big(4585351680));
        assert_eq!(ord(Family::OmegaPlus, 3, 3), big(6065280));
        assert_eq!(ord(Family::OmegaMinus, 3, 3), big(6531840));
        assert_eq!(ord(Family::OmegaMinus, 2, 3), big(360));
        assert_eq!(ord(Family::G2, 0, 3), big(4245696));
        assert_eq!(ord(Family::TwistedG2, 0, 3), big(1512));
        assert_eq!(ord(Family::SL, 1, 9), big(1));
        assert_eq!(ord(Family::Sp, 2, 9), big(720));
        assert_eq!(ord(Family::Sp, 6, 2), big(1451520));
        assert_eq!(ord(Family::PSp, 4, 3), big(25920));
    }

    #[test]
    fn independent_products() {
        // 27·26·8 and ½·3⁹·8·80·728
        assert_eq!(ord(Family::SL, 3, 3), big(27 * 26 * 8));
        assert_eq!(ord(Family::OmegaOdd, 3, 3), big(19683 * 8 * 80 * 728 / 2));
        assert_eq!(ord(Family::G2, 0, 3), big(729 * 728 * 8));
    }

    #[test]
    fn bad_params() {
        assert!(order_of(&OrderFormula::new(Family::OmegaOdd, 3, 4)).is_err());
        assert!(order_of(&OrderFormula::new(Family::Sp, 3, 3)).is_err());
        assert!(order_of(&OrderFormula::new(Family::TwistedG2, 0, 9)).is_err());
        assert!(order_of(&OrderFormula::new(Family::SL, 2, 6)).is_err());
        assert!("Nope".parse::<Family>().is_err());
        assert_eq!("g2".parse::<Family>().unwrap(), Family::G2);
    }

    #[test]
    fn minus_type_divides_odd() {
        for q in [3u64, 5, 7, 9, 27] {
            for m in 2..6 {
                let odd = ord(Family::OmegaOdd, m, q);
                let minus = ord(Family::OmegaMinus, m, q);
                assert!((odd % minus).is_zero());
            }
        }
    }
}
