//! Independently built copies of the groups named as intersections, used as
//! fingerprint references.

use num_bigint::BigUint;

use super::fingerprint::{fingerprint, Fingerprint};
use crate::atlas::{sl_generators, su3_natural};
use crate::engine::{schreier_sims, Element, Perm, SsOptions};
use crate::gf::make_field;
use crate::orthospace::Mat;

/// The named reference groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reference {
    /// SL_n(q) on its natural module.
    SL(usize, u64),
    /// SU3(q) on its natural module over GF(q^2) (q = 3 only).
    SU3,
    /// The affine group 3^2:SL2(3).
    ASL2of3,
    /// 2 × S5 as permutations of 7 points.
    TwoTimesS5,
    /// S3 × S3 as permutations of 6 points.
    S3TimesS3,
    /// The cyclic group of order n.
    Cyclic(usize),
}

impl Reference {
    pub fn label(self) -> String {
        match self {
            Reference::SL(n, q) => format!("SL{n}({q})"),
            Reference::SU3 => "SU3(3)".into(),
            Reference::ASL2of3 => "ASL2(3)".into(),
            Reference::TwoTimesS5 => "2xS5".into(),
            Reference::S3TimesS3 => "S3xS3".into(),
            Reference::Cyclic(n) => format!("C{n}"),
        }
    }

    pub fn fingerprint(self) -> Fingerprint {
        match self {
            Reference::SL(n, q) => {
                let (p, f) = crate::atlas::orders::prime_power(q).expect("prime power");
                let field = make_field(p, f).expect("field");
                of_gens(&sl_generators(&field, n), &Mat::identity(&field, n))
            }
            Reference::SU3 => {
                let f9 = make_field(3, 2).expect("field");
                of_gens(&su3_natural(&f9), &Mat::identity(&f9, 3))
            }
            Reference::ASL2of3 => {
                let f3 = make_field(3, 1).expect("field");
                let mut gens: Vec<Mat> = sl_generators(&f3, 2)
                    .iter()
                    .map(|a| {
                        let mut g = Mat::identity(&f3, 3);
                        for i in 0..2 {
                            for j in 0..2 {
                                g.set(i, j, a.get(i, j));
                            }
                        }
                        g
                    })
                    .collect();
                for k in 0..2 {
                    let mut t = Mat::identity(&f3, 3);
                    t.set(2, k, 1);
                    gens.push(t);
                }
                of_gens(&gens, &Mat::identity(&f3, 3))
            }
            Reference::TwoTimesS5 => of_gens(
                &[
                    Perm::from_cycles(7, &[&[0, 1]]),
                    Perm::from_cycles(7, &[&[0, 1, 2, 3, 4]]),
                    Perm::from_cycles(7, &[&[5, 6]]),
                ],
                &Perm::identity(7),
            ),
            Reference::S3TimesS3 => of_gens(
                &[
                    Perm::from_cycles(6, &[&[0, 1]]),
                    Perm::from_cycles(6, &[&[0, 1, 2]]),
                    Perm::from_cycles(6, &[&[3, 4]]),
                    Perm::from_cycles(6, &[&[3, 4, 5]]),
                ],
                &Perm::identity(6),
            ),
            Reference::Cyclic(n) => {
                let cycle: Vec<u32> = (0..n as u32).collect();
                of_gens(&[Perm::from_cycles(n.max(2), &[&cycle])], &Perm::identity(n.max(2)))
            }
        }
    }

    pub fn order(self) -> BigUint {
        self.fingerprint().order
    }
}

fn of_gens<E: Element>(gens: &[E], identity: &E) -> Fingerprint {
    let b = schreier_sims(gens, identity, &SsOptions::seeded(1)).expect("small group");
    fingerprint(&b, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_orders() {
        for (r, o) in [
            (Reference::SL(2, 3), 24u32),
            (Reference::SL(3, 3), 5616),
            (Reference::SU3, 6048),
            (Reference::ASL2of3, 216),
            (Reference::TwoTimesS5, 240),
            (Reference::S3TimesS3, 36),
            (Reference::Cyclic(8), 8),
        ] {
            assert_eq!(r.order(), BigUint::from(o), "{}", r.label());
        }
    }

    #[test]
    fn sl23_fingerprint() {
        let f = Reference::SL(2, 3).fingerprint();
        assert_eq!(f.derived_order, BigUint::from(8u32));
        assert_eq!(f.center_order, Some(BigUint::from(2u32)));
        assert_eq!(f.abelian_invariants, Some(vec![3]));
        assert!(!f.is_perfect);
        let h = f.histogram.unwrap();
        assert_eq!(h.get("4"), Some(&6));
        assert_eq!(h.get("6"), Some(&8));
    }

    #[test]
    fn abelian_invariants_of_products() {
        let f = Reference::S3TimesS3.fingerprint();
        assert_eq!(f.abelian_invariants, Some(vec![2, 2]));
        assert_eq!(f.derived_order, BigUint::from(9u32));
        let g = Reference::TwoTimesS5.fingerprint();
        assert_eq!(g.abelian_invariants, Some(vec![2, 2]));
        assert_eq!(g.center_order, Some(BigUint::from(2u32)));
        let c = of_gens(
            &[
                Perm::from_cycles(12, &[&[0, 1, 2, 3]]),
                Perm::from_cycles(12, &[&[4, 5]]),
                Perm::from_cycles(12, &[&[6, 7, 8]]),
            ],
            &Perm::identity(12),
        );
        assert_eq!(c.abelian_invariants, Some(vec![2, 3, 4]));
    }
}
