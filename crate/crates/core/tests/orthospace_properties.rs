use std::sync::Arc;

use oddfact::atlas::standard;
use oddfact::orthospace::{Mat, OmegaClass, OrthSpace, Subspace};
use proptest::prelude::*;

fn vector(space: &OrthSpace, seed: &[u32]) -> Vec<u32> {
    let q = space.field().order();
    seed.iter().take(space.dim()).map(|x| x % q).collect()
}

fn space(q: u64) -> Arc<OrthSpace> {
    standard(3, q).unwrap()
}

fn coords() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..1000, 7)
}

/// A product of reflections in nonsingular vectors drawn from `seeds`.
fn random_isometry(s: &OrthSpace, seeds: &[Vec<u32>]) -> Mat {
    let mut g = Mat::identity(s.field(), s.dim());
    for v in seeds {
        let u = vector(s, v);
        if s.quad(&u) != 0 {
            g = g.mul(&s.reflection(&u).unwrap());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_isometries(q in prop::sample::select(vec![3u64, 5, 9]), v in coords()) {
        let s = space(q);
        let u = vector(&s, &v);
        prop_assume!(s.quad(&u) != 0);
        let r = s.reflection(&u).unwrap();
        prop_assert!(s.is_isometry(&r));
        prop_assert!(r.mul(&r).is_identity());
        prop_assert_ne!(s.in_omega(&r), OmegaClass::NotIsometry);
    }

    #[test]
    fn two_reflections_classified_by_norm_product(q in prop::sample::select(vec![3u64, 5]), a in coords(), b in coords()) {
        let s = space(q);
        let f = s.field();
        let (u, w) = (vector(&s, &a), vector(&s, &b));
        prop_assume!(s.quad(&u) != 0 && s.quad(&w) != 0);
        let g = s.reflection(&u).unwrap().mul(&s.reflection(&w).unwrap());
        let square = f.is_square(f.mul(s.quad(&u), s.quad(&w))).unwrap();
        let expect = if square { OmegaClass::InOmega } else { OmegaClass::InSONotOmega };
        prop_assert_eq!(g.det(), 1);
        prop_assert_eq!(s.in_omega(&g), expect);
    }

    #[test]
    fn decomposition_round_trip(q in prop::sample::select(vec![3u64, 5]), seeds in prop::collection::vec(coords(), 1..6)) {
        let s = space(q);
        let g = random_isometry(&s, &seeds);
        let vs = s.reflection_decomposition(&g).unwrap();
        prop_assert_eq!(s.reflections_product(&vs), g);
    }

    #[test]
    fn witt_type_is_basis_independent(q in prop::sample::select(vec![3u64, 5]), basis in prop::collection::vec(coords(), 1..5), seeds in prop::collection::vec(coords(), 1..5)) {
        let s = space(q);
        let vs: Vec<Vec<u32>> = basis.iter().map(|b| vector(&s, b)).collect();
        let sub = Subspace::span(s.field(), s.dim(), &vs);
        let g = random_isometry(&s, &seeds);
        let moved = sub.image(s.field(), &g);
        prop_assert_eq!(moved.dim(), sub.dim());
        prop_assert_eq!(s.witt_type(&moved), s.witt_type(&sub));
    }

    #[test]
    fn echelon_basis_is_canonical(q in prop::sample::select(vec![3u64, 5]), basis in prop::collection::vec(coords(), 1..5), mix in coords()) {
        let s = space(q);
        let f = s.field();
        let vs: Vec<Vec<u32>> = basis.iter().map(|b| vector(&s, b)).collect();
        let a = Subspace::span(f, s.dim(), &vs);
        // The same span with one vector replaced by a combination of all of them.
        let mut alt = vs.clone();
        let combo = vs.iter().enumerate().fold(vec![0u32; s.dim()], |acc, (i, v)| {
            let c = 1 + mix[i % mix.len()] % (f.order() - 1);
            acc.iter().zip(v).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect()
        });
        alt[0] = combo;
        alt.reverse();
        let b = Subspace::span(f, s.dim(), &alt);
        if a.dim() == b.dim() {
            prop_assert_eq!(a.basis(), b.basis());
        }
    }

    #[test]
    fn matrix_text_round_trip(q in prop::sample::select(vec![3u64, 9]), seeds in prop::collection::vec(coords(), 1..4)) {
        let s = space(q);
        let g = random_isometry(&s, &seeds);
        prop_assert_eq!(Mat::from_text(s.field(), &g.to_text(), s.dim()).unwrap(), g);
    }
}

#[test]
fn standard_gram_relations() {
    for q in [3u64, 5, 7, 9] {
        let s = space(q);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s.beta(&s.e(i), &s.f(j)).unwrap(), u32::from(i == j));
                assert_eq!(s.beta(&s.e(i), &s.e(j)).unwrap(), 0);
                assert_eq!(s.beta(&s.f(i), &s.f(j)).unwrap(), 0);
            }
            assert_eq!(s.beta(&s.d(), &s.e(i)).unwrap(), 0);
        }
        assert_ne!(s.quad(&s.d()), 0);
        assert_ne!(s.gram().det(), 0);
    }
}
