use oddfact::gf::make_field;
use proptest::prelude::*;

const FIELDS: [(u64, u32); 7] = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (3, 4)];

fn field_and_elems() -> impl Strategy<Value = ((u64, u32), u32, u32, u32)> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(|(p, f)| {
        let q = (p as u32).pow(f);
        (Just((p, f)), 0..q, 0..q, 0..q)
    })
}

proptest! {
    #[test]
    fn field_axioms((pf, a, b, c) in field_and_elems()) {
        let k = make_field(pf.0, pf.1).unwrap();
        prop_assert_eq!(k.add(a, b), k.add(b, a));
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.add(a, k.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(k.mul(a, k.inv(a)), 1);
            prop_assert_eq!(k.div(b, a).unwrap(), k.mul(b, k.inv(a)));
        }
    }

    #[test]
    fn square_classes_form_a_group_of_order_two((pf, a, b, _c) in field_and_elems()) {
        let k = make_field(pf.0, pf.1).unwrap();
        prop_assume!(a != 0 && b != 0);
        prop_assert!(k.is_square(k.mul(a, a)).unwrap());
        let same = k.is_square(a).unwrap() == k.is_square(b).unwrap();
        prop_assert_eq!(k.is_square(k.mul(a, b)).unwrap(), same);
    }

    #[test]
    fn frobenius_is_a_ring_map((pf, a, b, _c) in field_and_elems()) {
        let k = make_field(pf.0, pf.1).unwrap();
        prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
        prop_assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
        prop_assert_eq!(k.frobenius(a), k.pow(a, pf.0));
    }

    #[test]
    fn element_text_round_trip((pf, a, _b, _c) in field_and_elems()) {
        let k = make_field(pf.0, pf.1).unwrap();
        prop_assert_eq!(k.parse_elem(&k.format_elem(a)).unwrap(), a);
    }
}

#[test]
fn half_the_nonzero_elements_are_squares() {
    for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81] {
        let (p, f) = oddfact::atlas::orders::prime_power(q).unwrap();
        let k = make_field(p, f).unwrap();
        let squares = (1..q as u32).filter(|&a| k.is_square(a).unwrap()).count();
        assert_eq!(squares as u64, (q - 1) / 2, "q = {q}");
    }
}

#[test]
fn least_nonsquares() {
    assert_eq!(make_field(3, 1).unwrap().nonsquare(), 2);
    assert_eq!(make_field(5, 1).unwrap().nonsquare(), 2);
    let k9 = make_field(3, 2).unwrap();
    let least = (1..9).find(|&e| !k9.is_square(e).unwrap()).unwrap();
    assert_eq!(k9.nonsquare(), least);
}
