//! Property-based invariants for the polynomial layer.

use num_bigint::BigInt;
use proptest::prelude::*;

use doubling_core::ring::{Domain, GenericRing, Poly};

fn ring() -> GenericRing {
    GenericRing::new(3, false).unwrap()
}

fn arb_poly(max_terms: usize) -> impl Strategy<Value = Poly> {
    let nv = ring().num_vars();
    proptest::collection::vec(
        (-9i64..=9, proptest::collection::vec(0u16..3, nv)),
        0..max_terms,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            &ring(),
            Domain::Int,
            terms.into_iter().map(|(c, e)| (BigInt::from(c), e)),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn canonical_form_closed_under_arithmetic(a in arb_poly(6), b in arb_poly(6)) {
        prop_assert!(a.add(&b).unwrap().check_canonical());
        prop_assert!(a.sub(&b).unwrap().check_canonical());
        prop_assert!(a.mul(&b).unwrap().check_canonical());
        prop_assert!(a.neg().check_canonical());
    }

    #[test]
    fn addition_group_laws(a in arb_poly(6), b in arb_poly(6)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.neg().neg(), a);
    }

    #[test]
    fn multiplication_grades_degrees(a in arb_poly(5), b in arb_poly(5)) {
        let prod = a.mul(&b).unwrap();
        if a.is_homogeneous() && b.is_homogeneous() && !prod.is_zero() {
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!(prod.degree(), Some(da + db));
            }
        }
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(5), b in arb_poly(4)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).unwrap().exact_div(&b).unwrap(), a);
    }

    #[test]
    fn square_root_inverts_squaring(p in arb_poly(5)) {
        prop_assume!(!p.is_zero());
        let s = p.mul(&p).unwrap().sqrt().unwrap();
        prop_assert!(s == p || s == p.neg());
    }

    #[test]
    fn display_roundtrips_sign_structure(a in arb_poly(5)) {
        // rendering is total and canonical: equal polys render equally
        let b = a.add(&Poly::zero(&ring(), Domain::Int)).unwrap();
        prop_assert_eq!(format!("{a}"), format!("{b}"));
    }
}
