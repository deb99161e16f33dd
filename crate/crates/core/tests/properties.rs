use cyclojones::numeric::eval_unit_root;
use cyclojones::{LaurentFraction, LaurentPoly};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-20i64..=20, -50i64..=50), 0..8)
        .prop_map(LaurentPoly::from_terms)
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inversion_is_involution(a in poly(), e in prop::sample::select(vec![-1i64, 1])) {
        prop_assert_eq!(a.substitute_power(e).substitute_power(e), a.clone());
        prop_assert_eq!(a.substitute_power(-1).eval_at_one(), a.eval_at_one());
    }

    #[test]
    fn exact_div_inverts_mul(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn terms_are_canonical(a in poly(), b in poly()) {
        let s = &a * &b - &a;
        let exps: Vec<i64> = s.terms().map(|(e, _)| e).collect();
        prop_assert!(exps.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(s.terms().all(|(_, c)| c != &BigInt::from(0)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), k in -7i64..=7, n in 1u64..=24) {
        let (fa, fb) = (eval_unit_root(&a, k, n), eval_unit_root(&b, k, n));
        let prod = eval_unit_root(&(&a * &b), k, n);
        // Relative tolerance: the product can be as large as |a|_1 |b|_1.
        let scale: BigInt = a.terms().chain(b.terms()).map(|(_, c)| c.abs()).sum::<BigInt>() + 1;
        let scale = &scale * &scale;
        prop_assert!(fa.mul(&fb).close_to_scaled(&prod, 60, &scale));
    }

    #[test]
    fn fraction_arithmetic(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly()) {
        let x = LaurentFraction::new(a.clone(), b.clone()).unwrap();
        let y = LaurentFraction::new(c.clone(), d.clone()).unwrap();
        let direct = LaurentFraction::new_unreduced(&a * &d + &c * &b, &b * &d).unwrap();
        prop_assert_eq!(&x + &y, direct);
        prop_assert_eq!(&(&x * &y) * &LaurentFraction::from_poly(b.clone()), LaurentFraction::new(&a * &c, d.clone()).unwrap());
        prop_assert!((&x - &x).is_zero());
    }
}
