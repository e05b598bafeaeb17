mod common;

use common::*;
use num_rational::BigRational;
use proptest::prelude::*;
use semieuclid::{ConstructibleReal, Sign};

fn same(a: &ConstructibleReal, b: &ConstructibleReal) -> bool {
    (a - b).sign() == Sign::Zero
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn addition_associates(a in expr_strategy(), b in expr_strategy(), c in expr_strategy()) {
        if let (Some(x), Some(y), Some(z)) = (a.build(), b.build(), c.build()) {
            prop_assert!(same(&((&x + &y) + &z), &(&x + &(&y + &z))));
        }
    }

    #[test]
    fn multiplication_distributes(a in expr_strategy(), b in expr_strategy(), c in expr_strategy()) {
        if let (Some(x), Some(y), Some(z)) = (a.build(), b.build(), c.build()) {
            prop_assert!(same(&(&x * &(&y + &z)), &(&x * &y + &x * &z)));
        }
    }

    #[test]
    fn sign_is_multiplicative(a in expr_strategy(), b in expr_strategy()) {
        if let (Some(x), Some(y)) = (a.build(), b.build()) {
            prop_assert_eq!((&x * &y).sign(), x.sign() * y.sign());
        }
    }

    #[test]
    fn division_inverts_multiplication(a in expr_strategy(), b in expr_strategy()) {
        if let (Some(x), Some(y)) = (a.build(), b.build()) {
            if y.sign() != Sign::Zero {
                prop_assert!(same(&(x.checked_div(&y).unwrap() * &y), &x));
            }
        }
    }

    #[test]
    fn sqrt_squares_back(a in expr_strategy()) {
        if let Some(x) = a.build() {
            let nonneg = &x * &x;
            let r = nonneg.checked_sqrt().unwrap();
            prop_assert!(same(&(&r * &r), &nonneg));
            prop_assert_ne!(r.sign(), Sign::Negative);
        }
    }

    #[test]
    fn approximations_contain_the_oracle_value(a in expr_strategy(), k in 1u32..80) {
        if let (Some(x), Some(iv)) = (a.build(), oracle(&a, 200)) {
            let w = BigRational::new(1.into(), num_bigint::BigInt::from(1) << k);
            let (lo, hi) = x.approx(&w);
            prop_assert!(&hi - &lo <= w);
            prop_assert!(iv.meets(&lo, &hi));
        }
    }

    #[test]
    fn sign_agrees_with_oracle(a in expr_strategy()) {
        if let (Some(x), Some(iv)) = (a.build(), oracle(&a, 200)) {
            if let Some(s) = iv.sign() {
                prop_assert_eq!(x.sign(), s);
            }
        }
    }
}

#[test]
fn engineered_identities_are_certified_zero() {
    for (name, v) in engineered_zeros() {
        assert_eq!(v.sign(), Sign::Zero, "{name}");
    }
}

#[test]
fn spec_examples() {
    assert_eq!((ConstructibleReal::ratio(1, 3) + ConstructibleReal::ratio(2, 3)).as_rational(), Some(q(1, 1)));
    let s2 = sqrt(&cr(2));
    assert!(same(&(&s2 + ConstructibleReal::zero()), &s2));
    assert!(same(&(&s2 + &sqrt(&cr(8))), &(cr(3) * &s2)));
    assert!(same(&sqrt(&cr(4)), &cr(2)));
    let inner = cr(1) + &s2;
    let r = sqrt(&inner);
    assert!(same(&(&r * &r), &inner));
    assert_eq!((&s2 - ConstructibleReal::ratio(707, 500)).sign(), Sign::Positive);
    let (lo, hi) = s2.approx(&q(1, 1_000_000));
    assert!(&lo * &lo <= q(2, 1) && q(2, 1) <= &hi * &hi);
    assert!(q(1_414_212, 1_000_000) <= lo && hi <= q(1_414_215, 1_000_000));
    let (lo, hi) = ConstructibleReal::ratio(1, 3).approx(&q(1, 1000));
    assert!(lo <= q(1, 3) && q(1, 3) <= hi && &hi - &lo <= q(1, 1000));
    assert!(cr(-1).checked_sqrt().is_err());
}
