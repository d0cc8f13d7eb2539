use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;
use puiseux::exact::{
    factorize, int_valuation, padic_val, Exponent, Rat, Rest, Supernatural, Valuation,
};

fn big(r: &Rat) -> BigRational {
    BigRational::new(
        BigInt::from(r.numer().clone()),
        BigInt::from(r.denom().clone()),
    )
}

fn rat() -> impl Strategy<Value = Rat> {
    (0u64..5000, 1u64..5000).prop_map(|(n, d)| Rat::new(n, d).unwrap())
}

fn supernatural() -> impl Strategy<Value = Supernatural> {
    let exp = prop_oneof![
        (0u32..4).prop_map(Exponent::Finite),
        Just(Exponent::Infinite)
    ];
    let rest = prop_oneof![Just(Rest::Zero), Just(Rest::One), Just(Rest::Infinite)];
    (
        proptest::collection::vec((prop::sample::select(vec![2u64, 3, 5, 7, 11]), exp), 0..4),
        rest,
    )
        .prop_map(|(e, r)| Supernatural::new(e, r))
}

proptest! {
    #[test]
    fn arithmetic_matches_big_rationals(a in rat(), b in rat()) {
        prop_assert_eq!(big(&(&a + &b)), big(&a) + big(&b));
        prop_assert_eq!(big(&(&a * &b)), big(&a) * big(&b));
        match a.checked_sub(&b) {
            Some(d) => prop_assert_eq!(big(&d), big(&a) - big(&b)),
            None => prop_assert!(a < b),
        }
        if !b.is_zero() {
            prop_assert_eq!(big(&(&a / &b)), big(&a) / big(&b));
        }
        prop_assert_eq!(a < b, big(&a) < big(&b));
    }

    #[test]
    fn stored_reduced(n in 0u64..100_000, d in 1u64..100_000) {
        let r = Rat::new(n, d).unwrap();
        prop_assert!(r.numer().gcd(r.denom()) == BigUint::from(1u32) || r.is_zero());
        prop_assert_eq!(r.to_string().parse::<Rat>().unwrap(), r);
    }

    #[test]
    fn valuation_is_additive(a in rat(), b in rat(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (Valuation::Finite(va), Valuation::Finite(vb)) = (padic_val(p, &a).unwrap(), padic_val(p, &b).unwrap()) else {
            unreachable!()
        };
        prop_assert_eq!(padic_val(p, &(&a * &b)).unwrap(), Valuation::Finite(va + vb));
        // ultrametric inequality for the sum
        let Valuation::Finite(vs) = padic_val(p, &(&a + &b)).unwrap() else { unreachable!() };
        prop_assert!(vs >= va.min(vb));
    }

    #[test]
    fn factorization_multiplies_back(n in 1u64..10_000_000) {
        let f = factorize(&BigUint::from(n)).unwrap();
        let back: BigUint = f.iter().map(|&(p, e)| BigUint::from(p).pow(e)).product();
        prop_assert_eq!(back, BigUint::from(n));
        for (p, e) in f {
            prop_assert_eq!(int_valuation(p, &BigUint::from(n)), e);
        }
    }

    #[test]
    fn supernatural_lcm_is_a_join(a in supernatural(), b in supernatural(), c in supernatural()) {
        prop_assert_eq!(a.lcm(&b), b.lcm(&a));
        prop_assert_eq!(a.lcm(&b).lcm(&c), a.lcm(&b.lcm(&c)));
        prop_assert_eq!(a.lcm(&a), a.clone());
        prop_assert_eq!(a.to_string().parse::<Supernatural>().unwrap(), a);
    }

    #[test]
    fn divisors_are_closed_under_lcm_and_divisors(s in supernatural(), x in 1u64..400, y in 1u64..400) {
        let (bx, by) = (BigUint::from(x), BigUint::from(y));
        let (dx, dy) = (s.divides(&bx).unwrap(), s.divides(&by).unwrap());
        if dx && dy {
            prop_assert!(s.divides(&bx.lcm(&by)).unwrap());
        }
        if dx {
            prop_assert!(s.divides(&bx.gcd(&by)).unwrap());
        }
    }

    #[test]
    fn integer_supernaturals_divide_like_integers(n in 1u64..5000, d in 1u64..5000) {
        let s = Supernatural::from_integer(&BigUint::from(n)).unwrap();
        prop_assert_eq!(s.divides(&BigUint::from(d)).unwrap(), n % d == 0);
        prop_assert_eq!(s.to_integer(), Some(BigUint::from(n)));
    }
}
