use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use proptest::prelude::*;
use puiseux::exact::{primes_upto, Rat};
use puiseux::factor::{
    atoms, is_atom, member_bounded, pr_decompose, pr_stats, zs_bounded, Membership,
};
use puiseux::model::{parse, MonoidExpr};
use puiseux::sample::{random_expr, random_rat, rng};
use puiseux::Tri;
use rand::Rng;

fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

/// A random element of `<1/p | p ≤ 50>` with its integer part and the raw,
/// unreduced coefficients.
fn random_pr_member(g: &mut impl Rng) -> Rat {
    let mut x = Rat::from(g.random_range(0..5u64));
    for p in primes_upto(50) {
        if g.random_bool(0.3) {
            x = x + Rat::new(g.random_range(0..3 * p), p).unwrap();
        }
    }
    x
}

#[test]
fn prime_reciprocal_round_trip() {
    let mut g = rng(0);
    for _ in 0..1000 {
        let x = random_pr_member(&mut g);
        let d = pr_decompose(&x).unwrap();
        assert_eq!(d.value(), x);
        for (&p, &a) in &d.coeffs {
            assert!(a >= 1 && a < p, "coefficient {a} at {p}");
        }
    }
}

#[test]
fn prime_reciprocal_form_is_unique() {
    for den in [6u64, 30, 210] {
        let primes: Vec<u64> = primes_upto(7)
            .into_iter()
            .filter(|p| den % p == 0)
            .collect();
        let mut seen: BTreeMap<Rat, Vec<u64>> = BTreeMap::new();
        let mut alphas = vec![0u64; primes.len()];
        'odo: loop {
            let frac: Rat = alphas
                .iter()
                .zip(&primes)
                .map(|(&a, &p)| Rat::new(a, p).unwrap())
                .sum();
            for n in 0..3u64 {
                let x = &frac + &Rat::from(n);
                let mut key = alphas.clone();
                key.push(n);
                assert!(seen.insert(x.clone(), key).is_none(), "{x} has two forms");
                let d = pr_decompose(&x).unwrap();
                assert_eq!(d.integer_part, BigUint::from(n));
                for (i, &p) in primes.iter().enumerate() {
                    assert_eq!(d.coeffs.get(&p).copied().unwrap_or(0), alphas[i]);
                }
            }
            for i in 0..alphas.len() {
                if alphas[i] + 1 < primes[i] {
                    alphas[i] += 1;
                    continue 'odo;
                }
                alphas[i] = 0;
            }
            break;
        }
        // every member below 3 with this denominator is one of them
        for k in 0..3 * den {
            let x = Rat::new(k, den).unwrap();
            if pr_decompose(&x).is_ok() {
                assert!(seen.contains_key(&x), "{x}");
            }
        }
    }
}

#[test]
fn divisibility_descends_lexicographically() {
    let mut g = rng(1);
    for _ in 0..200 {
        let x1 = random_pr_member(&mut g);
        let y = loop {
            let y = random_pr_member(&mut g);
            if !y.is_zero() {
                break y;
            }
        };
        let x = &x1 + &y;
        let (n1, s1) = pr_stats(&x1).unwrap();
        let (n, s) = pr_stats(&x).unwrap();
        assert!(n1 <= n);
        if n1 == n {
            assert!(s1 < s, "{x1} divides {x}");
        }
    }
}

/// All sums of `gens` up to `bound`, by breadth-first closure.
fn reachable(gens: &[Rat], bound: &Rat) -> BTreeSet<Rat> {
    let mut seen = BTreeSet::from([Rat::zero()]);
    let mut frontier = vec![Rat::zero()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = &x + g;
            if &y <= bound && seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

#[test]
fn membership_matches_reachability() {
    // each window is complete for elements whose denominator divides `den`
    let cases = [
        ("<3/2, 5/2, 7/3>", vec!["3/2", "5/2", "7/3"], 6u64),
        ("S(3/2)", vec!["1", "3/2", "9/4", "27/8", "81/16"], 16),
        ("FA(2, 3, 5)", vec!["2", "3", "5/27"], 27),
        ("PR", vec!["1/2", "1/3", "1/5"], 30),
        (
            "S(3/2) union <1/3>",
            vec!["1", "3/2", "9/4", "27/8", "1/3"],
            24,
        ),
    ];
    let bound = r("6");
    for (text, gens, den) in cases {
        let monoid = parse(text).unwrap();
        let gens: Vec<Rat> = gens.into_iter().map(r).collect();
        let table = reachable(&gens, &bound);
        for k in 0..=6 * den {
            let x = Rat::new(k, den).unwrap();
            let got = member_bounded(&monoid, &x, 8);
            match got {
                Membership::Yes(ref w) => {
                    assert!(table.contains(&x), "{x} claimed in {text}");
                    assert_eq!(w.value(), x);
                }
                Membership::No => assert!(!table.contains(&x), "{x} wrongly excluded from {text}"),
                Membership::Unknown => panic!("{x} undecided in {text}"),
            }
        }
    }
}

#[test]
fn atoms_transport_under_scaling() {
    let mut g = rng(2);
    for _ in 0..40 {
        let monoid = random_expr(&mut g, 0);
        let c = random_rat(&mut g, 12);
        let scaled = MonoidExpr::scale(c.clone(), monoid.clone()).unwrap();
        let want: Vec<Rat> = atoms(&monoid).first(6).iter().map(|a| a * &c).collect();
        assert_eq!(atoms(&scaled).first(6), want, "{c} * {monoid}");
        for a in atoms(&monoid).first(4) {
            assert_eq!(
                is_atom(&scaled, &(&a * &c), 8),
                Tri::Yes,
                "{c} * {a} in {scaled}"
            );
        }
    }
}

proptest! {
    #[test]
    fn windows_sum_to_the_target(num in 0u64..40, den in prop::sample::select(vec![1u64, 2, 3, 4, 9, 8]), depth in 1u32..5) {
        let x = Rat::new(num, den).unwrap();
        for base in ["2/3", "3/2", "4/9"] {
            let rr = r(base);
            let zs = zs_bounded(&rr, &x, depth).unwrap();
            let mut sorted = zs.clone();
            sorted.sort();
            prop_assert_eq!(&sorted, &zs);
            for z in zs {
                let total: Rat = z.iter().enumerate().map(|(k, &c)| rr.pow(k as u32).scale_int(c)).sum();
                prop_assert_eq!(total, x.clone());
            }
        }
    }

    #[test]
    fn member_witnesses_multiply_out(seed in any::<u64>(), num in 0u64..60, den in 1u64..12) {
        let mut g = rng(seed);
        let monoid = random_expr(&mut g, 1);
        let x = Rat::new(num, den).unwrap();
        if let Membership::Yes(w) = member_bounded(&monoid, &x, 6) {
            prop_assert_eq!(w.value(), x);
            for (gen, _) in w.terms() {
                prop_assert!(member_bounded(&monoid, gen, 8).is_yes());
            }
        }
    }
}
