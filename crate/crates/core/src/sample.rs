//! Deterministic sampling of generators, elements and closure elements, for
//! property checks and tests.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::ClosureDesc;
use crate::exact::{primes_upto, Exponent, Rat, Rest};
use crate::factor::increasing_denom_generator;
use crate::model::MonoidExpr;

/// Largest denominator drawn for closure samples.
pub const CLOSURE_DENOM_LIMIT: u64 = 10_000;
/// Largest numerator multiplier drawn for closure samples.
pub const CLOSURE_NUMER_LIMIT: u64 = 1_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn first_primes(n: usize, skip_two: bool) -> Vec<u64> {
    let mut bound = 32u64;
    loop {
        let ps: Vec<u64> = primes_upto(bound)
            .into_iter()
            .filter(|&p| !(skip_two && p == 2))
            .collect();
        if ps.len() >= n {
            return ps[..n].to_vec();
        }
        bound *= 2;
    }
}

/// A finite set of generators of `m`: all of them for finitely generated
/// monoids, otherwise the first `depth` or so in a natural enumeration.
/// Every returned value is a nonzero element of `m`.
pub fn generator_window(m: &MonoidExpr, depth: usize) -> Vec<Rat> {
    use MonoidExpr::*;
    let depth = depth.max(1);
    let mut out = match m {
        FiniteGen(g) => g.clone(),
        CyclicSemiring(r) => {
            if r.is_integer() {
                vec![Rat::one()]
            } else {
                (0..=depth as u32).map(|k| r.pow(k)).collect()
            }
        }
        PrimeReciprocal => first_primes(depth, false)
            .into_iter()
            .map(Rat::reciprocal_of)
            .collect(),
        PrimeFracIncreasing => first_primes(depth, false)
            .into_iter()
            .map(|p| Rat::new(p - 1, p).expect("p > 0"))
            .collect(),
        DenseTail(r) => {
            let mut v = Vec::new();
            for d in 1..=depth as u64 {
                for k in 0..d {
                    v.push(&r.scale_int(d + k) / &Rat::from(d));
                }
            }
            v
        }
        IncreasingDenom => first_primes(depth, true)
            .into_iter()
            .map(increasing_denom_generator)
            .collect(),
        FiniteAtomExample { m, p, q } => {
            let mut v: Vec<Rat> = (*m..2 * *m).map(Rat::from).collect();
            let bp = BigUint::from(*p);
            for i in 1..=depth as u32 {
                let den = bp.pow(*m as u32 + i);
                v.push(Rat::from_parts(BigUint::from(*q), den).expect("positive"));
            }
            v
        }
        Scale(c, inner) => generator_window(inner, depth)
            .iter()
            .map(|g| g * c)
            .collect(),
        Union(..) => m
            .union_parts()
            .into_iter()
            .flat_map(|p| generator_window(p, depth))
            .collect(),
    };
    out.sort();
    out.dedup();
    out
}

/// `count` elements of `m`, each a random combination of at most four
/// window generators with small multiplicities, plus zero.
pub fn elements(m: &MonoidExpr, count: usize, depth: usize, rng: &mut impl Rng) -> Vec<Rat> {
    let window = generator_window(m, depth);
    let mut out = vec![Rat::zero()];
    while out.len() < count {
        let terms = rng.random_range(1..=4);
        let mut x = Rat::zero();
        for _ in 0..terms {
            let g = &window[rng.random_range(0..window.len())];
            x = x + g.scale_int(rng.random_range(1..=3u32));
        }
        out.push(x);
    }
    out
}

/// Denominators up to `limit` dividing the supernatural part of `desc`.
fn closure_denominators(desc: &ClosureDesc, limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for d in 1..=limit {
        if desc.s.divides(&BigUint::from(d)).unwrap_or(false) {
            out.push(d);
        }
    }
    out
}

/// `count` elements `n·k/d` of the root closure with `d | s`, `d ≤ 10^4`,
/// `k ≤ 10^3`.
pub fn closure_elements(desc: &ClosureDesc, count: usize, rng: &mut impl Rng) -> Vec<Rat> {
    let dens = closure_denominators(desc, CLOSURE_DENOM_LIMIT);
    let n = Rat::integer(desc.n.clone());
    (0..count)
        .map(|_| {
            let d = dens[rng.random_range(0..dens.len())];
            let k = rng.random_range(0..=CLOSURE_NUMER_LIMIT);
            &n * &Rat::new(k, d).expect("d > 0")
        })
        .collect()
}

/// A positive rational with numerator and denominator in `1..=bound`.
pub fn random_rat(rng: &mut impl Rng, bound: u64) -> Rat {
    Rat::new(rng.random_range(1..=bound), rng.random_range(1..=bound))
        .expect("positive denominator")
}

fn random_prime(rng: &mut impl Rng, bound: u64) -> u64 {
    let ps = primes_upto(bound);
    ps[rng.random_range(0..ps.len())]
}

/// A random family expression of nesting depth at most `depth`.
pub fn random_expr(rng: &mut impl Rng, depth: u32) -> MonoidExpr {
    let pick = if depth == 0 {
        rng.random_range(0..7)
    } else {
        rng.random_range(0..9)
    };
    let built = match pick {
        0 => {
            let k = rng.random_range(1..=3);
            MonoidExpr::finite_gen((0..k).map(|_| random_rat(rng, 12)).collect())
        }
        1 => MonoidExpr::cyclic_semiring(random_rat(rng, 9)),
        2 => Ok(MonoidExpr::PrimeReciprocal),
        3 => MonoidExpr::dense_tail(random_rat(rng, 9)),
        4 => Ok(MonoidExpr::PrimeFracIncreasing),
        5 => Ok(MonoidExpr::IncreasingDenom),
        6 => {
            let m = rng.random_range(1..=4);
            let p = random_prime(rng, 7);
            let q = *primes_upto(30)
                .iter()
                .find(|&&q| q > m && q != p)
                .expect("small prime");
            MonoidExpr::finite_atom_example(m, p, q)
        }
        7 => MonoidExpr::scale(random_rat(rng, 9), random_expr(rng, depth - 1)),
        _ => Ok(MonoidExpr::union(
            random_expr(rng, depth - 1),
            random_expr(rng, depth - 1),
        )),
    };
    built.expect("sampled parameters are valid")
}

/// Whether the root closure description is all of `Q≥0`.
pub fn closure_is_everything(desc: &ClosureDesc) -> bool {
    desc.n.is_one()
        && desc.s.rest() == Rest::Infinite
        && desc.s.explicit().all(|(_, e)| e == Exponent::Infinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::member_bounded;
    use crate::model::parse;

    #[test]
    fn windows_lie_in_the_monoid() {
        for text in [
            "<3,5>",
            "S(2/3)",
            "S(3/2)",
            "PR",
            "PF",
            "ID",
            "T(3/2)",
            "FA(2, 3, 5)",
            "2 * PR",
            "PR union T(1)",
        ] {
            let m = parse(text).unwrap();
            for g in generator_window(&m, 6) {
                assert!(!g.is_zero());
                assert!(member_bounded(&m, &g, 8).is_yes(), "{g} in {text}");
            }
        }
    }

    #[test]
    fn elements_are_members_and_deterministic() {
        let m = parse("S(3/2) union <7/2>").unwrap();
        let a = elements(&m, 30, 5, &mut rng(7));
        let b = elements(&m, 30, 5, &mut rng(7));
        assert_eq!(a, b);
        for x in &a {
            assert!(member_bounded(&m, x, 8).is_yes(), "{x}");
        }
    }

    #[test]
    fn random_exprs_print_and_parse() {
        let mut g = rng(0);
        for _ in 0..200 {
            let e = random_expr(&mut g, 2);
            assert_eq!(parse(&e.print()).unwrap(), e);
        }
    }
}
