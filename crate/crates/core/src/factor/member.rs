//! Membership with witnesses.
//!
//! `No` is only reported on an exact obstruction (residues, valuations, a
//! complete finite search); an exhausted window gives `Unknown`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::cyclic::{denominator_depth, inv_mod_big, top_power_below, PowerSearch, SEARCH_BUDGET};
use super::prime_reciprocal::{pr_decompose, residues};
use super::{increasing_denom_generator, FactorError, PRIME_INDEX_LIMIT};
use crate::closure::root_closure;
use crate::exact::Rat;
use crate::model::MonoidExpr;
use crate::numsg::NumericalMonoid;
use crate::Tri;

/// A sum of generators with multiplicities, equal to the queried element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    terms: Vec<(Rat, BigUint)>,
}

impl Witness {
    /// Merges equal generators, drops zero counts, sorts by generator.
    pub fn new(terms: impl IntoIterator<Item = (Rat, BigUint)>) -> Witness {
        let mut terms: Vec<(Rat, BigUint)> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Rat, BigUint)> = Vec::with_capacity(terms.len());
        for (g, c) in terms {
            match merged.last_mut() {
                Some((h, d)) if *h == g => *d += c,
                _ => merged.push((g, c)),
            }
        }
        Witness { terms: merged }
    }

    pub fn single(x: &Rat) -> Witness {
        Witness::new([(x.clone(), BigUint::one())])
    }

    pub fn terms(&self) -> &[(Rat, BigUint)] {
        &self.terms
    }

    pub fn value(&self) -> Rat {
        self.terms.iter().map(|(g, c)| g.scale_int(c.clone())).sum()
    }

    fn scaled(self, c: &Rat) -> Witness {
        Witness::new(self.terms.into_iter().map(|(g, k)| (g * c, k)))
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| {
                if c.is_one() {
                    g.to_string()
                } else {
                    format!("{c}*({g})")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Yes(Witness),
    No,
    Unknown,
}

impl Membership {
    pub fn tri(&self) -> Tri {
        match self {
            Membership::Yes(_) => Tri::Yes,
            Membership::No => Tri::No,
            Membership::Unknown => Tri::Unknown,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

fn count(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Membership of `x` in `m`, searching windows of `depth` powers where a
/// family has no exact procedure.
pub fn member_bounded(m: &MonoidExpr, x: &Rat, depth: u32) -> Membership {
    if x.is_zero() {
        return Membership::Yes(Witness::new([]));
    }
    if let Some(g) = m.finite_generators() {
        return finite(&g, x);
    }
    match m {
        MonoidExpr::FiniteGen(g) => finite(g, x),
        MonoidExpr::CyclicSemiring(r) => cyclic(r, x, depth),
        MonoidExpr::PrimeReciprocal => match pr_decompose(x) {
            Ok(d) => {
                let ints = d.integer_part * 2u32;
                let half = (Rat::reciprocal_of(2u32), ints);
                let fracs = d
                    .coeffs
                    .into_iter()
                    .map(|(p, a)| (Rat::reciprocal_of(p), count(a)));
                Membership::Yes(Witness::new(fracs.chain([half])))
            }
            Err(FactorError::NotAMember(_) | FactorError::NonSquarefreeDenominator(_)) => {
                Membership::No
            }
            Err(_) => Membership::Unknown,
        },
        MonoidExpr::DenseTail(r) => {
            if x >= r {
                Membership::Yes(Witness::single(x))
            } else {
                Membership::No
            }
        }
        MonoidExpr::PrimeFracIncreasing => prime_fracs(x),
        MonoidExpr::IncreasingDenom => increasing_denom(x),
        MonoidExpr::FiniteAtomExample { m, p, q } => finite_atom_example(*m, *p, *q, x),
        MonoidExpr::Scale(c, inner) => match member_bounded(inner, &(x / c), depth) {
            Membership::Yes(w) => Membership::Yes(w.scaled(c)),
            other => other,
        },
        MonoidExpr::Union(..) => union(m, x, depth),
    }
}

fn finite(gens: &[Rat], x: &Rat) -> Membership {
    let Ok(nm) = NumericalMonoid::normalize(gens) else {
        return Membership::Unknown;
    };
    let Some(n) = nm.to_internal(x) else {
        return Membership::No;
    };
    let Some(n) = n.to_u64() else {
        return Membership::Unknown;
    };
    match nm.witness(n) {
        Some(z) => Membership::Yes(Witness::new(
            nm.gens()
                .iter()
                .zip(z.counts())
                .map(|(&g, &c)| (nm.to_original(g), count(c))),
        )),
        None => Membership::No,
    }
}

fn cyclic(r: &Rat, x: &Rat, depth: u32) -> Membership {
    let b = r.denom();
    if r.is_integer() {
        return match x.to_integer() {
            Some(n) => Membership::Yes(Witness::new([(Rat::one(), n)])),
            None => Membership::No,
        };
    }
    // every element has a denominator dividing a power of d(r)
    let Some(need) = denominator_depth(b, x) else {
        return Membership::No;
    };
    if r.numer().is_one() {
        let k = (x * &Rat::integer(b.pow(need)))
            .to_integer()
            .expect("d(x) | b^need");
        return Membership::Yes(Witness::new([(r.pow(need), k)]));
    }
    let above_one = r > &Rat::one();
    let top = if above_one {
        if x < &Rat::one() {
            return Membership::No;
        }
        top_power_below(r, x)
    } else {
        depth.max(need)
    };
    match PowerSearch::run(r, x, top, 1, SEARCH_BUDGET) {
        Ok(found) if !found.is_empty() => {
            let terms = found[0]
                .iter()
                .enumerate()
                .map(|(k, c)| (r.pow(k as u32), c.clone()));
            Membership::Yes(Witness::new(terms))
        }
        // r > 1: powers beyond `top` exceed x, so the search was complete
        Ok(_) if above_one => Membership::No,
        _ => Membership::Unknown,
    }
}

/// `x = Σ c_p (p-1)/p`: the count at each prime of `d(x)` is forced modulo
/// `p`; the remainder is an integer, and every nonnegative integer is a sum of
/// `p` copies of `(p-1)/p` (take `p = 2` twice per unit).
fn prime_fracs(x: &Rat) -> Membership {
    let res = match residues(x) {
        Ok(r) => r,
        Err(FactorError::NonSquarefreeDenominator(_)) => return Membership::No,
        Err(_) => return Membership::Unknown,
    };
    let forced: Vec<(u64, u64)> = res.into_iter().map(|(p, a)| (p, (p - a) % p)).collect();
    let base: Rat = forced
        .iter()
        .map(|&(p, c)| Rat::new(c * (p - 1), p).expect("p > 0"))
        .sum();
    let Some(rest) = x.checked_sub(&base) else {
        return Membership::No;
    };
    let units = rest.to_integer().expect("fractional parts cancel");
    let half = (Rat::reciprocal_of(2u32), units * 2u32);
    let terms = forced
        .into_iter()
        .map(|(p, c)| (Rat::new(p - 1, p).expect("p > 0"), count(c)));
    Membership::Yes(Witness::new(terms.chain([half])))
}

/// Generators `g_p` (one per odd prime) all have fractional part `1/p`, so the
/// count at each prime of `d(x)` is forced modulo `p`. The remainder must be a
/// sum of the integers `p · g_p`, i.e. `p^2 + 1` or `p + 1`: all even, and
/// halved they generate exactly `<3, 5>` (from `p = 5` and `p = 3`).
fn increasing_denom(x: &Rat) -> Membership {
    let res = match residues(x) {
        Ok(r) => r,
        Err(FactorError::NonSquarefreeDenominator(_)) => return Membership::No,
        Err(_) => return Membership::Unknown,
    };
    if res.iter().any(|&(p, _)| p == 2) {
        return Membership::No;
    }
    if res.iter().any(|&(p, _)| p > PRIME_INDEX_LIMIT) {
        return Membership::Unknown;
    }
    let base: Rat = res
        .iter()
        .map(|&(p, a)| increasing_denom_generator(p).scale_int(a))
        .sum();
    let Some(rest) = x.checked_sub(&base) else {
        return Membership::No;
    };
    let rest = rest.to_integer().expect("fractional parts cancel");
    if rest.is_odd() {
        return Membership::No;
    }
    let Some(half) = (rest / 2u32).to_u64() else {
        return Membership::Unknown;
    };
    let three_five = NumericalMonoid::from_integers(&[3, 5]).expect("valid");
    let Some(z) = three_five.witness(half) else {
        return Membership::No;
    };
    let (threes, fives) = (z.counts()[0], z.counts()[1]);
    let terms = res
        .into_iter()
        .map(|(p, a)| (increasing_denom_generator(p), count(a)));
    let extra = [
        (increasing_denom_generator(5), count(5) * threes),
        (increasing_denom_generator(3), count(3) * fives),
    ];
    Membership::Yes(Witness::new(terms.chain(extra)))
}

/// `M = {n + q z | n ∈ {0} ∪ [m, ∞), z ∈ Z[1/p]≥0}`: the fractional part of
/// `x` fixes `z` modulo the integers, leaving an integer check.
fn finite_atom_example(m: u64, p: u64, q: u64, x: &Rat) -> Membership {
    let bp = BigUint::from(p);
    let Some(e) = denominator_depth(&bp, x) else {
        return Membership::No;
    };
    let pe = bp.pow(e);
    let numer = (x * &Rat::integer(pe.clone()))
        .to_integer()
        .expect("d(x) = p^e");
    let u = if e == 0 {
        BigUint::zero()
    } else {
        (&numer * inv_mod_big(&(BigUint::from(q) % &pe), &pe)) % &pe
    };
    let z0 = Rat::from_parts(u, pe).expect("p^e > 0");
    let Some(n0) = x.checked_sub(&z0.scale_int(q)) else {
        return Membership::No;
    };
    let n0 = n0.to_integer().expect("integer by choice of z0");
    let (n, z) = if n0 >= BigUint::from(m) {
        (n0, z0)
    } else if n0.is_multiple_of(&BigUint::from(q)) {
        let j = &n0 / q;
        (BigUint::zero(), z0 + Rat::integer(j))
    } else {
        return Membership::No;
    };
    let mut terms = Vec::new();
    if !z.is_zero() {
        let level = e.saturating_sub(m as u32).max(1);
        let depth = m as u32 + level;
        let generator = &Rat::from(q) / &Rat::integer(bp.pow(depth));
        let k = (&z * &Rat::integer(bp.pow(depth)))
            .to_integer()
            .expect("denominator divides p^(m+level)");
        terms.push((generator, k));
    }
    if !n.is_zero() {
        let (t, s) = n.div_rem(&BigUint::from(m));
        if s.is_zero() {
            terms.push((Rat::from(m), t));
        } else {
            terms.push((Rat::from(m), t - 1u32));
            terms.push((Rat::integer(s + m), BigUint::one()));
        }
    }
    Membership::Yes(Witness::new(terms))
}

/// Elements of a finitely generated part below `x` are finitely many: trying
/// each one as that part's share decides membership whenever the remaining
/// parts do. `None` when that is not the case.
fn split_off_finite(parts: &[&MonoidExpr], x: &Rat, depth: u32) -> Option<Membership> {
    let i = parts.iter().position(|p| p.finite_generators().is_some())?;
    let nm = NumericalMonoid::normalize(&parts[i].finite_generators()?).ok()?;
    let top = (x * nm.scale())
        .floor()
        .to_u64()
        .filter(|&t| t <= SPLIT_LIMIT)?;
    let others = MonoidExpr::union_all(
        parts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| (*q).clone()),
    );
    let mut undecided = false;
    for k in (0..=top).filter(|&k| nm.member(k)) {
        let share = nm.to_original(k);
        let left = x.checked_sub(&share).expect("share below x");
        match member_bounded(&others, &left, depth) {
            Membership::Yes(w) => {
                let z = nm.witness(k).expect("member");
                let mut terms = w.terms;
                terms.extend(
                    nm.gens()
                        .iter()
                        .zip(z.counts())
                        .map(|(&g, &c)| (nm.to_original(g), count(c))),
                );
                return Some(Membership::Yes(Witness::new(terms)));
            }
            Membership::Unknown => undecided = true,
            Membership::No => {}
        }
    }
    (!undecided).then_some(Membership::No)
}

/// Largest number of shares tried by [`split_off_finite`].
const SPLIT_LIMIT: u64 = 20_000;

fn union(m: &MonoidExpr, x: &Rat, depth: u32) -> Membership {
    let (rest, tail) = m.split_tail();
    if let Some(r) = tail {
        if x >= r {
            return Membership::Yes(Witness::single(x));
        }
        // below the threshold only the other parts contribute
        return member_bounded(&MonoidExpr::union_all(rest.into_iter().cloned()), x, depth);
    }
    if let Ok(desc) = root_closure(m) {
        if desc.contains(x) == Ok(false) {
            return Membership::No;
        }
    }
    let parts = m.union_parts();
    if let Some(found) = split_off_finite(&parts, x, depth) {
        return found;
    }
    for p in &parts {
        if let Membership::Yes(w) = member_bounded(p, x, depth) {
            return Membership::Yes(w);
        }
    }
    // split off one or two generators of one part, the rest from the others
    for (i, p) in parts.iter().enumerate() {
        let others = MonoidExpr::union_all(
            parts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| (*q).clone()),
        );
        let window = crate::sample::generator_window(p, depth as usize);
        for (a, ga) in window.iter().enumerate() {
            for gb in std::iter::once(None).chain(window[a..].iter().map(Some)) {
                let y = match gb {
                    Some(gb) => ga + gb,
                    None => ga.clone(),
                };
                let Some(left) = x.checked_sub(&y) else {
                    continue;
                };
                if let Membership::Yes(w) = member_bounded(&others, &left, depth) {
                    let mut terms = w.terms.clone();
                    terms.push((ga.clone(), BigUint::one()));
                    if let Some(gb) = gb {
                        terms.push((gb.clone(), BigUint::one()));
                    }
                    return Membership::Yes(Witness::new(terms));
                }
            }
        }
    }
    Membership::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn mb(m: &str, x: &str) -> Membership {
        let m = parse(m).unwrap();
        let x = r(x);
        let got = member_bounded(&m, &x, 8);
        if let Membership::Yes(w) = &got {
            assert_eq!(w.value(), x, "witness for {x} in {m}");
        }
        got
    }

    #[test]
    fn examples() {
        let w = mb("PR", "7/6");
        assert_eq!(
            w,
            Membership::Yes(Witness::new([(r("1/2"), count(1)), (r("1/3"), count(2))]))
        );
        assert_eq!(mb("PR", "1/6"), Membership::No);
        assert!(mb("S(2/3)", "4/3").is_yes());
        assert_eq!(mb("T(1)", "1/2"), Membership::No);
        assert!(mb("T(1)", "3/2").is_yes());
    }

    #[test]
    fn finitely_generated() {
        assert_eq!(mb("<3,5>", "7"), Membership::No);
        assert!(mb("<3,5>", "8").is_yes());
        assert!(mb("<3/2, 5/2>", "4").is_yes());
        assert_eq!(mb("<3/2, 5/2>", "1/3"), Membership::No);
        assert!(mb("S(3) union <1/2>", "7/2").is_yes());
    }

    #[test]
    fn cyclic_semirings() {
        assert!(mb("S(1/2)", "5/8").is_yes());
        assert_eq!(mb("S(1/2)", "1/3"), Membership::No);
        assert!(mb("S(3/2)", "13/4").is_yes());
        // 1, 3/2, 9/4: no combination gives 2 + 1/2
        assert_eq!(
            mb("S(3/2)", "5/2"),
            Membership::Yes(Witness::new([(r("1"), count(1)), (r("3/2"), count(1))]))
        );
        assert_eq!(mb("S(3/2)", "7/4"), Membership::No);
        assert_eq!(mb("S(3/2)", "1/2"), Membership::No);
        assert_eq!(mb("S(2/3)", "1/5"), Membership::No);
        assert!(mb("S(2/3)", "2/9").is_yes() || mb("S(2/3)", "2/9") == Membership::Unknown);
    }

    #[test]
    fn prime_fractions() {
        assert!(mb("PF", "1/2").is_yes());
        assert!(mb("PF", "7/6").is_yes());
        assert_eq!(mb("PF", "1/6"), Membership::No);
        assert_eq!(mb("PF", "1/4"), Membership::No);
        assert!(mb("PF", "3").is_yes());
    }

    #[test]
    fn increasing_denominators() {
        assert!(mb("ID", "10/3").is_yes());
        assert!(mb("ID", "6/5").is_yes());
        assert_eq!(mb("ID", "1/2"), Membership::No);
        assert_eq!(mb("ID", "1"), Membership::No);
        assert!(mb("ID", "6").is_yes());
        assert_eq!(mb("ID", "26/5"), Membership::No);
        assert!(mb("ID", "136/15").is_yes());
    }

    #[test]
    fn finite_atom_examples() {
        assert!(mb("FA(2,3,5)", "5/27").is_yes());
        assert!(mb("FA(2,3,5)", "2").is_yes());
        assert!(mb("FA(2,3,5)", "5").is_yes());
        assert_eq!(mb("FA(2,3,5)", "1"), Membership::No);
        assert_eq!(mb("FA(2,3,5)", "1/2"), Membership::No);
        assert!(mb("FA(2,3,5)", "1/3").is_yes() || mb("FA(2,3,5)", "1/3") == Membership::No);
        assert!(mb("FA(3,2,5)", "83/16").is_yes());
    }

    #[test]
    fn unions_and_scaling() {
        assert!(mb("PR union T(1)", "5/4").is_yes());
        assert!(mb("PR union T(1)", "5/6").is_yes());
        assert_eq!(mb("PR union T(1)", "1/4"), Membership::No);
        assert!(mb("2 * PR", "7/3").is_yes());
        assert_eq!(mb("2 * PR", "1/3"), Membership::No);
        assert!(mb("PR union PF", "1/2").is_yes());
        assert!(mb("PR union PF", "1/3").is_yes());
        assert_eq!(mb("PR union PF", "1/9"), Membership::No);
    }

    #[test]
    fn brute_force_agreement_on_families() {
        // compare exact answers with sums over a generous generator window
        for text in ["PR", "PF", "ID", "FA(2,3,5)", "S(3/2)"] {
            let m = parse(text).unwrap();
            let gens: Vec<Rat> = crate::sample::generator_window(&m, 10)
                .into_iter()
                .filter(|g| g <= &r("4"))
                .collect();
            let mut reach = std::collections::BTreeSet::from([Rat::zero()]);
            for _ in 0..6 {
                let next: Vec<Rat> = reach
                    .iter()
                    .flat_map(|a| gens.iter().map(move |g| a + g))
                    .filter(|v| v <= &r("4"))
                    .collect();
                reach.extend(next);
            }
            for x in &reach {
                assert!(member_bounded(&m, x, 8).is_yes(), "{x} in {text}");
            }
        }
    }
}
