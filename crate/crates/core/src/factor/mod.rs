//! Atoms, bounded membership and factorization search, and the canonical form
//! in the prime-reciprocal monoid.

mod cyclic;
mod member;
mod prime_reciprocal;
mod window;

use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::exact::{is_prime, prime_index, ExactError, Rat};
use crate::model::{meta, MonoidExpr};
use crate::numsg::{NumericalMonoid, NumsgError};
use crate::Tri;

pub use cyclic::{zs_bounded, SEARCH_BUDGET};
pub use member::{member_bounded, Membership, Witness};
pub use prime_reciprocal::{pr_decompose, pr_stats, PrDecomp};
pub use window::{factorizations_windowed, FactorList, FACTORIZATION_CAP};

/// Default window for bounded searches.
pub const DEFAULT_DEPTH: u32 = 8;

/// Primes beyond this are not indexed (needed to tell the two generator
/// shapes of the increasing-denominator family apart).
pub const PRIME_INDEX_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("{0} has a denominator that is not squarefree")]
    NonSquarefreeDenominator(String),
    #[error("{0} is not an element of the monoid")]
    NotAMember(String),
    #[error("search limit reached: {0}")]
    SearchLimit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Numsg(#[from] NumsgError),
}

/// A description of `A(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomsDesc {
    /// Finitely many atoms, ascending.
    FiniteList(Vec<Rat>),
    /// `{r^n | n >= 0}`.
    PowersOf(Rat),
    /// `[lo, hi) ∩ Q`.
    IntervalRats {
        lo: Rat,
        hi: Rat,
    },
    /// `{1/p | p prime}`.
    ReciprocalPrimes,
    /// `{(p-1)/p | p prime}`.
    PrimeFracs,
    /// The generators of the increasing-denominator family: for `n >= 1`,
    /// `(p^2+1)/p` with `p = p_{2n}` and `(p+1)/p` with `p = p_{2n+1}`.
    IncreasingDenomAtoms,
    EmptySet,
    /// `c · D`.
    Scaled(Rat, Box<AtomsDesc>),
    Unknown,
}

/// Size of an atom set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomCount {
    Finite(usize),
    Infinite,
    Unknown,
}

impl AtomsDesc {
    fn scaled(self, c: &Rat) -> AtomsDesc {
        if *c == Rat::one() {
            return self;
        }
        match self {
            AtomsDesc::FiniteList(v) => AtomsDesc::FiniteList(v.iter().map(|a| a * c).collect()),
            AtomsDesc::IntervalRats { lo, hi } => AtomsDesc::IntervalRats {
                lo: lo * c,
                hi: hi * c,
            },
            AtomsDesc::EmptySet => AtomsDesc::EmptySet,
            AtomsDesc::Unknown => AtomsDesc::Unknown,
            AtomsDesc::Scaled(d, inner) => (*inner).scaled(&(c * &d)),
            other => AtomsDesc::Scaled(c.clone(), Box::new(other)),
        }
    }

    pub fn count(&self) -> AtomCount {
        match self {
            AtomsDesc::FiniteList(v) => AtomCount::Finite(v.len()),
            AtomsDesc::EmptySet => AtomCount::Finite(0),
            AtomsDesc::Scaled(_, inner) => inner.count(),
            AtomsDesc::Unknown => AtomCount::Unknown,
            _ => AtomCount::Infinite,
        }
    }

    /// Whether the set is known to be nonempty.
    pub fn is_nonempty(&self) -> Tri {
        match self.count() {
            AtomCount::Finite(0) => Tri::No,
            AtomCount::Unknown => Tri::Unknown,
            _ => Tri::Yes,
        }
    }

    /// Exact membership of `x` in the described set.
    pub fn contains(&self, x: &Rat) -> Tri {
        match self {
            AtomsDesc::FiniteList(v) => Tri::from_bool(v.contains(x)),
            AtomsDesc::PowersOf(r) => {
                let mut p = Rat::one();
                if r > &Rat::one() {
                    while &p < x {
                        p = &p * r;
                    }
                } else {
                    while &p > x {
                        p = &p * r;
                    }
                }
                Tri::from_bool(&p == x)
            }
            AtomsDesc::IntervalRats { lo, hi } => Tri::from_bool(lo <= x && x < hi),
            AtomsDesc::ReciprocalPrimes => match x.denom().try_into() {
                Ok(d) => Tri::from_bool(x.numer().is_one() && is_prime(d)),
                Err(_) => Tri::Unknown,
            },
            AtomsDesc::PrimeFracs => match u64::try_from(x.denom()) {
                Ok(d) => {
                    Tri::from_bool(is_prime(d) && x.numer() == &num_bigint::BigUint::from(d - 1))
                }
                Err(_) => Tri::Unknown,
            },
            AtomsDesc::IncreasingDenomAtoms => match u64::try_from(x.denom()) {
                Ok(p) if !is_prime(p) || p == 2 => Tri::No,
                Ok(p) if p <= PRIME_INDEX_LIMIT => {
                    let want = increasing_denom_generator(p);
                    Tri::from_bool(&want == x)
                }
                Ok(_) => Tri::Unknown,
                Err(_) => Tri::Unknown,
            },
            AtomsDesc::EmptySet => Tri::No,
            AtomsDesc::Scaled(c, inner) => inner.contains(&(x / c)),
            AtomsDesc::Unknown => Tri::Unknown,
        }
    }

    /// A bound on the atoms: `Some((s, true))` if all atoms are `≤ s`,
    /// `Some((s, false))` if all are `< s`, `None` if unbounded or unknown.
    pub fn upper_bound(&self) -> Option<(Rat, bool)> {
        match self {
            AtomsDesc::FiniteList(v) => v.last().map(|m| (m.clone(), true)),
            AtomsDesc::EmptySet => Some((Rat::zero(), true)),
            AtomsDesc::PowersOf(r) if r < &Rat::one() => Some((Rat::one(), true)),
            AtomsDesc::IntervalRats { hi, .. } => Some((hi.clone(), false)),
            AtomsDesc::ReciprocalPrimes => Some((Rat::reciprocal_of(2u32), true)),
            AtomsDesc::PrimeFracs => Some((Rat::one(), false)),
            AtomsDesc::Scaled(c, inner) => inner.upper_bound().map(|(s, inc)| (s * c, inc)),
            _ => None,
        }
    }

    /// Up to `limit` atoms in a canonical order (ascending where that is
    /// well defined), for display and sampling.
    pub fn first(&self, limit: usize) -> Vec<Rat> {
        match self {
            AtomsDesc::FiniteList(v) => v.iter().take(limit).cloned().collect(),
            AtomsDesc::PowersOf(r) => (0..limit as u32).map(|k| r.pow(k)).collect(),
            AtomsDesc::IntervalRats { lo, hi } => {
                let width = hi.checked_sub(lo).expect("hi > lo");
                (0..limit as u64)
                    .map(|k| lo + &(&width * &Rat::new(k, limit as u64 + 1).expect("nonzero")))
                    .collect()
            }
            AtomsDesc::ReciprocalPrimes => first_primes(limit)
                .into_iter()
                .map(Rat::reciprocal_of)
                .collect(),
            AtomsDesc::PrimeFracs => first_primes(limit)
                .into_iter()
                .map(|p| Rat::new(p - 1, p).expect("p > 0"))
                .collect(),
            AtomsDesc::IncreasingDenomAtoms => first_primes(limit + 1)
                .into_iter()
                .skip(1)
                .map(increasing_denom_generator)
                .collect(),
            AtomsDesc::EmptySet | AtomsDesc::Unknown => Vec::new(),
            AtomsDesc::Scaled(c, inner) => inner.first(limit).into_iter().map(|a| a * c).collect(),
        }
    }
}

fn first_primes(n: usize) -> Vec<u64> {
    let mut bound = 30u64;
    loop {
        let ps = crate::exact::primes_upto(bound);
        if ps.len() >= n {
            return ps[..n].to_vec();
        }
        bound *= 2;
    }
}

/// The generator of the increasing-denominator family with denominator `p`
/// (an odd prime): `p + 1/p` at even prime index, `1 + 1/p` at odd index.
pub(crate) fn increasing_denom_generator(p: u64) -> Rat {
    let idx = prime_index(p).expect("prime");
    let whole = if idx.is_multiple_of(2) {
        Rat::from(p)
    } else {
        Rat::one()
    };
    whole + Rat::reciprocal_of(p)
}

impl fmt::Display for AtomsDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomsDesc::FiniteList(v) => {
                let items: Vec<String> = v.iter().map(Rat::to_string).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            AtomsDesc::PowersOf(r) => write!(f, "{{({r})^n | n >= 0}}"),
            AtomsDesc::IntervalRats { lo, hi } => write!(f, "[{lo}, {hi})"),
            AtomsDesc::ReciprocalPrimes => f.write_str("{1/p | p prime}"),
            AtomsDesc::PrimeFracs => f.write_str("{(p-1)/p | p prime}"),
            AtomsDesc::IncreasingDenomAtoms => {
                f.write_str("{(p_2n^2+1)/p_2n, (p_(2n+1)+1)/p_(2n+1) | n >= 1}")
            }
            AtomsDesc::EmptySet => f.write_str("{}"),
            AtomsDesc::Scaled(c, inner) => write!(f, "{c} * {inner}"),
            AtomsDesc::Unknown => f.write_str("unknown"),
        }
    }
}

fn finite_atoms(gens: &[Rat]) -> AtomsDesc {
    match NumericalMonoid::normalize(gens) {
        Ok(nm) => AtomsDesc::FiniteList(nm.gens().iter().map(|&g| nm.to_original(g)).collect()),
        Err(_) => AtomsDesc::Unknown,
    }
}

/// The atoms of `m`.
pub fn atoms(m: &MonoidExpr) -> AtomsDesc {
    use MonoidExpr::*;
    if let Some(g) = m.finite_generators() {
        return finite_atoms(&g);
    }
    match m {
        FiniteGen(g) => finite_atoms(g),
        CyclicSemiring(r) => {
            if r.is_integer() {
                AtomsDesc::FiniteList(vec![Rat::one()])
            } else if r.numer().is_one() {
                AtomsDesc::EmptySet
            } else {
                AtomsDesc::PowersOf(r.clone())
            }
        }
        PrimeReciprocal => AtomsDesc::ReciprocalPrimes,
        DenseTail(r) => AtomsDesc::IntervalRats {
            lo: r.clone(),
            hi: r.scale_int(2u32),
        },
        PrimeFracIncreasing => AtomsDesc::PrimeFracs,
        IncreasingDenom => AtomsDesc::IncreasingDenomAtoms,
        FiniteAtomExample { m, .. } => AtomsDesc::FiniteList((*m..2 * *m).map(Rat::from).collect()),
        Scale(c, inner) => atoms(inner).scaled(c),
        Union(..) => union_atoms(m),
    }
}

/// `X ∪ Q≥r` with 0 a limit point of `X`: every element above `r` splits off
/// a small element, and below `r` the atoms are those of `X`. If all atoms of
/// `X` lie below `r`, the atoms are `A(X)`, plus `r` itself when `r ∉ X`.
fn union_atoms(m: &MonoidExpr) -> AtomsDesc {
    let (rest, tail) = m.split_tail();
    let Some(r) = tail else {
        return AtomsDesc::Unknown;
    };
    let x = MonoidExpr::union_all(rest.into_iter().cloned());
    if !meta(&x).zero_limit_point {
        return AtomsDesc::Unknown;
    }
    let ax = atoms(&x);
    let below = match ax.upper_bound() {
        Some((s, true)) => &s < r,
        Some((s, false)) => &s <= r,
        None => false,
    };
    if !below {
        return AtomsDesc::Unknown;
    }
    match (member_bounded(&x, r, DEFAULT_DEPTH), ax) {
        (Membership::Yes(_), ax) => ax,
        (Membership::No, AtomsDesc::FiniteList(mut v)) => {
            v.push(r.clone());
            AtomsDesc::FiniteList(v)
        }
        _ => AtomsDesc::Unknown,
    }
}

/// Whether `x` is an atom of `m`. Non-members are never atoms; otherwise the
/// atom description decides, with a bounded two-summand search as fallback.
pub fn is_atom(m: &MonoidExpr, x: &Rat, depth: u32) -> Tri {
    if x.is_zero() {
        return Tri::No;
    }
    let membership = member_bounded(m, x, depth);
    if membership == Membership::No {
        return Tri::No;
    }
    let verdict = atoms(m).contains(x);
    if verdict.is_known() {
        return verdict;
    }
    for g in crate::sample::generator_window(m, depth as usize) {
        if let Some(rest) = x.checked_sub(&g) {
            if !rest.is_zero() && member_bounded(m, &rest, depth).is_yes() {
                return Tri::No;
            }
        }
    }
    Tri::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn a(s: &str) -> AtomsDesc {
        atoms(&parse(s).unwrap())
    }

    #[test]
    fn atoms_examples() {
        assert_eq!(a("S(2/3)"), AtomsDesc::PowersOf(r("2/3")));
        assert_eq!(a("S(1/2)"), AtomsDesc::EmptySet);
        assert_eq!(
            a("T(1)"),
            AtomsDesc::IntervalRats {
                lo: r("1"),
                hi: r("2")
            }
        );
        assert_eq!(a("S(4)"), AtomsDesc::FiniteList(vec![r("1")]));
        assert_eq!(a("<2,4,5>"), AtomsDesc::FiniteList(vec![r("2"), r("5")]));
        assert_eq!(a("<3/2, 3>"), AtomsDesc::FiniteList(vec![r("3/2")]));
        assert_eq!(a("FA(2,3,5)"), AtomsDesc::FiniteList(vec![r("2"), r("3")]));
        assert_eq!(a("PR union T(1)"), AtomsDesc::ReciprocalPrimes);
        assert_eq!(
            a("S(2) union <3/2>"),
            AtomsDesc::FiniteList(vec![r("1"), r("3/2")])
        );
        assert_eq!(
            a("FA(2,3,5) union T(7/2)"),
            AtomsDesc::FiniteList(vec![r("2"), r("3"), r("7/2")])
        );
        assert_eq!(a("PR union PF"), AtomsDesc::Unknown);
    }

    #[test]
    fn scale_transport() {
        assert_eq!(
            a("2 * T(1)"),
            AtomsDesc::IntervalRats {
                lo: r("2"),
                hi: r("4")
            }
        );
        assert_eq!(
            a("3 * S(2/3)"),
            AtomsDesc::Scaled(r("3"), Box::new(AtomsDesc::PowersOf(r("2/3"))))
        );
        assert_eq!(a("3 * S(2/3)").first(3), vec![r("3"), r("2"), r("4/3")]);
        assert_eq!(a("1/2 * S(1/3)"), AtomsDesc::EmptySet);
    }

    #[test]
    fn is_atom_examples() {
        let t = parse("T(1)").unwrap();
        assert_eq!(is_atom(&t, &r("3/2"), 8), Tri::Yes);
        assert_eq!(is_atom(&t, &r("2"), 8), Tri::No);
        let fa = parse("FA(2,3,5)").unwrap();
        assert_eq!(is_atom(&fa, &r("5/27"), 8), Tri::No);
        assert_eq!(is_atom(&parse("PR").unwrap(), &r("1/7"), 8), Tri::Yes);
        assert_eq!(is_atom(&parse("PF").unwrap(), &r("6/7"), 8), Tri::Yes);
        assert_eq!(is_atom(&parse("ID").unwrap(), &r("10/3"), 8), Tri::Yes);
        assert_eq!(is_atom(&parse("ID").unwrap(), &r("6/5"), 8), Tri::Yes);
        assert_eq!(is_atom(&parse("ID").unwrap(), &r("26/5"), 8), Tri::No);
    }

    #[test]
    fn contains_and_bounds() {
        assert_eq!(AtomsDesc::PowersOf(r("2/3")).contains(&r("8/27")), Tri::Yes);
        assert_eq!(AtomsDesc::PowersOf(r("5/2")).contains(&r("5")), Tri::No);
        assert_eq!(AtomsDesc::PrimeFracs.contains(&r("4/5")), Tri::Yes);
        assert_eq!(AtomsDesc::PrimeFracs.contains(&r("3/5")), Tri::No);
        assert_eq!(
            AtomsDesc::IncreasingDenomAtoms.first(3),
            vec![r("10/3"), r("6/5"), r("50/7")]
        );
        assert_eq!(
            AtomsDesc::ReciprocalPrimes.upper_bound(),
            Some((r("1/2"), true))
        );
        assert_eq!(a("PF").count(), AtomCount::Infinite);
        assert_eq!(a("S(1/5)").is_nonempty(), Tri::No);
    }
}
