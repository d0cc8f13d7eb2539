//! Root closure, conductor and isomorphism by rational scaling.
//!
//! The root closure of a nontrivial Puiseux monoid `M` is
//! `n·<1/d | d divides s>`, where `n` is the gcd of the numerators of the
//! nonzero elements and `s` the supernatural number whose divisors are the
//! lcm-closure of their denominators. It coincides with the complete integral
//! closure and with `gp(M) ∩ Q≥0`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::classify::{Certificate, Property, PropertyVerdict, Rule};
use crate::exact::{factorize, prime_divisors, ExactError, Exponent, Rat, Rest, Supernatural};
use crate::factor::{atoms, member_bounded, Membership, DEFAULT_DEPTH};
use crate::model::MonoidExpr;
use crate::numsg::NumericalMonoid;
use crate::sample;
use crate::Tri;

/// `n·<1/d | d divides s>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosureDesc {
    pub n: BigUint,
    pub s: Supernatural,
}

impl ClosureDesc {
    pub fn new(n: BigUint, s: Supernatural) -> ClosureDesc {
        ClosureDesc { n, s }
    }

    /// `q ∈ M̃` iff `d(q/n)` divides `s`.
    pub fn contains(&self, q: &Rat) -> Result<bool, ExactError> {
        if q.is_zero() {
            return Ok(true);
        }
        let y = q / &Rat::integer(self.n.clone());
        self.s.divides(y.denom())
    }

    /// The root closure is finitely generated (then it is `n·(1/s)·N0`).
    pub fn is_finitely_generated(&self) -> bool {
        self.s.is_integer()
    }

    /// The description of `c·M̃`, with `c = a/b`.
    ///
    /// Elements become `a·n·k/(b·d)`. Prime by prime, a factor of `a·n` that
    /// meets the denominator exponent of `s·b` cancels against it; what is
    /// left over stays in the numerator gcd.
    pub fn scaled(&self, c: &Rat) -> Result<ClosureDesc, ExactError> {
        let mut t = c.numer() * &self.n;
        let mut s = self.s.mul_integer(c.denom())?;
        for (p, tau) in factorize(&t)? {
            let cancel = match s.exponent(p) {
                Exponent::Infinite => tau,
                Exponent::Finite(e) => {
                    let k = e.min(tau);
                    s = s.with_exponent(p, Exponent::Finite(e - k));
                    k
                }
            };
            t /= BigUint::from(p).pow(cancel);
        }
        Ok(ClosureDesc { n: t, s })
    }

    /// The closure of the monoid generated by both.
    pub fn join(&self, other: &ClosureDesc) -> ClosureDesc {
        ClosureDesc {
            n: self.n.gcd(&other.n),
            s: self.s.lcm(&other.s),
        }
    }
}

impl fmt::Display for ClosureDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * <1/d | d divides {}>", self.n, self.s)
    }
}

/// Root closure of a finitely generated monoid `<g1, ..., gk>`.
fn finite_closure(gens: &[Rat]) -> Result<ClosureDesc, ExactError> {
    let n = gens
        .iter()
        .fold(BigUint::zero(), |acc, g| acc.gcd(g.numer()));
    let l = gens
        .iter()
        .fold(BigUint::one(), |acc, g| acc.lcm(g.denom()));
    Ok(ClosureDesc {
        n,
        s: Supernatural::from_integer(&l)?,
    })
}

/// The root closure of `m`.
pub fn root_closure(m: &MonoidExpr) -> Result<ClosureDesc, ExactError> {
    use MonoidExpr::*;
    match m {
        FiniteGen(g) => finite_closure(g),
        CyclicSemiring(r) => {
            let primes = prime_divisors(r.denom())?;
            let s = Supernatural::new(
                primes.into_iter().map(|p| (p, Exponent::Infinite)),
                Rest::Zero,
            );
            Ok(ClosureDesc {
                n: BigUint::one(),
                s,
            })
        }
        PrimeReciprocal | PrimeFracIncreasing => Ok(ClosureDesc {
            n: BigUint::one(),
            s: Supernatural::all_primes(Rest::One),
        }),
        // generators (p^2+1)/p and (p+1)/p for odd p: even numerators
        IncreasingDenom => Ok(ClosureDesc {
            n: BigUint::from(2u32),
            s: Supernatural::new([(2, Exponent::Finite(0))], Rest::One),
        }),
        DenseTail(_) => Ok(ClosureDesc {
            n: BigUint::one(),
            s: Supernatural::all_primes(Rest::Infinite),
        }),
        FiniteAtomExample { p, .. } => Ok(ClosureDesc {
            n: BigUint::one(),
            s: Supernatural::prime_power(*p, Exponent::Infinite),
        }),
        Scale(c, inner) => root_closure(inner)?.scaled(c),
        Union(a, b) => Ok(root_closure(a)?.join(&root_closure(b)?)),
    }
}

/// `gcd(n(M•))`.
pub fn numerator_gcd(m: &MonoidExpr) -> Result<BigUint, ExactError> {
    Ok(root_closure(m)?.n)
}

/// The supernatural number whose divisors are the lcm-closure of `d(M•)`.
pub fn denominator_sn(m: &MonoidExpr) -> Result<Supernatural, ExactError> {
    Ok(root_closure(m)?.s)
}

/// Samples drawn from `M̃` when searching for an element missing from `M`.
const ROOT_CLOSED_SAMPLES: usize = 200;

fn verdict(property: Property, holds: Tri, rule: Rule, text: &str) -> PropertyVerdict {
    PropertyVerdict {
        property,
        holds,
        certificate: Some(Certificate::new(rule, text)),
    }
}

/// Whether `M = M̃` (equivalently, `M` is a Prüfer monoid).
pub fn is_root_closed(m: &MonoidExpr) -> PropertyVerdict {
    is_root_closed_seeded(m, 0)
}

/// [`is_root_closed`] with the sampling seed for the fallback search.
pub fn is_root_closed_seeded(m: &MonoidExpr, seed: u64) -> PropertyVerdict {
    let rc = |holds, text: &str| verdict(Property::RootClosed, holds, Rule::RootClosed, text);
    if let Some(g) = m.finite_generators() {
        return match NumericalMonoid::normalize(&g) {
            Ok(nm) if nm.gens() == [1] => {
                rc(Tri::Yes, "isomorphic to N0, which is its own root closure")
            }
            Ok(_) => rc(
                Tri::No,
                "a numerical monoid other than N0 misses part of its root closure N0",
            ),
            Err(_) => PropertyVerdict::unknown(Property::RootClosed),
        };
    }
    let (_, base) = m.unscaled();
    if let MonoidExpr::CyclicSemiring(r) = base {
        if r.numer().is_one() {
            return rc(
                Tri::Yes,
                "<1/b^n> contains every b-adic nonnegative rational",
            );
        }
    }
    if atoms(m).is_nonempty() == Tri::Yes {
        return rc(
            Tri::No,
            "not finitely generated, so the root closure is antimatter while M has atoms",
        );
    }
    let Ok(desc) = root_closure(m) else {
        return PropertyVerdict::unknown(Property::RootClosed);
    };
    let mut rng = sample::rng(seed);
    for y in sample::closure_elements(&desc, ROOT_CLOSED_SAMPLES, &mut rng) {
        if member_bounded(m, &y, DEFAULT_DEPTH) == Membership::No {
            return rc(
                Tri::No,
                &format!("{y} lies in the root closure but not in M"),
            );
        }
    }
    PropertyVerdict::unknown(Property::RootClosed)
}

/// Whether the root closure is antimatter: exactly when `M` is not
/// finitely generated.
pub fn is_antimatter_closure(m: &MonoidExpr) -> PropertyVerdict {
    let fg = m.finite_generators().is_some();
    let text = if fg {
        "finitely generated, so the root closure is a copy of N0 with atom 1"
    } else {
        "not finitely generated, so the root closure is antimatter"
    };
    verdict(
        Property::Antimatter,
        Tri::from_bool(!fg),
        Rule::FinitelyGenerated,
        text,
    )
}

/// `c(M) = {x ∈ gp(M) | x + M̂ ⊆ M}`, in one of its possible shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConductorDesc {
    /// `M` is root-closed and `c(M) = M`.
    EqualsMonoid,
    Empty,
    /// `c(M) = M≥σ`.
    Tail(Rat),
    Unknown,
}

impl ConductorDesc {
    pub fn kind(&self) -> &'static str {
        match self {
            ConductorDesc::EqualsMonoid => "equals_monoid",
            ConductorDesc::Empty => "empty",
            ConductorDesc::Tail(_) => "tail",
            ConductorDesc::Unknown => "unknown",
        }
    }

    pub fn is_nonempty(&self) -> Tri {
        match self {
            ConductorDesc::EqualsMonoid | ConductorDesc::Tail(_) => Tri::Yes,
            ConductorDesc::Empty => Tri::No,
            ConductorDesc::Unknown => Tri::Unknown,
        }
    }
}

impl fmt::Display for ConductorDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConductorDesc::EqualsMonoid => f.write_str("equals the monoid"),
            ConductorDesc::Empty => f.write_str("empty"),
            ConductorDesc::Tail(s) => write!(f, "M>={s}"),
            ConductorDesc::Unknown => f.write_str("unknown"),
        }
    }
}

/// The conductor of `m`.
pub fn conductor(m: &MonoidExpr) -> ConductorDesc {
    use MonoidExpr::*;
    if let Some(g) = m.finite_generators() {
        return match NumericalMonoid::normalize(&g) {
            Ok(nm) => match nm.frobenius() {
                None => ConductorDesc::EqualsMonoid,
                Some(f) => ConductorDesc::Tail(nm.to_original(f + 1)),
            },
            Err(_) => ConductorDesc::Unknown,
        };
    }
    match m {
        Scale(c, inner) => match conductor(inner) {
            ConductorDesc::Tail(s) => ConductorDesc::Tail(&s * c),
            other => other,
        },
        DenseTail(r) => ConductorDesc::Tail(r.clone()),
        Union(..) => {
            let (rest, tail) = m.split_tail();
            let Some(r) = tail else {
                return ConductorDesc::Unknown;
            };
            // Every x in (0, r) escapes the remaining parts once its
            // denominator exceeds a finite exponent of their closure, so
            // sup(M̃ \ M) = r, which lies in M.
            let x = MonoidExpr::union_all(rest.into_iter().cloned());
            match root_closure(&x) {
                Ok(d)
                    if d.s.rest() != Rest::Infinite
                        || d.s.explicit().any(|(_, e)| e != Exponent::Infinite) =>
                {
                    ConductorDesc::Tail(r.clone())
                }
                _ => ConductorDesc::Unknown,
            }
        }
        CyclicSemiring(r) if r.numer().is_one() => ConductorDesc::EqualsMonoid,
        // increasing generators: M ∩ [0, T] is finite while M̃ ∩ [0, T] is not
        CyclicSemiring(r) if r > &Rat::one() => ConductorDesc::Empty,
        _ => {
            if is_root_closed(m).holds == Tri::Yes {
                ConductorDesc::EqualsMonoid
            } else {
                ConductorDesc::Unknown
            }
        }
    }
}

/// Outcome of an isomorphism test; `Yes(q)` means `B = q·A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Iso {
    Yes(Rat),
    No,
    Unknown,
}

/// Pushes scale factors through unions, so that equal monoids built from the
/// same families compare equal.
fn distribute(m: &MonoidExpr) -> MonoidExpr {
    match m {
        MonoidExpr::Scale(c, inner) if matches!(**inner, MonoidExpr::Union(..)) => {
            MonoidExpr::union_all(inner.union_parts().into_iter().map(|p| {
                distribute(&MonoidExpr::scale(c.clone(), p.clone()).expect("positive scale"))
            }))
        }
        MonoidExpr::Union(..) => MonoidExpr::union_all(m.union_parts().into_iter().map(distribute)),
        other => other.clone(),
    }
}

/// Candidate multipliers `q` with `q·A` possibly equal to `B`; both inputs
/// already distributed.
fn candidate_scales(a: &MonoidExpr, b: &MonoidExpr) -> Vec<Rat> {
    let markers = |m: &MonoidExpr| -> Vec<Rat> {
        let mut v = Vec::new();
        for part in m.union_parts() {
            let (c, base) = part.unscaled();
            match base {
                MonoidExpr::DenseTail(r) => v.push(r.clone()),
                MonoidExpr::FiniteGen(g) => v.extend(g.iter().cloned()),
                _ => v.push(c),
            }
        }
        v
    };
    let (ma, mb) = (markers(a), markers(b));
    let mut out = Vec::new();
    for x in &ma {
        for y in &mb {
            if let Some(q) = y.checked_div(x) {
                if !q.is_zero() {
                    out.push(q);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Whether `A ≅ B`. Every isomorphism of Puiseux monoids is multiplication
/// by a positive rational, so this searches for such a multiplier.
pub fn iso_check(a: &MonoidExpr, b: &MonoidExpr) -> Iso {
    match (a.finite_generators(), b.finite_generators()) {
        (Some(ga), Some(gb)) => {
            return match (
                NumericalMonoid::normalize(&ga),
                NumericalMonoid::normalize(&gb),
            ) {
                (Ok(na), Ok(nb)) if na.gens() == nb.gens() => Iso::Yes(na.scale() / nb.scale()),
                (Ok(_), Ok(_)) => Iso::No,
                _ => Iso::Unknown,
            };
        }
        (Some(_), None) | (None, Some(_)) => return Iso::No,
        (None, None) => {}
    }
    let (da, db) = (distribute(a), distribute(b));
    for q in candidate_scales(&da, &db) {
        if let Ok(qa) = MonoidExpr::scale(q.clone(), da.clone()) {
            if distribute(&qa) == db {
                return Iso::Yes(q);
            }
        }
    }
    // invariants preserved by rational scaling
    if let (Ok(ca), Ok(cb)) = (root_closure(a), root_closure(b)) {
        // primes whose exponent is finite exactly when the default one is not
        let odd_primes = |s: &Supernatural| -> Vec<u64> {
            let rest_infinite = s.rest() == Rest::Infinite;
            s.explicit()
                .filter(|&(_, e)| (e == Exponent::Infinite) != rest_infinite)
                .map(|(p, _)| p)
                .collect()
        };
        if ca.s.rest() != cb.s.rest() || odd_primes(&ca.s) != odd_primes(&cb.s) {
            return Iso::No;
        }
    }
    if let (Ok(va), Ok(vb)) = (crate::classify::classify(a), crate::classify::classify(b)) {
        let disagree = va
            .iter()
            .zip(&vb)
            .any(|(x, y)| x.holds.is_known() && y.holds.is_known() && x.holds != y.holds);
        if disagree {
            return Iso::No;
        }
    }
    Iso::Unknown
}
