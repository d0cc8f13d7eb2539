//! Symbolic monoid descriptions.
//!
//! A [`MonoidExpr`] is one of a closed set of families, optionally rescaled or
//! joined. All constructors canonicalize, so structural equality of two
//! expressions built through them means they print identically.
//!
//! `Union(A, B)` denotes the monoid generated by `A ∪ B`, that is `A + B`.
//! When one side is a dense tail `{0} ∪ Q≥r` this coincides with the plain set
//! union.

mod parser;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{is_prime, Rat};
use crate::Tri;

pub use parser::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("invalid monoid at position {position}: {message}")]
    Validation { position: usize, message: String },
    #[error("negative generator {value} at position {position}")]
    NegativeGenerator { position: usize, value: String },
    #[error("values of mixed sign generate a group, not a Puiseux monoid")]
    MixedSignsGeneratesGroup,
    #[error("zero cannot orient a generating set")]
    ZeroValue,
}

impl ModelError {
    /// Position in the input text, for errors that carry one.
    pub fn position(&self) -> Option<usize> {
        match self {
            ModelError::Syntax { position, .. }
            | ModelError::Validation { position, .. }
            | ModelError::NegativeGenerator { position, .. } => Some(*position),
            _ => None,
        }
    }

    fn invalid(message: impl Into<String>) -> ModelError {
        ModelError::Validation {
            position: 0,
            message: message.into(),
        }
    }

    pub(crate) fn at(self, position: usize) -> ModelError {
        match self {
            ModelError::Validation { message, .. } => ModelError::Validation { position, message },
            other => other,
        }
    }
}

/// Largest `m` accepted for `FA(m, p, q)`; the generators carry `p^m`.
pub const MAX_FA_M: u64 = 10_000;

/// A Puiseux monoid drawn from a closed family set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonoidExpr {
    /// `<g1, ..., gk>`; generators distinct and ascending.
    FiniteGen(Vec<Rat>),
    /// `S_r = <r^n | n >= 0>`.
    CyclicSemiring(Rat),
    /// `<1/p | p prime>`.
    PrimeReciprocal,
    /// `{0} ∪ Q≥r`.
    DenseTail(Rat),
    /// `<(p-1)/p | p prime>`.
    PrimeFracIncreasing,
    /// `<(p_{2n}^2+1)/p_{2n}, (p_{2n+1}+1)/p_{2n+1} | n >= 1>` with `p_n` the
    /// n-th prime.
    IncreasingDenom,
    /// `<[m, 2m-1] ∪ {q p^(-m-i) | i >= 1}>`.
    FiniteAtomExample {
        m: u64,
        p: u64,
        q: u64,
    },
    /// `c · M`; never nested, never `c = 1`, never around a finite or tail family.
    Scale(Rat, Box<MonoidExpr>),
    Union(Box<MonoidExpr>, Box<MonoidExpr>),
}

fn positive(value: &Rat, what: &str) -> Result<(), ModelError> {
    if value.is_zero() {
        Err(ModelError::invalid(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

impl MonoidExpr {
    /// `N0 = <1>`.
    pub fn naturals() -> MonoidExpr {
        MonoidExpr::FiniteGen(vec![Rat::one()])
    }

    pub fn finite_gen(mut gens: Vec<Rat>) -> Result<MonoidExpr, ModelError> {
        if gens.is_empty() {
            return Err(ModelError::invalid(
                "a finitely generated monoid needs a generator",
            ));
        }
        for g in &gens {
            positive(g, "generators")?;
        }
        gens.sort();
        gens.dedup();
        Ok(MonoidExpr::FiniteGen(gens))
    }

    pub fn cyclic_semiring(r: Rat) -> Result<MonoidExpr, ModelError> {
        positive(&r, "the base of S(r)")?;
        Ok(MonoidExpr::CyclicSemiring(r))
    }

    pub fn dense_tail(r: Rat) -> Result<MonoidExpr, ModelError> {
        positive(&r, "the threshold of T(r)")?;
        Ok(MonoidExpr::DenseTail(r))
    }

    pub fn finite_atom_example(m: u64, p: u64, q: u64) -> Result<MonoidExpr, ModelError> {
        if m == 0 || m > MAX_FA_M {
            return Err(ModelError::invalid(format!(
                "FA needs 1 <= m <= {MAX_FA_M}"
            )));
        }
        if !is_prime(p) || !is_prime(q) {
            return Err(ModelError::invalid("FA needs p and q prime"));
        }
        if p == q {
            return Err(ModelError::invalid("FA needs p != q"));
        }
        if q <= m {
            return Err(ModelError::invalid(format!(
                "FA needs q > m (got q = {q}, m = {m})"
            )));
        }
        Ok(MonoidExpr::FiniteAtomExample { m, p, q })
    }

    /// `c · inner`, folded into finite and tail families and flattened.
    pub fn scale(c: Rat, inner: MonoidExpr) -> Result<MonoidExpr, ModelError> {
        positive(&c, "scale factors")?;
        Ok(Self::scale_unchecked(c, inner))
    }

    fn scale_unchecked(c: Rat, inner: MonoidExpr) -> MonoidExpr {
        if c == Rat::one() {
            return inner;
        }
        match inner {
            MonoidExpr::FiniteGen(gens) => {
                MonoidExpr::FiniteGen(gens.iter().map(|g| g * &c).collect())
            }
            MonoidExpr::DenseTail(r) => MonoidExpr::DenseTail(r * c),
            MonoidExpr::Scale(d, x) => Self::scale_unchecked(c * d, *x),
            other => MonoidExpr::Scale(c, Box::new(other)),
        }
    }

    /// The monoid generated by both operands, in canonical union form.
    pub fn union(a: MonoidExpr, b: MonoidExpr) -> MonoidExpr {
        Self::union_all([a, b])
    }

    /// Canonical union: nested unions flattened, finite generators merged,
    /// tails merged to the smallest threshold, duplicates dropped, remaining
    /// parts sorted and right-associated, and the tail (if any) outermost.
    pub fn union_all(parts: impl IntoIterator<Item = MonoidExpr>) -> MonoidExpr {
        let mut flat = Vec::new();
        for p in parts {
            p.flatten_union_into(&mut flat);
        }
        let mut gens: Vec<Rat> = Vec::new();
        let mut tail: Option<Rat> = None;
        let mut others = Vec::new();
        for p in flat {
            match p {
                MonoidExpr::FiniteGen(g) => gens.extend(g),
                MonoidExpr::DenseTail(r) => {
                    tail = Some(match tail {
                        Some(t) => t.min(r),
                        None => r,
                    })
                }
                other => others.push(other),
            }
        }
        if !gens.is_empty() {
            gens.sort();
            gens.dedup();
            others.push(MonoidExpr::FiniteGen(gens));
        }
        others.sort();
        others.dedup();
        let body = others
            .into_iter()
            .rev()
            .reduce(|acc, p| MonoidExpr::Union(Box::new(p), Box::new(acc)));
        match (body, tail) {
            (Some(b), Some(r)) => {
                MonoidExpr::Union(Box::new(b), Box::new(MonoidExpr::DenseTail(r)))
            }
            (Some(b), None) => b,
            (None, Some(r)) => MonoidExpr::DenseTail(r),
            (None, None) => unreachable!("a union has at least one part"),
        }
    }

    fn flatten_union_into(self, out: &mut Vec<MonoidExpr>) {
        match self {
            MonoidExpr::Union(a, b) => {
                a.flatten_union_into(out);
                b.flatten_union_into(out);
            }
            other => out.push(other),
        }
    }

    /// The operands of a union, left to right; a single-element slice otherwise.
    pub fn union_parts(&self) -> Vec<&MonoidExpr> {
        match self {
            MonoidExpr::Union(a, b) => {
                let mut v = a.union_parts();
                v.extend(b.union_parts());
                v
            }
            other => vec![other],
        }
    }

    /// Splits `X ∪ Q≥r` into the non-tail parts and the threshold `r`.
    pub fn split_tail(&self) -> (Vec<&MonoidExpr>, Option<&Rat>) {
        let mut rest = Vec::new();
        let mut tail = None;
        for p in self.union_parts() {
            match p {
                MonoidExpr::DenseTail(r) => tail = Some(r),
                other => rest.push(other),
            }
        }
        (rest, tail)
    }

    /// Strips an outer scale: `(c, M)` with `self = c · M`.
    pub fn unscaled(&self) -> (Rat, &MonoidExpr) {
        match self {
            MonoidExpr::Scale(c, inner) => (c.clone(), inner),
            other => (Rat::one(), other),
        }
    }

    /// A finite generating set, when the monoid is finitely generated.
    ///
    /// Exact: the only finitely generated families are `<...>` and `S(n)`
    /// with `n` a natural number (`S(n) = N0`), closed under scaling and union.
    pub fn finite_generators(&self) -> Option<Vec<Rat>> {
        match self {
            MonoidExpr::FiniteGen(g) => Some(g.clone()),
            MonoidExpr::CyclicSemiring(r) if r.is_integer() => Some(vec![Rat::one()]),
            MonoidExpr::Scale(c, x) => x
                .finite_generators()
                .map(|g| g.iter().map(|v| v * c).collect()),
            MonoidExpr::Union(a, b) => {
                let mut g = a.finite_generators()?;
                g.extend(b.finite_generators()?);
                Some(g)
            }
            _ => None,
        }
    }

    /// Canonical text form; `parse(&m.print()) == Ok(m)`.
    pub fn print(&self) -> String {
        self.to_string()
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidExpr::Union(..) => write!(f, "({self})"),
            other => write!(f, "{other}"),
        }
    }
}

impl fmt::Display for MonoidExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidExpr::FiniteGen(gens) => {
                f.write_str("<")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(">")
            }
            MonoidExpr::CyclicSemiring(r) => write!(f, "S({r})"),
            MonoidExpr::PrimeReciprocal => f.write_str("PR"),
            MonoidExpr::DenseTail(r) => write!(f, "T({r})"),
            MonoidExpr::PrimeFracIncreasing => f.write_str("PF"),
            MonoidExpr::IncreasingDenom => f.write_str("ID"),
            MonoidExpr::FiniteAtomExample { m, p, q } => write!(f, "FA({m}, {p}, {q})"),
            MonoidExpr::Scale(c, inner) => {
                write!(f, "{c} * ")?;
                inner.fmt_atom(f)
            }
            MonoidExpr::Union(..) => {
                for (i, part) in self.union_parts().into_iter().enumerate() {
                    if i > 0 {
                        f.write_str(" union ")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for MonoidExpr {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<MonoidExpr, ModelError> {
        parse(s)
    }
}

/// Sign shared by a generating set of a non-group submonoid of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

/// Brings a generating set of a submonoid of `(Q, +)` into `Q≥0`.
///
/// If all values share a sign the monoid (or its negative) is a Puiseux
/// monoid with the absolute values as generators. Mixed signs generate a
/// group and are rejected.
pub fn orient(values: &[BigRational]) -> Result<(Orientation, Vec<Rat>), ModelError> {
    if values.iter().any(|v| v.is_zero()) {
        return Err(ModelError::ZeroValue);
    }
    let negative = values.iter().filter(|v| v.is_negative()).count();
    let orientation = if negative == 0 {
        Orientation::Positive
    } else if negative == values.len() {
        Orientation::Negative
    } else {
        return Err(ModelError::MixedSignsGeneratesGroup);
    };
    let gens = values
        .iter()
        .map(|v| {
            let a = v.abs();
            Rat::new(a.numer().clone(), a.denom().clone()).expect("absolute value is nonnegative")
        })
        .collect();
    Ok((orientation, gens))
}

/// Convenience for building signed rationals in callers of [`orient`].
pub fn signed(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Per-family structural facts used by the classifier.
///
/// The boolean fields mean "known to hold"; for unions of unrelated families
/// they are set to `false` when the answer is not settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonoidMeta {
    pub zero_limit_point: bool,
    pub increasing: bool,
    pub strongly_increasing: bool,
    pub finitely_generated: bool,
    pub nonempty_conductor: Tri,
}

/// Per-family fact table.
pub fn meta(m: &MonoidExpr) -> MonoidMeta {
    use MonoidExpr::*;
    match m {
        FiniteGen(_) => MonoidMeta {
            zero_limit_point: false,
            increasing: true,
            strongly_increasing: true,
            finitely_generated: true,
            nonempty_conductor: Tri::Yes,
        },
        CyclicSemiring(r) => {
            let at_least_one = *r >= Rat::one();
            let integral = r.is_integer();
            let unit_fraction = r.numer() == &num_bigint::BigUint::from(1u32);
            MonoidMeta {
                zero_limit_point: !at_least_one,
                // r >= 1: generated by the increasing, unbounded sequence r^n.
                increasing: at_least_one,
                strongly_increasing: at_least_one,
                finitely_generated: integral,
                nonempty_conductor: if integral || unit_fraction {
                    // root-closed: the conductor is the monoid itself
                    Tri::Yes
                } else if at_least_one {
                    Tri::No
                } else {
                    Tri::Unknown
                },
            }
        }
        PrimeReciprocal | FiniteAtomExample { .. } => MonoidMeta {
            zero_limit_point: true,
            increasing: false,
            strongly_increasing: false,
            finitely_generated: false,
            nonempty_conductor: Tri::Unknown,
        },
        DenseTail(_) => MonoidMeta {
            zero_limit_point: false,
            increasing: false,
            strongly_increasing: false,
            finitely_generated: false,
            nonempty_conductor: Tri::Yes,
        },
        PrimeFracIncreasing => MonoidMeta {
            zero_limit_point: false,
            increasing: true,
            strongly_increasing: false,
            finitely_generated: false,
            nonempty_conductor: Tri::Unknown,
        },
        IncreasingDenom => MonoidMeta {
            zero_limit_point: false,
            increasing: false,
            strongly_increasing: false,
            finitely_generated: false,
            nonempty_conductor: Tri::Unknown,
        },
        Scale(_, inner) => meta(inner),
        Union(..) => {
            let parts: Vec<MonoidMeta> = m.union_parts().into_iter().map(meta).collect();
            let fg = parts.iter().all(|p| p.finitely_generated);
            let has_tail = m.split_tail().1.is_some();
            MonoidMeta {
                zero_limit_point: parts.iter().any(|p| p.zero_limit_point),
                increasing: fg,
                strongly_increasing: fg,
                finitely_generated: fg,
                nonempty_conductor: if has_tail || fg {
                    Tri::Yes
                } else {
                    Tri::Unknown
                },
            }
        }
    }
}

/// Sign of a signed rational, for tests and callers of [`orient`].
pub fn sign_of(v: &BigRational) -> Sign {
    v.numer().sign()
}
