//! Exact arithmetic: reduced nonnegative rationals, p-adic valuations, prime
//! utilities and supernatural numbers.

mod primes;
mod rat;
mod supernatural;

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

pub use primes::{
    big_mod, factorize, factorize_u64, inv_mod, is_prime, is_squarefree, nth_prime, prime_divisors,
    prime_index, primes_upto,
};
pub use rat::Rat;
pub use supernatural::{Exponent, Rest, Supernatural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative value {0}: only nonnegative rationals are modelled")]
    NegativeValue(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("cannot factor {0} over 64-bit primes")]
    FactorizationLimit(String),
}

/// A p-adic valuation; `Infinity` only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Exponent of `p` in the natural number `n > 0`.
pub fn int_valuation(p: u64, n: &BigUint) -> u32 {
    let bp = BigUint::from(p);
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && (&m % &bp).is_zero() {
        m /= &bp;
        v += 1;
    }
    v
}

/// `v_p(q) = v_p(n(q)) - v_p(d(q))`, and `Infinity` at zero.
pub fn padic_val(p: u64, q: &Rat) -> Result<Valuation, ExactError> {
    if !is_prime(p) {
        return Err(ExactError::NotPrime(p.to_string()));
    }
    if q.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let up = int_valuation(p, q.numer()) as i64;
    let down = int_valuation(p, q.denom()) as i64;
    Ok(Valuation::Finite(up - down))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_val(2, &r("12")), Ok(Valuation::Finite(2)));
        assert_eq!(padic_val(3, &r("5/9")), Ok(Valuation::Finite(-2)));
        assert_eq!(padic_val(7, &r("0")), Ok(Valuation::Infinity));
        assert_eq!(padic_val(4, &r("8")), Err(ExactError::NotPrime("4".into())));
    }
}
