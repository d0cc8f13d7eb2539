use std::fmt;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::Ratio;
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::ExactError;

/// A nonnegative rational number, always stored in lowest terms.
///
/// `numer()` and `denom()` are the reduced numerator and denominator; zero is
/// stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(Ratio<BigUint>);

impl Rat {
    /// Builds `num/den` in canonical form. Negative values are rejected rather
    /// than silently negated.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rat, ExactError> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if !num.is_zero() && num.sign() != den.sign() {
            return Err(ExactError::NegativeValue(format!("{num}/{den}")));
        }
        Ok(Rat(Ratio::new(num.into_parts().1, den.into_parts().1)))
    }

    pub fn from_parts(num: BigUint, den: BigUint) -> Result<Rat, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rat(Ratio::new(num, den)))
    }

    pub fn integer(n: impl Into<BigUint>) -> Rat {
        Rat(Ratio::from_integer(n.into()))
    }

    /// `1/d`.
    pub fn reciprocal_of(d: impl Into<BigUint>) -> Rat {
        Rat(Ratio::new(BigUint::one(), d.into()))
    }

    pub fn zero() -> Rat {
        Rat(Ratio::zero())
    }

    pub fn one() -> Rat {
        Rat(Ratio::one())
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigUint> {
        self.is_integer().then(|| self.numer().clone())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_integer()?.to_u64()
    }

    pub fn floor(&self) -> BigUint {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigUint {
        self.0.ceil().to_integer()
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Rat) -> Option<Rat> {
        (self >= other).then(|| Rat(&self.0 - &other.0))
    }

    pub fn checked_div(&self, other: &Rat) -> Option<Rat> {
        (!other.is_zero()).then(|| Rat(&self.0 / &other.0))
    }

    pub fn recip(&self) -> Option<Rat> {
        (!self.is_zero()).then(|| Rat(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Rat {
        Rat(Pow::pow(&self.0, exp))
    }

    /// Multiply by a natural number.
    pub fn scale_int(&self, k: impl Into<BigUint>) -> Rat {
        Rat(&self.0 * Ratio::from_integer(k.into()))
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Rat {
        Rat::integer(n)
    }
}

impl From<Ratio<BigUint>> for Rat {
    fn from(r: Ratio<BigUint>) -> Rat {
        Rat(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Mul, mul);

impl Div<&Rat> for &Rat {
    type Output = Rat;
    /// Panics on division by zero; use [`Rat::checked_div`] when that can happen.
    fn div(self, rhs: &Rat) -> Rat {
        self.checked_div(rhs).expect("division by zero rational")
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reads a run of ASCII digits starting at byte `start`; returns the value and
/// the end offset.
fn digits_at(s: &str, start: usize) -> Result<(BigUint, usize), ExactError> {
    let end = s[start..]
        .find(|c: char| !c.is_ascii_digit())
        .map_or(s.len(), |i| start + i);
    if end == start {
        return Err(ExactError::Syntax {
            position: start,
            expected: "digit".into(),
        });
    }
    let v = BigUint::parse_bytes(&s.as_bytes()[start..end], 10).expect("digits only");
    Ok((v, end))
}

impl FromStr for Rat {
    type Err = ExactError;

    /// Accepts `n` or `n/d` with an optional leading `-` (which is then
    /// rejected as [`ExactError::NegativeValue`] unless the value is zero).
    fn from_str(s: &str) -> Result<Rat, ExactError> {
        let negative = s.starts_with('-');
        let start = usize::from(negative);
        let (num, mut pos) = digits_at(s, start)?;
        let mut den = BigUint::one();
        if s[pos..].starts_with('/') {
            let (d, end) = digits_at(s, pos + 1)?;
            den = d;
            pos = end;
        }
        if pos != s.len() {
            return Err(ExactError::Syntax {
                position: pos,
                expected: "end of rational".into(),
            });
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Rat::new(BigInt::from_biguint(sign, num), BigInt::from(den))
    }
}
