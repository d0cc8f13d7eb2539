use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::primes::{factorize, is_prime, is_squarefree};
use super::ExactError;

/// Exponent of a prime in a supernatural number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    fn add(self, k: u32) -> Exponent {
        match self {
            Exponent::Finite(e) => Exponent::Finite(e + k),
            Exponent::Infinite => Exponent::Infinite,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

/// Exponent shared by every prime not listed explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rest {
    Zero,
    One,
    Infinite,
}

impl Rest {
    pub fn exponent(self) -> Exponent {
        match self {
            Rest::Zero => Exponent::Finite(0),
            Rest::One => Exponent::Finite(1),
            Rest::Infinite => Exponent::Infinite,
        }
    }
}

/// A formal product `prod p^e_p` with `e_p` in `N0 ∪ {inf}`.
///
/// Its divisors are exactly the divisor- and lcm-closed sets of positive
/// integers, which is how denominator sets of monoids are stored. Explicit
/// entries never repeat the `rest` exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Supernatural {
    explicit: BTreeMap<u64, Exponent>,
    rest: Rest,
}

impl Supernatural {
    /// Canonicalizing constructor. Callers are trusted to pass primes.
    pub fn new(explicit: impl IntoIterator<Item = (u64, Exponent)>, rest: Rest) -> Supernatural {
        let default = rest.exponent();
        let explicit = explicit
            .into_iter()
            .filter(|&(_, e)| e != default)
            .collect();
        Supernatural { explicit, rest }
    }

    pub fn one() -> Supernatural {
        Supernatural::new([], Rest::Zero)
    }

    /// Every prime to the same exponent.
    pub fn all_primes(rest: Rest) -> Supernatural {
        Supernatural::new([], rest)
    }

    pub fn prime_power(p: u64, e: Exponent) -> Supernatural {
        Supernatural::new([(p, e)], Rest::Zero)
    }

    pub fn from_integer(n: &BigUint) -> Result<Supernatural, ExactError> {
        let f = factorize(n)?;
        Ok(Supernatural::new(
            f.into_iter().map(|(p, e)| (p, Exponent::Finite(e))),
            Rest::Zero,
        ))
    }

    pub fn rest(&self) -> Rest {
        self.rest
    }

    pub fn explicit(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.explicit.iter().map(|(&p, &e)| (p, e))
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        self.explicit
            .get(&p)
            .copied()
            .unwrap_or(self.rest.exponent())
    }

    pub fn with_exponent(&self, p: u64, e: Exponent) -> Supernatural {
        let mut explicit = self.explicit.clone();
        explicit.insert(p, e);
        Supernatural::new(explicit, self.rest)
    }

    /// The ordinary integer this represents, if it is one.
    pub fn to_integer(&self) -> Option<BigUint> {
        if self.rest != Rest::Zero {
            return None;
        }
        let mut acc = BigUint::one();
        for (&p, &e) in &self.explicit {
            match e {
                Exponent::Finite(k) => acc *= BigUint::from(p).pow(k),
                Exponent::Infinite => return None,
            }
        }
        Some(acc)
    }

    pub fn is_integer(&self) -> bool {
        self.to_integer().is_some()
    }

    /// Pointwise maximum of exponents.
    pub fn lcm(&self, other: &Supernatural) -> Supernatural {
        let rest = self.rest.max(other.rest);
        let keys = self.explicit.keys().chain(other.explicit.keys());
        let explicit: Vec<_> = keys
            .map(|&p| (p, self.exponent(p).max(other.exponent(p))))
            .collect();
        Supernatural::new(explicit, rest)
    }

    /// Product with an ordinary positive integer.
    pub fn mul_integer(&self, n: &BigUint) -> Result<Supernatural, ExactError> {
        let mut explicit = self.explicit.clone();
        for (p, k) in factorize(n)? {
            let e = self.exponent(p).add(k);
            explicit.insert(p, e);
        }
        Ok(Supernatural::new(explicit, self.rest))
    }

    /// Whether the positive integer `d` divides this supernatural number.
    ///
    /// Fails only when the `rest = 1` case needs a squarefree test on a
    /// cofactor that cannot be factored over 64-bit primes.
    pub fn divides(&self, d: &BigUint) -> Result<bool, ExactError> {
        if d.is_zero() {
            return Ok(false);
        }
        let mut cofactor = d.clone();
        for (&p, &e) in &self.explicit {
            let bp = BigUint::from(p);
            let mut v = 0u32;
            while cofactor.is_multiple_of(&bp) {
                cofactor /= &bp;
                v += 1;
            }
            if Exponent::Finite(v) > e {
                return Ok(false);
            }
        }
        match self.rest {
            Rest::Zero => Ok(cofactor.is_one()),
            Rest::Infinite => Ok(true),
            Rest::One => is_squarefree(&cofactor),
        }
    }
}

impl fmt::Display for Supernatural {
    /// `2^inf*3^2*5|rest=0`; the empty product prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.explicit.is_empty() {
            f.write_str("1")?;
        }
        for (i, (p, e)) in self.explicit.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match e {
                Exponent::Finite(1) => write!(f, "{p}")?,
                _ => write!(f, "{p}^{e}")?,
            }
        }
        let rest = match self.rest {
            Rest::Zero => "0",
            Rest::One => "1",
            Rest::Infinite => "inf",
        };
        write!(f, "|rest={rest}")
    }
}

fn syntax(position: usize, expected: &str) -> ExactError {
    ExactError::Syntax {
        position,
        expected: expected.to_string(),
    }
}

fn parse_exponent(s: &str, offset: usize) -> Result<Exponent, ExactError> {
    if s == "inf" {
        return Ok(Exponent::Infinite);
    }
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(offset, "exponent (digits or 'inf')"));
    }
    s.parse()
        .map(Exponent::Finite)
        .map_err(|_| syntax(offset, "exponent below 2^32"))
}

impl FromStr for Supernatural {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Supernatural, ExactError> {
        let (body, rest) = match s.find('|') {
            Some(i) => {
                let suffix = &s[i + 1..];
                let rest = match suffix {
                    "rest=0" => Rest::Zero,
                    "rest=1" => Rest::One,
                    "rest=inf" => Rest::Infinite,
                    _ => return Err(syntax(i + 1, "rest=0, rest=1 or rest=inf")),
                };
                (&s[..i], rest)
            }
            None => (s, Rest::Zero),
        };
        let mut explicit = BTreeMap::new();
        if body != "1" {
            let mut offset = 0;
            for factor in body.split('*') {
                let (base, exp) = match factor.find('^') {
                    Some(j) => (
                        &factor[..j],
                        parse_exponent(&factor[j + 1..], offset + j + 1)?,
                    ),
                    None => (factor, Exponent::Finite(1)),
                };
                if base.is_empty() || !base.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(syntax(offset, "prime"));
                }
                let p: u64 = base
                    .parse()
                    .map_err(|_| syntax(offset, "prime below 2^64"))?;
                if !is_prime(p) {
                    return Err(ExactError::NotPrime(p.to_string()));
                }
                if explicit.insert(p, exp).is_some() {
                    return Err(syntax(offset, "each prime at most once"));
                }
                offset += factor.len() + 1;
            }
        }
        Ok(Supernatural::new(explicit, rest))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Exponent::{Finite, Infinite};

    fn sn(s: &str) -> Supernatural {
        s.parse().unwrap()
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(sn("2^3*3").lcm(&sn("2*5")), sn("2^3*3*5"));
        let all_one = Supernatural::all_primes(Rest::One);
        let two_inf = Supernatural::prime_power(2, Infinite);
        let got = all_one.lcm(&two_inf);
        assert_eq!(got.exponent(2), Infinite);
        assert_eq!(got.exponent(3), Finite(1));
        assert_eq!(got.rest(), Rest::One);
        let x = sn("2^inf*7^2|rest=1");
        assert_eq!(x.lcm(&x), x);
    }

    #[test]
    fn divides_examples() {
        let s = sn("2^inf*3");
        assert!(s.divides(&BigUint::from(12u32)).unwrap());
        assert!(!s.divides(&BigUint::from(9u32)).unwrap());
        assert!(s.divides(&BigUint::one()).unwrap());
        assert!(sn("1|rest=1").divides(&BigUint::from(30u32)).unwrap());
        assert!(!sn("1|rest=1").divides(&BigUint::from(18u32)).unwrap());
        assert!(sn("2^0|rest=1").divides(&BigUint::from(15u32)).unwrap());
        assert!(!sn("2^0|rest=1").divides(&BigUint::from(6u32)).unwrap());
        assert!(sn("3^1|rest=inf")
            .divides(&BigUint::from(2u32).pow(40))
            .unwrap());
        assert!(!sn("3^1|rest=inf").divides(&BigUint::from(9u32)).unwrap());
    }

    #[test]
    fn canonical_form_drops_default_exponents() {
        let s = Supernatural::new([(2, Finite(1)), (3, Infinite)], Rest::One);
        assert_eq!(s.to_string(), "3^inf|rest=1");
        assert_eq!(sn("2^0*3"), sn("3"));
    }

    #[test]
    fn text_round_trip() {
        for text in [
            "1|rest=0",
            "2^inf*3^2|rest=0",
            "2^0|rest=1",
            "1|rest=inf",
            "5|rest=inf",
        ] {
            assert_eq!(sn(text).to_string(), text);
        }
        assert_eq!(sn("3*2^2").to_string(), "2^2*3|rest=0");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "4".parse::<Supernatural>(),
            Err(ExactError::NotPrime(_))
        ));
        assert!(matches!(
            "2^x".parse::<Supernatural>(),
            Err(ExactError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            "2|rest=2".parse::<Supernatural>(),
            Err(ExactError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            "2*2".parse::<Supernatural>(),
            Err(ExactError::Syntax { .. })
        ));
    }

    #[test]
    fn integers_and_products() {
        let six = Supernatural::from_integer(&BigUint::from(6u32)).unwrap();
        assert_eq!(six.to_integer(), Some(BigUint::from(6u32)));
        assert_eq!(six.mul_integer(&BigUint::from(4u32)).unwrap(), sn("2^3*3"));
        assert_eq!(
            sn("2^inf").mul_integer(&BigUint::from(2u32)).unwrap(),
            sn("2^inf")
        );
        assert!(sn("2^inf").to_integer().is_none());
    }
}
