//! Small-prime utilities: sieving, a deterministic 64-bit primality test and
//! factorization of arbitrary-precision integers with 64-bit prime factors.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ExactError;

/// All primes `<= bound`, ascending.
pub fn primes_upto(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// The `n`-th prime, 1-based (`nth_prime(1) == 2`).
pub fn nth_prime(n: usize) -> u64 {
    assert!(n >= 1, "primes are indexed from 1");
    let mut bound = 16u64.max((n as f64 * ((n as f64).ln() + (n as f64).ln().ln()) * 1.2) as u64);
    loop {
        let ps = primes_upto(bound);
        if ps.len() >= n {
            return ps[n - 1];
        }
        bound *= 2;
    }
}

/// 1-based index of the prime `p` in the ascending enumeration of primes.
pub fn prime_index(p: u64) -> Option<usize> {
    if !is_prime(p) {
        return None;
    }
    Some(primes_upto(p).len())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of a `u64` as ascending `(prime, exponent)` pairs.
pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    let mut raw = Vec::new();
    factor_u64_into(n, &mut raw);
    raw.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in raw {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

const TRIAL_LIMIT: u64 = 1 << 16;

/// Prime factorization of an arbitrary-precision integer.
///
/// Small factors are removed by trial division; the cofactor must fit in a
/// `u64` once those are gone, otherwise [`ExactError::FactorizationLimit`].
pub fn factorize(n: &BigUint) -> Result<Vec<(u64, u32)>, ExactError> {
    if n.is_zero() {
        return Err(ExactError::FactorizationLimit(n.to_string()));
    }
    if let Some(small) = n.to_u64() {
        return Ok(factorize_u64(small));
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    for p in primes_upto(TRIAL_LIMIT) {
        let big_p = BigUint::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&big_p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        if let Some(small) = rest.to_u64() {
            let mut tail = factorize_u64(small);
            out.append(&mut tail);
            return Ok(out);
        }
    }
    if rest.is_one() {
        Ok(out)
    } else {
        Err(ExactError::FactorizationLimit(n.to_string()))
    }
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(n: &BigUint) -> Result<Vec<u64>, ExactError> {
    Ok(factorize(n)?.into_iter().map(|(p, _)| p).collect())
}

/// True iff no prime divides `n` twice.
pub fn is_squarefree(n: &BigUint) -> Result<bool, ExactError> {
    Ok(factorize(n)?.iter().all(|&(_, e)| e == 1))
}

/// Inverse of `a` modulo the prime `p` (`a` not divisible by `p`).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

/// `n mod m` for a big `n` and a word-sized modulus.
pub fn big_mod(n: &BigUint, m: u64) -> u64 {
    (n % BigUint::from(m))
        .to_u64()
        .expect("remainder below a u64 modulus")
}
