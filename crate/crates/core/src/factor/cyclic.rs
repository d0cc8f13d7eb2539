//! Combinations of the powers `r^0, ..., r^top` of a rational `r = a/b`.
//!
//! Scaling by `b^top` turns `Σ c_k r^k = x` into `Σ c_k a^k b^(top-k) = X`.
//! Working from the top power down, every lower term is divisible by a higher
//! power of `b`, so `c_k` is fixed modulo `b` by the running remainder: only
//! one residue class of counts is explored per level.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FactorError;
use crate::exact::Rat;

/// Default cap on search nodes for one query.
pub const SEARCH_BUDGET: u64 = 2_000_000;

/// `a^{-1} mod m` for coprime `a`, `m`; zero when `m = 1`.
pub(crate) fn inv_mod_big(a: &BigUint, m: &BigUint) -> BigUint {
    if m.is_one() {
        return BigUint::zero();
    }
    let (a, m) = (BigInt::from(a.clone()), BigInt::from(m.clone()));
    let e = a.extended_gcd(&m);
    debug_assert!(e.gcd.is_one());
    let inv = e.x.mod_floor(&m);
    debug_assert!(!inv.is_negative());
    inv.to_biguint().expect("nonnegative")
}

#[derive(Debug)]
pub(crate) struct BudgetExhausted;

pub(crate) struct PowerSearch {
    /// `w[k] = a^k b^(top-k)`.
    weights: Vec<BigUint>,
    b: BigUint,
    /// `a^{-k} mod b`.
    inverses: Vec<BigUint>,
    /// `b^(top-k)`.
    b_pows: Vec<BigUint>,
    budget: u64,
    limit: usize,
    found: Vec<Vec<BigUint>>,
}

impl PowerSearch {
    /// Solutions over the window `0..=top`, at most `limit` of them.
    pub(crate) fn run(
        r: &Rat,
        x: &Rat,
        top: u32,
        limit: usize,
        budget: u64,
    ) -> Result<Vec<Vec<BigUint>>, BudgetExhausted> {
        let (a, b) = (r.numer().clone(), r.denom().clone());
        let top_us = top as usize;
        let b_top = b.pow(top);
        let scaled = x * &Rat::integer(b_top.clone());
        let Some(target) = scaled.to_integer() else {
            return Ok(Vec::new());
        };
        let weights: Vec<BigUint> = (0..=top).map(|k| a.pow(k) * b.pow(top - k)).collect();
        let b_pows: Vec<BigUint> = (0..=top).map(|k| b.pow(top - k)).collect();
        let a_inv = inv_mod_big(&(&a % &b), &b);
        let inverses: Vec<BigUint> = (0..=top)
            .map(|k| a_inv.modpow(&BigUint::from(k), &b))
            .collect();
        let mut s = PowerSearch {
            weights,
            b,
            inverses,
            b_pows,
            budget,
            limit,
            found: Vec::new(),
        };
        let mut counts = vec![BigUint::zero(); top_us + 1];
        s.descend(top_us, target, &mut counts)?;
        Ok(s.found)
    }

    fn descend(
        &mut self,
        k: usize,
        rest: BigUint,
        counts: &mut Vec<BigUint>,
    ) -> Result<bool, BudgetExhausted> {
        if self.budget == 0 {
            return Err(BudgetExhausted);
        }
        self.budget -= 1;
        if k == 0 {
            let (q, rem) = rest.div_rem(&self.weights[0]);
            if rem.is_zero() {
                counts[0] = q;
                self.found.push(counts.clone());
                counts[0] = BigUint::zero();
                return Ok(self.found.len() >= self.limit);
            }
            return Ok(false);
        }
        // rest = b^(top-k) * rest'; need c ≡ rest' * a^{-k} (mod b)
        let reduced = &rest / &self.b_pows[k];
        let start = if self.b.is_one() {
            BigUint::zero()
        } else {
            (reduced * &self.inverses[k]) % &self.b
        };
        let step = if self.b.is_one() {
            BigUint::one()
        } else {
            self.b.clone()
        };
        let w = self.weights[k].clone();
        let mut c = start;
        while &c * &w <= rest {
            counts[k] = c.clone();
            if self.descend(k - 1, &rest - &c * &w, counts)? {
                counts[k] = BigUint::zero();
                return Ok(true);
            }
            c += &step;
        }
        counts[k] = BigUint::zero();
        Ok(false)
    }
}

/// Largest `k` with `r^k ≤ x`, for `r > 1` and `x ≥ 1`.
pub(crate) fn top_power_below(r: &Rat, x: &Rat) -> u32 {
    let mut k = 0;
    let mut p = r.clone();
    while &p <= x {
        k += 1;
        p = &p * r;
    }
    k
}

/// Smallest `j` with `d(x) | b^j`, if any.
pub(crate) fn denominator_depth(b: &BigUint, x: &Rat) -> Option<u32> {
    let mut d = x.denom().clone();
    loop {
        let g = d.gcd(b);
        if g.is_one() {
            break;
        }
        while d.is_multiple_of(&g) {
            d /= &g;
        }
    }
    if !d.is_one() {
        return None;
    }
    let mut need = 0u32;
    let mut probe = BigUint::one();
    while !(&probe % x.denom()).is_zero() {
        probe *= b;
        need += 1;
    }
    Some(need)
}

/// All combinations `(c_0, ..., c_depth)` with `Σ c_k r^k = x`, ascending
/// lexicographically. For `r < 1` this is a window on a possibly infinite set.
pub fn zs_bounded(r: &Rat, x: &Rat, depth: u32) -> Result<Vec<Vec<u64>>, FactorError> {
    if r.is_integer() {
        return Err(FactorError::Unsupported(
            "powers of an integer base are not the atoms of S(r)".into(),
        ));
    }
    let found = PowerSearch::run(r, x, depth, usize::MAX, SEARCH_BUDGET).map_err(|_| {
        FactorError::SearchLimit(format!("factorizations of {x} over r^0..r^{depth}"))
    })?;
    let mut out: Vec<Vec<u64>> = found
        .into_iter()
        .map(|v| v.iter().map(|c| c.to_u64()).collect::<Option<Vec<u64>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| FactorError::SearchLimit("multiplicity beyond 64 bits".into()))?;
    out.sort();
    Ok(out)
}
