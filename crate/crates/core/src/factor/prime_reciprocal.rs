//! Canonical form in `<1/p | p prime>`.
//!
//! Every element has exactly one expression `x = n + Σ α_p / p` with `n ≥ 0`
//! an integer and `0 ≤ α_p ≤ p - 1`. The coefficients are forced by the
//! residue of `x` at each prime of its (squarefree) denominator.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::FactorError;
use crate::exact::{big_mod, factorize, inv_mod, Rat};

/// `x = integer_part + Σ coeffs[p] / p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrDecomp {
    pub integer_part: BigUint,
    pub coeffs: BTreeMap<u64, u64>,
}

impl PrDecomp {
    pub fn value(&self) -> Rat {
        let frac: Rat = self
            .coeffs
            .iter()
            .map(|(&p, &a)| &Rat::from(a) * &Rat::reciprocal_of(p))
            .sum();
        Rat::integer(self.integer_part.clone()) + frac
    }

    /// `s(x)`: the number of reciprocal-prime summands beyond the integer part.
    pub fn coefficient_sum(&self) -> u64 {
        self.coeffs.values().sum()
    }
}

/// The forced residues: for each prime `p | d(x)` the unique `α_p ∈ [1, p-1]`
/// with `α_p · (d/p) ≡ n(x) (mod p)`. Fails on a non-squarefree denominator.
pub(crate) fn residues(x: &Rat) -> Result<Vec<(u64, u64)>, FactorError> {
    let d = x.denom();
    let mut out = Vec::new();
    for (p, e) in factorize(d)? {
        if e > 1 {
            return Err(FactorError::NonSquarefreeDenominator(x.to_string()));
        }
        let cofactor = big_mod(&(d / BigUint::from(p)), p);
        let alpha =
            (big_mod(x.numer(), p) as u128 * inv_mod(cofactor, p) as u128 % p as u128) as u64;
        out.push((p, alpha));
    }
    Ok(out)
}

/// The canonical decomposition of `x` in `<1/p | p prime>`.
pub fn pr_decompose(x: &Rat) -> Result<PrDecomp, FactorError> {
    let coeffs: BTreeMap<u64, u64> = residues(x)?.into_iter().collect();
    let frac: Rat = coeffs
        .iter()
        .map(|(&p, &a)| &Rat::from(a) * &Rat::reciprocal_of(p))
        .sum();
    let rest = x
        .checked_sub(&frac)
        .ok_or_else(|| FactorError::NotAMember(x.to_string()))?;
    let integer_part = rest
        .to_integer()
        .expect("fractional parts cancel by construction");
    Ok(PrDecomp {
        integer_part,
        coeffs,
    })
}

/// `(n(x), s(x))`, the integer part and the coefficient sum.
pub fn pr_stats(x: &Rat) -> Result<(BigUint, u64), FactorError> {
    let d = pr_decompose(x)?;
    let s = d.coefficient_sum();
    Ok((d.integer_part, s))
}
