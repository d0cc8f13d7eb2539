//! Factorizations over a finite window of atoms.
//!
//! Finitely generated monoids are handled exactly. For `S(r)` the window is
//! `r^0..r^depth`; for `<1/p>` it is the primes up to a bound, where every
//! factorization has counts `α_p + p·k_p` with `Σ k_p` equal to the integer
//! part of the canonical form.

use num_traits::{One, ToPrimitive};

use super::{member_bounded, pr_decompose, zs_bounded, FactorError, Membership};
use crate::exact::{primes_upto, Rat};
use crate::model::MonoidExpr;
use crate::numsg::NumericalMonoid;

/// Most factorizations reported for a single element.
pub const FACTORIZATION_CAP: usize = 100_000;

/// Count vectors over `atoms`, ascending lexicographically.
///
/// `complete` is true when no factorization can use an atom outside the
/// window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorList {
    pub atoms: Vec<Rat>,
    pub factorizations: Vec<Vec<u64>>,
    pub complete: bool,
}

impl FactorList {
    /// Distinct lengths, ascending.
    pub fn lengths(&self) -> Vec<u64> {
        let mut ls: Vec<u64> = self.factorizations.iter().map(|z| z.iter().sum()).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    fn scaled(mut self, c: &Rat) -> FactorList {
        self.atoms = self.atoms.iter().map(|a| a * c).collect();
        self
    }
}

/// Factorizations of `x` in `m` over a window of atoms.
///
/// `depth` bounds the powers used for `S(r)`; `max_prime` bounds the
/// reciprocal primes for `<1/p>`. Other families are unsupported.
pub fn factorizations_windowed(
    m: &MonoidExpr,
    x: &Rat,
    depth: u32,
    max_prime: u64,
) -> Result<FactorList, FactorError> {
    if let Some(gens) = m.finite_generators() {
        return finite(&gens, x);
    }
    match m {
        MonoidExpr::Scale(c, inner) => {
            let y = x.checked_div(c).expect("scale factors are positive");
            Ok(factorizations_windowed(inner, &y, depth, max_prime)?.scaled(c))
        }
        MonoidExpr::CyclicSemiring(r) => cyclic(m, r, x, depth),
        MonoidExpr::PrimeReciprocal => prime_reciprocal(x, max_prime),
        other => Err(FactorError::Unsupported(format!(
            "factorizations in {other}"
        ))),
    }
}

fn not_member(x: &Rat) -> FactorError {
    FactorError::NotAMember(x.to_string())
}

fn finite(gens: &[Rat], x: &Rat) -> Result<FactorList, FactorError> {
    let nm = NumericalMonoid::normalize(gens)?;
    let n = nm.to_internal(x).ok_or_else(|| not_member(x))?;
    if !nm.member_big(&n) {
        return Err(not_member(x));
    }
    let n = n
        .to_u64()
        .ok_or_else(|| FactorError::SearchLimit(format!("{x} is too large to factor")))?;
    let zs = nm
        .factorizations_capped(n, FACTORIZATION_CAP)
        .map_err(|_| {
            FactorError::SearchLimit(format!(
                "more than {FACTORIZATION_CAP} factorizations of {x}"
            ))
        })?;
    let atoms = nm.gens().iter().map(|&g| nm.to_original(g)).collect();
    let mut factorizations: Vec<Vec<u64>> = zs.into_iter().map(|z| z.0).collect();
    factorizations.sort();
    Ok(FactorList {
        atoms,
        factorizations,
        complete: true,
    })
}

fn cyclic(m: &MonoidExpr, r: &Rat, x: &Rat, depth: u32) -> Result<FactorList, FactorError> {
    if r.is_integer() {
        let n = x.to_integer().ok_or_else(|| not_member(x))?;
        let n = n
            .to_u64()
            .ok_or_else(|| FactorError::SearchLimit(format!("{x} is too large to factor")))?;
        return Ok(FactorList {
            atoms: vec![Rat::one()],
            factorizations: vec![vec![n]],
            complete: true,
        });
    }
    if r.numer().is_one() {
        // antimatter: only zero has a factorization, the empty one
        return match member_bounded(m, x, depth) {
            Membership::No => Err(not_member(x)),
            _ if x.is_zero() => Ok(FactorList {
                atoms: Vec::new(),
                factorizations: vec![Vec::new()],
                complete: true,
            }),
            _ => Ok(FactorList {
                atoms: Vec::new(),
                factorizations: Vec::new(),
                complete: true,
            }),
        };
    }
    let factorizations = zs_bounded(r, x, depth)?;
    if factorizations.is_empty() && member_bounded(m, x, depth) == Membership::No {
        return Err(not_member(x));
    }
    let atoms: Vec<Rat> = (0..=depth).map(|k| r.pow(k)).collect();
    // increasing atoms: the window is exhaustive once its next power exceeds x
    let complete = r > &Rat::one() && &r.pow(depth + 1) > x;
    Ok(FactorList {
        atoms,
        factorizations,
        complete,
    })
}

fn prime_reciprocal(x: &Rat, max_prime: u64) -> Result<FactorList, FactorError> {
    let d = pr_decompose(x).map_err(|e| match e {
        FactorError::NonSquarefreeDenominator(_) => not_member(x),
        other => other,
    })?;
    if let Some((&p, _)) = d.coeffs.iter().find(|(&p, _)| p > max_prime) {
        return Err(FactorError::SearchLimit(format!(
            "{x} needs the prime {p}, above the window bound {max_prime}"
        )));
    }
    let primes = primes_upto(max_prime);
    let n = d
        .integer_part
        .to_u64()
        .filter(|&n| n <= 1_000)
        .ok_or_else(|| {
            FactorError::SearchLimit(format!(
                "integer part {} is too large to spread over the window",
                d.integer_part
            ))
        })?;
    let base: Vec<u64> = primes
        .iter()
        .map(|p| d.coeffs.get(p).copied().unwrap_or(0))
        .collect();
    let mut factorizations = Vec::new();
    let mut extra = vec![0u64; primes.len()];
    spread(n, 0, &mut extra, &mut |extra| {
        if factorizations.len() >= FACTORIZATION_CAP {
            return false;
        }
        factorizations.push(
            base.iter()
                .zip(extra)
                .zip(&primes)
                .map(|((a, k), p)| a + k * p)
                .collect(),
        );
        true
    });
    if factorizations.len() >= FACTORIZATION_CAP && n > 0 {
        return Err(FactorError::SearchLimit(format!(
            "more than {FACTORIZATION_CAP} factorizations of {x}"
        )));
    }
    factorizations.sort();
    let atoms = primes.iter().map(|&p| Rat::reciprocal_of(p)).collect();
    Ok(FactorList {
        atoms,
        factorizations,
        complete: n == 0,
    })
}

/// Calls `emit` on every way of writing `n` as an ordered sum over the slots
/// `i..`; stops early once `emit` returns false.
fn spread(n: u64, i: usize, slots: &mut Vec<u64>, emit: &mut impl FnMut(&[u64]) -> bool) -> bool {
    if i + 1 >= slots.len() {
        if let Some(last) = slots.last_mut() {
            *last = n;
        } else if n > 0 {
            return true;
        }
        let keep = emit(slots);
        if let Some(last) = slots.last_mut() {
            *last = 0;
        }
        return keep;
    }
    for k in 0..=n {
        slots[i] = k;
        if !spread(n - k, i + 1, slots, emit) {
            slots[i] = 0;
            return false;
        }
    }
    slots[i] = 0;
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn z(m: &str, x: &str) -> Result<FactorList, FactorError> {
        factorizations_windowed(&parse(m).unwrap(), &r(x), 3, 7)
    }

    #[test]
    fn numerical_monoid_factorizations() {
        let f = z("<3,5>", "15").unwrap();
        assert_eq!(f.atoms, [r("3"), r("5")]);
        assert_eq!(f.factorizations, [vec![0, 3], vec![5, 0]]);
        assert_eq!(f.lengths(), [3, 5]);
        assert!(matches!(z("<3,5>", "7"), Err(FactorError::NotAMember(_))));
        let half = z("<3/2, 5/2>", "15/2").unwrap();
        assert_eq!(half.factorizations, f.factorizations);
    }

    #[test]
    fn cyclic_windows() {
        let f = z("S(2/3)", "2").unwrap();
        assert_eq!(
            f.factorizations,
            [
                vec![0, 1, 1, 3],
                vec![0, 1, 3, 0],
                vec![0, 3, 0, 0],
                vec![2, 0, 0, 0]
            ]
        );
        assert!(!f.complete);
        assert!(z("S(3/2)", "3/2").unwrap().complete);
        assert!(matches!(
            z("S(2/3)", "1/5"),
            Err(FactorError::NotAMember(_))
        ));
        assert_eq!(
            z("S(1/2)", "0").unwrap().factorizations,
            [Vec::<u64>::new()]
        );
    }

    #[test]
    fn prime_reciprocal_windows() {
        let f = z("PR", "7/6").unwrap();
        assert_eq!(f.factorizations, [vec![1, 2, 0, 0]]);
        assert!(f.complete);
        // 1 = 2·(1/2) = 3·(1/3) = 5·(1/5) = 7·(1/7)
        assert_eq!(z("PR", "1").unwrap().lengths(), [2, 3, 5, 7]);
        assert!(matches!(z("PR", "1/6"), Err(FactorError::NotAMember(_))));
        assert!(matches!(z("PR", "1/11"), Err(FactorError::SearchLimit(_))));
        for zs in z("PR", "3/2").unwrap().factorizations {
            let total: Rat = zs
                .iter()
                .zip([2u64, 3, 5, 7])
                .map(|(&c, p)| &Rat::from(c) * &Rat::reciprocal_of(p))
                .sum();
            assert_eq!(total, r("3/2"));
        }
    }

    #[test]
    fn scaling_moves_the_atoms() {
        let f = z("2 * PR", "7/3").unwrap();
        assert_eq!(f.atoms[0], r("1"));
        assert_eq!(f.factorizations, [vec![1, 2, 0, 0]]);
        assert!(matches!(z("T(1)", "3"), Err(FactorError::Unsupported(_))));
    }
}
