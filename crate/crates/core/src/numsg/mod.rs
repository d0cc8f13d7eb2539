//! Finitely generated Puiseux monoids, rescaled to numerical monoids.
//!
//! A finitely generated `M = <q1, ..., qk>` is isomorphic to a cofinite
//! submonoid of `N0` via `x ↦ (l/g)·x`, where `l` clears denominators and `g`
//! is the gcd of the resulting integers. All computations here happen in those
//! integer coordinates; [`NumericalMonoid::scale`] converts back.
//!
//! Membership uses the Apéry set with respect to the smallest generator:
//! `x ∈ N` iff `x ≥ Ap(x mod g1)`. It is computed once per monoid by a
//! shortest-path pass over residues.

pub mod oracle;

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::exact::Rat;

/// Largest accepted generator after normalization.
pub const MAX_GENERATOR: u64 = 1 << 32;
/// Largest modulus for residue tables (smallest generator, Apéry modulus).
pub const MAX_MODULUS: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumsgError {
    #[error("a numerical monoid needs at least one generator")]
    NoGenerators,
    #[error("generators must be positive")]
    NonPositive,
    #[error("{0} is too large for exact residue tables")]
    TooLarge(String),
    #[error("{0} is not an element of the monoid")]
    NotAMember(String),
    #[error("embedding dimension {got} is below the required {needed}")]
    EmbeddingDimension { needed: usize, got: usize },
    #[error("more than {0} factorizations")]
    TooManyFactorizations(usize),
}

/// Multiplicities of the minimal generators, in generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization(pub Vec<u64>);

impl Factorization {
    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The element this factorization multiplies out to.
    pub fn image(&self, gens: &[u64]) -> u64 {
        self.0.iter().zip(gens).map(|(c, g)| c * g).sum()
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }
}

/// A numerical monoid with minimal generators and the factor mapping the
/// original rational generators onto them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalMonoid {
    gens: Vec<u64>,
    scale: Rat,
    /// Apéry set with respect to `gens[0]`.
    apery_min: Vec<u64>,
    /// Index of the last generator on a shortest path to each Apéry element.
    apery_parent: Vec<u32>,
}

/// Least element of the monoid generated by `gens` in each residue class mod
/// `m`; `u64::MAX` marks unreachable classes. Also returns, per class, the
/// index of the generator last added on the way there.
fn residue_minima(gens: &[u64], m: u64) -> (Vec<u64>, Vec<u32>) {
    let m_us = m as usize;
    let mut dist = vec![u64::MAX; m_us];
    let mut parent = vec![u32::MAX; m_us];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for (i, &g) in gens.iter().enumerate() {
            let nd = d + g;
            let nr = (r + (g % m) as usize) % m_us;
            if nd < dist[nr] {
                dist[nr] = nd;
                parent[nr] = i as u32;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    (dist, parent)
}

impl NumericalMonoid {
    /// Rescales positive rationals into a numerical monoid with minimal
    /// generators.
    pub fn normalize(gens: &[Rat]) -> Result<NumericalMonoid, NumsgError> {
        if gens.is_empty() {
            return Err(NumsgError::NoGenerators);
        }
        if gens.iter().any(Rat::is_zero) {
            return Err(NumsgError::NonPositive);
        }
        let l = gens
            .iter()
            .fold(BigUint::one(), |acc, g| acc.lcm(g.denom()));
        let ints: Vec<BigUint> = gens.iter().map(|g| g.numer() * (&l / g.denom())).collect();
        let g = ints.iter().fold(BigUint::from(0u32), |acc, x| acc.gcd(x));
        let mut small = Vec::with_capacity(ints.len());
        for x in &ints {
            let v = x / &g;
            match v.to_u64() {
                Some(v) if v <= MAX_GENERATOR => small.push(v),
                _ => return Err(NumsgError::TooLarge(format!("generator {v}"))),
            }
        }
        let scale = Rat::from_parts(l, g).expect("gcd of positive integers is positive");
        Self::from_coprime(small, scale)
    }

    /// Numerical monoid generated by positive integers (divided by their gcd).
    pub fn from_integers(gens: &[u64]) -> Result<NumericalMonoid, NumsgError> {
        let rats: Vec<Rat> = gens.iter().map(|&g| Rat::from(g)).collect();
        Self::normalize(&rats)
    }

    fn from_coprime(mut gens: Vec<u64>, scale: Rat) -> Result<NumericalMonoid, NumsgError> {
        gens.sort_unstable();
        gens.dedup();
        let g1 = gens[0];
        if g1 > MAX_MODULUS {
            return Err(NumsgError::TooLarge(format!("smallest generator {g1}")));
        }
        let mut kept = vec![g1];
        let (mut ap, mut parent) = residue_minima(&kept, g1);
        for &g in &gens[1..] {
            if ap[(g % g1) as usize] <= g {
                continue;
            }
            kept.push(g);
            (ap, parent) = residue_minima(&kept, g1);
        }
        Ok(NumericalMonoid {
            gens: kept,
            scale,
            apery_min: ap,
            apery_parent: parent,
        })
    }

    /// Minimal generators, ascending.
    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn embedding_dimension(&self) -> usize {
        self.gens.len()
    }

    /// Factor taking original elements to integer coordinates.
    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    /// Integer coordinate of an original element, if it lands on an integer.
    pub fn to_internal(&self, x: &Rat) -> Option<BigUint> {
        (x * &self.scale).to_integer()
    }

    /// Original element for an integer coordinate.
    pub fn to_original(&self, n: u64) -> Rat {
        &Rat::from(n) / &self.scale
    }

    pub fn member(&self, x: u64) -> bool {
        let g1 = self.gens[0];
        x >= self.apery_min[(x % g1) as usize]
    }

    pub fn member_big(&self, x: &BigUint) -> bool {
        match x.to_u64() {
            Some(v) => self.member(v),
            // beyond every Apéry element, hence beyond the Frobenius number
            None => true,
        }
    }

    /// Membership of an element given in original coordinates.
    pub fn member_rat(&self, x: &Rat) -> bool {
        self.to_internal(x).is_some_and(|n| self.member_big(&n))
    }

    /// Largest integer outside the monoid, `None` when it is all of `N0`.
    pub fn frobenius(&self) -> Option<u64> {
        let max = *self.apery_min.iter().max().expect("nonempty");
        (max > 0).then(|| max - self.gens[0])
    }

    /// Least element in each residue class mod `n`, for `n` a nonzero element.
    pub fn apery(&self, n: u64) -> Result<Vec<u64>, NumsgError> {
        if n == 0 || !self.member(n) {
            return Err(NumsgError::NotAMember(n.to_string()));
        }
        if n > MAX_MODULUS {
            return Err(NumsgError::TooLarge(format!("Apéry modulus {n}")));
        }
        Ok(residue_minima(&self.gens, n).0)
    }

    /// One factorization of `x`, read off the shortest-path tree behind the
    /// Apéry set; `None` when `x` is not in the monoid.
    pub fn witness(&self, x: u64) -> Option<Factorization> {
        if !self.member(x) {
            return None;
        }
        let g1 = self.gens[0];
        let mut counts = vec![0u64; self.gens.len()];
        let mut r = (x % g1) as usize;
        counts[0] = (x - self.apery_min[r]) / g1;
        while r != 0 {
            let i = self.apery_parent[r] as usize;
            counts[i] += 1;
            let g = self.gens[i];
            r = ((r as u64 + g1 - g % g1) % g1) as usize;
        }
        Some(Factorization(counts))
    }

    /// All factorizations of `x`, lexicographically ascending.
    pub fn factorizations(&self, x: u64) -> Vec<Factorization> {
        self.factorizations_capped(x, usize::MAX).expect("uncapped")
    }

    /// As [`factorizations`](Self::factorizations), failing once more than
    /// `cap` are found.
    pub fn factorizations_capped(
        &self,
        x: u64,
        cap: usize,
    ) -> Result<Vec<Factorization>, NumsgError> {
        let k = self.gens.len();
        let mut suffix_gcd = vec![0u64; k + 1];
        for i in (0..k).rev() {
            suffix_gcd[i] = suffix_gcd[i + 1].gcd(&self.gens[i]);
        }
        let mut out = Vec::new();
        let mut counts = vec![0u64; k];
        let mut search = Search {
            gens: &self.gens,
            suffix_gcd: &suffix_gcd,
            out: &mut out,
            cap,
        };
        search.go(0, x, &mut counts)?;
        Ok(out)
    }

    /// Distinct factorization lengths of `x`, ascending.
    pub fn lengths(&self, x: u64) -> Vec<u64> {
        let mut ls: Vec<u64> = self
            .factorizations(x)
            .iter()
            .map(Factorization::length)
            .collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    /// Two distinct factorizations of one element with equal length, built from
    /// the three smallest generators `a1 < a2 < a3` as `m·a1 + n·a3 = (m+n)·a2`
    /// with `m = (a3-a2)/g`, `n = (a2-a1)/g`, `g = gcd(a3-a2, a2-a1)`.
    pub fn equal_length_pair(&self) -> Result<(u64, Factorization, Factorization), NumsgError> {
        if self.gens.len() < 3 {
            return Err(NumsgError::EmbeddingDimension {
                needed: 3,
                got: self.gens.len(),
            });
        }
        let (a1, a2, a3) = (self.gens[0], self.gens[1], self.gens[2]);
        let g = (a3 - a2).gcd(&(a2 - a1));
        let (m, n) = ((a3 - a2) / g, (a2 - a1) / g);
        let mut z1 = vec![0; self.gens.len()];
        let mut z2 = z1.clone();
        z1[0] = m;
        z1[2] = n;
        z2[1] = m + n;
        Ok((m * a1 + n * a3, Factorization(z1), Factorization(z2)))
    }
}

struct Search<'a> {
    gens: &'a [u64],
    suffix_gcd: &'a [u64],
    out: &'a mut Vec<Factorization>,
    cap: usize,
}

impl Search<'_> {
    fn go(&mut self, i: usize, rest: u64, counts: &mut Vec<u64>) -> Result<(), NumsgError> {
        if i == self.gens.len() {
            if rest == 0 {
                if self.out.len() == self.cap {
                    return Err(NumsgError::TooManyFactorizations(self.cap));
                }
                self.out.push(Factorization(counts.clone()));
            }
            return Ok(());
        }
        if !rest.is_multiple_of(self.suffix_gcd[i]) {
            return Ok(());
        }
        let g = self.gens[i];
        for c in 0..=rest / g {
            counts[i] = c;
            self.go(i + 1, rest - c * g, counts)?;
        }
        counts[i] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nm(gens: &[u64]) -> NumericalMonoid {
        NumericalMonoid::from_integers(gens).unwrap()
    }

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn f(v: &[u64]) -> Factorization {
        Factorization(v.to_vec())
    }

    #[test]
    fn normalize_examples() {
        let a = NumericalMonoid::normalize(&[r("3/2"), r("5/2")]).unwrap();
        assert_eq!((a.gens(), a.scale()), (&[3, 5][..], &r("2")));
        let b = NumericalMonoid::normalize(&[r("2"), r("4"), r("5")]).unwrap();
        assert_eq!((b.gens(), b.scale()), (&[2, 5][..], &r("1")));
        // integer coordinates are x / 7
        let c = NumericalMonoid::normalize(&[r("7")]).unwrap();
        assert_eq!((c.gens(), c.scale()), (&[1][..], &r("1/7")));
        assert_eq!(c.to_original(3), r("21"));
        assert_eq!(
            NumericalMonoid::normalize(&[]),
            Err(NumsgError::NoGenerators)
        );
    }

    #[test]
    fn membership_examples() {
        let m = nm(&[3, 5]);
        assert!(!m.member(7));
        assert!(m.member(8));
        assert!(m.member(0));
        assert!(m.member_rat(&r("8")));
        assert!(!m.member_rat(&r("1/2")));
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(nm(&[3, 5]).frobenius(), Some(7));
        assert_eq!(nm(&[2, 3]).frobenius(), Some(1));
        assert_eq!(nm(&[1]).frobenius(), None);
        assert_eq!(nm(&[6, 9, 20]).frobenius(), Some(43));
    }

    #[test]
    fn apery_examples() {
        assert_eq!(nm(&[3, 5]).apery(3).unwrap(), vec![0, 10, 5]);
        assert_eq!(nm(&[2, 3]).apery(2).unwrap(), vec![0, 3]);
        assert_eq!(nm(&[1]).apery(1).unwrap(), vec![0]);
        assert_eq!(
            nm(&[3, 5]).apery(7),
            Err(NumsgError::NotAMember("7".into()))
        );
    }

    #[test]
    fn factorization_examples() {
        let m = nm(&[3, 5]);
        assert_eq!(m.factorizations(15), vec![f(&[0, 3]), f(&[5, 0])]);
        assert_eq!(m.factorizations(0), vec![f(&[0, 0])]);
        assert_eq!(m.factorizations(7), vec![]);
        assert_eq!(nm(&[2, 3]).factorizations(6), vec![f(&[0, 2]), f(&[3, 0])]);
        assert_eq!(m.lengths(15), vec![3, 5]);
        assert_eq!(nm(&[2, 3]).lengths(6), vec![2, 3]);
        assert_eq!(m.lengths(0), vec![0]);
        assert_eq!(
            nm(&[2, 3]).factorizations_capped(60, 3),
            Err(NumsgError::TooManyFactorizations(3))
        );
    }

    #[test]
    fn witnesses_multiply_out() {
        for gens in [&[3u64, 5][..], &[6, 9, 20], &[1], &[7, 11, 13]] {
            let m = nm(gens);
            for x in 0..120 {
                match m.witness(x) {
                    Some(z) => assert_eq!(z.image(m.gens()), x),
                    None => assert!(!m.member(x)),
                }
            }
        }
    }

    #[test]
    fn equal_length_examples() {
        let (x, z1, z2) = nm(&[3, 5, 7]).equal_length_pair().unwrap();
        assert_eq!((x, z1, z2), (10, f(&[1, 0, 1]), f(&[0, 2, 0])));
        let (x, z1, z2) = nm(&[4, 5, 6]).equal_length_pair().unwrap();
        assert_eq!((x, z1, z2), (10, f(&[1, 0, 1]), f(&[0, 2, 0])));
        let (x, z1, z2) = nm(&[5, 6, 9]).equal_length_pair().unwrap();
        assert_eq!((x, z1, z2), (24, f(&[3, 0, 1]), f(&[0, 4, 0])));
        assert!(matches!(
            nm(&[3, 5]).equal_length_pair(),
            Err(NumsgError::EmbeddingDimension { .. })
        ));
    }

    #[test]
    fn shared_across_threads() {
        let m = std::sync::Arc::new(nm(&[7, 11, 13]));
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let m = m.clone();
                std::thread::spawn(move || (0..200u64).filter(|x| m.member(x + t)).count())
            })
            .collect();
        let counts: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (t, c) in counts.iter().enumerate() {
            assert_eq!(*c, (0..200u64).filter(|x| m.member(x + t as u64)).count());
        }
    }
}
