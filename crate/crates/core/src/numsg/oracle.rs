//! Brute-force reference implementations, kept deliberately naive and free of
//! any code shared with the main engine. Used by tests only.

use super::{Factorization, NumericalMonoid};

/// Every count vector with image `x`: the leading counts range over all
/// values that fit, the last one is solved for by division.
pub fn oracle_factorizations(n: &NumericalMonoid, x: u64) -> Vec<Factorization> {
    fn go(gens: &[u64], i: usize, left: u64, counts: &mut Vec<u64>, out: &mut Vec<Factorization>) {
        let g = gens[i];
        if i + 1 == gens.len() {
            if left.is_multiple_of(g) {
                counts[i] = left / g;
                out.push(Factorization(counts.clone()));
                counts[i] = 0;
            }
            return;
        }
        for c in 0..=left / g {
            counts[i] = c;
            go(gens, i + 1, left - c * g, counts, out);
        }
        counts[i] = 0;
    }
    let gens = n.gens();
    let mut out = Vec::new();
    go(gens, 0, x, &mut vec![0; gens.len()], &mut out);
    out.sort();
    out
}

/// Reachability table `0..=limit` for the monoid generated by `gens`.
pub fn membership_table(gens: &[u64], limit: usize) -> Vec<bool> {
    let mut table = vec![false; limit + 1];
    table[0] = true;
    for x in 1..=limit {
        table[x] = gens
            .iter()
            .any(|&g| g as usize <= x && table[x - g as usize]);
    }
    table
}

/// Largest gap, scanning a table past `g1 * gk`; `None` if there is no gap.
pub fn frobenius_by_scan(gens: &[u64]) -> Option<u64> {
    let lo = *gens.iter().min()? as usize;
    let hi = *gens.iter().max()? as usize;
    let table = membership_table(gens, lo * hi + hi);
    table.iter().rposition(|&m| !m).map(|i| i as u64)
}
