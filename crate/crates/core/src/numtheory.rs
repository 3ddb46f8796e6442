//! Factorization, divisors, totient, Möbius, and the prime radical
//! circulator `Psi_j(s)`, the sum of `s`-th powers of the primitive `j`-th
//! roots of unity.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::waves::SummandSet;

/// Prime factorization with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, a)| p.pow(a)).product()
    }
}

/// Trial-division factorization; `factorize(1)` is empty.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut alpha = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                alpha += 1;
            }
            factors.push((p, alpha));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

pub fn totient(n: u64) -> Result<u64> {
    Ok(factorize(n)?
        .factors
        .iter()
        .map(|&(p, a)| (p - 1) * p.pow(a - 1))
        .product())
}

pub fn moebius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    if f.factors.iter().any(|&(_, a)| a > 1) {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Sorted positive divisors of `n`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = vec![1u64];
    for &(p, a) in &f.factors {
        let current = out.clone();
        let mut pk = 1;
        for _ in 0..a {
            pk *= p;
            out.extend(current.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Every `j` dividing at least one summand: the index set of the waves.
pub fn divisor_union(d: &SummandSet) -> Vec<u64> {
    let set: BTreeSet<u64> = d
        .elements()
        .iter()
        .flat_map(|&x| divisors(x).expect("summands are positive"))
        .collect();
    set.into_iter().collect()
}

/// `Psi_j(s)` from the prime base case (`phi(p)` on multiples of `p`,
/// `mu(p) = -1` elsewhere) composed over the factorization of `j`:
/// `Psi_j(s) = prod_k p_k^(a_k - 1) Psi_{p_k}(s / p_k^(a_k - 1))`, a factor
/// vanishing whenever `p_k^(a_k - 1)` does not divide `s`.
pub fn circulator(j: u64, s: i64) -> Result<i64> {
    if j == 0 {
        return Err(Error::NonPositive(0));
    }
    let s = (s as i128).rem_euclid(j as i128) as u64;
    let mut acc = 1i64;
    for &(p, alpha) in factorize(j)?.factors() {
        let q = p.pow(alpha - 1);
        if !s.is_multiple_of(q) {
            return Ok(0);
        }
        let t = s / q;
        let prime_part = if t.is_multiple_of(p) { p as i64 - 1 } else { -1 };
        acc *= q as i64 * prime_part;
    }
    Ok(acc)
}
