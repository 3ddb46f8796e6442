//! Frobenius' Eulerian polynomials `H_n(s, rho)`, generated by
//! `(1 - rho) e^(st) / (e^t - rho)`, and Carlitz's higher-order extension
//! `H_n^(m)(s, rho | d)`, generated by
//! `e^(st) prod (1 - rho^d_i) / prod (e^(d_i t) - rho^d_i)`.
//!
//! Coefficients live in a cyclotomic field. `rho` must not be `1` (nor any
//! `rho^d_i`); the wave route only ever asks for exponents not divisible by
//! the conductor.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::cyclotomic::{root_power, CyclotomicElement};
use crate::error::{Error, Result};
use crate::polyalg::{binomial, DensePolynomial, Field, Rational};

type CycPoly = DensePolynomial<CyclotomicElement>;

/// `H_0(rho) .. H_{n_max}(rho)` from `rho H_n = (H + 1)^n`, i.e.
/// `H_n = (sum_{k<n} C(n, k) H_k) / (rho - 1)`.
pub fn eulerian_numbers(n_max: usize, rho: &CyclotomicElement) -> Result<Vec<CyclotomicElement>> {
    let denom = rho
        .checked_sub(&rho.one_like())?
        .checked_inv()
        .map_err(|_| Error::RootIsUnity { exponent: 1 })?;
    let mut out = vec![rho.one_like()];
    for n in 1..=n_max {
        let sum = out.iter().enumerate().fold(rho.zero_like(), |acc, (k, h)| {
            acc.plus(&h.scale(&Rational::from_integer(binomial(n, k))))
        });
        out.push(sum.times(&denom));
    }
    Ok(out)
}

pub fn eulerian_number(n: usize, rho: &CyclotomicElement) -> Result<CyclotomicElement> {
    Ok(eulerian_numbers(n, rho)?.swap_remove(n))
}

/// `H_n(s, rho) = sum_k C(n, k) H_k(rho) s^(n-k)`.
pub fn eulerian_polynomial(n: usize, rho: &CyclotomicElement) -> Result<CycPoly> {
    eulerian_higher(n, rho, &[1])
}

/// Multinomial expansion of `(s + sum_i d_i H(rho^d_i))^n` for orders
/// `0..=n_max`, peeling one parameter at a time. `numbers(d)` must return
/// `H_0..H_{n_max}` at `rho^d`.
fn higher_family<G>(
    n_max: usize,
    one: &CyclotomicElement,
    d: &[u64],
    mut numbers: G,
) -> Result<Vec<CycPoly>>
where
    G: FnMut(u64) -> Result<Vec<CyclotomicElement>>,
{
    let mut family: Vec<CycPoly> = (0..=n_max)
        .map(|n| CycPoly::monomial(one.clone(), n))
        .collect();
    for &di in d {
        let h = numbers(di)?;
        let dd = Rational::from_integer(BigInt::from(di));
        let mut weights = Vec::with_capacity(n_max + 1);
        let mut dpow = Rational::from_integer(BigInt::from(1));
        for hk in &h {
            weights.push(hk.scale(&dpow));
            dpow *= &dd;
        }
        family = (0..=n_max)
            .map(|n| {
                (0..=n).fold(CycPoly::zero(), |acc, k| {
                    let w = weights[k].scale(&Rational::from_integer(binomial(n, k)));
                    &acc + &family[n - k].scale(&w)
                })
            })
            .collect();
    }
    Ok(family)
}

fn rho_power(rho: &CyclotomicElement, d: u64) -> Result<CyclotomicElement> {
    let p = rho.pow(d as i64)?;
    if p.is_one() {
        return Err(Error::RootIsUnity { exponent: d });
    }
    Ok(p)
}

/// `H_n^(m)(s, rho | d)` as a polynomial in `s`. An empty `d` gives `s^n`,
/// whose constant term is the empty-set convention `H_n^(0) = [n == 0]`.
pub fn eulerian_higher(n: usize, rho: &CyclotomicElement, d: &[u64]) -> Result<CycPoly> {
    let mut family = higher_family(n, &rho.one_like(), d, |di| {
        eulerian_numbers(n, &rho_power(rho, di)?)
    })?;
    Ok(family.swap_remove(n))
}

/// Eulerian number of higher order `H_n^(m)[rho | d] = H_n^(m)(0, rho | d)`.
pub fn eulerian_higher_number(n: usize, rho: &CyclotomicElement, d: &[u64]) -> Result<CyclotomicElement> {
    let p = eulerian_higher(n, rho, d)?;
    Ok(p.coeff(0).cloned().unwrap_or_else(|| rho.zero_like()))
}

/// Eulerian data for `rho = zeta_j^a`, memoizing `H_k(rho^d)` by `d mod j`
/// (valid because `rho^j = 1`).
#[derive(Debug)]
pub struct EulerianContext {
    conductor: u64,
    rho: CyclotomicElement,
    memo: Mutex<HashMap<u64, Vec<CyclotomicElement>>>,
}

impl EulerianContext {
    pub fn new(j: u64, a: i64) -> Result<Self> {
        Ok(Self {
            conductor: j,
            rho: root_power(j, a)?,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn rho(&self) -> &CyclotomicElement {
        &self.rho
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `H_0 .. H_{n_max}` evaluated at `rho^d`.
    pub fn numbers(&self, n_max: usize, d: u64) -> Result<Vec<CyclotomicElement>> {
        let key = d % self.conductor;
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            if v.len() > n_max {
                return Ok(v[..=n_max].to_vec());
            }
        }
        let v = eulerian_numbers(n_max, &rho_power(&self.rho, d)?)?;
        let mut memo = self.memo.lock().unwrap();
        let slot = memo.entry(key).or_default();
        if slot.len() < v.len() {
            *slot = v.clone();
        }
        Ok(v)
    }

    pub fn higher(&self, n: usize, d: &[u64]) -> Result<CycPoly> {
        let mut family = higher_family(n, &self.rho.one_like(), d, |di| self.numbers(n, di))?;
        Ok(family.swap_remove(n))
    }

    pub fn higher_number(&self, n: usize, d: &[u64]) -> Result<CyclotomicElement> {
        let p = self.higher(n, d)?;
        Ok(p.coeff(0).cloned().unwrap_or_else(|| self.rho.zero_like()))
    }

    /// `H_0^(m)[rho | d] .. H_{n_max}^(m)[rho | d]`.
    pub fn higher_numbers(&self, n_max: usize, d: &[u64]) -> Result<Vec<CyclotomicElement>> {
        let family = higher_family(n_max, &self.rho.one_like(), d, |di| self.numbers(n_max, di))?;
        Ok(family
            .into_iter()
            .map(|p| p.coeff(0).cloned().unwrap_or_else(|| self.rho.zero_like()))
            .collect())
    }
}
