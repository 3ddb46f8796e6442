//! Bernoulli numbers (convention `B_1 = -1/2`) and Nörlund's higher-order
//! Bernoulli polynomials `B_n^(m)(x | d_1..d_m)`, generated by
//! `e^(xt) t^m prod d_i / prod (e^(d_i t) - 1)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{binomial, DensePolynomial, Rational};
use crate::waves::SummandSet;

type RatPoly = DensePolynomial<Rational>;

fn cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// `B_n` from `sum_{k=0}^{n} C(n+1, k) B_k = 0`, memoized process-wide.
pub fn bernoulli_number(n: usize) -> Rational {
    if let Some(b) = cache().read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = cache().write().unwrap();
    while table.len() <= n {
        let k = table.len();
        let b = if k > 1 && k % 2 == 1 {
            Rational::zero()
        } else {
            let sum = table
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (i, bi)| {
                    acc + bi * Rational::from_integer(binomial(k + 1, i))
                });
            -sum / Rational::from_integer(BigInt::from(k + 1))
        };
        table.push(b);
    }
    table[n].clone()
}

/// `B_0^(m) .. B_{n_max}^(m)` for the given (possibly negative) parameters,
/// peeling one parameter at a time:
/// `B_n^(m)(x) = sum_k C(n, k) d_m^k B_k B_{n-k}^(m-1)(x)`, `B_n^(0)(x) = x^n`.
pub fn bernoulli_higher_family_signed(n_max: usize, d: &[i64]) -> Result<Vec<RatPoly>> {
    if d.is_empty() {
        return Err(Error::EmptySummands);
    }
    if d.contains(&0) {
        return Err(Error::NonPositiveSummand(0));
    }
    let bern: Vec<Rational> = (0..=n_max).map(bernoulli_number).collect();
    let mut family: Vec<RatPoly> = (0..=n_max)
        .map(|n| RatPoly::monomial(Rational::one(), n))
        .collect();
    for &di in d {
        let di = Rational::from_integer(BigInt::from(di));
        let mut dpow = vec![Rational::one()];
        for k in 1..=n_max {
            dpow.push(&dpow[k - 1] * &di);
        }
        family = (0..=n_max)
            .map(|n| {
                (0..=n).fold(RatPoly::zero(), |acc, k| {
                    if bern[k].is_zero() {
                        return acc;
                    }
                    let c = Rational::from_integer(binomial(n, k)) * &dpow[k] * &bern[k];
                    &acc + &family[n - k].scale_rational(&c)
                })
            })
            .collect();
    }
    Ok(family)
}

pub fn bernoulli_higher_signed(n: usize, d: &[i64]) -> Result<RatPoly> {
    Ok(bernoulli_higher_family_signed(n, d)?.swap_remove(n))
}

/// All orders `0..=n_max` of `B_n^(m)(x | d)`.
pub fn bernoulli_higher_family(n_max: usize, d: &SummandSet) -> Vec<RatPoly> {
    let signed: Vec<i64> = d.elements().iter().map(|&x| x as i64).collect();
    bernoulli_higher_family_signed(n_max, &signed).expect("summand sets are nonempty and positive")
}

/// `B_n^(m)(x | d)`, a polynomial in `x` of degree exactly `n`.
pub fn bernoulli_higher(n: usize, d: &SummandSet) -> RatPoly {
    bernoulli_higher_family(n, d).swap_remove(n)
}

/// Higher-order Bernoulli number `B_n^(m)(0 | d)`.
pub fn bernoulli_higher_number(n: usize, d: &SummandSet) -> Rational {
    bernoulli_higher(n, d)
        .coeff(0)
        .cloned()
        .unwrap_or_else(Rational::zero)
}
