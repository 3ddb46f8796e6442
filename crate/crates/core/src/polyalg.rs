//! Exact rationals and dense univariate polynomials over an abstract field.
//!
//! Everything downstream (Bernoulli and Eulerian polynomials, wave classes)
//! is a [`DensePolynomial`] over either [`Rational`] or a cyclotomic field
//! element. Polynomials are normalized after every operation so that
//! structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with positive
/// denominator. Displays as `p/q`, or `p` when `q == 1`.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_from_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// Serializes a rational as the decimal string `p/q` (or `p`).
pub fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let r: Rational = s
        .trim()
        .parse()
        .map_err(|_| Error::Malformed(format!("bad rational `{s}`")))?;
    Ok(r)
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Exact field arithmetic used as polynomial coefficients.
///
/// Elements carry their own field context (for cyclotomic elements, the
/// conductor), so constants are produced relative to an existing element.
/// The binary operations assume `same_field`; callers that cannot guarantee
/// it go through the checked polynomial operations.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn same_field(&self, other: &Self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Multiplies by a rational scalar.
    fn scale(&self, r: &Rational) -> Self;

    fn embed(&self, r: &Rational) -> Self {
        self.one_like().scale(r)
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn same_field(&self, _other: &Self) -> bool {
        true
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn embed(&self, r: &Rational) -> Self {
        r.clone()
    }
}

/// Univariate polynomial, coefficient `i` multiplies `x^i`.
///
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct DensePolynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Field> DensePolynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Field::vanishes) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^i`, or `None` past the degree.
    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    fn compatible(&self, other: &Self) -> bool {
        match (self.coeffs.first(), other.coeffs.first()) {
            (Some(a), Some(b)) => a.same_field(b),
            _ => true,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !self.compatible(other) {
            return Err(Error::FieldMismatch);
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::new(coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negated())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !self.compatible(other) {
            return Err(Error::FieldMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Field::vanishes(a) {
                continue;
            }
            for (k, b) in other.coeffs.iter().enumerate() {
                out[i + k] = out[i + k].plus(&a.times(b));
            }
        }
        Ok(Self::new(out))
    }

    pub fn negated(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(Field::negate).collect(),
        }
    }

    /// Multiplies every coefficient by the field element `c`.
    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(r)).collect())
    }

    /// Returns `q` with `q(x) = p(x + a)`, by binomial expansion:
    /// `q_k = sum_{i >= k} C(i, k) a^(i-k) p_i`.
    pub fn shift(&self, a: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut powers = Vec::with_capacity(n);
        powers.push(a.one_like());
        for i in 1..n {
            powers.push(powers[i - 1].times(a));
        }
        let coeffs = (0..n)
            .map(|k| {
                (k..n).fold(a.zero_like(), |acc, i| {
                    let term = self.coeffs[i]
                        .times(&powers[i - k])
                        .scale(&Rational::from_integer(binomial(i, k)));
                    acc.plus(&term)
                })
            })
            .collect();
        Self::new(coeffs)
    }

    /// Horner evaluation at `v`.
    pub fn eval(&self, v: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(v.zero_like(), |acc, c| acc.times(v).plus(c))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead_inv = divisor
            .leading()
            .and_then(Field::inverse)
            .ok_or(Error::DivisionByZero)?;
        if !self.compatible(divisor) {
            return Err(Error::FieldMismatch);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![lead_inv.zero_like(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top].times(&lead_inv);
            if Field::vanishes(&c) {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = rem[idx].minus(&c.times(b));
            }
            quot[top - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&rational_from_int(i as u64)))
                .collect(),
        )
    }
}

impl DensePolynomial<Rational> {
    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// Ascending-degree coefficients rendered as `p/q` strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_to_string).collect()
    }

    pub fn from_coeff_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let coeffs = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Returns `(u, g)` where `g` is the monic gcd of `self` and `other`
    /// and `u * self == g (mod other)`.
    pub fn inverse_cofactor(&self, other: &Self) -> Result<(Self, Self)> {
        let (mut r0, mut r1) = (other.clone(), self.clone());
        let (mut u0, mut u1) = (Self::zero(), Self::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let u = u0.try_sub(&q.try_mul(&u1)?)?;
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u);
        }
        let lead = r0.leading().ok_or(Error::DivisionByZero)?.recip();
        Ok((u0.scale(&lead), r0.scale(&lead)))
    }
}

impl<F: Field> Add for &DensePolynomial<F> {
    type Output = DensePolynomial<F>;
    fn add(self, rhs: Self) -> DensePolynomial<F> {
        self.try_add(rhs).expect("polynomial coefficient fields differ")
    }
}

impl<F: Field> Sub for &DensePolynomial<F> {
    type Output = DensePolynomial<F>;
    fn sub(self, rhs: Self) -> DensePolynomial<F> {
        self.try_sub(rhs).expect("polynomial coefficient fields differ")
    }
}

impl<F: Field> Mul for &DensePolynomial<F> {
    type Output = DensePolynomial<F>;
    fn mul(self, rhs: Self) -> DensePolynomial<F> {
        self.try_mul(rhs).expect("polynomial coefficient fields differ")
    }
}

impl<F: Field> Neg for &DensePolynomial<F> {
    type Output = DensePolynomial<F>;
    fn neg(self) -> DensePolynomial<F> {
        self.negated()
    }
}

impl fmt::Display for DensePolynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{mag}*s")?,
                (_, true) => write!(f, "s^{i}")?,
                (_, false) => write!(f, "{mag}*s^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    fn poly(c: &[(i64, i64)]) -> DensePolynomial<Rational> {
        DensePolynomial::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn add_examples() {
        assert_eq!(&poly(&[(1, 1), (1, 1)]) + &poly(&[(0, 1), (-1, 1)]), poly(&[(1, 1)]));
        let p = poly(&[(3, 1), (0, 1), (2, 5)]);
        assert_eq!(&DensePolynomial::zero() + &p, p);
        let a = poly(&[(1, 2), (0, 1), (1, 1)]);
        let b = poly(&[(-1, 2), (0, 1), (1, 1)]);
        assert_eq!(&a + &b, poly(&[(0, 1), (0, 1), (2, 1)]));
        // full cancellation normalizes to the zero polynomial
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn mul_examples() {
        let xm1 = poly(&[(-1, 1), (1, 1)]);
        let xp1 = poly(&[(1, 1), (1, 1)]);
        assert_eq!(&xm1 * &xp1, poly(&[(-1, 1), (0, 1), (1, 1)]));
        assert_eq!(&xm1 * &poly(&[(1, 1)]), xm1);
        assert_eq!(
            &poly(&[(0, 1), (1, 2)]) * &poly(&[(0, 1), (1, 3)]),
            poly(&[(0, 1), (0, 1), (1, 6)])
        );
    }

    #[test]
    fn shift_examples() {
        let x2 = poly(&[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(x2.shift(&q(1, 1)), poly(&[(1, 1), (2, 1), (1, 1)]));
        assert_eq!(x2.shift(&q(0, 1)), x2);
        assert_eq!(DensePolynomial::x().shift(&q(3, 2)), poly(&[(3, 2), (1, 1)]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(&[(-1, 1), (0, 1), (1, 1)]).eval(&q(3, 1)), q(8, 1));
        assert_eq!(DensePolynomial::<Rational>::zero().eval(&q(7, 3)), q(0, 1));
        assert_eq!(poly(&[(3, 4), (1, 2)]).eval(&q(4, 1)), q(11, 4));
    }

    #[test]
    fn div_rem_and_inverse_cofactor() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let a = poly(&[(-1, 1), (0, 1), (0, 1), (1, 1)]);
        let b = poly(&[(-1, 1), (1, 1)]);
        let (qt, r) = a.div_rem(&b).unwrap();
        assert_eq!(qt, poly(&[(1, 1), (1, 1), (1, 1)]));
        assert!(r.is_zero());
        assert_eq!(a.div_rem(&DensePolynomial::zero()), Err(Error::DivisionByZero));

        // (1 - x) inverse modulo x^2 + 1 is (1 + x)/2
        let m = poly(&[(1, 1), (0, 1), (1, 1)]);
        let (u, g) = poly(&[(1, 1), (-1, 1)]).inverse_cofactor(&m).unwrap();
        assert_eq!(g, poly(&[(1, 1)]));
        assert_eq!(u, poly(&[(1, 2), (1, 2)]));
    }

    #[test]
    fn display_and_strings() {
        let p = poly(&[(3, 4), (-1, 1), (1, 2)]);
        assert_eq!(p.to_string(), "1/2*s^2 - s + 3/4");
        assert_eq!(p.coeff_strings(), vec!["3/4", "-1", "1/2"]);
        assert_eq!(DensePolynomial::from_coeff_strings(&p.coeff_strings()).unwrap(), p);
        assert!(DensePolynomial::from_coeff_strings(&["1/0x"]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..8).prop_map(|(n, d)| q(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = DensePolynomial<Rational>> {
        prop::collection::vec(arb_rational(), 0..6).prop_map(DensePolynomial::new)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
            }
        }

        #[test]
        fn shift_composes(p in arb_poly(), a in arb_rational(), b in arb_rational(), v in arb_rational()) {
            prop_assert_eq!(p.shift(&a).shift(&b), p.shift(&(&a + &b)));
            prop_assert_eq!(p.shift(&a).eval(&v), p.eval(&(&v + &a)));
        }

        #[test]
        fn division_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (qt, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&qt * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }
    }
}
