//! Exact arithmetic in the cyclotomic field `Q(zeta_j)`.
//!
//! Elements are stored as polynomials in `zeta_j` reduced modulo the
//! cyclotomic polynomial `Phi_j`, which makes the representation canonical
//! and every nonzero element invertible.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, totient};
use crate::polyalg::{DensePolynomial, Field, Rational};

type RatPoly = DensePolynomial<Rational>;

/// Per-conductor data shared by all elements of `Q(zeta_j)`.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u64,
    degree: usize,
    modulus: RatPoly,
    /// `zeta^e` reduced modulo `Phi_j`, for `0 <= e < j`.
    powers: Vec<Vec<Rational>>,
}

impl CyclotomicField {
    fn build(j: u64) -> Result<Self> {
        let modulus = cyclotomic_polynomial(j)?;
        let degree = totient(j)? as usize;
        let mut field = Self {
            conductor: j,
            degree,
            modulus,
            powers: Vec::new(),
        };
        field.powers = (0..j as usize)
            .map(|e| {
                let mut v = vec![Rational::zero(); e + 1];
                v[e] = Rational::one();
                field.reduce(v)
            })
            .collect();
        Ok(field)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `phi(j)`, the dimension over the rationals.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Phi_j`,
    /// returning exactly `degree` coefficients.
    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        let j = self.conductor as usize;
        // zeta^j == 1, so fold first to keep the division short
        if v.len() > j {
            for e in j..v.len() {
                let c = std::mem::take(&mut v[e]);
                v[e % j] += c;
            }
            v.truncate(j);
        }
        let phi = self.modulus.coeffs();
        let deg = self.degree;
        for top in (deg..v.len()).rev() {
            let c = std::mem::take(&mut v[top]);
            if c.is_zero() {
                continue;
            }
            // Phi_j is monic
            for (i, p) in phi.iter().enumerate().take(deg) {
                if !p.is_zero() {
                    v[top - deg + i] -= &c * p;
                }
            }
        }
        v.resize(deg, Rational::zero());
        v
    }
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<CyclotomicField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn poly_cache() -> &'static Mutex<HashMap<u64, RatPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, RatPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared context for conductor `j`.
pub fn field(j: u64) -> Result<Arc<CyclotomicField>> {
    if j == 0 {
        return Err(Error::NonPositive(0));
    }
    if let Some(f) = field_cache().lock().unwrap().get(&j) {
        return Ok(Arc::clone(f));
    }
    // Built outside the lock; a concurrent builder produces an identical value.
    let built = Arc::new(CyclotomicField::build(j)?);
    let mut cache = field_cache().lock().unwrap();
    Ok(Arc::clone(cache.entry(j).or_insert(built)))
}

/// `Phi_j`, obtained by dividing `x^j - 1` exactly by `Phi_d` for every
/// proper divisor `d` of `j`.
pub fn cyclotomic_polynomial(j: u64) -> Result<RatPoly> {
    if j == 0 {
        return Err(Error::NonPositive(0));
    }
    if let Some(p) = poly_cache().lock().unwrap().get(&j) {
        return Ok(p.clone());
    }
    let mut p = RatPoly::monomial(Rational::one(), j as usize);
    p = &p - &RatPoly::constant(Rational::one());
    for d in divisors(j)? {
        if d == j {
            continue;
        }
        let (q, r) = p.div_rem(&cyclotomic_polynomial(d)?)?;
        debug_assert!(r.is_zero());
        p = q;
    }
    poly_cache().lock().unwrap().entry(j).or_insert_with(|| p.clone());
    Ok(p)
}

/// An element of `Q(zeta_j)`.
#[derive(Clone)]
pub struct CyclotomicElement {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({})", self.conductor(), self)
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CyclotomicElement {
    fn from_reduced(field: Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        Self { field, coeffs }
    }

    /// Element `sum_i coeffs[i] zeta^i`; any length is accepted.
    pub fn from_coeffs(j: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let field = field(j)?;
        let coeffs = field.reduce(coeffs);
        Ok(Self { field, coeffs })
    }

    pub fn from_rational(j: u64, r: Rational) -> Result<Self> {
        Self::from_coeffs(j, vec![r])
    }

    pub fn zero(j: u64) -> Result<Self> {
        Self::from_coeffs(j, Vec::new())
    }

    pub fn one(j: u64) -> Result<Self> {
        Self::from_rational(j, Rational::one())
    }

    /// `zeta_j`.
    pub fn zeta(j: u64) -> Result<Self> {
        root_power(j, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    /// Coordinates in the basis `1, zeta, ..., zeta^(phi(j)-1)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first().is_some_and(One::is_one) && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.conductor() == other.conductor() {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.conductor(), other.conductor()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self::from_reduced(Arc::clone(&self.field), coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self::from_reduced(Arc::clone(&self.field), coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let j = self.conductor() as usize;
        let mut out = vec![Rational::zero(); j.max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + k) % j] += a * b;
                }
            }
        }
        Ok(Self::from_reduced(Arc::clone(&self.field), self.field.reduce(out)))
    }

    /// Inverse by the extended Euclidean algorithm against `Phi_j`.
    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = RatPoly::new(self.coeffs.clone());
        let (u, g) = a.inverse_cofactor(&self.field.modulus)?;
        // Phi_j is irreducible, so any nonzero reduced element is a unit
        debug_assert_eq!(g, RatPoly::constant(Rational::one()));
        Ok(Self::from_reduced(
            Arc::clone(&self.field),
            self.field.reduce(u.into_coeffs()),
        ))
    }

    pub fn scale_by(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        Self::from_reduced(Arc::clone(&self.field), coeffs)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.checked_inv()? } else { self.clone() };
        let mut acc = self.one_like();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            sq = sq.checked_mul(&sq)?;
            n >>= 1;
        }
        Ok(acc)
    }

    /// The Galois conjugate `zeta -> zeta^n` (`n` coprime to the conductor).
    pub fn conjugate(&self, n: u64) -> Self {
        let j = self.conductor();
        let mut out = vec![Rational::zero(); j as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[((i as u64 * n) % j) as usize] += c;
            }
        }
        Self::from_reduced(Arc::clone(&self.field), self.field.reduce(out))
    }

    /// Sum of the element over all primitive `j`-th roots, i.e. over every
    /// conjugate `zeta -> zeta^n` with `gcd(n, j) = 1`.
    pub fn primitive_trace(&self) -> Result<Rational> {
        let j = self.conductor();
        let mut acc = vec![Rational::zero(); self.field.degree];
        for n in (1..=j).filter(|&n| num_integer::gcd(n, j) == 1) {
            for (i, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let power = &self.field.powers[((i as u64 * n) % j) as usize];
                for (slot, p) in acc.iter_mut().zip(power) {
                    if !p.is_zero() {
                        *slot += c * p;
                    }
                }
            }
        }
        if acc[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonRationalTrace);
        }
        Ok(acc.swap_remove(0))
    }
}

/// `zeta_j^(k mod j)` reduced modulo `Phi_j`.
pub fn root_power(j: u64, k: i64) -> Result<CyclotomicElement> {
    let f = field(j)?;
    let e = (k as i128).rem_euclid(j as i128) as usize;
    let coeffs = f.powers[e].clone();
    Ok(CyclotomicElement::from_reduced(f, coeffs))
}

impl Field for CyclotomicElement {
    fn zero_like(&self) -> Self {
        Self::from_reduced(Arc::clone(&self.field), vec![Rational::zero(); self.field.degree])
    }
    fn one_like(&self) -> Self {
        let mut coeffs = vec![Rational::zero(); self.field.degree];
        coeffs[0] = Rational::one();
        Self::from_reduced(Arc::clone(&self.field), coeffs)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn same_field(&self, other: &Self) -> bool {
        self.conductor() == other.conductor()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("conductor mismatch")
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("conductor mismatch")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("conductor mismatch")
    }
    fn negate(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        Self::from_reduced(Arc::clone(&self.field), coeffs)
    }
    fn inverse(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_by(r)
    }
}
