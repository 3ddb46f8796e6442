//! Sylvester waves and the assembled restricted partition function.
//!
//! `W(s, d) = sum_j W_j(s, d)` where `j` runs over every divisor of some
//! summand. The polynomial part `W_1` comes straight from a higher-order
//! Bernoulli polynomial:
//!
//! ```text
//! W_1(s, d) = B_{m-1}^(m)(s + s_m | d) / ((m-1)! pi_m)
//! ```
//!
//! A wave of period `j > 1` is produced two independent ways:
//!
//! * [`wave_bernoulli`]: a superposition of polynomial parts of the
//!   `j`-modified summand set, weighted by the circulator:
//!   `W_j(s) = sum_r W_1(s - sum d_i r_i, d_j) Psi_j(s - sum d_i r_i)`,
//!   the sum over `0 <= r_i < j` for each summand not divisible by `j`.
//! * [`wave_eulerian`]: Bernoulli polynomials of the divisible part times
//!   Eulerian numbers of the remaining part, summed over the primitive
//!   `j`-th roots of unity inside `Q(zeta_j)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bernoulli_higher, bernoulli_higher_family};
use crate::cyclotomic::{root_power, CyclotomicElement};
use crate::error::{Error, Result};
use crate::eulerian::EulerianContext;
use crate::numtheory::{circulator, divisor_union};
use crate::polyalg::{binomial, factorial, DensePolynomial, Field, Rational};

type RatPoly = DensePolynomial<Rational>;

/// Multiset of positive summands, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SummandSet {
    elements: Vec<u64>,
}

impl SummandSet {
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySummands);
        }
        if elements.contains(&0) {
            return Err(Error::NonPositiveSummand(0));
        }
        elements.sort_unstable();
        Ok(Self { elements })
    }

    /// Accepts signed input, rejecting nonpositive entries.
    pub fn from_signed(elements: &[i64]) -> Result<Self> {
        let v = elements
            .iter()
            .map(|&x| {
                if x > 0 {
                    Ok(x as u64)
                } else {
                    Err(Error::NonPositiveSummand(x as i128))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// `m`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `s_m`.
    pub fn sum(&self) -> BigInt {
        self.elements.iter().map(|&x| BigInt::from(x)).sum()
    }

    /// `pi_m`.
    pub fn product(&self) -> BigInt {
        self.elements.iter().map(|&x| BigInt::from(x)).product()
    }

    /// Least common multiple of the summands, the period of `W`.
    pub fn lcm(&self) -> BigInt {
        self.elements
            .iter()
            .fold(BigInt::one(), |acc, &x| acc.lcm(&BigInt::from(x)))
    }

    /// `k_j`, the number of summands divisible by `j`.
    pub fn weight(&self, j: u64) -> usize {
        self.elements.iter().filter(|&&x| x % j == 0).count()
    }

    /// Divisors of the summands, in increasing order.
    pub fn wave_indices(&self) -> Vec<u64> {
        divisor_union(self)
    }

    pub fn wave_index(&self, j: u64) -> Result<WaveIndex> {
        if j == 0 {
            return Err(Error::NonPositive(0));
        }
        let (divisible, coprime_part): (Vec<u64>, Vec<u64>) =
            self.elements.iter().partition(|&&x| x % j == 0);
        if divisible.is_empty() {
            return Err(Error::NotAWaveIndex { j });
        }
        Ok(WaveIndex {
            j,
            divisible: SummandSet { elements: divisible },
            coprime_part,
        })
    }

    /// The set with one copy of `d` removed; `None` if nothing remains.
    pub fn without(&self, d: u64) -> Option<SummandSet> {
        let pos = self.elements.iter().position(|&x| x == d)?;
        let mut elements = self.elements.clone();
        elements.remove(pos);
        (!elements.is_empty()).then_some(SummandSet { elements })
    }
}

impl fmt::Display for SummandSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A wave period `j` with the split of the summands into those divisible
/// by `j` (`k_j` of them) and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveIndex {
    j: u64,
    divisible: SummandSet,
    coprime_part: Vec<u64>,
}

impl WaveIndex {
    pub fn j(&self) -> u64 {
        self.j
    }

    /// `k_j`.
    pub fn weight(&self) -> usize {
        self.divisible.len()
    }

    pub fn divisible(&self) -> &SummandSet {
        &self.divisible
    }

    /// Summands not divisible by `j`.
    pub fn coprime_part(&self) -> &[u64] {
        &self.coprime_part
    }

    pub fn modified_set(&self) -> ModifiedSet {
        let mut elements = self.divisible.elements.clone();
        elements.extend(self.coprime_part.iter().map(|&x| x * self.j));
        elements.sort_unstable();
        ModifiedSet {
            j: self.j,
            set: SummandSet { elements },
        }
    }
}

/// The `j`-modified set: divisible summands unchanged, every other summand
/// multiplied by `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedSet {
    j: u64,
    set: SummandSet,
}

impl ModifiedSet {
    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn as_set(&self) -> &SummandSet {
        &self.set
    }
}

/// One polynomial in `s` per residue class modulo `period`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quasipolynomial {
    summands: Vec<u64>,
    period: u64,
    classes: Vec<RatPoly>,
}

impl Quasipolynomial {
    pub fn new(summands: Vec<u64>, classes: Vec<RatPoly>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Malformed("period must be positive".into()));
        }
        Ok(Self {
            summands,
            period: classes.len() as u64,
            classes,
        })
    }

    pub fn summands(&self) -> &[u64] {
        &self.summands
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn classes(&self) -> &[RatPoly] {
        &self.classes
    }

    pub fn class(&self, residue: u64) -> &RatPoly {
        &self.classes[(residue % self.period) as usize]
    }

    /// Largest class degree; `None` if every class vanishes.
    pub fn degree(&self) -> Option<usize> {
        self.classes.iter().filter_map(RatPoly::degree).max()
    }

    /// The same function viewed with period `period` (a multiple of the
    /// current one).
    pub fn lift(&self, period: u64) -> Result<Self> {
        if period == 0 || !period.is_multiple_of(self.period) {
            return Err(Error::Malformed(format!(
                "period {period} is not a multiple of {}",
                self.period
            )));
        }
        let classes = (0..period).map(|c| self.class(c).clone()).collect();
        Ok(Self {
            summands: self.summands.clone(),
            period,
            classes,
        })
    }

    /// Classwise sum of two quasipolynomials with equal period.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.period != other.period {
            return Err(Error::Malformed("period mismatch".into()));
        }
        let classes = self
            .classes
            .iter()
            .zip(&other.classes)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            summands: self.summands.clone(),
            period: self.period,
            classes,
        })
    }

    /// Value at `s >= 0`: the class `s mod period` evaluated at `s`.
    pub fn evaluate(&self, s: &BigInt) -> Result<Rational> {
        if s.is_negative() {
            return Err(Error::NegativeArgument(s.to_string()));
        }
        let residue = (s % BigInt::from(self.period))
            .to_u64()
            .expect("residue below period");
        Ok(self.class(residue).eval(&Rational::from_integer(s.clone())))
    }

    /// Like [`Self::evaluate`], but the value must be an integer.
    pub fn evaluate_integer(&self, s: &BigInt) -> Result<BigInt> {
        let v = self.evaluate(s)?;
        if !v.is_integer() {
            return Err(Error::NonIntegral(v.to_string()));
        }
        Ok(v.to_integer())
    }

    /// Adds `delta` to the constant coefficient of one class. Exists so the
    /// verification path can be exercised against a known-bad closed form.
    #[doc(hidden)]
    pub fn with_corrupted_coefficient(&self, residue: u64, delta: &Rational) -> Self {
        let mut out = self.clone();
        let idx = (residue % self.period) as usize;
        out.classes[idx] = &out.classes[idx] + &RatPoly::constant(delta.clone());
        out
    }

    pub fn to_json(&self) -> QuasipolynomialJson {
        QuasipolynomialJson {
            summands: self.summands.clone(),
            period: self.period,
            classes: self
                .classes
                .iter()
                .enumerate()
                .map(|(residue, p)| ClassJson {
                    residue: residue as u64,
                    coeffs: p.coeff_strings(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &QuasipolynomialJson) -> Result<Self> {
        if json.period == 0 || json.classes.len() as u64 != json.period {
            return Err(Error::Malformed(format!(
                "expected {} classes, found {}",
                json.period,
                json.classes.len()
            )));
        }
        let classes = json
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.residue != i as u64 {
                    return Err(Error::Malformed(format!("class {i} has residue {}", c.residue)));
                }
                RatPoly::from_coeff_strings(&c.coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.summands.clone(), classes)
    }
}

/// Wire format of a [`Quasipolynomial`]; coefficients are `p/q` strings in
/// ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasipolynomialJson {
    pub summands: Vec<u64>,
    pub period: u64,
    pub classes: Vec<ClassJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub residue: u64,
    pub coeffs: Vec<String>,
}

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `W_1(s, d) = B_{m-1}^(m)(s + s_m | d) / ((m-1)! pi_m)`.
pub fn polynomial_part(d: &SummandSet) -> RatPoly {
    let m = d.len();
    let b = bernoulli_higher(m - 1, d).shift(&int(d.sum()));
    b.scale_rational(&int(factorial(m - 1) * d.product()).recip())
}

/// Number of tuples `0 <= r_i < j` with `sum d_i r_i == t`, indexed by `t`.
fn shift_multiplicities(coprime: &[u64], j: u64) -> Vec<BigInt> {
    let mut counts = vec![BigInt::one()];
    for &d in coprime {
        let mut next = vec![BigInt::zero(); counts.len() + ((j - 1) * d) as usize];
        for (t, c) in counts.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for r in 0..j {
                next[t + (r * d) as usize] += c;
            }
        }
        counts = next;
    }
    counts
}

fn check_degrees(j: u64, bound: usize, classes: &[RatPoly]) -> Result<()> {
    for (residue, p) in classes.iter().enumerate() {
        if let Some(degree) = p.degree() {
            if degree > bound {
                return Err(Error::DegreeBound {
                    j,
                    residue: residue as u64,
                    degree,
                    bound,
                });
            }
        }
    }
    Ok(())
}

/// The `j`-periodic wave as a sum of shifted polynomial parts of the
/// `j`-modified set, weighted by `Psi_j`.
pub fn wave_bernoulli(d: &SummandSet, j: u64) -> Result<Quasipolynomial> {
    let index = d.wave_index(j)?;
    let w1 = polynomial_part(index.modified_set().as_set());
    let counts = shift_multiplicities(index.coprime_part(), j);

    // Group shifts by t mod j: the circulator weight only sees the residue.
    let mut grouped = vec![RatPoly::zero(); j as usize];
    for (t, c) in counts.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let shifted = w1.shift(&int(-(t as i64))).scale_rational(&int(c.clone()));
        let slot = &mut grouped[t % j as usize];
        *slot = &*slot + &shifted;
    }

    let classes = (0..j as i64)
        .map(|c| {
            grouped
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.is_zero())
                .try_fold(RatPoly::zero(), |acc, (t, g)| {
                    let w = circulator(j, c - t as i64)?;
                    Ok(if w == 0 { acc } else { &acc + &g.scale_rational(&int(w)) })
                })
        })
        .collect::<Result<Vec<_>>>()?;
    check_degrees(j, index.weight() - 1, &classes)?;
    Quasipolynomial::new(d.elements().to_vec(), classes)
}

/// The `j`-periodic wave through Eulerian numbers over `Q(zeta_j)`:
///
/// ```text
/// W_j(s) = 1/((k-1)! pi_k) sum_n C(k-1, n) B_n^(k)(s + s_m | d^k)
///          * sum_rho rho^(-s) H_{k-1-n}^(m-k)[rho | rest] / prod_rest (1 - rho^d_i)
/// ```
///
/// with `rho^(-s)` fixed per residue class of `s`.
pub fn wave_eulerian(d: &SummandSet, j: u64) -> Result<Quasipolynomial> {
    let index = d.wave_index(j)?;
    let k = index.weight();
    let coprime = index.coprime_part();

    let prefactor = int(factorial(k - 1) * index.divisible().product()).recip();
    let bern: Vec<RatPoly> = bernoulli_higher_family(k - 1, index.divisible())
        .into_iter()
        .map(|p| p.shift(&int(d.sum())))
        .collect();

    let ctx = EulerianContext::new(j, 1)?;
    let rho = ctx.rho();
    let eulerian = ctx.higher_numbers(k - 1, coprime)?;
    let denom = coprime.iter().try_fold(rho.one_like(), |acc, &di| {
        acc.checked_mul(&rho.one_like().checked_sub(&rho.pow(di as i64)?)?)
    })?;
    let denom_inv = denom.checked_inv()?;

    let classes = (0..j as i64)
        .map(|c| {
            let base = root_power(j, -c)?.checked_mul(&denom_inv)?;
            (0..k).try_fold(RatPoly::zero(), |acc, n| {
                let periodic = base.checked_mul(&eulerian[k - 1 - n])?.primitive_trace()?;
                let coeff = int(binomial(k - 1, n)) * &prefactor * periodic;
                Ok(&acc + &bern[n].scale_rational(&coeff))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_degrees(j, k - 1, &classes)?;
    Quasipolynomial::new(d.elements().to_vec(), classes)
}

/// Every wave `(j, W_j)`, in increasing `j`, computed in parallel.
pub fn waves(d: &SummandSet) -> Result<Vec<(u64, Quasipolynomial)>> {
    d.wave_indices()
        .into_par_iter()
        .map(|j| wave_bernoulli(d, j).map(|w| (j, w)))
        .collect()
}

/// `W(s, d)` as a quasipolynomial of period `lcm(d)`.
pub fn assemble(d: &SummandSet) -> Result<Quasipolynomial> {
    let period = d
        .lcm()
        .to_u64()
        .ok_or_else(|| Error::Malformed("period exceeds u64".into()))?;
    let zero = Quasipolynomial::new(d.elements().to_vec(), vec![RatPoly::zero(); period as usize])?;
    let total = waves(d)?
        .into_iter()
        .try_fold(zero, |acc, (_, w)| acc.try_add(&w.lift(period)?))?;
    check_degrees(period, d.len() - 1, total.classes())?;
    Ok(total)
}

/// Convenience: `W(s, d)` at one point.
pub fn evaluate(q: &Quasipolynomial, s: &BigInt) -> Result<Rational> {
    q.evaluate(s)
}

/// The Eulerian–Bernoulli relation at order `n` for every primitive root
/// `rho = zeta_j^a`:
///
/// ```text
/// (m-1-n)! pi_m rho^(s_m) / ((k-1-n)! pi_k rho^(s_k)) / prod_rest (1 - rho^d_i)
///     * H_{k-1-n}^(m-k)[rho | rest]
///   == j^-(m-k) sum_r rho^(-sum d_i r_i) B_{m-1-n}^(m-k)(sum d_i r_i | j * rest)
/// ```
///
/// Returns one verdict per root, ordered by `a`.
pub fn bridge_check_per_root(d: &SummandSet, j: u64, n: usize) -> Result<Vec<bool>> {
    let index = d.wave_index(j)?;
    let k = index.weight();
    let m = d.len();
    if n >= k {
        return Err(Error::Malformed(format!("order {n} must be below weight {k}")));
    }
    let coprime = index.coprime_part();
    let s_k = index.divisible().sum();
    let shift = ((d.sum() - s_k) % BigInt::from(j)).to_i64().expect("below j");

    let lhs_scale = int(factorial(m - 1 - n) * d.product())
        / int(factorial(k - 1 - n) * index.divisible().product());
    let rhs_scale = int(BigInt::from(j).pow((m - k) as u32)).recip();

    // B_{m-1-n}^(m-k)(t | j * rest) at every reachable t
    let order = m - 1 - n;
    let bern = if coprime.is_empty() {
        RatPoly::monomial(Rational::one(), order)
    } else {
        let scaled = SummandSet::new(coprime.iter().map(|&x| x * j).collect())?;
        bernoulli_higher(order, &scaled)
    };
    let counts = shift_multiplicities(coprime, j);

    let mut verdicts = Vec::new();
    for a in (1..=j).filter(|&a| a.gcd(&j) == 1) {
        let ctx = EulerianContext::new(j, a as i64)?;
        let rho = ctx.rho();
        let a = a as i64;
        let h = ctx.higher_number(k - 1 - n, coprime)?;
        let denom = coprime.iter().try_fold(rho.one_like(), |acc, &di| {
            acc.checked_mul(&rho.one_like().checked_sub(&rho.pow(di as i64)?)?)
        })?;
        let lhs = root_power(j, a * shift)?
            .checked_mul(&h)?
            .checked_mul(&denom.checked_inv()?)?
            .scale_by(&lhs_scale);

        let rhs = counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .try_fold(CyclotomicElement::zero(j)?, |acc, (t, c)| {
                let value = bern.eval(&int(t as u64)) * int(c.clone());
                acc.checked_add(&root_power(j, -a * t as i64)?.scale_by(&value))
            })?
            .scale_by(&rhs_scale);
        verdicts.push(lhs == rhs);
    }
    Ok(verdicts)
}

/// Whether the Eulerian–Bernoulli relation holds at every primitive root.
pub fn eulerian_bernoulli_bridge_check(d: &SummandSet, j: u64, n: usize) -> Result<bool> {
    Ok(bridge_check_per_root(d, j, n)?.into_iter().all(|v| v))
}
