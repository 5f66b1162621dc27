//! Simple continued fractions: expansion and evaluation of rationals,
//! periodic expansions of square roots, and certified prefixes for reals
//! known only through a rational bracket.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{floor, frac, Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContFracError {
    #[error("gauss map is defined on (0, 1), got {0}")]
    OutsideUnitInterval(Rational),
    #[error("{0} is a perfect square")]
    PerfectSquare(Integer),
    #[error("square root expansion needs D >= 2, got {0}")]
    RadicandTooSmall(Integer),
    #[error("partial quotient {value} at position {index} is not positive")]
    NonPositiveQuotient { index: usize, value: Integer },
    #[error("a periodic expansion needs a non-empty period")]
    EmptyPeriod,
}

/// `a0 + 1/(a1 + 1/(a2 + ...))` with every `a_k >= 1` for `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ContinuedFraction {
    #[serde(serialize_with = "ser_int")]
    pub a0: Integer,
    #[serde(serialize_with = "ser_ints")]
    pub partials: Vec<Integer>,
}

fn ser_int<S: serde::Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_ints<S: serde::Serializer>(v: &[Integer], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl ContinuedFraction {
    pub fn new(a0: Integer, partials: Vec<Integer>) -> Result<Self, ContFracError> {
        check_positive(&partials, 1)?;
        Ok(Self { a0, partials })
    }

    pub fn from_i64(a0: i64, partials: &[i64]) -> Result<Self, ContFracError> {
        Self::new(a0.into(), partials.iter().map(|&a| a.into()).collect())
    }

    /// All quotients, `a0` first.
    pub fn quotients(&self) -> impl Iterator<Item = &Integer> {
        std::iter::once(&self.a0).chain(self.partials.iter())
    }

    /// Number of quotients including `a0`.
    pub fn len(&self) -> usize {
        self.partials.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The canonical form of a non-integer never ends in 1.
    pub fn is_canonical(&self) -> bool {
        self.partials.last().is_none_or(|a| !a.is_one())
    }

    /// Length-`n` prefix, `n >= 1`.
    pub fn prefix(&self, n: usize) -> Self {
        assert!(n >= 1);
        Self {
            a0: self.a0.clone(),
            partials: self.partials.iter().take(n - 1).cloned().collect(),
        }
    }

    pub fn starts_with(&self, other: &Self) -> bool {
        self.a0 == other.a0
            && other.partials.len() <= self.partials.len()
            && self.partials.iter().zip(&other.partials).all(|(a, b)| a == b)
    }
}

fn check_positive(partials: &[Integer], first_index: usize) -> Result<(), ContFracError> {
    for (i, a) in partials.iter().enumerate() {
        if !a.is_positive() {
            return Err(ContFracError::NonPositiveQuotient {
                index: i + first_index,
                value: a.clone(),
            });
        }
    }
    Ok(())
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.a0)?;
        for (i, a) in self.partials.iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { "; " } else { ", " })?;
        }
        write!(f, "]")
    }
}

/// Euclidean algorithm. Non-integers never end in a 1.
pub fn cf_of_rational(r: &Rational) -> ContinuedFraction {
    let a0 = floor(r);
    let mut num = r.numer() - &a0 * r.denom();
    let mut den = r.denom().clone();
    let mut partials = Vec::new();
    // remainder is den/num > 1 while num > 0
    while !num.is_zero() {
        let (q, rem) = num_integer::Integer::div_rem(&den, &num);
        partials.push(q);
        den = num;
        num = rem;
    }
    ContinuedFraction { a0, partials }
}

pub fn cf_eval(cf: &ContinuedFraction) -> Rational {
    let mut acc: Option<Rational> = None;
    for a in cf.partials.iter().rev() {
        let term = Rational::from_integer(a.clone());
        acc = Some(match acc {
            None => term,
            Some(t) => term + t.recip(),
        });
    }
    let a0 = Rational::from_integer(cf.a0.clone());
    match acc {
        None => a0,
        Some(t) => a0 + t.recip(),
    }
}

/// A convergent `p/q`, lowest terms, `q > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: Integer,
    pub q: Integer,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone())
    }
}

/// `p_k = a_k p_{k-1} + p_{k-2}`, `q_k = a_k q_{k-1} + q_{k-2}` seeded with
/// `p_{-1} = 1, q_{-1} = 0, p_{-2} = 0, q_{-2} = 1`.
pub fn convergents(cf: &ContinuedFraction) -> Vec<Convergent> {
    let (mut p_prev, mut q_prev) = (Integer::zero(), Integer::one());
    let (mut p, mut q) = (Integer::one(), Integer::zero());
    let mut out = Vec::with_capacity(cf.len());
    for a in cf.quotients() {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(Convergent {
            p: p.clone(),
            q: q.clone(),
        });
    }
    out
}

/// `x -> frac(1/x)` on `(0, 1)`.
pub fn gauss_map(x: &Rational) -> Result<Rational, ContFracError> {
    if !x.is_positive() || *x >= Rational::one() {
        return Err(ContFracError::OutsideUnitInterval(x.clone()));
    }
    Ok(frac(&x.recip()))
}

/// Partial quotients of `x` in `[0, 1)` read off by iterating the Gauss map.
pub fn gauss_quotients(x: &Rational) -> Result<Vec<Integer>, ContFracError> {
    let mut out = Vec::new();
    let mut x = x.clone();
    while !x.is_zero() {
        let next = gauss_map(&x)?;
        out.push(floor(&x.recip()));
        x = next;
    }
    Ok(out)
}

/// An eventually periodic expansion `[a0; pre..., (period...)]`. `preperiod`
/// includes `a0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicCF {
    #[serde(serialize_with = "ser_ints")]
    pub preperiod: Vec<Integer>,
    #[serde(serialize_with = "ser_ints")]
    pub period: Vec<Integer>,
}

impl PeriodicCF {
    /// Normalizes to the shortest period and the shortest preperiod.
    /// `preperiod` must hold at least `a0`.
    pub fn new(mut preperiod: Vec<Integer>, mut period: Vec<Integer>) -> Result<Self, ContFracError> {
        if period.is_empty() {
            return Err(ContFracError::EmptyPeriod);
        }
        assert!(!preperiod.is_empty(), "preperiod must contain a0");
        check_positive(&preperiod[1..], 1)?;
        check_positive(&period, preperiod.len())?;
        let n = period.len();
        if let Some(d) = (1..n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| period[i] == period[i - d])) {
            period.truncate(d);
        }
        // absorb trailing preperiod terms that just repeat the period
        while preperiod.len() > 1 && preperiod.last() == period.last() {
            let x = preperiod.pop().unwrap();
            period.rotate_right(1);
            period[0] = x;
        }
        Ok(Self { preperiod, period })
    }

    /// `phi = [1; (1)]`.
    pub fn golden_ratio() -> Self {
        Self {
            preperiod: vec![Integer::one()],
            period: vec![Integer::one()],
        }
    }

    pub fn quotient(&self, k: usize) -> &Integer {
        if k < self.preperiod.len() {
            &self.preperiod[k]
        } else {
            &self.period[(k - self.preperiod.len()) % self.period.len()]
        }
    }

    /// First `n >= 1` quotients as a finite continued fraction.
    pub fn truncate(&self, n: usize) -> ContinuedFraction {
        assert!(n >= 1);
        ContinuedFraction {
            a0: self.quotient(0).clone(),
            partials: (1..n).map(|k| self.quotient(k).clone()).collect(),
        }
    }
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; ", self.preperiod[0])?;
        for a in &self.preperiod[1..] {
            write!(f, "{a}, ")?;
        }
        let period: Vec<String> = self.period.iter().map(ToString::to_string).collect();
        write!(f, "({})]", period.join(", "))
    }
}

/// Expansion of `sqrt(d)` through the `(P + sqrt d)/Q` state recurrence,
/// stopping at the first repeated state.
pub fn cf_of_quadratic(d: &Integer) -> Result<PeriodicCF, ContFracError> {
    if *d < Integer::from(2) {
        return Err(ContFracError::RadicandTooSmall(d.clone()));
    }
    let a0 = d.sqrt();
    if &a0 * &a0 == *d {
        return Err(ContFracError::PerfectSquare(d.clone()));
    }
    let mut quotients = vec![a0.clone()];
    let mut seen: HashMap<(Integer, Integer), usize> = HashMap::new();
    let (mut p, mut q, mut a) = (Integer::zero(), Integer::one(), a0.clone());
    loop {
        p = &a * &q - &p;
        q = (d - &p * &p) / &q;
        let index = quotients.len();
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = quotients.split_off(start);
            return PeriodicCF::new(quotients, period);
        }
        seen.insert((p.clone(), q.clone()), index);
        a = (&a0 + &p) / &q;
        quotients.push(a.clone());
    }
}

/// The longest continued-fraction prefix shared by every real in
/// `[lo, hi]`. Both endpoints are expanded in lockstep; a quotient is
/// emitted when both floors agree, and expansion stops once either
/// endpoint terminates.
pub fn cf_of_bracket(lo: &Rational, hi: &Rational) -> Option<ContinuedFraction> {
    // cross-multiplied: Ratio's own ordering recurses once per quotient
    assert!(
        lo.numer() * hi.denom() <= hi.numer() * lo.denom(),
        "bracket endpoints out of order"
    );
    if lo.numer() == hi.numer() && lo.denom() == hi.denom() {
        return Some(cf_of_rational(lo));
    }
    // endpoints as unreduced fractions n/d with d > 0; no gcd per step
    let (mut xn, mut xd) = (lo.numer().clone(), lo.denom().clone());
    let (mut yn, mut yd) = (hi.numer().clone(), hi.denom().clone());
    let mut quotients: Vec<Integer> = Vec::new();
    loop {
        let (a, rx) = xn.div_mod_floor(&xd);
        let (b, ry) = yn.div_mod_floor(&yd);
        if a != b {
            break;
        }
        quotients.push(a);
        if rx.is_zero() || ry.is_zero() {
            break;
        }
        // 1/t reverses order on (0, 1)
        (xn, xd, yn, yd) = (yd, ry, xd, rx);
    }
    let mut it = quotients.into_iter();
    let a0 = it.next()?;
    Some(ContinuedFraction {
        a0,
        partials: it.collect(),
    })
}
