//! Exact integer and rational arithmetic, plus truncated formal power series
//! with rational coefficients.
//!
//! Integers and rationals are the `num` crate's arbitrary-precision types.
//! `BigRational` reduces on construction and keeps the denominator positive,
//! so structural equality is semantic equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("series order {have} is below the requested order {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("mixed truncation orders {left} and {right}")]
    MixedOrder { left: usize, right: usize },
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}

/// Builds `n/d` in lowest terms with a positive denominator.
pub fn rational_make(n: Integer, d: Integer) -> Result<Rational, ExactError> {
    if d.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    Ok(Rational::new(n, d))
}

/// Shorthand for small literals. Panics on a zero denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    rational_make(n.into(), d.into()).expect("nonzero denominator")
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.125"`.
/// Decimals are read exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let err = || ExactError::Parse(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: Integer = p.trim().parse().map_err(|_| err())?;
        let q: Integer = q.trim().parse().map_err(|_| err())?;
        return rational_make(p, q);
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut num: Integer = if digits.is_empty() {
            Integer::zero()
        } else {
            digits.parse().map_err(|_| err())?
        };
        if negative {
            num = -num;
        }
        let den = num_traits::pow(Integer::from(10u8), frac.len());
        return rational_make(num, den);
    }
    let n: Integer = t.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

pub fn floor(r: &Rational) -> Integer {
    r.numer().div_floor(r.denom())
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - Rational::from_integer(floor(r))
}

fn pow10(k: usize) -> Integer {
    num_traits::pow(Integer::from(10u8), k)
}

/// Decimal expansion with `digits` places after the point, truncated toward
/// zero (never rounded).
pub fn decimal_truncated(r: &Rational, digits: usize) -> String {
    let negative = r.is_negative();
    let scaled = (r.numer().abs() * pow10(digits)) / r.denom();
    let s = scaled.to_string();
    let body = if digits == 0 {
        s
    } else {
        let padded = format!("{s:0>width$}", width = digits + 1);
        let (whole, fraction) = padded.split_at(padded.len() - digits);
        format!("{whole}.{fraction}")
    };
    if negative && !scaled.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// Decimal exponent `e` with `10^e <= |r| < 10^(e+1)`. `r` must be nonzero.
pub fn decimal_exponent(r: &Rational) -> i64 {
    let a = r.abs();
    let num = a.numer();
    let den = a.denom();
    // estimate from digit counts, then correct by at most one
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    loop {
        let lower = power_of_ten(e);
        if a < lower {
            e -= 1;
            continue;
        }
        if a >= power_of_ten(e + 1) {
            e += 1;
            continue;
        }
        return e;
    }
}

fn power_of_ten(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(pow10(e as usize))
    } else {
        Rational::new(Integer::one(), pow10((-e) as usize))
    }
}

/// Scientific notation with `sig` significant digits, truncated:
/// `1/470832^2` with two digits renders as `"4.5e-12"`.
pub fn scientific_truncated(r: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let e = decimal_exponent(r);
    let mantissa = r / power_of_ten(e);
    format!("{}e{}", decimal_truncated(&mantissa, sig - 1), e)
}

/// Rounds to `sig` significant decimal digits, halves away from zero.
/// This is the rounding rule of a fixed-width decimal calculator.
pub fn round_significant(r: &Rational, sig: usize) -> Rational {
    assert!(sig >= 1);
    if r.is_zero() {
        return r.clone();
    }
    let shift = sig as i64 - 1 - decimal_exponent(r);
    let scale = power_of_ten(shift);
    let scaled = r.abs() * &scale;
    let half = ratio(1, 2);
    let rounded = Rational::from_integer(floor(&(scaled + half)));
    let out = rounded / scale;
    if r.is_negative() {
        -out
    } else {
        out
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A formal power series in `v` truncated at order `N`: coefficients of
/// `v^0..=v^N` are stored and exact, everything above is discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Pads with zeros up to `order`; coefficients past `order` are dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::one()], order)
    }

    pub fn from_i64(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Result<Self, ExactError> {
        self.require(order)?;
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn require(&self, need: usize) -> Result<(), ExactError> {
        if self.order() < need {
            Err(ExactError::InsufficientOrder {
                have: self.order(),
                need,
            })
        } else {
            Ok(())
        }
    }

    fn same_order(&self, other: &Self) -> Result<(), ExactError> {
        if self.order() != other.order() {
            Err(ExactError::MixedOrder {
                left: self.order(),
                right: other.order(),
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Cauchy product truncated at `order`.
    pub fn mul(&self, other: &Self, order: usize) -> Result<Self, ExactError> {
        self.require(order)?;
        other.require(order)?;
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// `self(g(v))` truncated at `order`. `g` must vanish at zero, so
    /// coefficient `k` of the result only involves `self`'s first `k + 1`
    /// coefficients.
    pub fn compose(&self, g: &Self, order: usize) -> Result<Self, ExactError> {
        if !g.coeffs[0].is_zero() {
            return Err(ExactError::NonzeroConstantTerm);
        }
        self.require(order)?;
        g.require(order)?;
        let g = g.truncate(order)?;
        // Horner: a0 + g (a1 + g (a2 + ...))
        let mut acc = Self::zero(order);
        for a in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(&g, order)?;
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
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
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "v")?;
                    } else {
                        write!(f, "v^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(v^{})", self.order() + 1)
    }
}
