//! Newton, secant and Halley iteration on polynomials over exact rationals.
//!
//! Every iterate is an exact rational, so each one is the exact root of the
//! nearby equation `f(x) - f(x_k) = 0`; the residual `f(x_k)` is the
//! backward error. Iterations stop after a fixed number of steps, never on a
//! residual threshold.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::contfrac::cf_of_rational;
use crate::exact::{parse_rational, round_significant, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootFindError {
    #[error("derivative vanishes at iterate {step}")]
    DerivativeZero { step: usize },
    #[error("degenerate secant at iterate {step}: equal function values")]
    DegenerateSecant { step: usize },
    #[error("secant needs two distinct starting points")]
    EqualStartingPoints,
    #[error("halley denominator vanishes at iterate {step}")]
    HalleyDenominatorZero { step: usize },
    #[error("polynomial must have degree >= 1")]
    ConstantPolynomial,
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}

/// `f(x) = sum c_i x^i` with a nonzero leading coefficient and degree >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySpec {
    coeffs: Vec<Rational>,
}

impl PolySpec {
    /// Coefficients in ascending powers. Trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<Rational>) -> Result<Self, RootFindError> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(RootFindError::ConstantPolynomial);
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, RootFindError> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        horner(&self.coeffs, x)
    }

    /// `(f(x), f'(x), f''(x))` in one pass.
    pub fn eval_with_derivatives(&self, x: &Rational) -> (Rational, Rational, Rational) {
        let mut f = Rational::zero();
        let mut d1 = Rational::zero();
        let mut d2 = Rational::zero();
        for c in self.coeffs.iter().rev() {
            d2 = &d2 * x + &d1 * Rational::from_integer(2.into());
            d1 = &d1 * x + &f;
            f = &f * x + c;
        }
        (f, d1, d2)
    }

    pub fn derivative_coeffs(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i.into()))
            .collect()
    }
}

fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

impl fmt::Display for PolySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            let coeff = if mag.denom().is_one() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match (show_coeff, i) {
                (_, 0) => write!(f, "{coeff}")?,
                (true, 1) => write!(f, "{coeff}*x")?,
                (false, 1) => write!(f, "x")?,
                (true, _) => write!(f, "{coeff}*x^{i}")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Accepts sums of terms such as `x^2-2`, `3*x^3 - x + 1/2`, `-2x`.
impl FromStr for PolySpec {
    type Err = RootFindError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RootFindError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-Rational::one(), &term[1..]),
                Some(b'+') => (Rational::one(), &term[1..]),
                _ => (Rational::one(), term),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coeff, power) = match body.find('x') {
                None => (
                    parse_rational(body.trim_matches(['(', ')'])).map_err(|_| err())?,
                    0usize,
                ),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let coeff = if head.is_empty() {
                        Rational::one()
                    } else {
                        parse_rational(head.trim_matches(['(', ')'])).map_err(|_| err())?
                    };
                    let tail = &body[pos + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|p| p.parse::<usize>().ok())
                            .ok_or_else(err)?
                    };
                    (coeff, power)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rational::zero());
            }
            coeffs[power] += sign * coeff;
        }
        PolySpec::new(coeffs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Newton,
    Secant,
    Halley,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Newton => "newton",
            Method::Secant => "secant",
            Method::Halley => "halley",
        })
    }
}

/// Exact iterates of one method together with `f` at each of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace {
    pub method: Method,
    pub f: PolySpec,
    pub iterates: Vec<Rational>,
    pub residuals: Vec<Rational>,
}

impl IterationTrace {
    fn from_iterates(method: Method, f: &PolySpec, iterates: Vec<Rational>) -> Self {
        let residuals = iterates.iter().map(|x| f.eval(x)).collect();
        Self {
            method,
            f: f.clone(),
            iterates,
            residuals,
        }
    }
}

pub fn newton_step(f: &PolySpec, x: &Rational) -> Result<Rational, RootFindError> {
    newton_step_at(f, x, 0)
}

fn newton_step_at(f: &PolySpec, x: &Rational, step: usize) -> Result<Rational, RootFindError> {
    let (fx, dfx, _) = f.eval_with_derivatives(x);
    if dfx.is_zero() {
        return Err(RootFindError::DerivativeZero { step });
    }
    Ok(x - fx / dfx)
}

/// `x0` plus `n` Newton steps.
pub fn newton_trace(f: &PolySpec, x0: &Rational, n: usize) -> Result<IterationTrace, RootFindError> {
    let mut xs = vec![x0.clone()];
    for step in 0..n {
        let next = newton_step_at(f, &xs[step], step)?;
        xs.push(next);
    }
    Ok(IterationTrace::from_iterates(Method::Newton, f, xs))
}

/// `x0, x1` plus `n` secant steps.
pub fn secant_trace(
    f: &PolySpec,
    x0: &Rational,
    x1: &Rational,
    n: usize,
) -> Result<IterationTrace, RootFindError> {
    if x0 == x1 {
        return Err(RootFindError::EqualStartingPoints);
    }
    let mut xs = vec![x0.clone(), x1.clone()];
    let mut f_prev = f.eval(x0);
    let mut f_cur = f.eval(x1);
    for _ in 0..n {
        let k = xs.len() - 1;
        if f_cur == f_prev {
            return Err(RootFindError::DegenerateSecant { step: k });
        }
        let next = &xs[k] - &f_cur * (&xs[k] - &xs[k - 1]) / (&f_cur - &f_prev);
        f_prev = std::mem::replace(&mut f_cur, f.eval(&next));
        xs.push(next);
    }
    Ok(IterationTrace::from_iterates(Method::Secant, f, xs))
}

/// `x0` plus `n` Halley steps, `x - 2 f f' / (2 f'^2 - f f'')`.
pub fn halley_trace(f: &PolySpec, x0: &Rational, n: usize) -> Result<IterationTrace, RootFindError> {
    let two = Rational::from_integer(2.into());
    let mut xs = vec![x0.clone()];
    for step in 0..n {
        let x = &xs[step];
        let (fx, d1, d2) = f.eval_with_derivatives(x);
        let denom = &two * &d1 * &d1 - &fx * &d2;
        if denom.is_zero() {
            return Err(RootFindError::HalleyDenominatorZero { step });
        }
        let next = x - &two * &fx * &d1 / denom;
        xs.push(next);
    }
    Ok(IterationTrace::from_iterates(Method::Halley, f, xs))
}

/// Exact residual `f(x)`: `x` is the exact root of `f(t) - f(x) = 0`.
pub fn backward_error(x: &Rational, f: &PolySpec) -> Rational {
    f.eval(x)
}

/// Partial quotients after `a0` in the canonical expansion of each iterate.
pub fn cf_profile(trace: &IterationTrace) -> Vec<usize> {
    trace
        .iterates
        .iter()
        .map(|x| cf_of_rational(x).partials.len())
        .collect()
}

/// Number of convergents (quotients including `a0`) of each iterate.
pub fn convergent_counts(trace: &IterationTrace) -> Vec<usize> {
    cf_profile(trace).into_iter().map(|n| n + 1).collect()
}

/// Replays a method the way a `sig`-digit decimal calculator would: every
/// arithmetic result is rounded half away from zero to `sig` significant
/// digits. Returns `n + 1` iterates (`n + 2` for the secant method).
pub fn calculator_trace(
    method: Method,
    f: &PolySpec,
    starts: &[Rational],
    n: usize,
    sig: usize,
) -> Result<Vec<Rational>, RootFindError> {
    let r = |x: Rational| round_significant(&x, sig);
    let eval = |coeffs: &[Rational], x: &Rational| {
        coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| r(r(acc * x) + c))
    };
    let d1 = f.derivative_coeffs();
    let d2: Vec<Rational> = d1
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(i.into()))
        .collect();
    let two = Rational::from_integer(2.into());
    let mut xs: Vec<Rational> = starts.iter().map(|x| r(x.clone())).collect();
    for step in 0..n {
        let x = xs.last().unwrap().clone();
        let next = match method {
            Method::Newton => {
                let fx = eval(f.coeffs(), &x);
                let dfx = eval(&d1, &x);
                if dfx.is_zero() {
                    return Err(RootFindError::DerivativeZero { step });
                }
                r(&x - r(fx / dfx))
            }
            Method::Secant => {
                let prev = &xs[xs.len() - 2];
                let fx = eval(f.coeffs(), &x);
                let fp = eval(f.coeffs(), prev);
                let df = r(&fx - &fp);
                if df.is_zero() {
                    return Err(RootFindError::DegenerateSecant { step: xs.len() - 1 });
                }
                let num = r(fx * r(&x - prev));
                r(&x - r(num / df))
            }
            Method::Halley => {
                let fx = eval(f.coeffs(), &x);
                let f1 = eval(&d1, &x);
                let f2 = if d2.is_empty() { Rational::zero() } else { eval(&d2, &x) };
                let denom = r(r(&two * r(&f1 * &f1)) - r(&fx * &f2));
                if denom.is_zero() {
                    return Err(RootFindError::HalleyDenominatorZero { step });
                }
                let num = r(&two * r(&fx * &f1));
                r(&x - r(num / denom))
            }
        };
        xs.push(next);
    }
    Ok(xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, parse_rational, ratio};

    fn x2m2() -> PolySpec {
        PolySpec::from_i64(&[-2, 0, 1]).unwrap()
    }

    #[test]
    fn newton_steps() {
        let f = x2m2();
        assert_eq!(newton_step(&f, &int(1)).unwrap(), ratio(3, 2));
        assert_eq!(newton_step(&f, &ratio(577, 408)).unwrap(), ratio(665857, 470832));
        let lin = PolySpec::from_i64(&[-1, 1]).unwrap();
        assert_eq!(newton_step(&lin, &int(5)).unwrap(), int(1));
        assert_eq!(newton_step(&f, &int(0)), Err(RootFindError::DerivativeZero { step: 0 }));
    }

    #[test]
    fn newton_matches_average_form() {
        let f = x2m2();
        let mut x = int(1);
        for _ in 0..5 {
            let avg = (&x + int(2) / &x) / int(2);
            x = newton_step(&f, &x).unwrap();
            assert_eq!(x, avg);
        }
    }

    #[test]
    fn newton_trace_reports_failing_step() {
        // x^3 - 3x has f'(1) = 0; start at 1 fails at the first step
        let f = PolySpec::from_i64(&[0, -3, 0, 1]).unwrap();
        assert_eq!(
            newton_trace(&f, &int(1), 3),
            Err(RootFindError::DerivativeZero { step: 0 })
        );
        // f = x^2 + 1 from 1: 1 -> 0 -> f'(0) = 0 at step 1
        let g = PolySpec::from_i64(&[1, 0, 1]).unwrap();
        assert_eq!(
            newton_trace(&g, &int(1), 3),
            Err(RootFindError::DerivativeZero { step: 1 })
        );
    }

    #[test]
    fn secant_examples() {
        let f = x2m2();
        let t = secant_trace(&f, &int(1), &ratio(3, 2), 2).unwrap();
        assert_eq!(t.iterates[2..], [ratio(7, 5), ratio(41, 29)]);
        assert_eq!(
            secant_trace(&f, &int(1), &int(1), 2),
            Err(RootFindError::EqualStartingPoints)
        );
        // symmetric points of an even function give equal values
        assert_eq!(
            secant_trace(&f, &int(-1), &int(1), 1),
            Err(RootFindError::DegenerateSecant { step: 1 })
        );
    }

    #[test]
    fn halley_examples() {
        let f = x2m2();
        let t = halley_trace(&f, &int(1), 2).unwrap();
        assert_eq!(t.iterates, vec![int(1), ratio(7, 5), ratio(1393, 985)]);
        assert_eq!(cf_profile(&t), vec![0, 2, 8]);
        let lin = PolySpec::from_i64(&[-1, 1]).unwrap();
        assert_eq!(halley_trace(&lin, &int(5), 1).unwrap().iterates[1], int(1));
        let cube = PolySpec::from_i64(&[0, 0, 0, 1]).unwrap();
        assert_eq!(
            halley_trace(&cube, &int(0), 1),
            Err(RootFindError::HalleyDenominatorZero { step: 0 })
        );
    }

    #[test]
    fn backward_error_examples() {
        let f = x2m2();
        assert_eq!(backward_error(&ratio(17, 12), &f), ratio(1, 144));
        assert_eq!(backward_error(&ratio(577, 408), &f), ratio(1, 166464));
        assert_eq!(backward_error(&int(1), &f), int(-1));
    }

    #[test]
    fn profile_examples() {
        let t = newton_trace(&x2m2(), &int(1), 4).unwrap();
        assert_eq!(cf_profile(&t), vec![0, 1, 3, 7, 15]);
        let single = newton_trace(&x2m2(), &int(3), 0).unwrap();
        assert_eq!(cf_profile(&single), vec![0]);
    }

    #[test]
    fn parse_polynomials() {
        assert_eq!("x^2-2".parse::<PolySpec>().unwrap(), x2m2());
        assert_eq!("- 2 + x^2".parse::<PolySpec>().unwrap(), x2m2());
        let p: PolySpec = "3*x^3 - x + 1/2".parse().unwrap();
        assert_eq!(p.coeffs(), &[ratio(1, 2), int(-1), int(0), int(3)]);
        let q: PolySpec = "-2x+1".parse().unwrap();
        assert_eq!(q.coeffs(), &[int(1), int(-2)]);
        assert_eq!("5".parse::<PolySpec>(), Err(RootFindError::ConstantPolynomial));
        assert!("x^".parse::<PolySpec>().is_err());
        assert!("".parse::<PolySpec>().is_err());
        assert!("y+1".parse::<PolySpec>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^2-2", "3*x^3-x+(1/2)", "-x+1"] {
            let p: PolySpec = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(p.to_string().parse::<PolySpec>().unwrap(), p);
        }
    }

    #[test]
    fn derivatives() {
        let p: PolySpec = "x^3-2x+5".parse().unwrap();
        let (f, d1, d2) = p.eval_with_derivatives(&int(2));
        assert_eq!((f, d1, d2), (int(9), int(10), int(12)));
    }

    #[test]
    fn twelve_digit_calculator_replays_hand_trace() {
        let xs = calculator_trace(Method::Newton, &x2m2(), &[int(1)], 3, 12).unwrap();
        assert_eq!(xs[2], parse_rational("1.41666666667").unwrap());
        assert_eq!(xs[3], parse_rational("1.41421568628").unwrap());
    }
}
