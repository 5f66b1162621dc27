//! The modified equation of forward Euler on `y' = y^2`.
//!
//! Euler with step `h` tracks, at grid points, the solution of
//! `Y' = B(hY) Y^2` far better than it tracks `y' = y^2`, where
//! `B(v) = sum c_n v^n` with `c_0 = 1` and
//! `c_n = -(1/n) sum_{i=1}^{n} binom(n-i+2, i+1) c_{n-i}`.
//! The series satisfies `B(v + v^2) (1 + v)^2 = (1 + 2v) B(v)` and diverges.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{PowerSeries, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModEqError {
    #[error("solution is singular at t = {0}")]
    Singular(Rational),
    #[error("solution blows up at t = {blowup} inside [0, {t_end}]")]
    BlowUpInWindow { blowup: f64, t_end: f64 },
    #[error("step sizes must form a decreasing geometric progression of at least 3 entries")]
    NotGeometric,
    #[error("t_end = {t_end} is not a whole number of steps of h = {h}")]
    NonIntegralSteps { t_end: f64, h: f64 },
    #[error("reference integrator could not reach 1% of the Euler deviation for h = {h}")]
    ReferenceTooCoarse { h: f64 },
    #[error("coefficient growth needs N >= 5, got {0}")]
    OrderTooSmall(usize),
}

fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    (0..b).fold(BigInt::one(), |acc, i| acc * (a - i) / (i + 1))
}

/// `c_0..=c_N` of `B(v)` from the recurrence.
pub fn labelle_coeffs(order: usize) -> Vec<Rational> {
    let mut c: Vec<Rational> = vec![Rational::one()];
    for n in 1..=order as i64 {
        let sum: Rational = (1..=n)
            .map(|i| Rational::from_integer(binom(n - i + 2, i + 1)) * &c[(n - i) as usize])
            .sum();
        c.push(-sum / Rational::from_integer(n.into()));
    }
    c
}

/// `B(v)` as a power series truncated at `order`.
pub fn labelle_series(order: usize) -> PowerSeries {
    PowerSeries::new(labelle_coeffs(order), order)
}

/// The same coefficients by matching the Taylor expansion of
/// `Y(t + h) = Y + h Y^2` under the ansatz `Y' = sum c_k h^k Y^{k+2}`.
///
/// Each derivative `Y^(m)` is a sum of monomials `h^a Y^{a+m+1}`, so it is
/// stored as the coefficient list `d[m][a]`. Applying `d/dt = Y' d/dY` to
/// `h^a Y^{a+m+1}` gives `(a+m+1) h^a Y^{a+m} Y'`. The `h^{j+1}` terms of
/// `sum_m h^m Y^(m) / m!` must vanish for `j >= 1` and give `Y^2` for
/// `j = 0`; the only unknown in that condition is `c_j`, via `m = 1`.
pub fn ansatz_coeffs(order: usize) -> Vec<Rational> {
    let n = order + 1;
    let mut c: Vec<Rational> = Vec::with_capacity(n);
    // derivs[m][a], m = 1..=n, a = 0..n
    let mut derivs = vec![vec![Rational::zero(); n]; n + 1];
    let mut factorial = vec![Rational::one(); n + 1];
    for m in 1..=n {
        factorial[m] = &factorial[m - 1] * Rational::from_integer(m.into());
    }
    for j in 0..n {
        let mut cj = if j == 0 { Rational::one() } else { Rational::zero() };
        for m in 2..=j + 1 {
            cj -= &derivs[m][j + 1 - m] / &factorial[m];
        }
        c.push(cj.clone());
        derivs[1][j] = cj;
        // bring every derivative's coefficients up to total index j
        for m in 1..n {
            for a in 0..=j {
                let b = j - a;
                let weight = Rational::from_integer((a + m + 1).into());
                let add = &weight * &derivs[m][a] * &c[b];
                if !add.is_zero() {
                    derivs[m + 1][j] += add;
                }
            }
        }
    }
    c
}

/// `B_N(v + v^2) (1 + v)^2 - (1 + 2v) B_N(v)` truncated at `N`.
pub fn functional_eq_residual(order: usize) -> PowerSeries {
    let b = labelle_series(order);
    let shift = PowerSeries::from_i64(&[0, 1, 1], order);
    let square = PowerSeries::from_i64(&[1, 2, 1], order);
    let linear = PowerSeries::from_i64(&[1, 2], order);
    let lhs = b
        .compose(&shift, order)
        .and_then(|s| s.mul(&square, order))
        .expect("orders agree");
    let rhs = linear.mul(&b, order).expect("orders agree");
    lhs.sub(&rhs).expect("orders agree")
}

/// `|c_n|^(1/n)` for `n = 1..=N`.
pub fn coeff_growth(order: usize) -> Result<Vec<f64>, ModEqError> {
    if order < 5 {
        return Err(ModEqError::OrderTooSmall(order));
    }
    Ok(labelle_coeffs(order)
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| {
            let a = c.abs();
            let ln = ln_big(a.numer()) - ln_big(a.denom());
            (ln / n as f64).exp()
        })
        .collect())
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `y_{k+1} = y_k + h y_k^2`, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTrace {
    pub h: Rational,
    pub t0: Rational,
    pub y: Vec<Rational>,
}

pub fn euler_trace(y0: &Rational, h: &Rational, n: usize) -> EulerTrace {
    let mut y = Vec::with_capacity(n + 1);
    y.push(y0.clone());
    for k in 0..n {
        let yk = &y[k];
        let next = yk + h * yk * yk;
        y.push(next);
    }
    EulerTrace {
        h: h.clone(),
        t0: Rational::zero(),
        y,
    }
}

/// Euler in double precision, used for error studies over many steps.
pub fn euler_f64(y0: f64, h: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut y = y0;
    out.push(y);
    for _ in 0..n {
        y += h * y * y;
        out.push(y);
    }
    out
}

/// `y(t) = y0 / (1 - y0 (t - t0))`.
pub fn exact_solution(y0: &Rational, t0: &Rational, t: &Rational) -> Result<Rational, ModEqError> {
    let denom = Rational::one() - y0 * (t - t0);
    if denom.is_zero() {
        return Err(ModEqError::Singular(t.clone()));
    }
    Ok(y0 / denom)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderStudy {
    pub order: usize,
    pub step_sizes: Vec<f64>,
    pub max_errors: Vec<f64>,
    /// Reference substeps per Euler step actually used for each `h`.
    pub substeps: Vec<usize>,
    pub fitted_order: f64,
}

fn modified_rhs(coeffs: &[f64], h: f64, y: f64) -> f64 {
    let v = h * y;
    let b = coeffs.iter().rev().fold(0.0, |acc, c| acc * v + c);
    b * y * y
}

/// Classical RK4 on `Y' = B_N(hY) Y^2`, `substeps` steps per Euler step,
/// sampled at the `n + 1` Euler grid points.
fn reference_grid(coeffs: &[f64], y0: f64, h: f64, n: usize, substeps: usize) -> Vec<f64> {
    let dt = h / substeps as f64;
    let f = |y: f64| modified_rhs(coeffs, h, y);
    let mut y = y0;
    let mut out = Vec::with_capacity(n + 1);
    out.push(y);
    for _ in 0..n {
        for _ in 0..substeps {
            let k1 = f(y);
            let k2 = f(y + 0.5 * dt * k1);
            let k3 = f(y + 0.5 * dt * k2);
            let k4 = f(y + dt * k3);
            y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        out.push(y);
    }
    out
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Least-squares slope of `ln err` against `ln h`.
pub fn fit_order(step_sizes: &[f64], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = step_sizes.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

const MAX_SUBSTEPS: usize = 1 << 12;

/// Measures how closely Euler tracks the order-`N` modified equation.
///
/// For each `h`, Euler runs from `y0` to `t_end` and the modified equation
/// is integrated with RK4. The RK4 substep is halved until two successive
/// references differ by less than 1% of the measured Euler deviation.
pub fn order_study(
    y0: f64,
    t_end: f64,
    order: usize,
    step_sizes: &[f64],
) -> Result<OrderStudy, ModEqError> {
    if step_sizes.len() < 3 {
        return Err(ModEqError::NotGeometric);
    }
    let ratio = step_sizes[1] / step_sizes[0];
    let geometric = ratio > 0.0
        && ratio < 1.0
        && step_sizes
            .windows(2)
            .all(|w| w[0] > 0.0 && ((w[1] / w[0]) / ratio - 1.0).abs() < 1e-9);
    if !geometric {
        return Err(ModEqError::NotGeometric);
    }
    if y0 > 0.0 && t_end >= 1.0 / y0 {
        return Err(ModEqError::BlowUpInWindow {
            blowup: 1.0 / y0,
            t_end,
        });
    }
    let coeffs: Vec<f64> = labelle_coeffs(order)
        .iter()
        .map(|c| c.to_f64().expect("finite"))
        .collect();

    let per_h: Vec<Result<(f64, usize), ModEqError>> = step_sizes
        .par_iter()
        .map(|&h| {
            let steps = (t_end / h).round();
            if steps < 1.0 || (steps * h - t_end).abs() > 1e-9 * t_end.abs().max(1.0) {
                return Err(ModEqError::NonIntegralSteps { t_end, h });
            }
            let n = steps as usize;
            let euler = euler_f64(y0, h, n);
            let mut substeps = 4;
            let mut coarse = reference_grid(&coeffs, y0, h, n, substeps);
            while substeps < MAX_SUBSTEPS {
                let fine = reference_grid(&coeffs, y0, h, n, substeps * 2);
                let err = max_abs_diff(&euler, &fine);
                if max_abs_diff(&coarse, &fine) <= 0.01 * err {
                    return Ok((err, substeps * 2));
                }
                coarse = fine;
                substeps *= 2;
            }
            Err(ModEqError::ReferenceTooCoarse { h })
        })
        .collect();

    let mut max_errors = Vec::with_capacity(step_sizes.len());
    let mut substeps = Vec::with_capacity(step_sizes.len());
    for r in per_h {
        let (e, s) = r?;
        max_errors.push(e);
        substeps.push(s);
    }
    Ok(OrderStudy {
        order,
        step_sizes: step_sizes.to_vec(),
        fitted_order: fit_order(step_sizes, &max_errors),
        max_errors,
        substeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    #[test]
    fn leading_coefficients() {
        assert_eq!(
            labelle_coeffs(3),
            vec![int(1), int(-1), ratio(3, 2), ratio(-8, 3)]
        );
        assert_eq!(labelle_coeffs(7)[7], ratio(-9427, 210));
        assert_eq!(labelle_coeffs(0), vec![int(1)]);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(2, 3), BigInt::zero());
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(6, 3), BigInt::from(20));
    }

    #[test]
    fn ansatz_small_orders() {
        assert_eq!(ansatz_coeffs(0), vec![int(1)]);
        assert_eq!(ansatz_coeffs(2), vec![int(1), int(-1), ratio(3, 2)]);
        assert_eq!(ansatz_coeffs(10), labelle_coeffs(10));
    }

    #[test]
    fn functional_equation_small_orders() {
        assert!(functional_eq_residual(0).is_zero());
        assert!(functional_eq_residual(3).is_zero());
        assert!(functional_eq_residual(7).is_zero());
    }

    #[test]
    fn growth() {
        assert!(matches!(coeff_growth(4), Err(ModEqError::OrderTooSmall(4))));
        let g = coeff_growth(20).unwrap();
        assert_eq!(g.len(), 20);
        assert!(g.iter().all(|x| x.is_finite() && *x > 0.0));
        assert!(g[19] > g[4]);
        let c7 = (9427.0f64 / 210.0).powf(1.0 / 7.0);
        assert!((g[6] - c7).abs() < 1e-12);
    }

    #[test]
    fn euler_examples() {
        let t = euler_trace(&int(1), &int(1), 4);
        assert_eq!(t.y, vec![int(1), int(2), int(6), int(42), int(1806)]);
        let z = euler_trace(&int(0), &ratio(1, 7), 5);
        assert!(z.y.iter().all(Zero::is_zero));
    }

    #[test]
    fn exact_solution_examples() {
        assert_eq!(exact_solution(&int(1), &int(0), &ratio(1, 2)).unwrap(), int(2));
        assert_eq!(exact_solution(&int(0), &int(0), &int(100)).unwrap(), int(0));
        assert_eq!(
            exact_solution(&int(1), &int(0), &int(1)),
            Err(ModEqError::Singular(int(1)))
        );
    }

    #[test]
    fn order_study_rejects_bad_input() {
        assert_eq!(
            order_study(0.2, 1.0, 2, &[0.1, 0.05, 0.02]),
            Err(ModEqError::NotGeometric)
        );
        assert_eq!(order_study(0.2, 1.0, 2, &[0.1, 0.05]), Err(ModEqError::NotGeometric));
        assert!(matches!(
            order_study(2.0, 1.0, 2, &[0.1, 0.05, 0.025]),
            Err(ModEqError::BlowUpInWindow { .. })
        ));
        assert!(matches!(
            order_study(0.2, 1.0, 2, &[0.3, 0.15, 0.075]),
            Err(ModEqError::NonIntegralSteps { .. })
        ));
    }

    #[test]
    fn fit_of_exact_power_law() {
        let hs = [0.1, 0.05, 0.025];
        let errs: Vec<f64> = hs.iter().map(|h: &f64| 3.0 * h.powi(3)).collect();
        assert!((fit_order(&hs, &errs) - 3.0).abs() < 1e-12);
    }
}
