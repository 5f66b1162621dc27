//! Independent oracles shared by the integration tests. None of these
//! call into the library's own algorithms.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

/// k-th prime (1-based) by trial division.
pub fn trial_division_nth_prime(k: usize) -> u64 {
    let mut found = 0;
    let mut n = 1u64;
    while found < k {
        n += 1;
        if (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d)) {
            found += 1;
        }
    }
    n
}

/// Decimal digits of pi by the Rabinowitz-Wagon spigot.
pub fn spigot_pi_digits(n: usize) -> Vec<u8> {
    let len = (n + 2) * 10 / 3 + 1;
    let mut a = vec![2u64; len];
    let mut out = Vec::with_capacity(n + 2);
    let mut nines = 0usize;
    let mut predigit: Option<u64> = None;
    for _ in 0..n + 2 {
        let mut q = 0u64;
        for i in (1..=len as u64).rev() {
            let x = 10 * a[(i - 1) as usize] + q * i;
            a[(i - 1) as usize] = x % (2 * i - 1);
            q = x / (2 * i - 1);
        }
        a[0] = q % 10;
        q /= 10;
        match q {
            9 => nines += 1,
            10 => {
                out.push((predigit.unwrap_or(0) + 1) as u8);
                out.extend(std::iter::repeat_n(0u8, nines));
                predigit = Some(0);
                nines = 0;
            }
            _ => {
                if let Some(p) = predigit {
                    out.push(p as u8);
                }
                predigit = Some(q);
                out.extend(std::iter::repeat_n(9u8, nines));
                nines = 0;
            }
        }
    }
    out.truncate(n);
    out
}

/// Partial quotients of p/q (q > 0) by integer division with floor.
pub fn euclid_quotients(p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let (mut p, mut q) = (p.clone(), q.clone());
    let mut out = Vec::new();
    while !q.is_zero() {
        let (a, r) = p.div_mod_floor(&q);
        out.push(a);
        p = q;
        q = r;
    }
    out
}

pub fn fibonacci(n: usize) -> Vec<u64> {
    let mut f = vec![1u64, 1];
    while f.len() < n {
        let k = f.len();
        f.push(f[k - 1] + f[k - 2]);
    }
    f.truncate(n);
    f
}

/// Number of decimal digits of |n|.
pub fn digit_count(n: &BigInt) -> usize {
    n.abs().to_string().len()
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_explab")
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("EXPLAB_MAX_DIGITS")
        .output()
        .expect("binary runs")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Every golden artifact: file name and the arguments that produce it.
pub const GOLDEN_RUNS: &[(&str, &[&str])] = &[
    ("cf_newton5.txt", &["cf", "665857/470832"]),
    ("cf_sqrt7.txt", &["cf", "sqrt", "7"]),
    ("cf_e.csv", &["--format", "csv", "cf", "e", "--digits", "40"]),
    (
        "root_newton.csv",
        &["--format", "csv", "root", "--method", "newton", "--poly", "x^2-2", "--x0", "1", "--steps", "5", "--decimals", "12"],
    ),
    ("root_newton.txt", &["root", "--method", "newton", "--poly", "x^2-2", "--x0", "1", "--steps", "4", "--decimals", "12"]),
    (
        "root_secant.csv",
        &["--format", "csv", "root", "--method", "secant", "--poly", "x^2-2", "--x0", "1", "--x1", "3/2", "--steps", "6"],
    ),
    ("root_halley.csv", &["--format", "csv", "root", "--method", "halley", "--poly", "x^2-2", "--x0", "1", "--steps", "3"]),
    ("modeq_coeffs.csv", &["--format", "csv", "modeq", "--order", "12"]),
    ("modeq_study.csv", &["--format", "csv", "modeq", "--order", "2", "--h", "1/40,1/80,1/160"]),
    ("julia_shift.csv", &["--format", "csv", "julia", "--map", "shift", "--seed", "-0.5", "--wanted", "1000"]),
    ("julia_zeros.csv", &["--format", "csv", "julia", "--map", "shift", "--seed", "-1", "--wanted", "1000"]),
    ("julia_shift.svg", &["--format", "svg", "julia", "--map", "shift", "--seed", "-0.5", "--wanted", "2000", "--size", "400"]),
    ("julia_quadratic.csv", &["--format", "csv", "julia", "--map", "quadratic", "--c", "-1,0", "--seed", "0", "--wanted", "500"]),
    ("cgr_primes.csv", &["--format", "csv", "cgr", "primes"]),
    ("cgr_e.csv", &["--format", "csv", "cgr", "cf", "e"]),
    ("cgr_pi_digits.svg", &["--format", "svg", "cgr", "pi-digits", "--count", "1000", "--size", "256"]),
    ("cgr_lcg.csv", &["--format", "csv", "cgr", "lcg", "42", "--count", "1000"]),
    ("cgr_fasta.csv", &["--format", "csv", "cgr", "fasta", "tests/data/sample.fasta"]),
    ("cgr_sqrt2.json", &["--format", "json", "cgr", "cf", "sqrt2", "--count", "50"]),
];
