//! Base-4 symbol streams for the chaos game: primes, decimal digits of pi,
//! partial quotients of named constants, a pinned LCG, and FASTA input.
//!
//! The constants are produced as rigorous rational brackets in scaled
//! integer arithmetic, so every digit or quotient handed out is certified.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::contfrac::cf_of_bracket;
use crate::exact::{floor, Integer, Rational};

/// Default ceiling, in decimal digits, for certifying partial quotients.
pub const DEFAULT_MAX_DIGITS: usize = 200_000;

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("prime index must be >= 1")]
    ZeroPrimeIndex,
    #[error("precision ceiling of {max_digits} digits reached with {certified} of {wanted} quotients certified")]
    PrecisionCeiling {
        certified: usize,
        wanted: usize,
        max_digits: usize,
    },
    #[error("symbol {0} is outside 0..=3")]
    InvalidSymbol(u8),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("no A/C/G/T bases found ({skipped} characters skipped)")]
    NoBases { skipped: usize },
    #[error("unknown constant {0:?} (expected sqrt2, e or pi)")]
    UnknownConstant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Constant {
    Sqrt2,
    E,
    Pi,
}

impl FromStr for Constant {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sqrt2" => Ok(Constant::Sqrt2),
            "e" => Ok(Constant::E),
            "pi" => Ok(Constant::Pi),
            _ => Err(SequenceError::UnknownConstant(s.to_string())),
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constant::Sqrt2 => "sqrt2",
            Constant::E => "e",
            Constant::Pi => "pi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorKind {
    Primes { offset: usize },
    PiDigits,
    CfQuotients { constant: Constant },
    Lcg { seed: u32 },
    Fasta { path: String, skipped: usize },
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    pub count: usize,
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GeneratorKind::Primes { offset } => write!(f, "primes offset={offset}")?,
            GeneratorKind::PiDigits => write!(f, "pi-digits")?,
            GeneratorKind::CfQuotients { constant } => write!(f, "cf {constant}")?,
            GeneratorKind::Lcg { seed } => write!(f, "lcg seed={seed}")?,
            GeneratorKind::Fasta { path, skipped } => write!(f, "fasta {path} skipped={skipped}")?,
            GeneratorKind::Explicit => write!(f, "explicit")?,
        }
        write!(f, " n={}", self.count)
    }
}

/// A sequence of symbols in `0..=3` and where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStream {
    symbols: Vec<u8>,
    pub provenance: GeneratorSpec,
}

impl SymbolStream {
    pub fn new(symbols: Vec<u8>, kind: GeneratorKind) -> Result<Self, SequenceError> {
        if let Some(&bad) = symbols.iter().find(|&&s| s > 3) {
            return Err(SequenceError::InvalidSymbol(bad));
        }
        let count = symbols.len();
        Ok(Self {
            symbols,
            provenance: GeneratorSpec { kind, count },
        })
    }

    pub fn explicit(symbols: &[u8]) -> Result<Self, SequenceError> {
        Self::new(symbols.to_vec(), GeneratorKind::Explicit)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Compact digit string, e.g. `"3101112213"`.
    pub fn to_digit_string(&self) -> String {
        self.symbols.iter().map(|s| char::from(b'0' + s)).collect()
    }
}

fn mod4(n: &Integer) -> u8 {
    let r: Integer = n.mod_floor(&Integer::from(4));
    r.to_u8().expect("residue fits in u8")
}

/// All primes `<= limit`.
pub fn primes_up_to(limit: usize) -> Vec<usize> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Upper bound for the `k`-th prime: `k (ln k + ln ln k)` for `k >= 6`.
fn nth_prime_bound(k: usize) -> usize {
    if k < 6 {
        return 13;
    }
    let k = k as f64;
    (k * (k.ln() + k.ln().ln())).ceil() as usize + 1
}

/// The `k`-th prime, 1-based.
pub fn nth_prime(k: usize) -> Result<usize, SequenceError> {
    if k == 0 {
        return Err(SequenceError::ZeroPrimeIndex);
    }
    Ok(primes_up_to(nth_prime_bound(k))[k - 1])
}

/// `s_k = p_{offset + k} mod 4` for `k = 1..=n`.
pub fn prime_stream(offset: usize, n: usize) -> Result<SymbolStream, SequenceError> {
    let primes = primes_up_to(nth_prime_bound(offset + n.max(1)));
    let symbols = (1..=n).map(|k| (primes[offset + k - 1] % 4) as u8).collect();
    SymbolStream::new(symbols, GeneratorKind::Primes { offset })
}

/// `arctan(1/x) * scale` by the alternating series in integer arithmetic,
/// with a bound on the absolute error of the result.
fn arctan_inv_scaled(x: u32, scale: &Integer) -> (Integer, Integer) {
    let x2 = Integer::from(x) * x;
    let mut power = scale / x;
    let mut sum = Integer::zero();
    let mut terms = 0u64;
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
        terms += 1;
    }
    // each truncated power is off by < 2 and each term by < 3; the tail is
    // below the first vanished power, itself < 2
    (sum, Integer::from(3 * terms + 2))
}

/// Rational bracket `lo <= c <= hi` with width about `10^-digits`.
pub fn constant_bracket(c: Constant, digits: usize) -> (Rational, Rational) {
    let scale: Integer = num_traits::pow(Integer::from(10u8), digits);
    let (center, err) = match c {
        Constant::Sqrt2 => {
            let s = (Integer::from(2) * &scale * &scale).sqrt();
            return (
                Rational::new(s.clone(), scale.clone()),
                Rational::new(s + 1, scale),
            );
        }
        Constant::E => {
            let mut term = scale.clone();
            let mut sum = Integer::zero();
            let mut k = 0u64;
            while !term.is_zero() {
                sum += &term;
                k += 1;
                term /= k;
            }
            (sum, Integer::from(2 * k + 4))
        }
        Constant::Pi => {
            let (a5, e5) = arctan_inv_scaled(5, &scale);
            let (a239, e239) = arctan_inv_scaled(239, &scale);
            (a5 * 16 - a239 * 4, e5 * 16 + e239 * 4)
        }
    };
    (
        Rational::new(&center - &err, scale.clone()),
        Rational::new(center + err, scale),
    )
}

/// The first `n` decimal digits of pi, `3, 1, 4, 1, 5, ...`.
pub fn pi_digits(n: usize) -> Vec<u8> {
    if n == 0 {
        return Vec::new();
    }
    let mut guard = n.div_ceil(10) + 10;
    loop {
        let (lo, hi) = constant_bracket(Constant::Pi, n + guard);
        let shift = Rational::from_integer(num_traits::pow(Integer::from(10u8), n - 1));
        let a = floor(&(lo * &shift));
        if a == floor(&(hi * &shift)) {
            return a.to_string().bytes().map(|b| b - b'0').collect();
        }
        guard *= 2;
    }
}

pub fn pi_digit_stream(n: usize) -> SymbolStream {
    let symbols = pi_digits(n).into_iter().map(|d| d % 4).collect();
    SymbolStream::new(symbols, GeneratorKind::PiDigits).expect("residues are < 4")
}

/// The first `n` certified partial quotients of `c`, `a0` included.
/// Precision doubles from 32 digits until `n` quotients are certified or
/// `max_digits` is exceeded.
pub fn certified_quotients(
    c: Constant,
    n: usize,
    max_digits: usize,
) -> Result<Vec<Integer>, SequenceError> {
    let mut digits = 32usize;
    let mut certified = 0;
    while digits <= max_digits {
        let (lo, hi) = constant_bracket(c, digits);
        if let Some(cf) = cf_of_bracket(&lo, &hi) {
            certified = cf.len();
            if certified >= n {
                return Ok(cf.quotients().take(n).cloned().collect());
            }
        }
        digits *= 2;
    }
    Err(SequenceError::PrecisionCeiling {
        certified,
        wanted: n,
        max_digits,
    })
}

pub fn cf_quotient_stream(
    c: Constant,
    n: usize,
    max_digits: usize,
) -> Result<SymbolStream, SequenceError> {
    let symbols = certified_quotients(c, n, max_digits)?
        .iter()
        .map(mod4)
        .collect();
    SymbolStream::new(symbols, GeneratorKind::CfQuotients { constant: c })
}

/// `state <- 1664525 state + 1013904223 (mod 2^32)`; the symbol is the top
/// two bits of the new state.
pub fn lcg_stream(seed: u32, n: usize) -> SymbolStream {
    let mut state = seed;
    let symbols = (0..n)
        .map(|_| {
            state = state.wrapping_mul(1_664_525).wrapping_add(1_013_904_223);
            (state >> 30) as u8
        })
        .collect();
    SymbolStream::new(symbols, GeneratorKind::Lcg { seed }).expect("two-bit symbols")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRead {
    pub stream: SymbolStream,
    pub skipped: usize,
}

/// A -> 0, C -> 1, G -> 2, T -> 3, case-insensitive. Header lines start with
/// `>`; other characters (N, gaps, ...) are skipped and counted. Records are
/// concatenated in file order.
pub fn fasta_parse<R: Read>(reader: R, path: &str) -> Result<FastaRead, SequenceError> {
    let io_err = |source| SequenceError::Io {
        path: path.to_string(),
        source,
    };
    let mut symbols = Vec::new();
    let mut skipped = 0usize;
    for line in BufReader::new(reader).lines() {
        let line = line.map_err(io_err)?;
        let line = line.trim_end();
        if line.starts_with('>') || line.starts_with(';') {
            continue;
        }
        for ch in line.chars() {
            match ch.to_ascii_uppercase() {
                'A' => symbols.push(0),
                'C' => symbols.push(1),
                'G' => symbols.push(2),
                'T' => symbols.push(3),
                c if c.is_whitespace() => {}
                _ => skipped += 1,
            }
        }
    }
    if symbols.is_empty() {
        return Err(SequenceError::NoBases { skipped });
    }
    let stream = SymbolStream::new(
        symbols,
        GeneratorKind::Fasta {
            path: path.to_string(),
            skipped,
        },
    )?;
    Ok(FastaRead { stream, skipped })
}

pub fn fasta_read(path: &Path) -> Result<FastaRead, SequenceError> {
    let shown = path.display().to_string();
    let file = File::open(path).map_err(|source| SequenceError::Io {
        path: shown.clone(),
        source,
    })?;
    fasta_parse(file, &shown)
}
