//! Command-line front end: argument model, dispatch, and the CSV / SVG /
//! JSON writers behind every subcommand.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::cgr::{self, CornerMap, Point};
use crate::contfrac::{self, cf_of_bracket, cf_of_quadratic, cf_of_rational};
use crate::exact::{self, parse_rational, Integer, Rational};
use crate::julia::{self, PreimageCloud};
use crate::modeq;
use crate::rootfind::{self, IterationTrace, Method, PolySpec};
use crate::sequences::{self, Constant, SymbolStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Svg,
    Json,
}

/// Experimental mathematics laboratory.
#[derive(Debug, Parser)]
#[command(name = "explab", version, about)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the artifact to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress the summary line printed when writing to a file.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continued fraction of a rational `p/q`, `sqrt D`, or a constant (e, pi, sqrt2).
    Cf(CfArgs),
    /// Exact Newton / secant / Halley iteration on a polynomial.
    Root(RootArgs),
    /// Modified-equation coefficients for Euler on y' = y^2, and order studies.
    Modeq(ModeqArgs),
    /// Inverse-iteration pre-image clouds.
    Julia(JuliaArgs),
    /// Chaos game representation of a generated or FASTA symbol stream.
    Cgr(CgrArgs),
}

#[derive(Debug, Args)]
pub struct CfArgs {
    /// `p/q`, an integer, `sqrt D`, or one of e, pi, sqrt2.
    #[arg(allow_hyphen_values = true)]
    pub value: String,
    /// Radicand, when VALUE is `sqrt`.
    pub radicand: Option<String>,
    /// Decimal digits of the rational bracket used for named constants.
    #[arg(long, default_value_t = 40)]
    pub digits: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Newton,
    Secant,
    Halley,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Newton => Method::Newton,
            MethodArg::Secant => Method::Secant,
            MethodArg::Halley => Method::Halley,
        }
    }
}

#[derive(Debug, Args)]
pub struct RootArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Newton)]
    pub method: MethodArg,
    /// Polynomial such as `x^2-2`.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: String,
    /// Second starting point (secant only).
    #[arg(long, allow_hyphen_values = true)]
    pub x1: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub steps: usize,
    /// Adds a column replaying the iteration on a decimal calculator with
    /// this many significant digits.
    #[arg(long)]
    pub decimals: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ModeqArgs {
    /// Truncation order N of B(v).
    #[arg(long, default_value_t = 7)]
    pub order: usize,
    /// Comma-separated step sizes (`1/40,1/80,1/160`) for an order study.
    #[arg(long, value_delimiter = ',')]
    pub h: Vec<String>,
    #[arg(long, default_value_t = 0.2, allow_hyphen_values = true)]
    pub y0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    /// v -> v + v^2
    Shift,
    /// z -> z^2 + c
    Quadratic,
}

#[derive(Debug, Args)]
pub struct JuliaArgs {
    #[arg(long, value_enum, default_value_t = MapArg::Shift)]
    pub map: MapArg,
    /// Parameter `re,im` of z^2 + c.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub c: String,
    /// Seed point `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true, default_value = "-0.5")]
    pub seed: String,
    #[arg(long, default_value_t = 10_000)]
    pub wanted: usize,
    /// SVG canvas size in pixels.
    #[arg(long, default_value_t = 800)]
    pub size: u32,
}

#[derive(Debug, Args)]
pub struct CgrArgs {
    /// `primes`, `pi-digits`, `cf sqrt2|e|pi`, `lcg SEED`, or `fasta PATH`.
    #[arg(required = true, num_args = 1..=2)]
    pub generator: Vec<String>,
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
    /// Prime offset: the k-th symbol uses prime number offset + k.
    #[arg(long, default_value_t = 103)]
    pub offset: usize,
    /// Corner relabeling: symbol s goes to default corner perm[s], e.g. `1230`.
    #[arg(long)]
    pub relabel: Option<String>,
    /// Precision ceiling in digits when certifying partial quotients.
    #[arg(long, env = "EXPLAB_MAX_DIGITS", default_value_t = sequences::DEFAULT_MAX_DIGITS)]
    pub max_digits: usize,
    /// SVG canvas size in pixels.
    #[arg(long, default_value_t = 800)]
    pub size: u32,
}

/// A failed run: usage errors exit with 2, domain errors with 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub module: &'static str,
    pub message: String,
    pub usage: bool,
}

impl CliError {
    fn domain(module: &'static str, e: impl std::fmt::Display) -> Self {
        Self {
            module,
            message: e.to_string(),
            usage: false,
        }
    }

    fn usage(module: &'static str, message: impl Into<String>) -> Self {
        Self {
            module,
            message: message.into(),
            usage: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.usage {
            2
        } else {
            1
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.module, self.message.replace('\n', " "))
    }
}

impl std::error::Error for CliError {}

/// Runs one subcommand and writes its artifact.
pub fn dispatch(config: &RunConfig) -> Result<(), CliError> {
    let body = render(config)?;
    match &config.out {
        Some(path) => {
            fs::write(path, &body).map_err(|e| CliError::domain("io", format!("{}: {e}", path.display())))?;
            if !config.quiet {
                eprintln!("wrote {} bytes to {}", body.len(), path.display());
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| CliError::domain("io", e))?;
        }
    }
    Ok(())
}

/// The artifact a run would write, as a string.
pub fn render(config: &RunConfig) -> Result<String, CliError> {
    match &config.command {
        Command::Cf(a) => run_cf(a, config.format),
        Command::Root(a) => run_root(a, config.format),
        Command::Modeq(a) => run_modeq(a, config.format),
        Command::Julia(a) => run_julia(a, config.format),
        Command::Cgr(a) => run_cgr(a, config.format),
    }
}

fn unsupported(module: &'static str, format: Format) -> CliError {
    CliError::usage(module, format!("format {format:?} is not available here").to_lowercase())
}

fn run_cf(args: &CfArgs, format: Format) -> Result<String, CliError> {
    let value = match &args.radicand {
        Some(d) => format!("{} {d}", args.value),
        None => args.value.clone(),
    };
    let value = value.trim();
    let lower = value.to_ascii_lowercase();

    if let Some(d) = lower.strip_prefix("sqrt").map(str::trim).filter(|d| !d.is_empty()) {
        let d: Integer = d
            .parse()
            .map_err(|_| CliError::usage("cf", format!("cannot parse radicand {d:?}")))?;
        let p = cf_of_quadratic(&d).map_err(|e| CliError::domain("contfrac", e))?;
        return match format {
            Format::Text => Ok(format!("{p}\n")),
            Format::Json => Ok(json_line(&json!({ "input": value, "periodic": p, "display": p.to_string() }))),
            Format::Csv => {
                let mut s = String::from("part,index,quotient\n");
                for (i, a) in p.preperiod.iter().enumerate() {
                    writeln!(s, "preperiod,{i},{a}").unwrap();
                }
                for (i, a) in p.period.iter().enumerate() {
                    writeln!(s, "period,{i},{a}").unwrap();
                }
                Ok(s)
            }
            Format::Svg => Err(unsupported("cf", format)),
        };
    }

    let cf = match lower.as_str() {
        "e" | "pi" | "sqrt2" => {
            let c: Constant = lower.parse().map_err(|e| CliError::usage("cf", format!("{e}")))?;
            let (lo, hi) = sequences::constant_bracket(c, args.digits);
            cf_of_bracket(&lo, &hi)
                .ok_or_else(|| CliError::domain("contfrac", "bracket too wide to certify a0"))?
        }
        _ => {
            let r = parse_rational(value).map_err(|e| CliError::usage("cf", e.to_string()))?;
            cf_of_rational(&r)
        }
    };
    let convergents = contfrac::convergents(&cf);
    match format {
        Format::Text => Ok(format!("{cf}\n")),
        Format::Json => {
            let conv: Vec<String> = convergents.iter().map(|c| format!("{}/{}", c.p, c.q)).collect();
            Ok(json_line(&json!({
                "input": value,
                "cf": cf,
                "display": cf.to_string(),
                "convergents": conv,
            })))
        }
        Format::Csv => {
            let mut s = String::from("k,quotient,p,q\n");
            for (k, (a, c)) in cf.quotients().zip(&convergents).enumerate() {
                writeln!(s, "{k},{a},{},{}", c.p, c.q).unwrap();
            }
            Ok(s)
        }
        Format::Svg => Err(unsupported("cf", format)),
    }
}

fn parse_rat(module: &'static str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::usage(module, e.to_string()))
}

struct RootRow {
    iterate: String,
    residual: String,
    partials: usize,
    decimal: Option<String>,
}

fn run_root(args: &RootArgs, format: Format) -> Result<String, CliError> {
    let f: PolySpec = args
        .poly
        .parse()
        .map_err(|e: rootfind::RootFindError| CliError::usage("root", e.to_string()))?;
    let x0 = parse_rat("root", &args.x0)?;
    let method: Method = args.method.into();
    let domain = |e| CliError::domain("rootfind", e);
    let (trace, starts): (IterationTrace, Vec<Rational>) = match method {
        Method::Newton => (rootfind::newton_trace(&f, &x0, args.steps).map_err(domain)?, vec![x0]),
        Method::Halley => (rootfind::halley_trace(&f, &x0, args.steps).map_err(domain)?, vec![x0]),
        Method::Secant => {
            let x1 = args
                .x1
                .as_deref()
                .ok_or_else(|| CliError::usage("root", "secant needs --x1"))?;
            let x1 = parse_rat("root", x1)?;
            (
                rootfind::secant_trace(&f, &x0, &x1, args.steps).map_err(domain)?,
                vec![x0, x1],
            )
        }
    };
    let decimals = match args.decimals {
        Some(0) => return Err(CliError::usage("root", "--decimals must be at least 1")),
        Some(sig) => Some(
            rootfind::calculator_trace(method, &f, &starts, args.steps, sig)
                .map_err(domain)?
                .iter()
                .map(|x| calculator_display(x, sig))
                .collect::<Vec<_>>(),
        ),
        None => None,
    };
    let profile = rootfind::cf_profile(&trace);
    let rows: Vec<RootRow> = trace
        .iterates
        .iter()
        .zip(&trace.residuals)
        .enumerate()
        .map(|(k, (x, r))| RootRow {
            iterate: x.to_string(),
            residual: r.to_string(),
            partials: profile[k],
            decimal: decimals.as_ref().map(|d| d[k].clone()),
        })
        .collect();

    match format {
        Format::Text => {
            let mut s = format!("# {} on {}\n", trace.method, trace.f);
            let wi = rows.iter().map(|r| r.iterate.len()).max().unwrap_or(0).max(7);
            let wr = rows.iter().map(|r| r.residual.len()).max().unwrap_or(0).max(8);
            write!(s, "{:>3}  {:>wi$}  {:>wr$}  {:>8}", "k", "iterate", "residual", "cf_terms").unwrap();
            if decimals.is_some() {
                write!(s, "  decimal").unwrap();
            }
            s.push('\n');
            for (k, r) in rows.iter().enumerate() {
                write!(s, "{k:>3}  {:>wi$}  {:>wr$}  {:>8}", r.iterate, r.residual, r.partials).unwrap();
                if let Some(d) = &r.decimal {
                    write!(s, "  {d}").unwrap();
                }
                s.push('\n');
            }
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::from("k,iterate,residual,cf_terms");
            if decimals.is_some() {
                s.push_str(",decimal");
            }
            s.push('\n');
            for (k, r) in rows.iter().enumerate() {
                write!(s, "{k},{},{},{}", r.iterate, r.residual, r.partials).unwrap();
                if let Some(d) = &r.decimal {
                    write!(s, ",{d}").unwrap();
                }
                s.push('\n');
            }
            Ok(s)
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    json!({
                        "k": k,
                        "iterate": r.iterate,
                        "residual": r.residual,
                        "cf_terms": r.partials,
                        "decimal": r.decimal,
                    })
                })
                .collect();
            Ok(json_line(&json!({
                "method": trace.method,
                "poly": trace.f.to_string(),
                "rows": rows,
            })))
        }
        Format::Svg => Err(unsupported("root", format)),
    }
}

/// Fixed-point display of a value already rounded to `sig` digits.
fn calculator_display(x: &Rational, sig: usize) -> String {
    if num_traits::Zero::is_zero(x) {
        return "0".to_string();
    }
    let e = exact::decimal_exponent(x);
    let places = (sig as i64 - 1 - e).max(0) as usize;
    let s = exact::decimal_truncated(x, places);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn run_modeq(args: &ModeqArgs, format: Format) -> Result<String, CliError> {
    if !args.h.is_empty() {
        let hs = args
            .h
            .iter()
            .map(|h| parse_rat("modeq", h).map(|r| exact::to_f64(&r)))
            .collect::<Result<Vec<f64>, _>>()?;
        let study = modeq::order_study(args.y0, args.t_end, args.order, &hs)
            .map_err(|e| CliError::domain("modeq", e))?;
        return match format {
            Format::Csv | Format::Text => {
                let mut s = String::from("h,max_error,substeps,fitted_order\n");
                for ((h, e), m) in study.step_sizes.iter().zip(&study.max_errors).zip(&study.substeps) {
                    writeln!(s, "{},{:e},{},{}", num(*h), e, m, num(study.fitted_order)).unwrap();
                }
                Ok(s)
            }
            Format::Json => Ok(json_line(&serde_json::to_value(&study).expect("serializable"))),
            Format::Svg => Err(unsupported("modeq", format)),
        };
    }
    let c = modeq::labelle_coeffs(args.order);
    match format {
        Format::Text => {
            let mut s = format!("B(v) = {}\n", modeq::labelle_series(args.order));
            for (n, cn) in c.iter().enumerate() {
                writeln!(s, "c_{n} = {cn}").unwrap();
            }
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::from("n,c_n,approx\n");
            for (n, cn) in c.iter().enumerate() {
                writeln!(s, "{n},{cn},{}", num(exact::to_f64(cn))).unwrap();
            }
            Ok(s)
        }
        Format::Json => {
            let coeffs: Vec<String> = c.iter().map(ToString::to_string).collect();
            Ok(json_line(&json!({ "order": args.order, "coefficients": coeffs })))
        }
        Format::Svg => Err(unsupported("modeq", format)),
    }
}

fn parse_complex(module: &'static str, s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::usage(module, format!("cannot parse complex value {s:?} (expected re or re,im)"));
    let mut parts = s.split(',');
    let re = parts.next().ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?;
    let im = match parts.next() {
        Some(p) => p.trim().parse::<f64>().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn run_julia(args: &JuliaArgs, format: Format) -> Result<String, CliError> {
    let seed = parse_complex("julia", &args.seed)?;
    let cloud: PreimageCloud = match args.map {
        MapArg::Shift => julia::preimage_cloud(seed, args.wanted),
        MapArg::Quadratic => {
            let c = parse_complex("julia", &args.c)?;
            julia::quad_preimage_cloud(c, seed, args.wanted)
        }
    };
    let points: Vec<Point> = cloud.points.iter().map(|z| (z.re, z.im)).collect();
    match format {
        Format::Text | Format::Csv => Ok(points_csv(&points)),
        Format::Svg => {
            let view = ViewBox::around(&points);
            svg_checked("julia", &points, args.size, view)
        }
        Format::Json => {
            let pts: Vec<[f64; 2]> = points.iter().map(|&(x, y)| [x, y]).collect();
            Ok(json_line(&json!({
                "map": cloud.map,
                "seed": [cloud.seed.re, cloud.seed.im],
                "points": pts,
                "generation": cloud.generation,
            })))
        }
    }
}

fn build_stream(args: &CgrArgs) -> Result<SymbolStream, CliError> {
    let kind = args.generator[0].as_str();
    let param = args.generator.get(1).map(String::as_str);
    let domain = |e| CliError::domain("sequences", e);
    let stream = match (kind, param) {
        ("primes", None) => sequences::prime_stream(args.offset, args.count).map_err(domain)?,
        ("pi-digits", None) => sequences::pi_digit_stream(args.count),
        ("cf", Some(c)) => {
            let c: Constant = c.parse().map_err(|e| CliError::usage("cgr", format!("{e}")))?;
            sequences::cf_quotient_stream(c, args.count, args.max_digits).map_err(domain)?
        }
        ("lcg", Some(seed)) => {
            let seed: u32 = seed
                .parse()
                .map_err(|_| CliError::usage("cgr", format!("lcg seed must be a u32, got {seed:?}")))?;
            sequences::lcg_stream(seed, args.count)
        }
        ("fasta", Some(path)) => {
            let read = sequences::fasta_read(std::path::Path::new(path)).map_err(domain)?;
            let mut symbols = read.stream.symbols().to_vec();
            symbols.truncate(args.count);
            let mut s = SymbolStream::new(symbols, read.stream.provenance.kind.clone()).map_err(domain)?;
            s.provenance.count = s.len();
            s
        }
        _ => {
            return Err(CliError::usage(
                "cgr",
                "generator must be one of: primes, pi-digits, cf <sqrt2|e|pi>, lcg <seed>, fasta <path>",
            ))
        }
    };
    Ok(stream)
}

fn run_cgr(args: &CgrArgs, format: Format) -> Result<String, CliError> {
    let corners = match &args.relabel {
        None => CornerMap::default(),
        Some(p) => {
            let digits: Vec<u8> = p.bytes().map(|b| b.wrapping_sub(b'0')).collect();
            let perm: [u8; 4] = digits
                .try_into()
                .map_err(|_| CliError::usage("cgr", "--relabel needs four digits"))?;
            CornerMap::relabeled(perm)
                .ok_or_else(|| CliError::usage("cgr", "--relabel must be a permutation of 0123"))?
        }
    };
    let stream = build_stream(args)?;
    let cloud = cgr::cgr_run(&stream, &corners);
    match format {
        Format::Text | Format::Csv => Ok(points_csv(&cloud.points)),
        Format::Svg => svg_checked("cgr", &cloud.points, args.size, ViewBox::UNIT),
        Format::Json => {
            let pts: Vec<[f64; 2]> = cloud.points.iter().map(|&(x, y)| [x, y]).collect();
            Ok(json_line(&json!({
                "source": cloud.source,
                "corners": cloud.corners,
                "quadrants": cgr::quadrant_histogram(&cloud),
                "points": pts,
            })))
        }
    }
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

/// Shortest round-trip decimal, with `-0` written as `0`.
pub fn num(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        v.to_string()
    }
}

/// One `x,y` row per point, no header.
pub fn points_csv(points: &[Point]) -> String {
    let mut s = String::with_capacity(points.len() * 40);
    for &(x, y) in points {
        s.push_str(&num(x));
        s.push(',');
        s.push_str(&num(y));
        s.push('\n');
    }
    s
}

#[derive(Debug, thiserror::Error)]
#[error("bad point row {row}: {reason}")]
pub struct CsvError {
    pub row: usize,
    pub reason: String,
}

pub fn read_points_csv(text: &str) -> Result<Vec<Point>, CsvError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    reader
        .records()
        .enumerate()
        .map(|(row, rec)| {
            let rec = rec.map_err(|e| CsvError { row, reason: e.to_string() })?;
            if rec.len() != 2 {
                return Err(CsvError {
                    row,
                    reason: format!("expected 2 fields, got {}", rec.len()),
                });
            }
            let field = |i: usize| {
                rec[i].trim().parse::<f64>().map_err(|e| CsvError {
                    row,
                    reason: e.to_string(),
                })
            };
            Ok((field(0)?, field(1)?))
        })
        .collect()
}

/// Square region of the plane mapped onto the canvas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViewBox {
    pub min_x: f64,
    pub min_y: f64,
    pub side: f64,
}

impl ViewBox {
    pub const UNIT: ViewBox = ViewBox {
        min_x: -1.0,
        min_y: -1.0,
        side: 2.0,
    };

    /// Smallest centred square containing every point, padded by 5%.
    pub fn around(points: &[Point]) -> Self {
        if points.is_empty() {
            return Self::UNIT;
        }
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let side = ((x1 - x0).max(y1 - y0) * 1.1).max(1e-9);
        let cx = (x0 + x1) / 2.0;
        let cy = (y0 + y1) / 2.0;
        Self {
            min_x: cx - side / 2.0,
            min_y: cy - side / 2.0,
            side,
        }
    }

    /// Device coordinates, origin top-left, y pointing down.
    pub fn to_device(&self, (x, y): Point, size: u32) -> (f64, f64) {
        let s = f64::from(size);
        (
            (x - self.min_x) / self.side * s,
            (1.0 - (y - self.min_y) / self.side) * s,
        )
    }
}

fn coord(v: f64) -> String {
    num((v * 1000.0).round() / 1000.0)
}

fn svg_checked(module: &'static str, points: &[Point], size: u32, view: ViewBox) -> Result<String, CliError> {
    if size < 64 {
        return Err(CliError::usage(module, "--size must be at least 64"));
    }
    Ok(write_svg_view(points, size, view))
}

/// Black unit-radius dots on white, `[-1, 1]^2` filling the canvas, no axes.
pub fn write_svg(points: &[Point], size: u32) -> String {
    assert!(size >= 64, "svg canvas must be at least 64 pixels");
    write_svg_view(points, size, ViewBox::UNIT)
}

pub fn write_svg_view(points: &[Point], size: u32, view: ViewBox) -> String {
    let mut s = String::with_capacity(128 + points.len() * 48);
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{size}" height="{size}" fill="white"/>"#).unwrap();
    writeln!(s, r#"<g fill="black">"#).unwrap();
    for &p in points {
        let (cx, cy) = view.to_device(p, size);
        writeln!(s, r#"<circle cx="{}" cy="{}" r="1"/>"#, coord(cx), coord(cy)).unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<String, CliError> {
        let mut full = vec!["explab"];
        full.extend_from_slice(args);
        let cfg = RunConfig::try_parse_from(full).expect("valid flags");
        render(&cfg)
    }

    #[test]
    fn cf_of_newton_iterate() {
        assert_eq!(
            run(&["cf", "665857/470832"]).unwrap(),
            "[1; 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2]\n"
        );
        assert_eq!(run(&["cf", "sqrt", "3"]).unwrap(), "[1; (1, 2)]\n");
        assert_eq!(run(&["cf", "sqrt 7"]).unwrap(), "[2; (1, 1, 1, 4)]\n");
        assert!(run(&["cf", "e"]).unwrap().starts_with("[2; 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8,"));
        assert!(run(&["cf", "pi"]).unwrap().starts_with("[3; 7, 15, 1, 292,"));
        let err = run(&["cf", "sqrt 9"]).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().starts_with("contfrac: "));
        assert_eq!(run(&["cf", "1/0"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn root_table_has_calculator_column() {
        let out = run(&[
            "root", "--method", "newton", "--poly", "x^2-2", "--x0", "1", "--steps", "4", "--decimals", "12",
        ])
        .unwrap();
        let row3: Vec<&str> = out.lines().nth(5).unwrap().split_whitespace().collect();
        assert_eq!(row3, ["3", "577/408", "1/166464", "7", "1.41421568628"]);
        let csv = run(&["--format", "csv", "root", "--poly", "x^2-2", "--x0", "1", "--decimals", "12"]).unwrap();
        assert_eq!(csv.lines().nth(4).unwrap(), "3,577/408,1/166464,7,1.41421568628");
    }

    #[test]
    fn root_errors() {
        let e = run(&["root", "--poly", "x^2+1", "--x0", "0"]).unwrap_err();
        assert_eq!(e.to_string(), "rootfind: derivative vanishes at iterate 0");
        assert_eq!(e.exit_code(), 1);
        let e = run(&["root", "--method", "secant", "--poly", "x^2-2", "--x0", "1"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn julia_csv_starts_with_seed() {
        let out = run(&["--format", "csv", "julia", "--map", "shift", "--seed", "-0.5", "--wanted", "100"]).unwrap();
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows.len(), 101);
        assert_eq!(rows[0], "-0.5,0");
        assert_eq!(rows[1], "-0.5,-0.5");
    }

    #[test]
    fn svg_mapping() {
        let (x, y) = ViewBox::UNIT.to_device((0.5, 0.5), 400);
        assert_eq!((x, y), (300.0, 100.0));
        let svg = write_svg(&[(0.5, 0.5)], 400);
        assert!(svg.contains(r#"<circle cx="300" cy="100" r="1"/>"#));
        assert_eq!(write_svg(&[], 64).matches("<circle").count(), 0);
    }

    #[test]
    fn calculator_column_trims() {
        assert_eq!(calculator_display(&exact::int(1), 12), "1");
        assert_eq!(calculator_display(&exact::ratio(3, 2), 12), "1.5");
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("julia", "-0.5").unwrap(), Complex64::new(-0.5, 0.0));
        assert_eq!(parse_complex("julia", "0.25,-1").unwrap(), Complex64::new(0.25, -1.0));
        assert!(parse_complex("julia", "a,b").is_err());
        assert!(parse_complex("julia", "1,2,3").is_err());
    }
}
