//! Inverse iteration: breadth-first pre-image clouds of a seed under
//! `v -> v + v^2` (pre-images of -1/2 are poles of the modified-equation
//! series, pre-images of -1 its zeros) and under `z -> z^2 + c`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub type ComplexPoint = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForwardCheckError {
    #[error("orbit did not come within {tol} of the seed in {kmax} steps")]
    NotReached { kmax: usize, tol: f64 },
    #[error("orbit overflowed at step {step}")]
    Overflow { step: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapKind {
    /// `v -> v + v^2`
    Shift,
    /// `z -> z^2 + c`
    Quadratic { re: f64, im: f64 },
}

impl MapKind {
    pub fn forward(&self, z: ComplexPoint) -> ComplexPoint {
        match *self {
            MapKind::Shift => z + z * z,
            MapKind::Quadratic { re, im } => z * z + Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreimageCloud {
    pub seed: ComplexPoint,
    pub map: MapKind,
    pub points: Vec<ComplexPoint>,
    pub generation: Vec<u32>,
}

impl PreimageCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Square root with non-negative real part; on the branch cut the
/// imaginary part is non-negative.
pub fn principal_sqrt(z: ComplexPoint) -> ComplexPoint {
    // drop a negative zero so -x - 0i lands on +i sqrt(x)
    let z = Complex64::new(z.re, if z.im == 0.0 { 0.0 } else { z.im });
    let r = z.sqrt();
    if r.re == 0.0 && r.im < 0.0 {
        -r
    } else {
        r
    }
}

/// Both roots of `v^2 + v - p = 0`: `-(1 + sqrt(1 + 4p))/2`, then `-p` over
/// the first.
pub fn preimage_pair(p: ComplexPoint) -> (ComplexPoint, ComplexPoint) {
    let one = Complex64::new(1.0, 0.0);
    let first = -(one + principal_sqrt(one + 4.0 * p)) / 2.0;
    let second = if first == Complex64::new(0.0, 0.0) {
        -one - first
    } else {
        -p / first
    };
    (first, second)
}

/// Both roots of `z^2 + c = p`: `sqrt(p - c)` and its negation.
pub fn quad_preimage_pair(c: ComplexPoint, p: ComplexPoint) -> (ComplexPoint, ComplexPoint) {
    let r = principal_sqrt(p - c);
    (r, -r)
}

fn breadth_first(
    seed: ComplexPoint,
    wanted: usize,
    map: MapKind,
    pair: impl Fn(ComplexPoint) -> (ComplexPoint, ComplexPoint),
) -> PreimageCloud {
    let mut points = Vec::with_capacity(wanted + 2);
    let mut generation = Vec::with_capacity(wanted + 2);
    points.push(seed);
    generation.push(0u32);
    let mut working = 0;
    while points.len() < wanted + 1 {
        let (a, b) = pair(points[working]);
        let g = generation[working] + 1;
        points.extend([a, b]);
        generation.extend([g, g]);
        working += 1;
    }
    points.truncate(wanted + 1);
    generation.truncate(wanted + 1);
    PreimageCloud {
        seed,
        map,
        points,
        generation,
    }
}

/// The seed followed by `wanted` pre-images under `v -> v + v^2`, oldest
/// point expanded first.
pub fn preimage_cloud(seed: ComplexPoint, wanted: usize) -> PreimageCloud {
    breadth_first(seed, wanted, MapKind::Shift, preimage_pair)
}

pub fn quad_preimage_cloud(c: ComplexPoint, seed: ComplexPoint, wanted: usize) -> PreimageCloud {
    breadth_first(
        seed,
        wanted,
        MapKind::Quadratic { re: c.re, im: c.im },
        |p| quad_preimage_pair(c, p),
    )
}

/// Follows one branch of the shift map's inverse `depth` times. Branch 1
/// (`-p / v1`) is the one that creeps toward the parabolic point 0.
pub fn preimage_chain(seed: ComplexPoint, second_branch: bool, depth: usize) -> Vec<ComplexPoint> {
    let mut out = Vec::with_capacity(depth + 1);
    let mut z = seed;
    out.push(z);
    for _ in 0..depth {
        let (a, b) = preimage_pair(z);
        z = if second_branch { b } else { a };
        out.push(z);
    }
    out
}

/// Smallest `k <= kmax` with `|f^k(v) - seed| <= tol`.
pub fn forward_check_with(
    map: MapKind,
    v: ComplexPoint,
    seed: ComplexPoint,
    kmax: usize,
    tol: f64,
) -> Result<usize, ForwardCheckError> {
    let mut z = v;
    for k in 0..=kmax {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(ForwardCheckError::Overflow { step: k });
        }
        if (z - seed).norm() <= tol {
            return Ok(k);
        }
        if k < kmax {
            z = map.forward(z);
        }
    }
    Err(ForwardCheckError::NotReached { kmax, tol })
}

/// Forward check under `v -> v + v^2`.
pub fn forward_check(
    v: ComplexPoint,
    seed: ComplexPoint,
    kmax: usize,
    tol: f64,
) -> Result<usize, ForwardCheckError> {
    forward_check_with(MapKind::Shift, v, seed, kmax, tol)
}

/// Fraction of cloud points whose forward orbit returns to the seed within
/// `tol` by their own generation.
pub fn forward_pass_rate(cloud: &PreimageCloud, tol: f64) -> f64 {
    if cloud.is_empty() {
        return 1.0;
    }
    let passed = cloud
        .points
        .par_iter()
        .zip(cloud.generation.par_iter())
        .filter(|(&z, &g)| forward_check_with(cloud.map, z, cloud.seed, g as usize, tol).is_ok())
        .count();
    passed as f64 / cloud.len() as f64
}
