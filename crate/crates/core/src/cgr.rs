//! Chaos game representation: start at the centre of `[-1, 1]^2`, and for
//! each symbol move halfway toward that symbol's corner.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::sequences::{GeneratorSpec, SymbolStream};

pub type Point = (f64, f64);

/// Corner per symbol. The default assignment is `0 -> (-1,-1)`,
/// `1 -> (-1,1)`, `2 -> (1,1)`, `3 -> (1,-1)` (A, C, G, T).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CornerMap {
    corners: [(i8, i8); 4],
}

pub const DEFAULT_CORNERS: [(i8, i8); 4] = [(-1, -1), (-1, 1), (1, 1), (1, -1)];

impl Default for CornerMap {
    fn default() -> Self {
        Self {
            corners: DEFAULT_CORNERS,
        }
    }
}

impl CornerMap {
    /// Symbol `s` goes to default corner `perm[s]`. `perm` must be a
    /// permutation of `0..4`.
    pub fn relabeled(perm: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &p in &perm {
            if p > 3 || seen[p as usize] {
                return None;
            }
            seen[p as usize] = true;
        }
        Some(Self {
            corners: perm.map(|p| DEFAULT_CORNERS[p as usize]),
        })
    }

    /// Applies a point symmetry of the square to every corner.
    pub fn transformed(&self, sym: SquareSymmetry) -> Self {
        Self {
            corners: self.corners.map(|(x, y)| sym.apply_i8(x, y)),
        }
    }

    pub fn corner(&self, symbol: u8) -> (i8, i8) {
        self.corners[symbol as usize]
    }
}

/// One of the eight symmetries of the square: optional swap of the axes
/// followed by sign flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareSymmetry {
    pub swap: bool,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl SquareSymmetry {
    pub fn all() -> impl Iterator<Item = Self> {
        (0..8u8).map(|b| Self {
            swap: b & 1 != 0,
            flip_x: b & 2 != 0,
            flip_y: b & 4 != 0,
        })
    }

    pub fn apply(&self, (x, y): Point) -> Point {
        let (x, y) = if self.swap { (y, x) } else { (x, y) };
        (if self.flip_x { -x } else { x }, if self.flip_y { -y } else { y })
    }

    fn apply_i8(&self, x: i8, y: i8) -> (i8, i8) {
        let (x, y) = if self.swap { (y, x) } else { (x, y) };
        (if self.flip_x { -x } else { x }, if self.flip_y { -y } else { y })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Point>,
    pub source: GeneratorSpec,
    pub corners: CornerMap,
}

/// `p_0 = (0, 0)` is not emitted; `p_k = (corner(s_k) + p_{k-1}) / 2`.
pub fn cgr_run(stream: &SymbolStream, corners: &CornerMap) -> PointCloud {
    let mut p = (0.0f64, 0.0f64);
    let points = stream
        .symbols()
        .iter()
        .map(|&s| {
            let (cx, cy) = corners.corner(s);
            p = ((f64::from(cx) + p.0) / 2.0, (f64::from(cy) + p.1) / 2.0);
            p
        })
        .collect();
    PointCloud {
        points,
        source: stream.provenance.clone(),
        corners: *corners,
    }
}

pub type ExactPoint = (BigRational, BigRational);

/// The same recurrence over exact dyadic rationals.
pub fn cgr_run_exact(stream: &SymbolStream, corners: &CornerMap) -> Vec<ExactPoint> {
    let half = BigRational::new(1.into(), 2.into());
    let mut p = (BigRational::zero(), BigRational::zero());
    stream
        .symbols()
        .iter()
        .map(|&s| {
            let (cx, cy) = corners.corner(s);
            p = (
                (BigRational::from_integer(cx.into()) + &p.0) * &half,
                (BigRational::from_integer(cy.into()) + &p.1) * &half,
            );
            p.clone()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct QuadrantCounts {
    pub upper_right: usize,
    pub upper_left: usize,
    pub lower_left: usize,
    pub lower_right: usize,
}

impl QuadrantCounts {
    pub fn total(&self) -> usize {
        self.upper_right + self.upper_left + self.lower_left + self.lower_right
    }
}

/// Points on an axis count toward the positive side.
pub fn quadrant_histogram(cloud: &PointCloud) -> QuadrantCounts {
    let mut q = QuadrantCounts::default();
    for &(x, y) in &cloud.points {
        match (x >= 0.0, y >= 0.0) {
            (true, true) => q.upper_right += 1,
            (false, true) => q.upper_left += 1,
            (false, false) => q.lower_left += 1,
            (true, false) => q.lower_right += 1,
        }
    }
    q
}

/// True when every point lies in the open quadrant of the corner that
/// produced it.
pub fn satisfies_quadrant_law(stream: &SymbolStream, cloud: &PointCloud) -> bool {
    stream.symbols().iter().zip(&cloud.points).all(|(&s, &(x, y))| {
        let (cx, cy) = cloud.corners.corner(s);
        x * f64::from(cx) > 0.0 && y * f64::from(cy) > 0.0
    })
}

/// `|x_k + y_k|` along an exact run.
pub fn antidiagonal_offsets(points: &[ExactPoint]) -> Vec<BigRational> {
    points.iter().map(|(x, y)| (x + y).abs()).collect()
}

/// Largest `k` such that the exact dyadic run agrees with the double run
/// on the first `k` points.
pub fn exact_agreement_prefix(cloud: &PointCloud, exact: &[ExactPoint]) -> usize {
    cloud
        .points
        .iter()
        .zip(exact)
        .take_while(|(&(x, y), (ex, ey))| {
            BigRational::from_float(x).as_ref() == Some(ex)
                && BigRational::from_float(y).as_ref() == Some(ey)
        })
        .count()
}

/// Exact distance-halving check for a run toward a single corner.
pub fn halves_toward(points: &[ExactPoint], corner: (i8, i8)) -> bool {
    let c = (
        BigRational::from_integer(corner.0.into()),
        BigRational::from_integer(corner.1.into()),
    );
    let two = BigRational::from_integer(2.into());
    // from the origin the Chebyshev distance to a corner is 1
    let mut prev = BigRational::one();
    for (x, y) in points {
        let d = (&c.0 - x).abs().max((&c.1 - y).abs());
        if &d * &two != prev {
            return false;
        }
        prev = d;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::lcg_stream;

    fn stream(s: &[u8]) -> SymbolStream {
        SymbolStream::explicit(s).unwrap()
    }

    #[test]
    fn single_and_double_steps() {
        let m = CornerMap::default();
        assert_eq!(cgr_run(&stream(&[2]), &m).points, vec![(0.5, 0.5)]);
        assert_eq!(
            cgr_run(&stream(&[0, 2]), &m).points,
            vec![(-0.5, -0.5), (0.25, 0.25)]
        );
        assert!(cgr_run(&stream(&[]), &m).points.is_empty());
    }

    #[test]
    fn constant_stream_closed_form() {
        let pts = cgr_run(&stream(&[2; 40]), &CornerMap::default()).points;
        for (k, &(x, y)) in pts.iter().enumerate() {
            let expected = 1.0 - 0.5f64.powi(k as i32 + 1);
            assert_eq!((x, y), (expected, expected));
        }
    }

    #[test]
    fn relabel_validation() {
        assert!(CornerMap::relabeled([0, 1, 2, 3]).is_some());
        assert!(CornerMap::relabeled([0, 0, 2, 3]).is_none());
        assert!(CornerMap::relabeled([0, 1, 2, 4]).is_none());
        let m = CornerMap::relabeled([1, 2, 3, 0]).unwrap();
        assert_eq!(m.corner(0), (-1, 1));
    }

    #[test]
    fn histogram_counts() {
        let m = CornerMap::default();
        let cloud = cgr_run(&stream(&[0, 1, 2, 3, 3]), &m);
        let q = quadrant_histogram(&cloud);
        assert_eq!(q.total(), 5);
        assert_eq!((q.lower_left, q.upper_left, q.upper_right, q.lower_right), (1, 1, 1, 2));
        let lcg = lcg_stream(1, 10_000);
        let q = quadrant_histogram(&cgr_run(&lcg, &m));
        assert!(q.upper_right >= 2000 && q.upper_left >= 2000);
        assert!(q.lower_left >= 2000 && q.lower_right >= 2000);
    }

    #[test]
    fn exact_mode_matches_short_runs() {
        let s = lcg_stream(3, 200);
        let m = CornerMap::default();
        let cloud = cgr_run(&s, &m);
        let exact = cgr_run_exact(&s, &m);
        assert!(exact_agreement_prefix(&cloud, &exact) >= 52);
    }

    #[test]
    fn halving_toward_corner() {
        let exact = cgr_run_exact(&stream(&[2; 300]), &CornerMap::default());
        assert!(halves_toward(&exact, (1, 1)));
        assert!(!halves_toward(&exact, (-1, -1)));
    }
}
