//! Circle configurations inside a rectangular window and their saturation.
//!
//! A configuration is window-saturated when no point of the closed window is
//! at distance ≥ 2 from every centre. The farthest point from a finite site
//! set over a rectangle is attained at a Voronoi vertex inside the rectangle,
//! at a crossing of a Voronoi edge with the boundary, or at a corner. Voronoi
//! vertices are Delaunay circumcentres; the boundary crossings are the
//! breakpoints of the lower envelope of squared distances along each side.
//! Both are computed exactly, so [`find_witness`] is an exact decision
//! procedure.

use std::cmp::Ordering;
use std::collections::HashMap;

use thiserror::Error;

use crate::geometry::{circumcircle, distance_squared, orient2d, Point, Sign};
use crate::scalar::Scalar;
use crate::triangulation::DelaunayBuilder;

/// Squared minimum centre distance for unit circles.
pub fn min_distance_squared() -> Scalar {
    Scalar::from_int(4)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("window must be at least 4 x 4, got [{}, {}] x [{}, {}]", .0.xmin, .0.xmax, .0.ymin, .0.ymax)]
    InvalidWindow(Box<Window>),
    #[error("points {first} and {second} are too close (distance² = {distance_squared} < 4)")]
    PairTooClose { first: usize, second: usize, distance_squared: Scalar },
    #[error("point {index} lies outside the window")]
    OutOfWindow { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub xmin: Scalar,
    pub ymin: Scalar,
    pub xmax: Scalar,
    pub ymax: Scalar,
}

impl Window {
    pub fn new(xmin: Scalar, ymin: Scalar, xmax: Scalar, ymax: Scalar) -> Result<Window, ConfigError> {
        let four = Scalar::from_int(4);
        if &xmax - &xmin < four || &ymax - &ymin < four {
            return Err(ConfigError::InvalidWindow(Box::new(Window { xmin, ymin, xmax, ymax })));
        }
        Ok(Window { xmin, ymin, xmax, ymax })
    }

    pub fn from_ints(xmin: i64, ymin: i64, xmax: i64, ymax: i64) -> Result<Window, ConfigError> {
        Window::new(xmin.into(), ymin.into(), xmax.into(), ymax.into())
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.xmin && p.x <= self.xmax && p.y >= self.ymin && p.y <= self.ymax
    }

    /// Distance from `p` to the nearest window side; negative outside.
    pub fn depth(&self, p: &Point) -> Scalar {
        [&p.x - &self.xmin, &self.xmax - &p.x, &p.y - &self.ymin, &self.ymax - &p.y]
            .into_iter()
            .min()
            .unwrap()
    }

    pub fn width(&self) -> Scalar {
        &self.xmax - &self.xmin
    }

    pub fn height(&self) -> Scalar {
        &self.ymax - &self.ymin
    }

    pub fn area(&self) -> Scalar {
        self.width() * self.height()
    }

    /// Corners in lexicographic `(x, y)` order.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.xmin.clone(), self.ymin.clone()),
            Point::new(self.xmin.clone(), self.ymax.clone()),
            Point::new(self.xmax.clone(), self.ymin.clone()),
            Point::new(self.xmax.clone(), self.ymax.clone()),
        ]
    }
}

/// Validated point set: inside the window, pairwise distance ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    points: Vec<Point>,
    window: Window,
}

impl Configuration {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

/// A free spot: a window point at distance ≥ 2 from every centre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub location: Point,
    /// Squared distance to the nearest centre; `None` for an empty
    /// configuration (unbounded clearance).
    pub clearance_squared: Option<Scalar>,
}

pub fn validate(points: Vec<Point>, window: Window) -> Result<Configuration, ConfigError> {
    if let Some(index) = points.iter().position(|p| !window.contains(p)) {
        return Err(ConfigError::OutOfWindow { index });
    }
    if let Some((first, second, distance_squared)) = closest_violation(&points) {
        return Err(ConfigError::PairTooClose { first, second, distance_squared });
    }
    Ok(Configuration { points, window })
}

/// Lowest `(i, j)` pair with squared distance below 4, if any.
fn closest_violation(points: &[Point]) -> Option<(usize, usize, Scalar)> {
    let four = min_distance_squared();
    let grid = CellGrid::new(points);
    let mut worst: Option<(usize, usize, Scalar)> = None;
    for (i, p) in points.iter().enumerate() {
        for j in grid.near(p) {
            if j <= i || distance_squared_approx_safe(p, &points[j]) > 4.0 + 1e-6 {
                continue;
            }
            let d = distance_squared(p, &points[j]);
            if d < four && worst.as_ref().is_none_or(|w| (i, j) < (w.0, w.1)) {
                worst = Some((i, j, d));
            }
        }
    }
    worst
}

fn distance_squared_approx_safe(a: &Point, b: &Point) -> f64 {
    let d = crate::geometry::distance_squared_approx(a, b);
    // Shrink by a relative margin so the filter never rejects a close pair.
    d * (1.0 - 1e-9)
}

/// Uniform bucket grid (cell side 2.5) over float approximations. Any pair at
/// exact distance < 2 lands in the same or adjacent cells.
pub(crate) struct CellGrid {
    cells: HashMap<(i64, i64), Vec<usize>>,
}

const CELL: f64 = 2.5;

impl CellGrid {
    pub(crate) fn new(points: &[Point]) -> CellGrid {
        let mut g = CellGrid { cells: HashMap::new() };
        for (i, p) in points.iter().enumerate() {
            g.add(i, p);
        }
        g
    }

    pub(crate) fn add(&mut self, i: usize, p: &Point) {
        self.cells.entry(cell_of(p)).or_default().push(i);
    }

    pub(crate) fn near(&self, p: &Point) -> impl Iterator<Item = usize> + '_ {
        let (cx, cy) = cell_of(p);
        (-1..=1)
            .flat_map(move |dx| (-1..=1).map(move |dy| (cx + dx, cy + dy)))
            .filter_map(|c| self.cells.get(&c))
            .flatten()
            .copied()
    }
}

fn cell_of(p: &Point) -> (i64, i64) {
    let [x, y] = p.approx();
    ((x / CELL).floor() as i64, (y / CELL).floor() as i64)
}

/// Exact squared distance from `q` to the nearest point, `None` when empty.
pub fn nearest_distance_squared(points: &[Point], q: &Point) -> Option<Scalar> {
    let approx: Vec<f64> = points.iter().map(|p| crate::geometry::distance_squared_approx(p, q)).collect();
    let min = approx.iter().copied().fold(f64::INFINITY, f64::min);
    if !min.is_finite() {
        return None;
    }
    let cutoff = min * (1.0 + 1e-9) + 1e-300;
    points
        .iter()
        .zip(&approx)
        .filter(|(_, &a)| a <= cutoff)
        .map(|(p, _)| distance_squared(p, q))
        .min()
}

/// Ordering used to pick among candidates: larger clearance first, then
/// lexicographically smallest location.
fn better(a: &Witness, b: &Witness) -> bool {
    match (&a.clearance_squared, &b.clearance_squared) {
        (None, Some(_)) => true,
        (Some(_), None) => false,
        (x, y) => match x.cmp(y) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a.location < b.location,
        },
    }
}

/// Candidate free spot with an exact clearance and a float key for pruning.
struct Candidate {
    location: Point,
    clearance: Scalar,
    approx: f64,
}

/// Maximum-clearance point of the window. Returns `Some` exactly when that
/// clearance is at least 2, i.e. when the configuration is not
/// window-saturated.
pub fn find_witness(c: &Configuration) -> Option<Witness> {
    let builder = DelaunayBuilder::new(c.points.clone()).ok();
    let mut cache = CircumCache::default();
    best_candidate(&c.points, &c.window, builder.as_ref(), &mut cache)
        .filter(|w| w.clearance_squared.as_ref().is_none_or(|d| *d >= min_distance_squared()))
}

pub fn is_saturated(c: &Configuration) -> bool {
    find_witness(c).is_none()
}

#[derive(Default)]
struct CircumCache {
    // Canonical triangle -> (centre, R², centre inside window).
    entries: HashMap<[usize; 3], Option<(Point, Scalar)>>,
}

fn best_candidate(
    points: &[Point],
    window: &Window,
    builder: Option<&DelaunayBuilder>,
    cache: &mut CircumCache,
) -> Option<Witness> {
    if points.is_empty() {
        let [corner, ..] = window.corners();
        return Some(Witness { location: corner, clearance_squared: None });
    }
    let mut cands: Vec<Candidate> = Vec::new();

    if let Some(b) = builder {
        let mut fresh = HashMap::with_capacity(cache.entries.len());
        for tri in b.triangles() {
            let key = tri.canonical().v;
            let entry = cache.entries.remove(&key).unwrap_or_else(|| {
                let [i, j, k] = key;
                let cc = circumcircle(&points[i], &points[j], &points[k]).expect("triangles are non-degenerate");
                window.contains(&cc.center).then_some((cc.center, cc.radius_squared))
            });
            if let Some((center, r2)) = &entry {
                cands.push(Candidate { location: center.clone(), clearance: r2.clone(), approx: r2.to_f64() });
            }
            fresh.insert(key, entry);
        }
        cache.entries = fresh;
    }

    for side in Side::all(window) {
        side.envelope_candidates(points, &mut cands);
    }
    for corner in window.corners() {
        let clearance = nearest_distance_squared(points, &corner).expect("non-empty");
        let approx = clearance.to_f64();
        cands.push(Candidate { location: corner, clearance, approx });
    }

    let top = cands.iter().map(|c| c.approx).fold(f64::NEG_INFINITY, f64::max);
    let floor = top - top.abs() * 1e-9 - 1e-300;
    let mut best: Option<Witness> = None;
    for cand in cands.into_iter().filter(|c| c.approx >= floor) {
        let w = Witness { location: cand.location, clearance_squared: Some(cand.clearance) };
        if best.as_ref().is_none_or(|b| better(&w, b)) {
            best = Some(w);
        }
    }
    best
}

/// One window side, parametrised by the free coordinate `t ∈ [lo, hi]` with
/// the other coordinate fixed at `fixed`.
struct Side {
    horizontal: bool,
    fixed: Scalar,
    lo: Scalar,
    hi: Scalar,
}

impl Side {
    fn all(w: &Window) -> [Side; 4] {
        let h = |fixed: &Scalar| Side { horizontal: true, fixed: fixed.clone(), lo: w.xmin.clone(), hi: w.xmax.clone() };
        let v = |fixed: &Scalar| Side { horizontal: false, fixed: fixed.clone(), lo: w.ymin.clone(), hi: w.ymax.clone() };
        [h(&w.ymin), h(&w.ymax), v(&w.xmin), v(&w.xmax)]
    }

    fn point_at(&self, t: Scalar) -> Point {
        if self.horizontal {
            Point::new(t, self.fixed.clone())
        } else {
            Point::new(self.fixed.clone(), t)
        }
    }

    /// Breakpoints of `min_p |x(t) - p|²` along the side, strictly inside
    /// `(lo, hi)`. Each squared distance is `t² + slope·t + intercept`
    /// with slope `-2u` and intercept `u² + h²`, `u` the site's coordinate
    /// along the side and `h` its offset from the side line; the minimum over
    /// sites is a lower envelope of lines.
    fn envelope_candidates(&self, points: &[Point], out: &mut Vec<Candidate>) {
        let mut lines: Vec<Line> = points
            .iter()
            .map(|p| {
                let (u, off) = if self.horizontal { (&p.x, &p.y) } else { (&p.y, &p.x) };
                let h = off - &self.fixed;
                let intercept = u.square() + h.square();
                Line { u_approx: u.to_f64(), b_approx: intercept.to_f64(), u: u.clone(), b: intercept }
            })
            .collect();
        lines.sort_by(|a, b| a.cmp_u(b).then_with(|| a.b.cmp(&b.b)));
        lines.dedup_by(|later, earlier| later.cmp_u(earlier) == Ordering::Equal);

        // Slopes decrease along `lines`, as required for a minimum envelope.
        let mut hull: Vec<Line> = Vec::with_capacity(lines.len());
        for line in lines {
            while hull.len() >= 2 && !middle_is_needed(&hull[hull.len() - 2], &hull[hull.len() - 1], &line) {
                hull.pop();
            }
            hull.push(line);
        }

        let (lo_f, hi_f) = (self.lo.to_f64(), self.hi.to_f64());
        let slack = 1e-9 * (lo_f.abs() + hi_f.abs() + 1.0);
        for pair in hull.windows(2) {
            let (l1, l2) = (&pair[0], &pair[1]);
            let t_approx = (l2.b_approx - l1.b_approx) / (2.0 * (l2.u_approx - l1.u_approx));
            if t_approx.is_finite() && (t_approx < lo_f - slack || t_approx > hi_f + slack) {
                continue;
            }
            let t = (&l2.b - &l1.b) / ((&l2.u - &l1.u) * Scalar::from_int(2));
            if t <= self.lo || t >= self.hi {
                continue;
            }
            let clearance = t.square() - Scalar::from_int(2) * &l1.u * &t + &l1.b;
            let approx = clearance.to_f64();
            out.push(Candidate { location: self.point_at(t), clearance, approx });
        }
    }
}

struct Line {
    u: Scalar,
    b: Scalar,
    u_approx: f64,
    b_approx: f64,
}

impl Line {
    fn cmp_u(&self, other: &Line) -> Ordering {
        let gap = self.u_approx - other.u_approx;
        if gap.abs() > 1e-12 * (self.u_approx.abs() + other.u_approx.abs()) {
            return gap.partial_cmp(&0.0).unwrap();
        }
        self.u.cmp(&other.u)
    }
}

/// With `u1 < u2 < u3`, line 2 contributes to the envelope iff its crossing
/// with line 1 comes strictly before the crossing of lines 1 and 3.
fn middle_is_needed(l1: &Line, l2: &Line, l3: &Line) -> bool {
    // t12 < t13  <=>  (b2 - b1)(u3 - u1) < (b3 - b1)(u2 - u1)
    let lhs = (l2.b_approx - l1.b_approx) * (l3.u_approx - l1.u_approx);
    let rhs = (l3.b_approx - l1.b_approx) * (l2.u_approx - l1.u_approx);
    let mag = (l2.b_approx.abs() + l1.b_approx.abs()) * (l3.u_approx.abs() + l1.u_approx.abs())
        + (l3.b_approx.abs() + l1.b_approx.abs()) * (l2.u_approx.abs() + l1.u_approx.abs());
    if mag.is_finite() && (lhs - rhs).abs() > 1e-10 * mag {
        return lhs < rhs;
    }
    (&l2.b - &l1.b) * (&l3.u - &l1.u) < (&l3.b - &l1.b) * (&l2.u - &l1.u)
}

/// Result of [`saturate_detailed`].
#[derive(Debug, Clone)]
pub struct Saturation {
    pub configuration: Configuration,
    /// Inserted points in insertion order, each with its exact clearance at
    /// the time it was inserted.
    pub inserted: Vec<Witness>,
}

/// Grid used to round inserted witnesses: multiples of 2^-32.
const SNAP_BITS: u32 = 32;

pub fn saturate(c: &Configuration) -> Configuration {
    saturate_detailed(c).configuration
}

/// Greedy saturation: repeatedly insert the maximum-clearance witness until
/// none is left.
///
/// Circumcentres of circumcentres have rapidly growing denominators, so each
/// witness is first rounded to the 2^-32 grid; the rounded point is used
/// whenever it stays in the window with clearance ≥ 2 (checked exactly),
/// otherwise the exact witness is inserted.
pub fn saturate_detailed(c: &Configuration) -> Saturation {
    let window = c.window.clone();
    let mut points = c.points.clone();
    let mut inserted = Vec::new();
    let mut builder = DelaunayBuilder::new(points.clone()).ok();
    let mut cache = CircumCache::default();
    let four = min_distance_squared();

    // Disjoint unit disks centred in the window fit in the window grown by 1.
    let grown = (window.width().to_f64() + 2.0) * (window.height().to_f64() + 2.0);
    let cap = (grown / std::f64::consts::PI).ceil() as usize + 16;

    loop {
        let Some(w) = best_candidate(&points, &window, builder.as_ref(), &mut cache) else {
            break;
        };
        if w.clearance_squared.as_ref().is_some_and(|d| *d < four) {
            break;
        }
        assert!(points.len() < cap, "saturation exceeded the disk-packing bound; this is a bug");

        let snapped = Point::new(w.location.x.round_dyadic(SNAP_BITS), w.location.y.round_dyadic(SNAP_BITS));
        let snapped_clearance = nearest_distance_squared(&points, &snapped);
        let chosen = if window.contains(&snapped) && snapped_clearance.as_ref().is_none_or(|d| *d >= four) {
            Witness { location: snapped, clearance_squared: snapped_clearance }
        } else {
            w
        };

        points.push(chosen.location.clone());
        match builder.as_mut() {
            Some(b) => {
                b.insert(chosen.location.clone()).expect("witness is at distance ≥ 2 from every point");
            }
            None => {
                if points.len() >= 3 && !all_collinear(&points) {
                    builder = Some(DelaunayBuilder::new(points.clone()).expect("valid configuration"));
                }
            }
        }
        inserted.push(chosen);
    }
    Saturation { configuration: Configuration { points, window }, inserted }
}

fn all_collinear(points: &[Point]) -> bool {
    points.len() < 3 || points[2..].iter().all(|p| orient2d(&points[0], &points[1], p) == Sign::Zero)
}
