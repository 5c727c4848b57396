//! Planar geometric kernel over exact rationals.
//!
//! Orientation convention: counterclockwise is [`Sign::Positive`].
//!
//! `orient2d` and `incircle` run a floating-point filter first and fall back
//! to exact rational evaluation whenever the filter cannot certify the sign,
//! so the returned sign is always the exact one.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::scalar::Scalar;

/// Relative error threshold for the orient2d filter.
const ORIENT_FILTER: f64 = 1e-12;
/// Relative error threshold for the incircle filter.
const INCIRCLE_FILTER: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_i32(v: i32) -> Sign {
        match v.cmp(&0) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn of_scalar(v: &Scalar) -> Sign {
        Sign::of_i32(v.signum())
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        Sign::of_i32(-self.as_i32())
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::of_i32(self.as_i32() * other.as_i32())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("triangle vertices are collinear")]
    CollinearTriangle,
}

/// A circle centre in the plane. One length unit is one circle radius.
#[derive(Clone)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
    approx: [f64; 2],
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Point {
        let approx = [x.to_f64(), y.to_f64()];
        Point { x, y, approx }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    /// Floating-point approximation of the coordinates.
    pub fn approx(&self) -> [f64; 2] {
        self.approx
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Point) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Point) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic `(x, y)`.
impl Ord for Point {
    fn cmp(&self, other: &Point) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// A point on the paraboloid `z = x² + y²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedPoint {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circumcircle {
    pub center: Point,
    pub radius_squared: Scalar,
}

pub fn distance_squared(a: &Point, b: &Point) -> Scalar {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    dx.square() + dy.square()
}

/// Approximate squared distance from the cached float coordinates.
pub fn distance_squared_approx(a: &Point, b: &Point) -> f64 {
    let dx = a.approx[0] - b.approx[0];
    let dy = a.approx[1] - b.approx[1];
    dx * dx + dy * dy
}

pub fn lift(p: &Point) -> LiftedPoint {
    LiftedPoint {
        x: p.x.clone(),
        y: p.y.clone(),
        z: p.x.square() + p.y.square(),
    }
}

/// Sign of the signed area of `(a, b, c)`; positive for a counterclockwise turn.
pub fn orient2d(a: &Point, b: &Point, c: &Point) -> Sign {
    let [ax, ay] = a.approx;
    let [bx, by] = b.approx;
    let [cx, cy] = c.approx;
    let det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    let permanent = (ax.abs() + cx.abs()) * (by.abs() + cy.abs())
        + (ay.abs() + cy.abs()) * (bx.abs() + cx.abs());
    if permanent.is_finite() && det.abs() > ORIENT_FILTER * permanent {
        return if det > 0.0 { Sign::Positive } else { Sign::Negative };
    }
    orient2d_exact(a, b, c)
}

pub fn orient2d_exact(a: &Point, b: &Point, c: &Point) -> Sign {
    Sign::of_scalar(&orient2d_value(a, b, c))
}

/// Twice the signed area of `(a, b, c)`.
pub fn orient2d_value(a: &Point, b: &Point, c: &Point) -> Scalar {
    let acx = &a.x - &c.x;
    let bcy = &b.y - &c.y;
    let acy = &a.y - &c.y;
    let bcx = &b.x - &c.x;
    acx * bcy - acy * bcx
}

/// In-circle test. `Positive` iff `d` lies strictly inside the circle through
/// `a`, `b`, `c`, `Zero` iff the four points are cocircular. The answer does
/// not depend on the orientation in which the triangle is given.
pub fn incircle(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<Sign, GeometryError> {
    match orient2d(a, b, c) {
        Sign::Zero => Err(GeometryError::CollinearTriangle),
        Sign::Positive => Ok(incircle_ccw(a, b, c, d)),
        Sign::Negative => Ok(incircle_ccw(a, c, b, d)),
    }
}

/// In-circle determinant sign for a triangle already known to be
/// counterclockwise.
pub fn incircle_ccw(a: &Point, b: &Point, c: &Point, d: &Point) -> Sign {
    let [ax, ay] = a.approx;
    let [bx, by] = b.approx;
    let [cx, cy] = c.approx;
    let [dx, dy] = d.approx;
    let (adx, ady) = (ax - dx, ay - dy);
    let (bdx, bdy) = (bx - dx, by - dy);
    let (cdx, cdy) = (cx - dx, cy - dy);
    let alift = adx * adx + ady * ady;
    let blift = bdx * bdx + bdy * bdy;
    let clift = cdx * cdx + cdy * cdy;
    let det = alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady);

    let (pax, pay) = (ax.abs() + dx.abs(), ay.abs() + dy.abs());
    let (pbx, pby) = (bx.abs() + dx.abs(), by.abs() + dy.abs());
    let (pcx, pcy) = (cx.abs() + dx.abs(), cy.abs() + dy.abs());
    let permanent = (pax * pax + pay * pay) * (pbx * pcy + pcx * pby)
        + (pbx * pbx + pby * pby) * (pcx * pay + pax * pcy)
        + (pcx * pcx + pcy * pcy) * (pax * pby + pbx * pay);
    if permanent.is_finite() && det.abs() > INCIRCLE_FILTER * permanent {
        return if det > 0.0 { Sign::Positive } else { Sign::Negative };
    }
    Sign::of_scalar(&incircle_value(a, b, c, d))
}

/// Exact in-circle determinant, positive when `d` is inside the circle of the
/// counterclockwise triangle `(a, b, c)`.
pub fn incircle_value(a: &Point, b: &Point, c: &Point, d: &Point) -> Scalar {
    let adx = &a.x - &d.x;
    let ady = &a.y - &d.y;
    let bdx = &b.x - &d.x;
    let bdy = &b.y - &d.y;
    let cdx = &c.x - &d.x;
    let cdy = &c.y - &d.y;
    let alift = adx.square() + ady.square();
    let blift = bdx.square() + bdy.square();
    let clift = cdx.square() + cdy.square();
    let ab = &adx * &bdy - &bdx * &ady;
    let bc = &bdx * &cdy - &cdx * &bdy;
    let ca = &cdx * &ady - &adx * &cdy;
    alift * bc + blift * ca + clift * ab
}

/// In-circle test with a symbolic perturbation that never returns `Zero`.
///
/// Each lifted height `|p_k|²` is lowered by `ε^(k+1)` where `k` is the
/// caller-supplied index of the point. For cocircular inputs the outcome is
/// decided by the lowest-indexed point, which ends up on the diagonal of any
/// cocircular quadrilateral. `(a, b, c)` must be counterclockwise.
pub fn incircle_perturbed(pts: [&Point; 4], ids: [usize; 4]) -> Sign {
    let [a, b, c, d] = pts;
    let s = incircle_ccw(a, b, c, d);
    if s != Sign::Zero {
        return s;
    }
    let mut order = [0usize, 1, 2, 3];
    order.sort_by_key(|&k| ids[k]);
    for k in order {
        // Cofactor of the lifted coordinate of point k in the 4x4 determinant.
        let coef = match k {
            0 => orient2d(b, c, d),
            1 => orient2d(a, c, d).flip(),
            2 => orient2d(a, b, d),
            _ => orient2d(a, b, c).flip(),
        };
        if coef != Sign::Zero {
            return coef.flip();
        }
    }
    unreachable!("incircle_perturbed requires a counterclockwise triangle")
}

/// Orientation of four points in space: positive when `d` lies below the plane
/// through `a`, `b`, `c`, with `(a, b, c)` counterclockwise seen from above.
pub fn orient3d(a: &LiftedPoint, b: &LiftedPoint, c: &LiftedPoint, d: &LiftedPoint) -> Sign {
    let m = [
        [&a.x - &d.x, &a.y - &d.y, &a.z - &d.z],
        [&b.x - &d.x, &b.y - &d.y, &b.z - &d.z],
        [&c.x - &d.x, &c.y - &d.y, &c.z - &d.z],
    ];
    let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    Sign::of_scalar(&det)
}

pub fn circumcircle(a: &Point, b: &Point, c: &Point) -> Result<Circumcircle, GeometryError> {
    let bx = &b.x - &a.x;
    let by = &b.y - &a.y;
    let cx = &c.x - &a.x;
    let cy = &c.y - &a.y;
    let d = (&bx * &cy - &by * &cx) * Scalar::from_int(2);
    if d.is_zero() {
        return Err(GeometryError::CollinearTriangle);
    }
    let b2 = bx.square() + by.square();
    let c2 = cx.square() + cy.square();
    let ux = (&cy * &b2 - &by * &c2) / &d;
    let uy = (&bx * &c2 - &cx * &b2) / &d;
    let radius_squared = ux.square() + uy.square();
    let center = Point::new(&a.x + &ux, &a.y + &uy);
    Ok(Circumcircle { center, radius_squared })
}

/// Twice the signed area as an exact scalar; alias kept for readability at
/// call sites that deal with areas.
pub fn double_area(a: &Point, b: &Point, c: &Point) -> Scalar {
    orient2d_value(a, b, c)
}
