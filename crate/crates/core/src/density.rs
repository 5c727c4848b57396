//! Per-triangle density analysis and the weighted-average bound.
//!
//! For a Delaunay triangle of a saturated configuration the three unit disks
//! at its vertices cover exactly half a disk inside the triangle, so its
//! density is `(π/2) / area`. Areas, squared sides and squared circumradii are
//! exact; anything involving π is evaluated with 128-bit MPFR floats and
//! compared against [`DENSITY_TOLERANCE`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::Float;
use thiserror::Error;

use crate::geometry::{circumcircle, distance_squared, Circumcircle};
use crate::saturation::Window;
use crate::scalar::Scalar;
use crate::triangulation::{Triangle, Triangulation};

/// Working precision (bits) for transcendental evaluation.
pub const PRECISION: u32 = 128;

/// Tolerance for every comparison that involves π.
pub const DENSITY_TOLERANCE: f64 = 1e-12;

/// π/√12, the density of the hexagonal packing.
pub const DENSITY_BOUND: f64 = 0.906_899_682_117_108_9;

/// Half-width (exact, on squared sides) of the "side length 2" test.
pub fn equilateral_tolerance() -> Scalar {
    Scalar::pow10(-10)
}

/// Default interior margin for boundary-free aggregation.
pub const DEFAULT_INTERIOR_MARGIN: i64 = 4;

pub fn bound_hp() -> Float {
    let pi = Float::with_val(PRECISION, Constant::Pi);
    let sqrt12 = Float::with_val(PRECISION, 12).sqrt();
    pi / sqrt12
}

fn half_pi() -> Float {
    Float::with_val(PRECISION, Constant::Pi) / 2u32
}

fn to_float(s: &Scalar) -> Float {
    Float::with_val(PRECISION, s.as_rational())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("triangle {0} has zero area")]
    DegenerateTriangle(usize),
    #[error("no triangles to aggregate")]
    EmptyTriangulation,
}

#[derive(Debug, Clone)]
pub struct TriangleStats {
    /// Index of the triangle in its triangulation.
    pub index: usize,
    pub triangle: Triangle,
    pub area: Scalar,
    pub circum: Circumcircle,
    /// Squared side lengths; side `k` is opposite vertex `k`.
    pub sides_squared: [Scalar; 3],
    /// Radians.
    pub largest_angle: f64,
    pub density: f64,
    pub is_equilateral_side2: bool,
}

impl TriangleStats {
    /// `area² ≥ 3`, i.e. `area ≥ √3`, decided exactly.
    pub fn area_at_least_sqrt3(&self) -> bool {
        self.area.square() >= Scalar::from_int(3)
    }
}

pub fn triangle_stats(t: &Triangulation, i: usize) -> Result<TriangleStats, DensityError> {
    let triangle = t.triangles[i];
    let [a, b, c] = t.triangle_points(i);
    let area = t.triangle_area(i);
    if !area.is_positive() {
        return Err(DensityError::DegenerateTriangle(i));
    }
    let circum = circumcircle(a, b, c).map_err(|_| DensityError::DegenerateTriangle(i))?;
    let sides_squared = [distance_squared(b, c), distance_squared(c, a), distance_squared(a, b)];
    let far = (0..3).max_by(|&x, &y| sides_squared[x].cmp(&sides_squared[y])).unwrap();
    // tan θ = 4·area / (b² + c² − a²) for the angle opposite side a.
    let adjacent = &sides_squared[(far + 1) % 3] + &sides_squared[(far + 2) % 3] - &sides_squared[far];
    let four_area = &area * Scalar::from_int(4);
    let angle = to_float(&four_area).atan2(&to_float(&adjacent));
    let density = half_pi() / to_float(&area);
    let tol = equilateral_tolerance();
    let four = Scalar::from_int(4);
    let is_equilateral_side2 = sides_squared.iter().all(|s| (s - &four).abs() <= tol);
    Ok(TriangleStats {
        index: i,
        triangle,
        area,
        circum,
        sides_squared,
        largest_angle: angle.to_f64(),
        density: density.to_f64(),
        is_equilateral_side2,
    })
}

pub fn all_stats(t: &Triangulation) -> Result<Vec<TriangleStats>, DensityError> {
    (0..t.triangles.len()).map(|i| triangle_stats(t, i)).collect()
}

/// Triangles whose three vertices all lie at depth ≥ `margin` inside `window`.
pub fn interior_triangles(t: &Triangulation, window: &Window, margin: &Scalar) -> Vec<usize> {
    let deep: Vec<bool> = t.points.iter().map(|p| window.depth(p) >= *margin).collect();
    (0..t.triangles.len()).filter(|&i| t.triangles[i].v.iter().all(|&v| deep[v])).collect()
}

/// Triangles whose circumcentre lies in the closed window. For a
/// window-saturated configuration the circumcentre is a window point whose
/// clearance is the circumradius, so each of these has `R² < 4`.
pub fn window_certified_triangles(stats: &[TriangleStats], window: &Window) -> Vec<usize> {
    stats.iter().filter(|s| window.contains(&s.circum.center)).map(|s| s.index).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Largest angle below π/3 − tolerance.
    AngleBelowThird,
    /// Largest angle at or above 2π/3.
    AngleAtLeastTwoThirds,
    /// Circumradius² ≥ 4: the circumcentre would be a free spot.
    CircumradiusTooLarge,
    DensityAboveBound,
    /// area² < 3.
    AreaBelowSqrt3,
    /// Density at the bound but the triangle is not equilateral with side 2.
    EqualityNotEquilateral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub triangle: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckResult {
    pub violations: Vec<Violation>,
    /// Triangles attaining the bound (within tolerance).
    pub equality: Vec<usize>,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Largest-angle check. With `saturated` the exact circumradius test
/// `R² < 4` is applied (it is the authoritative form of `θ < 2π/3`);
/// without it only the unconditional `θ ≥ π/3` holds.
pub fn check_lemma1(stats: &[TriangleStats], saturated: bool) -> CheckResult {
    let third = std::f64::consts::FRAC_PI_3;
    let four = Scalar::from_int(4);
    let mut out = CheckResult::default();
    for s in stats {
        if s.largest_angle < third - DENSITY_TOLERANCE {
            out.violations.push(Violation { triangle: s.index, kind: ViolationKind::AngleBelowThird });
        }
        if saturated {
            if s.circum.radius_squared >= four {
                out.violations.push(Violation { triangle: s.index, kind: ViolationKind::CircumradiusTooLarge });
            }
            if s.largest_angle >= 2.0 * third {
                out.violations.push(Violation { triangle: s.index, kind: ViolationKind::AngleAtLeastTwoThirds });
            }
        }
        if (s.largest_angle - third).abs() <= DENSITY_TOLERANCE {
            out.equality.push(s.index);
        }
    }
    out
}

/// Density bound per triangle, with the exact `area² ≥ 3` form and the
/// equality characterisation.
pub fn check_lemma2(stats: &[TriangleStats]) -> CheckResult {
    let mut out = CheckResult::default();
    for s in stats {
        if s.density > DENSITY_BOUND + DENSITY_TOLERANCE {
            out.violations.push(Violation { triangle: s.index, kind: ViolationKind::DensityAboveBound });
        }
        if !s.area_at_least_sqrt3() {
            out.violations.push(Violation { triangle: s.index, kind: ViolationKind::AreaBelowSqrt3 });
        }
        if (s.density - DENSITY_BOUND).abs() <= DENSITY_TOLERANCE {
            out.equality.push(s.index);
            if !s.is_equilateral_side2 {
                out.violations.push(Violation { triangle: s.index, kind: ViolationKind::EqualityNotEquilateral });
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct DensityReport {
    pub triangle_count: usize,
    pub min_density: f64,
    pub max_density: f64,
    pub mean_density: f64,
    pub max_largest_angle: f64,
    pub max_circumradius_squared: Scalar,
    pub total_area: Scalar,
    /// `(n·π/2) / Σ area`.
    pub overall_density: f64,
    /// `Σ(area·density) / Σ area`, the same quantity via the per-triangle route.
    pub weighted_density: f64,
    pub bound: f64,
    pub lemma1: CheckResult,
    pub lemma2: CheckResult,
    pub lemma1_ok: bool,
    pub lemma2_ok: bool,
    pub bound_ok: bool,
    pub min_density_triangle: usize,
    pub max_density_triangle: usize,
    pub max_angle_triangle: usize,
    pub max_circumradius_triangle: usize,
}

pub fn aggregate(stats: &[TriangleStats], saturated: bool) -> Result<DensityReport, DensityError> {
    let first = stats.first().ok_or(DensityError::EmptyTriangulation)?;
    let total_area = stats.iter().fold(Scalar::zero(), |acc, s| acc + &s.area);
    let total = to_float(&total_area);
    let overall = half_pi() * (stats.len() as u32) / &total;
    let weighted = stats.iter().fold(Float::with_val(PRECISION, 0), |acc, s| {
        acc + to_float(&s.area) * Float::with_val(PRECISION, s.density)
    }) / &total;
    let overall_density = overall.to_f64();
    let weighted_density = weighted.to_f64();
    debug_assert!((overall_density - weighted_density).abs() <= 1e-12 * overall_density.max(1.0));

    let mut min_i = first;
    let mut max_i = first;
    let mut angle_i = first;
    let mut r_i = first;
    let mut sum = 0.0;
    for s in stats {
        sum += s.density;
        if s.density < min_i.density {
            min_i = s;
        }
        if s.density > max_i.density {
            max_i = s;
        }
        if s.largest_angle > angle_i.largest_angle {
            angle_i = s;
        }
        if s.circum.radius_squared > r_i.circum.radius_squared {
            r_i = s;
        }
    }
    let lemma1 = check_lemma1(stats, saturated);
    let lemma2 = check_lemma2(stats);
    Ok(DensityReport {
        triangle_count: stats.len(),
        min_density: min_i.density,
        max_density: max_i.density,
        mean_density: sum / stats.len() as f64,
        max_largest_angle: angle_i.largest_angle,
        max_circumradius_squared: r_i.circum.radius_squared.clone(),
        total_area,
        overall_density,
        weighted_density,
        bound: DENSITY_BOUND,
        lemma1_ok: lemma1.ok(),
        lemma2_ok: lemma2.ok(),
        bound_ok: overall_density <= DENSITY_BOUND + DENSITY_TOLERANCE,
        lemma1,
        lemma2,
        min_density_triangle: min_i.index,
        max_density_triangle: max_i.index,
        max_angle_triangle: angle_i.index,
        max_circumradius_triangle: r_i.index,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeEstimate {
    /// Estimated area inside the triangle covered by the vertex unit disks.
    pub covered_area: f64,
    /// One standard error of the estimate.
    pub std_error: f64,
    /// Set when `samples == 0`; the estimate is then defined as 0.
    pub degenerate: bool,
}

/// Monte-Carlo estimate of the triangle area covered by the unit disks at its
/// three vertices. For a Delaunay triangle with sides ≥ 2 and circumradius
/// below 2 this converges to π/2.
pub fn wedge_coverage_check(t: &Triangulation, i: usize, samples: usize, seed: u64) -> WedgeEstimate {
    if samples == 0 {
        return WedgeEstimate { covered_area: 0.0, std_error: 0.0, degenerate: true };
    }
    let [a, b, c] = t.triangle_points(i).map(|p| p.approx());
    let area = t.triangle_area(i).to_f64();
    let (ux, uy) = (b[0] - a[0], b[1] - a[1]);
    let (vx, vy) = (c[0] - a[0], c[1] - a[1]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let (mut r, mut s): (f64, f64) = (rng.gen(), rng.gen());
        if r + s > 1.0 {
            r = 1.0 - r;
            s = 1.0 - s;
        }
        let x = a[0] + r * ux + s * vx;
        let y = a[1] + r * uy + s * vy;
        if [a, b, c].iter().any(|v| (x - v[0]).powi(2) + (y - v[1]).powi(2) < 1.0) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    WedgeEstimate {
        covered_area: p * area,
        std_error: area * (p * (1.0 - p) / samples as f64).sqrt(),
        degenerate: false,
    }
}
