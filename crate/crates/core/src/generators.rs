//! Reference and randomised circle configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Integer, Rational};
use thiserror::Error;

use crate::geometry::{distance_squared, distance_squared_approx, Point};
use crate::saturation::{validate, CellGrid, ConfigError, Configuration, Window};
use crate::scalar::Scalar;

/// Consecutive rejections that end dart throwing.
pub const DART_FAILURE_BUDGET: usize = 10_000;

/// Random coordinates are multiples of `window_size / 2^DART_BITS`.
const DART_BITS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Hexagonal,
    Square,
    PerturbedHex,
    RandomDart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub window: Window,
    pub spacing: Scalar,
    pub perturbation: Scalar,
    pub seed: u64,
    /// Stop dart throwing after this many points.
    pub max_points: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, window: Window) -> GeneratorSpec {
        GeneratorSpec {
            kind,
            window,
            spacing: Scalar::from_int(2),
            perturbation: Scalar::zero(),
            seed: 0,
            max_points: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("perturbation too large: {0}")]
    PerturbationTooLarge(ConfigError),
}

/// Largest 50-digit decimal not exceeding √3/2.
pub fn half_sqrt3_under() -> Scalar {
    let scale = Integer::from(Integer::u_pow_u(10, 50));
    let radicand = Integer::from(3) * Integer::from(&scale * &scale);
    let root = radicand.sqrt();
    Scalar::from_rational(Rational::from((root, scale * 2u32)))
}

/// Horizontal padding added to the hexagonal pitch so the rounded-down row
/// pitch still keeps diagonal neighbours at distance ≥ spacing.
pub fn hex_padding() -> Scalar {
    Scalar::pow10(-20)
}

pub fn generate(spec: &GeneratorSpec) -> Result<Configuration, GeneratorError> {
    if spec.spacing < Scalar::from_int(2) {
        return Err(GeneratorError::InvalidSpec(format!("spacing {} is below 2", spec.spacing)));
    }
    if spec.perturbation.is_negative() {
        return Err(GeneratorError::InvalidSpec("negative perturbation".into()));
    }
    let points = match spec.kind {
        GeneratorKind::Hexagonal => hexagonal(&spec.window, &spec.spacing),
        GeneratorKind::Square => square(&spec.window, &spec.spacing),
        GeneratorKind::PerturbedHex => perturbed(hexagonal(&spec.window, &spec.spacing), spec),
        GeneratorKind::RandomDart => random_dart(&spec.window, spec.seed, spec.max_points),
    };
    validate(points, spec.window.clone()).map_err(GeneratorError::PerturbationTooLarge)
}

fn hexagonal(w: &Window, spacing: &Scalar) -> Vec<Point> {
    let dx = spacing + &hex_padding();
    let dy = spacing * &half_sqrt3_under();
    let half = &dx / &Scalar::from_int(2);
    let mut out = Vec::new();
    let mut y = w.ymin.clone();
    let mut row = 0usize;
    while y <= w.ymax {
        let mut x = if row % 2 == 1 { &w.xmin + &half } else { w.xmin.clone() };
        while x <= w.xmax {
            out.push(Point::new(x.clone(), y.clone()));
            x = x + &dx;
        }
        y = y + &dy;
        row += 1;
    }
    out
}

fn square(w: &Window, spacing: &Scalar) -> Vec<Point> {
    let mut out = Vec::new();
    let mut x = w.xmin.clone();
    while x <= w.xmax {
        let mut y = w.ymin.clone();
        while y <= w.ymax {
            out.push(Point::new(x.clone(), y.clone()));
            y = y + spacing;
        }
        x = x + spacing;
    }
    out
}

/// Uniform rational in `[-1, 1]` on the 2^-32 grid.
fn unit_offset(rng: &mut ChaCha8Rng) -> Scalar {
    let k: u64 = rng.gen_range(0..=(1u64 << 33));
    Scalar::from_rational(Rational::from((Integer::from(k), Integer::from(1u64 << 32)))) - Scalar::one()
}

fn perturbed(points: Vec<Point>, spec: &GeneratorSpec) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let w = &spec.window;
    points
        .into_iter()
        .map(|p| {
            let x = &p.x + &(&spec.perturbation * &unit_offset(&mut rng));
            let y = &p.y + &(&spec.perturbation * &unit_offset(&mut rng));
            Point::new(x.max(w.xmin.clone()).min(w.xmax.clone()), y.max(w.ymin.clone()).min(w.ymax.clone()))
        })
        .collect()
}

fn random_coordinate(rng: &mut ChaCha8Rng, lo: &Scalar, span: &Scalar) -> Scalar {
    let k: u64 = rng.gen_range(0..=(1u64 << DART_BITS));
    let frac = Scalar::from_rational(Rational::from((Integer::from(k), Integer::from(1u64 << DART_BITS))));
    lo + &(span * &frac)
}

fn random_dart(w: &Window, seed: u64, max_points: Option<usize>) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (width, height) = (w.width(), w.height());
    let four = Scalar::from_int(4);
    let mut points: Vec<Point> = Vec::new();
    let mut grid = CellGrid::new(&points);
    let limit = max_points.unwrap_or(usize::MAX);
    let mut failures = 0;
    while failures < DART_FAILURE_BUDGET && points.len() < limit {
        let p = Point::new(random_coordinate(&mut rng, &w.xmin, &width), random_coordinate(&mut rng, &w.ymin, &height));
        let clear = grid.near(&p).all(|j| {
            let approx = distance_squared_approx(&p, &points[j]);
            if approx > 4.0 * (1.0 + 1e-9) {
                true
            } else if approx < 4.0 * (1.0 - 1e-9) {
                false
            } else {
                distance_squared(&p, &points[j]) >= four
            }
        });
        if clear {
            grid.add(points.len(), &p);
            points.push(p);
            failures = 0;
        } else {
            failures += 1;
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(a: i64, b: i64, c: i64, d: i64) -> Window {
        Window::from_ints(a, b, c, d).unwrap()
    }

    #[test]
    fn half_sqrt3_is_a_tight_under_approximation() {
        let r = half_sqrt3_under();
        let three_quarters = Scalar::ratio(3, 4);
        assert!(r.square() <= three_quarters);
        let step = Scalar::pow10(-50);
        assert!((&r + &step).square() > three_quarters);
    }

    #[test]
    fn square_spacing_two() {
        let c = generate(&GeneratorSpec::new(GeneratorKind::Square, win(0, 0, 8, 8))).unwrap();
        assert_eq!(c.len(), 25);
    }

    #[test]
    fn hexagonal_spacing_two() {
        let c = generate(&GeneratorSpec::new(GeneratorKind::Hexagonal, win(0, 0, 10, 10))).unwrap();
        assert!(c.len() >= 25);
        assert_eq!(c.len(), 30);
    }

    #[test]
    fn spacing_below_two_is_rejected() {
        let mut spec = GeneratorSpec::new(GeneratorKind::Hexagonal, win(0, 0, 10, 10));
        spec.spacing = Scalar::one();
        assert!(matches!(generate(&spec), Err(GeneratorError::InvalidSpec(_))));
    }

    #[test]
    fn large_perturbation_is_rejected() {
        let mut spec = GeneratorSpec::new(GeneratorKind::PerturbedHex, win(0, 0, 10, 10));
        spec.perturbation = Scalar::ratio(1, 2);
        spec.seed = 3;
        assert!(matches!(generate(&spec), Err(GeneratorError::PerturbationTooLarge(_))));
    }

    #[test]
    fn perturbed_hex_with_wider_spacing_is_valid_and_seeded() {
        let mut spec = GeneratorSpec::new(GeneratorKind::PerturbedHex, win(0, 0, 12, 12));
        spec.spacing = Scalar::from_int(3);
        spec.perturbation = Scalar::ratio(1, 4);
        spec.seed = 11;
        let a = generate(&spec).unwrap();
        assert_eq!(a, generate(&spec).unwrap());
        spec.seed = 12;
        assert_ne!(a, generate(&spec).unwrap());
    }

    #[test]
    fn random_dart_is_deterministic_and_capped() {
        let mut spec = GeneratorSpec::new(GeneratorKind::RandomDart, win(0, 0, 20, 20));
        spec.seed = 42;
        let a = generate(&spec).unwrap();
        assert_eq!(a, generate(&spec).unwrap());
        assert!(a.len() > 30);
        spec.max_points = Some(10);
        assert_eq!(generate(&spec).unwrap().len(), 10);
    }
}
