use packdens_core::density::{check_lemma1, check_lemma2};
use packdens_core::saturation::{nearest_distance_squared, saturate_detailed};
use packdens_core::{
    all_stats, delaunay, find_witness, generate, is_saturated, validate, window_certified_triangles, GeneratorKind,
    GeneratorSpec, Point, Scalar, Window,
};
use proptest::prelude::*;

/// Largest float clearance over a grid of pitch `step` covering the window.
fn grid_max_clearance(points: &[Point], window: &Window, step: f64) -> f64 {
    let approx: Vec<[f64; 2]> = points.iter().map(|p| p.approx()).collect();
    let [x0, y0, x1, y1] = [&window.xmin, &window.ymin, &window.xmax, &window.ymax].map(|s| s.to_f64());
    let nx = ((x1 - x0) / step).round() as usize;
    let ny = ((y1 - y0) / step).round() as usize;
    let mut best = 0f64;
    for i in 0..=nx {
        for j in 0..=ny {
            let x = (x0 + i as f64 * step).min(x1);
            let y = (y0 + j as f64 * step).min(y1);
            let d = approx.iter().map(|p| (p[0] - x).hypot(p[1] - y)).fold(f64::INFINITY, f64::min);
            best = best.max(d);
        }
    }
    best
}

fn dart(seed: u64, size: i64, max_points: usize) -> packdens_core::Configuration {
    let window = Window::from_ints(0, 0, size, size).unwrap();
    let mut spec = GeneratorSpec::new(GeneratorKind::RandomDart, window);
    spec.seed = seed;
    spec.max_points = Some(max_points);
    generate(&spec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn witness_is_the_maximum_clearance_point(seed in any::<u64>(), n in 1usize..25) {
        let c = dart(seed, 12, n);
        let w = find_witness(&c);
        let grid = grid_max_clearance(c.points(), c.window(), 0.05);
        match w {
            None => prop_assert!(grid < 2.0 + 1e-9),
            Some(w) => {
                let clearance = w.clearance_squared.unwrap();
                prop_assert!(clearance >= Scalar::from_int(4));
                prop_assert!(c.window().contains(&w.location));
                prop_assert_eq!(nearest_distance_squared(c.points(), &w.location), Some(clearance.clone()));
                let exact = clearance.to_f64().sqrt();
                // No grid point beats the witness; a fine grid gets close to it.
                prop_assert!(grid <= exact + 1e-9, "grid {grid} > witness {exact}");
                prop_assert!(grid >= exact - 0.05 * std::f64::consts::SQRT_2);
            }
        }
    }

    #[test]
    fn saturation_is_sound_and_complete(seed in any::<u64>(), n in 0usize..40) {
        let c = dart(seed, 14, n);
        let sat = saturate_detailed(&c);
        let out = &sat.configuration;
        prop_assert!(validate(out.points().to_vec(), out.window().clone()).is_ok());
        prop_assert_eq!(&out.points()[..c.len()], c.points());
        prop_assert_eq!(out.len(), c.len() + sat.inserted.len());
        for (k, w) in sat.inserted.iter().enumerate() {
            let before = &out.points()[..c.len() + k];
            prop_assert_eq!(&w.location, &out.points()[c.len() + k]);
            let clearance = nearest_distance_squared(before, &w.location);
            prop_assert_eq!(&clearance, &w.clearance_squared);
            if let Some(cl) = clearance {
                prop_assert!(cl >= Scalar::from_int(4));
            }
        }
        prop_assert!(is_saturated(out));
        prop_assert!(grid_max_clearance(out.points(), out.window(), 0.05) < 2.1);
    }

    #[test]
    fn window_certified_triangles_obey_both_lemmas(seed in any::<u64>(), n in 0usize..60) {
        let c = dart(seed, 16, n);
        let s = saturate_detailed(&c).configuration;
        let t = delaunay(s.points()).unwrap();
        let stats = all_stats(&t).unwrap();
        let chosen: Vec<_> = window_certified_triangles(&stats, s.window()).into_iter().map(|i| stats[i].clone()).collect();
        prop_assert!(!chosen.is_empty());
        let l1 = check_lemma1(&chosen, true);
        let l2 = check_lemma2(&chosen);
        prop_assert!(l1.ok(), "{:?}", l1.violations);
        prop_assert!(l2.ok(), "{:?}", l2.violations);
        for st in &chosen {
            // Independent density: (π/2) / area, area by the shoelace formula.
            let [a, b, c] = t.triangle_points(st.index).map(|p| p.approx());
            let area = ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).abs() / 2.0;
            prop_assert!((st.density - std::f64::consts::FRAC_PI_2 / area).abs() < 1e-9);
            // Law of cosines for the largest angle.
            let side = |p: [f64; 2], q: [f64; 2]| (p[0] - q[0]).hypot(p[1] - q[1]);
            let (x, y, z) = (side(b, c), side(a, c), side(a, b));
            let angle = |o: f64, p: f64, q: f64| ((p * p + q * q - o * o) / (2.0 * p * q)).clamp(-1.0, 1.0).acos();
            let largest = angle(x, y, z).max(angle(y, x, z)).max(angle(z, x, y));
            prop_assert!((st.largest_angle - largest).abs() < 1e-9);
        }
    }
}

#[test]
fn generated_configurations_validate_and_repeat() {
    let window = Window::from_ints(-3, 2, 17, 15).unwrap();
    for kind in [GeneratorKind::Hexagonal, GeneratorKind::Square, GeneratorKind::PerturbedHex, GeneratorKind::RandomDart] {
        for seed in 0..5 {
            let mut spec = GeneratorSpec::new(kind, window.clone());
            spec.seed = seed;
            spec.spacing = Scalar::ratio(9, 4);
            spec.perturbation = Scalar::ratio(1, 10);
            let a = generate(&spec).unwrap();
            let b = generate(&spec).unwrap();
            assert_eq!(a, b);
            assert!(validate(a.points().to_vec(), a.window().clone()).is_ok());
        }
    }
}

#[test]
fn hexagonal_spacing_two_is_already_saturated() {
    for size in [10, 20, 40] {
        let spec = GeneratorSpec::new(GeneratorKind::Hexagonal, Window::from_ints(0, 0, size, size).unwrap());
        let c = generate(&spec).unwrap();
        assert!(find_witness(&c).is_none(), "size {size}");
        assert_eq!(saturate_detailed(&c).inserted.len(), 0);
    }
}

#[test]
fn truncated_hexagonal_gaps_sit_on_the_boundary() {
    // Other windows cut the lattice so that a corner gap can open up; any
    // point saturation adds stays within distance 2 of the window boundary.
    for size in [8, 9, 11, 13, 17] {
        let spec = GeneratorSpec::new(GeneratorKind::Hexagonal, Window::from_ints(0, 0, size, size).unwrap());
        let c = generate(&spec).unwrap();
        for w in saturate_detailed(&c).inserted {
            assert!(c.window().depth(&w.location) < Scalar::from_int(2), "size {size}: {:?}", w.location);
        }
    }
}
