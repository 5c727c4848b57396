//! Fixtures shared by the benchmarks in `benches/`.

use packdens_core::{generate, Configuration, GeneratorKind, GeneratorSpec, Point, Scalar, Window};

pub fn window(size: i64) -> Window {
    Window::from_ints(0, 0, size, size).expect("window of side ≥ 4")
}

pub fn lattice(kind: GeneratorKind, size: i64) -> Configuration {
    generate(&GeneratorSpec::new(kind, window(size))).expect("lattice spec is valid")
}

pub fn dart(seed: u64, size: i64) -> Configuration {
    let mut spec = GeneratorSpec::new(GeneratorKind::RandomDart, window(size));
    spec.seed = seed;
    generate(&spec).expect("dart spec is valid")
}

/// `n` pseudo-random rational points with denominator 1000.
pub fn scattered(n: usize, seed: u64) -> Vec<Point> {
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s % 2_000_000) as i64 - 1_000_000
    };
    (0..n).map(|_| Point::new(Scalar::ratio(next(), 1000), Scalar::ratio(next(), 1000))).collect()
}
