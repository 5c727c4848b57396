//! Circle-packing density certification.
//!
//! Unit circles are represented by their centres; a configuration is valid
//! when centres are pairwise at least 2 apart. The crate saturates a
//! configuration inside a rectangular window, builds its Delaunay
//! triangulation with exact rational predicates, and checks that every
//! triangle, and the area-weighted average over triangles, stays below the
//! hexagonal packing density π/√12.

pub mod density;
pub mod generators;
pub mod geometry;
pub mod pipeline;
pub mod pointfile;
pub mod render;
pub mod saturation;
pub mod scalar;
pub mod triangulation;

pub use density::{
    aggregate, all_stats, check_lemma1, check_lemma2, interior_triangles, triangle_stats, window_certified_triangles, wedge_coverage_check, CheckResult, DensityReport,
    TriangleStats, DENSITY_BOUND, DENSITY_TOLERANCE,
};
pub use generators::{generate, GeneratorKind, GeneratorSpec};
pub use geometry::{circumcircle, distance_squared, incircle, lift, orient2d, Circumcircle, LiftedPoint, Point, Sign};
pub use pipeline::{analyze, certify, AnalysisOptions, Region, Report};
pub use saturation::{find_witness, is_saturated, saturate, validate, Configuration, Window, Witness};
pub use scalar::Scalar;
pub use triangulation::{convex_hull_area, delaunay, verify_delaunay, Triangle, Triangulation, VerificationResult};
