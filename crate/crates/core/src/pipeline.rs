//! End-to-end certification: validate → saturate → triangulate → verify →
//! analyse → bound check, and the JSON report it produces.

use std::str::FromStr;

use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::density::{
    aggregate, all_stats, interior_triangles, window_certified_triangles, DensityReport, DENSITY_BOUND,
};
use crate::geometry::distance_squared;
use crate::saturation::{find_witness, saturate_detailed, Configuration, Window, Witness};
use crate::scalar::Scalar;
use crate::triangulation::{delaunay, verify_delaunay, Triangulation, TriangulationError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
}

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    /// Only triangles whose vertices are all at least this deep inside the
    /// window are analysed; 0 analyses every hull triangle.
    pub interior_margin: Scalar,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { interior_margin: Scalar::from_int(crate::density::DEFAULT_INTERIOR_MARGIN) }
    }
}

/// Which triangles a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// All vertices at depth ≥ the interior margin.
    Interior,
    /// Circumcentre inside the window; used when the interior set is empty.
    WindowCertified,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Interior => "interior",
            Region::WindowCertified => "window_certified",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub n_points: usize,
    pub n_inserted: usize,
    pub n_triangles: usize,
    pub interior_margin: Scalar,
    pub region: Region,
    pub min_pairwise_distance_squared: Option<Scalar>,
    pub density: Option<DensityReport>,
    pub saturated: bool,
    pub delaunay_ok: bool,
    pub witnesses: Vec<Witness>,
    pub failed_checks: Vec<&'static str>,
}

impl Report {
    pub fn certified(&self) -> bool {
        self.failed_checks.is_empty()
    }

    pub fn lemma1_ok(&self) -> bool {
        self.density.as_ref().is_some_and(|d| d.lemma1_ok)
    }

    pub fn lemma2_ok(&self) -> bool {
        self.density.as_ref().is_some_and(|d| d.lemma2_ok)
    }

    pub fn bound_ok(&self) -> bool {
        self.density.as_ref().is_some_and(|d| d.bound_ok)
    }

    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        let exact = |s: &Option<Scalar>| s.as_ref().map_or(Value::Null, |v| Value::String(v.to_exact_string()));
        let approx = |f: Option<f64>| f.map_or(Value::Null, |v| Value::Number(number17(v)));
        let d = self.density.as_ref();
        m.insert("schema_version".into(), SCHEMA_VERSION.into());
        m.insert("n_points".into(), self.n_points.into());
        m.insert("n_inserted".into(), self.n_inserted.into());
        m.insert("n_triangles".into(), self.n_triangles.into());
        m.insert("interior_margin".into(), Value::String(self.interior_margin.to_exact_string()));
        m.insert("region".into(), Value::String(self.region.name().into()));
        m.insert("min_pairwise_distance_squared".into(), exact(&self.min_pairwise_distance_squared));
        m.insert("max_circumradius_squared".into(), exact(&d.map(|d| d.max_circumradius_squared.clone())));
        m.insert("max_largest_angle".into(), approx(d.map(|d| d.max_largest_angle)));
        m.insert("min_density".into(), approx(d.map(|d| d.min_density)));
        m.insert("max_density".into(), approx(d.map(|d| d.max_density)));
        m.insert("overall_density".into(), approx(d.map(|d| d.overall_density)));
        m.insert("bound".into(), Value::String(sig17(DENSITY_BOUND)));
        m.insert("saturated".into(), self.saturated.into());
        m.insert("delaunay_ok".into(), self.delaunay_ok.into());
        m.insert("lemma1_ok".into(), self.lemma1_ok().into());
        m.insert("lemma2_ok".into(), self.lemma2_ok().into());
        m.insert("bound_ok".into(), self.bound_ok().into());
        m.insert(
            "failed_checks".into(),
            Value::Array(self.failed_checks.iter().map(|s| Value::String((*s).into())).collect()),
        );
        let witnesses = self
            .witnesses
            .iter()
            .map(|w| {
                let mut o = Map::new();
                o.insert("x".into(), Value::String(w.location.x.to_exact_string()));
                o.insert("y".into(), Value::String(w.location.y.to_exact_string()));
                o.insert("clearance_squared".into(), exact(&w.clearance_squared));
                Value::Object(o)
            })
            .collect();
        m.insert("witnesses".into(), Value::Array(witnesses));
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("report serialises");
        s.push('\n');
        s
    }
}

/// `v` with 17 significant digits, positional when the exponent is modest.
pub fn sig17(v: f64) -> String {
    let s = format!("{v:.16e}");
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        return s;
    }
    let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    if exp >= 0 {
        let split = exp as usize + 1;
        let (int, frac) = digits.split_at(split);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
    }
}

fn number17(v: f64) -> Number {
    Number::from_str(&sig17(v)).expect("decimal literal")
}

/// Minimum squared distance over Delaunay edges (which contain every
/// nearest-neighbour pair).
pub fn min_pairwise_distance_squared(t: &Triangulation) -> Option<Scalar> {
    t.edges().iter().map(|&(a, b)| distance_squared(&t.points[a], &t.points[b])).min()
}

fn analyse(
    points: Vec<crate::geometry::Point>,
    window: &Window,
    inserted: Vec<Witness>,
    saturated: bool,
    opts: &AnalysisOptions,
) -> Result<Report, PipelineError> {
    let n_points = points.len();
    let t = delaunay(&points)?;
    let delaunay_ok = verify_delaunay(&t).map(|r| r.passed()).unwrap_or(false);
    let all = all_stats(&t).expect("triangulation triangles are non-degenerate");
    let mut region = Region::Interior;
    let mut selected = interior_triangles(&t, window, &opts.interior_margin);
    if selected.is_empty() {
        region = Region::WindowCertified;
        selected = window_certified_triangles(&all, window);
    }
    let stats: Vec<_> = selected.iter().map(|&i| all[i].clone()).collect();
    let density = aggregate(&stats, saturated).ok();
    let mut failed = Vec::new();
    if !saturated {
        failed.push("saturation");
    }
    if !delaunay_ok {
        failed.push("delaunay");
    }
    match &density {
        None => failed.push("empty_region"),
        Some(d) => {
            if !d.lemma1_ok {
                failed.push("lemma1");
            }
            if !d.lemma2_ok {
                failed.push("lemma2");
            }
            if !d.bound_ok {
                failed.push("bound");
            }
        }
    }
    Ok(Report {
        n_points,
        n_inserted: inserted.len(),
        n_triangles: stats.len(),
        interior_margin: opts.interior_margin.clone(),
        region,
        min_pairwise_distance_squared: min_pairwise_distance_squared(&t),
        density,
        saturated,
        delaunay_ok,
        witnesses: inserted,
        failed_checks: failed,
    })
}

/// Saturates `c` and certifies the result.
pub fn certify(c: &Configuration, opts: &AnalysisOptions) -> Result<Report, PipelineError> {
    let sat = saturate_detailed(c);
    let points = sat.configuration.points().to_vec();
    analyse(points, c.window(), sat.inserted, true, opts)
}

/// Analyses `c` as given. A configuration that is not window-saturated is
/// reported with its maximum-clearance witness and the `saturation` check
/// failed.
pub fn analyze(c: &Configuration, opts: &AnalysisOptions) -> Result<Report, PipelineError> {
    let witness = find_witness(c);
    let saturated = witness.is_none();
    let mut report = analyse(c.points().to_vec(), c.window(), Vec::new(), saturated, opts)?;
    report.witnesses = witness.into_iter().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_formats() {
        assert_eq!(sig17(std::f64::consts::FRAC_PI_4), "0.78539816339744828");
        assert_eq!(sig17(1.0), "1.0000000000000000");
        assert_eq!(sig17(-2.5e-3), "-0.0025000000000000001");
        assert_eq!(sig17(1e20), "1.0000000000000000e20");
        assert_eq!(sig17(DENSITY_BOUND), "0.90689968211710892");
    }
}
