//! SVG rendering of a triangulated configuration.

use std::fmt::Write;

use crate::density::{triangle_stats, DENSITY_BOUND};
use crate::saturation::Window;
use crate::triangulation::Triangulation;

/// Pixels per length unit.
const SCALE: f64 = 20.0;
/// Border around the window, in length units, so boundary circles fit.
const BORDER: f64 = 1.5;

const COOL: (f64, f64, f64) = (44.0, 123.0, 182.0);
const HOT: (f64, f64, f64) = (215.0, 25.0, 28.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub circles: bool,
    pub edges: bool,
    pub circumcircles: bool,
    pub heat: bool,
    pub window: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { circles: true, edges: true, circumcircles: false, heat: true, window: true }
    }
}

/// Heat colour for a density on the linear scale π/4 → π/√12 (clamped).
pub fn heat_color(density: f64) -> String {
    let lo = std::f64::consts::FRAC_PI_4;
    let t = ((density - lo) / (DENSITY_BOUND - lo)).clamp(0.0, 1.0);
    let mix = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(COOL.0, HOT.0), mix(COOL.1, HOT.1), mix(COOL.2, HOT.2))
}

pub fn render_svg(t: &Triangulation, window: &Window, opts: RenderOptions) -> String {
    let [xmin, ymin, xmax, ymax] = [&window.xmin, &window.ymin, &window.xmax, &window.ymax].map(|s| s.to_f64());
    let sx = |x: f64| (x - xmin + BORDER) * SCALE;
    let sy = |y: f64| (ymax - y + BORDER) * SCALE;
    let width = (xmax - xmin + 2.0 * BORDER) * SCALE;
    let height = (ymax - ymin + 2.0 * BORDER) * SCALE;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    )
    .unwrap();

    if opts.heat {
        writeln!(out, r#"<g id="heat" stroke="none">"#).unwrap();
        for i in 0..t.triangles.len() {
            let density = triangle_stats(t, i).map(|s| s.density).unwrap_or(0.0);
            let pts: Vec<String> = t
                .triangle_points(i)
                .iter()
                .map(|p| {
                    let [x, y] = p.approx();
                    format!("{:.3},{:.3}", sx(x), sy(y))
                })
                .collect();
            writeln!(out, r#"<polygon points="{}" fill="{}"/>"#, pts.join(" "), heat_color(density)).unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    if opts.edges {
        writeln!(out, r##"<g id="edges" stroke="#222222" stroke-width="1">"##).unwrap();
        for (a, b) in t.edges() {
            let [x1, y1] = t.points[a].approx();
            let [x2, y2] = t.points[b].approx();
            writeln!(out, r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#, sx(x1), sy(y1), sx(x2), sy(y2))
                .unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    if opts.circles {
        writeln!(out, r##"<g id="circles" fill="none" stroke="#000000" stroke-width="1">"##).unwrap();
        for p in &t.points {
            let [x, y] = p.approx();
            writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#, sx(x), sy(y), SCALE).unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    if opts.circumcircles {
        writeln!(out, r##"<g id="circumcircles" fill="none" stroke="#7b3294" stroke-width="0.5" stroke-dasharray="4 2">"##).unwrap();
        for i in 0..t.triangles.len() {
            if let Ok(s) = triangle_stats(t, i) {
                let [x, y] = s.circum.center.approx();
                let r = s.circum.radius_squared.to_f64().sqrt() * SCALE;
                writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#, sx(x), sy(y), r).unwrap();
            }
        }
        writeln!(out, "</g>").unwrap();
    }
    if opts.window {
        writeln!(
            out,
            r##"<rect id="window" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#008837" stroke-width="1.5"/>"##,
            sx(xmin),
            sy(ymax),
            (xmax - xmin) * SCALE,
            (ymax - ymin) * SCALE
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::triangulation::delaunay;

    #[test]
    fn heat_scale_ends() {
        assert_eq!(heat_color(std::f64::consts::FRAC_PI_4), "#2c7bb6");
        assert_eq!(heat_color(DENSITY_BOUND), "#d7191c");
        assert_eq!(heat_color(5.0), "#d7191c");
        assert_eq!(heat_color(0.1), "#2c7bb6");
    }

    #[test]
    fn layers_toggle() {
        let pts: Vec<Point> = [(0, 0), (2, 0), (0, 2)].iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
        let t = delaunay(&pts).unwrap();
        let w = Window::from_ints(0, 0, 4, 4).unwrap();
        let full = render_svg(&t, &w, RenderOptions { circumcircles: true, ..Default::default() });
        for id in ["heat", "edges", "circles", "circumcircles", "window"] {
            assert!(full.contains(&format!(r#"id="{id}""#)), "{id}");
        }
        assert_eq!(full.matches("<circle ").count(), 4);
        let bare = render_svg(
            &t,
            &w,
            RenderOptions { circles: false, edges: false, circumcircles: false, heat: false, window: false },
        );
        assert!(!bare.contains("<g"));
        assert!(bare.ends_with("</svg>\n"));
    }
}
