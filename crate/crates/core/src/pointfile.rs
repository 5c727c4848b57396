//! Plain-text point files.
//!
//! ```text
//! # comment
//! window 0 0 10 10
//! 1.5,2
//! 7/3,4
//! ```
//!
//! Coordinates are decimal or `p/q` literals and parse losslessly.

use thiserror::Error;

use crate::geometry::Point;
use crate::saturation::{ConfigError, Window};
use crate::scalar::{ParseScalarError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: bad number: {source}")]
    Number { line: usize, source: ParseScalarError },
    #[error("missing `window xmin ymin xmax ymax` header")]
    MissingWindow,
    #[error("line {line}: second window header")]
    DuplicateWindow { line: usize },
    #[error("line {line}: {source}")]
    BadWindow { line: usize, source: ConfigError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFile {
    pub window: Window,
    pub points: Vec<Point>,
    /// 1-based source line of each point.
    pub lines: Vec<usize>,
}

fn number(line: usize, text: &str) -> Result<Scalar, PointFileError> {
    text.parse().map_err(|source| PointFileError::Number { line, source })
}

pub fn parse_point_file(text: &str) -> Result<PointFile, PointFileError> {
    let mut window = None;
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if let Some(rest) = s.strip_prefix("window") {
            if window.is_some() {
                return Err(PointFileError::DuplicateWindow { line });
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(PointFileError::Syntax { line, message: "window needs 4 numbers".into() });
            }
            let v = fields.iter().map(|f| number(line, f)).collect::<Result<Vec<_>, _>>()?;
            let [a, b, c, d]: [Scalar; 4] = v.try_into().unwrap();
            window = Some(Window::new(a, b, c, d).map_err(|source| PointFileError::BadWindow { line, source })?);
            continue;
        }
        let Some((x, y)) = s.split_once(',') else {
            return Err(PointFileError::Syntax { line, message: format!("expected `x,y`, got `{s}`") });
        };
        points.push(Point::new(number(line, x)?, number(line, y)?));
        lines.push(line);
    }
    let window = window.ok_or(PointFileError::MissingWindow)?;
    Ok(PointFile { window, points, lines })
}

/// Serialises a point file. `notes[i]`, when present, is written as a
/// comment line directly above point `i`.
pub fn write_point_file(window: &Window, points: &[Point], notes: &[Option<String>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# packdens point file, {} points\n", points.len()));
    out.push_str(&format!("window {} {} {} {}\n", window.xmin, window.ymin, window.xmax, window.ymax));
    for (i, p) in points.iter().enumerate() {
        if let Some(Some(note)) = notes.get(i) {
            out.push_str(&format!("# {note}\n"));
        }
        out.push_str(&format!("{},{}\n", p.x, p.y));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_comments_and_rationals() {
        let f = parse_point_file("# hi\n\nwindow 0 0 10 10\n1.5,2\n  7/3 , 4 \n# tail\n").unwrap();
        assert_eq!(f.window, Window::from_ints(0, 0, 10, 10).unwrap());
        assert_eq!(f.points[1].x, Scalar::ratio(7, 3));
        assert_eq!(f.lines, vec![4, 5]);
    }

    #[test]
    fn error_cases() {
        assert_eq!(parse_point_file("1,2\n"), Err(PointFileError::MissingWindow));
        assert!(matches!(parse_point_file("window 0 0 10 10\n1;2\n"), Err(PointFileError::Syntax { line: 2, .. })));
        assert!(matches!(parse_point_file("window 0 0 10 10\n1,x\n"), Err(PointFileError::Number { line: 2, .. })));
        assert!(matches!(parse_point_file("window 0 0 1 1\n"), Err(PointFileError::BadWindow { line: 1, .. })));
        assert!(matches!(
            parse_point_file("window 0 0 10 10\nwindow 0 0 10 10\n"),
            Err(PointFileError::DuplicateWindow { line: 2 })
        ));
    }

    #[test]
    fn round_trip_is_exact() {
        let w = Window::from_ints(0, 0, 10, 10).unwrap();
        let pts = vec![
            Point::new(Scalar::ratio(1, 3), Scalar::ratio(22, 7)),
            Point::new(Scalar::ratio(5, 4), Scalar::from_int(9)),
        ];
        let text = write_point_file(&w, &pts, &[None, Some("inserted".into())]);
        assert!(text.contains("# inserted\n1.25,9\n"));
        let back = parse_point_file(&text).unwrap();
        assert_eq!(back.points, pts);
        assert_eq!(back.window, w);
    }
}
