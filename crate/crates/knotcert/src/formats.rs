//! Control polygon files and subdivision tables.
//!
//! Two point formats are read and written:
//!
//! * whitespace: one `x y z` record per line, rationals as `p/q`, `#` starts a
//!   comment;
//! * braces: `{x, y, z}` triples, as typed into a computer algebra system.
//!   Anything outside the innermost braces (list brackets, commas, `(* *)`
//!   comments, `P[k]:` tags) is ignored.

use std::fs;
use std::path::Path;

use knotcert_core::bezier::{monotone_axes, ControlPolygon, SubdivisionForest};
use knotcert_core::kernel::{parse_rational, Point3, Rational};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointFormat {
    Whitespace,
    Braces,
}

impl PointFormat {
    /// Braces if the text contains any `{`, whitespace otherwise.
    pub fn detect(text: &str) -> PointFormat {
        if text.contains('{') {
            PointFormat::Braces
        } else {
            PointFormat::Whitespace
        }
    }
}

fn rational_at(token: &str, line: usize) -> Result<Rational> {
    parse_rational(token).map_err(|e| Error::parse(line, e.to_string()))
}

pub fn parse_points_whitespace(text: &str) -> Result<Vec<Point3>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::parse(
                i + 1,
                format!("expected 3 coordinates, found {}", tokens.len()),
            ));
        }
        let c: Vec<Rational> = tokens.iter().map(|t| rational_at(t, i + 1)).collect::<Result<_>>()?;
        let [x, y, z]: [Rational; 3] = c.try_into().expect("three coordinates");
        out.push(Point3::new(x, y, z));
    }
    Ok(out)
}

pub fn parse_points_braces(text: &str) -> Result<Vec<Point3>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut open: Option<(usize, String)> = None;
    let mut in_comment = false;
    let mut chars = text.chars().peekable();
    while let Some(ch) = chars.next() {
        if ch == '\n' {
            line += 1;
        }
        if in_comment {
            if ch == '*' && chars.peek() == Some(&')') {
                chars.next();
                in_comment = false;
            }
            continue;
        }
        match ch {
            '(' if chars.peek() == Some(&'*') => {
                chars.next();
                in_comment = true;
            }
            '{' => open = Some((line, String::new())),
            '}' => {
                let Some((start, body)) = open.take() else { continue };
                let parts: Vec<&str> = body.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(Error::parse(
                        start,
                        format!("expected {{x, y, z}}, found {{{}}}", body.trim()),
                    ));
                }
                let c: Vec<Rational> = parts.iter().map(|t| rational_at(t, start)).collect::<Result<_>>()?;
                let [x, y, z]: [Rational; 3] = c.try_into().expect("three coordinates");
                out.push(Point3::new(x, y, z));
            }
            _ => {
                if let Some((_, body)) = open.as_mut() {
                    body.push(ch);
                }
            }
        }
    }
    if let Some((start, _)) = open {
        return Err(Error::parse(start, "unterminated '{'".into()));
    }
    Ok(out)
}

pub fn parse_points(text: &str) -> Result<Vec<Point3>> {
    match PointFormat::detect(text) {
        PointFormat::Whitespace => parse_points_whitespace(text),
        PointFormat::Braces => parse_points_braces(text),
    }
}

pub fn parse_polygon(text: &str) -> Result<ControlPolygon> {
    Ok(ControlPolygon::new(parse_points(text)?)?)
}

pub fn read_polygon(path: &Path) -> Result<ControlPolygon> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_polygon(&text)
}

fn brace_point(p: &Point3) -> String {
    format!("{{ {}, {},{} }}", p.x, p.y, p.z)
}

pub fn write_points(points: &[Point3], format: PointFormat) -> String {
    let mut out = String::new();
    for (i, p) in points.iter().enumerate() {
        match format {
            PointFormat::Whitespace => out.push_str(&format!("{} {} {}\n", p.x, p.y, p.z)),
            PointFormat::Braces => {
                out.push_str(&brace_point(p));
                out.push_str(if i + 1 < points.len() { ",\n" } else { "\n" });
            }
        }
    }
    out
}

pub fn write_polygon(cp: &ControlPolygon, format: PointFormat) -> String {
    write_points(cp.points(), format)
}

/// One table section: a `(*Subdivision L *)` header, then the pieces in brace
/// form separated by blank lines, optionally tagged `P[k]: <monotone axes>`.
pub fn write_forest_table(forest: &SubdivisionForest, annotate: bool) -> String {
    let mut out = format!("(*Subdivision {} *)\n", forest.level);
    for (k, piece) in forest.pieces.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        if annotate {
            out.push_str(&format!("P[{k}]: {}\n", monotone_axes(piece)));
        }
        out.push_str(&write_polygon(piece, PointFormat::Braces));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use knotcert_core::fixtures::{k0, k1};
    use proptest::prelude::*;

    #[test]
    fn both_formats_read_the_fixture() {
        let ws = "# K1\n0 9 20\n-15 -95 -50\n40 80 -20\n10 -60 58\n-60 30 20\n40 -60 -60\n0 9 20\n";
        assert_eq!(parse_polygon(ws).unwrap(), k1());
        let br = "{{0,9,20},{-15,-95,-50},{40,80,-20},{10,-60,58},{-60,30,20},{40,-60,-60},{0,9,20}}";
        assert_eq!(parse_polygon(br).unwrap(), k1());
    }

    #[test]
    fn table_comments_and_tags_are_skipped() {
        let text = "(*Subdivision 1 {not a point} *)\nP[0]: Y, Z\n{ 1/2, -3,4 },\n{ 0, 0,1 }\n";
        let pts = parse_points(text).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(
            pts[0],
            Point3::new(
                knotcert_core::kernel::frac(1, 2),
                knotcert_core::kernel::int(-3),
                knotcert_core::kernel::int(4)
            )
        );
    }

    #[test]
    fn malformed_input_reports_its_line() {
        match parse_points_whitespace("1 2 3\n1 2\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_points_braces("{1, 2, 3}\n{1, 2/0, 3}") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_points_braces("{1, 2, 3").is_err());
        assert!(parse_points_braces("{1, 2}").is_err());
        assert!(parse_polygon("1 2 3\n").is_err());
    }

    #[test]
    fn fixtures_round_trip() {
        for cp in [k0(), k1()] {
            for f in [PointFormat::Whitespace, PointFormat::Braces] {
                assert_eq!(parse_polygon(&write_polygon(&cp, f)).unwrap(), cp);
            }
        }
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    proptest! {
        #[test]
        fn points_round_trip(pts in prop::collection::vec((rational(), rational(), rational()), 2..12)) {
            let pts: Vec<Point3> = pts.into_iter().map(|(x, y, z)| Point3::new(x, y, z)).collect();
            for f in [PointFormat::Whitespace, PointFormat::Braces] {
                prop_assert_eq!(&parse_points(&write_points(&pts, f)).unwrap(), &pts);
            }
        }
    }
}
