#![allow(dead_code)]

use knotcert_core::bezier::{subdivide_levels, subdivide_scaled, ControlPolygon};
use knotcert_core::kernel::{orient2d, parse_rational, seg2_intersection, Point2, Seg2Intersection, Segment2, Sign};
use knotcert_core::{PLKnot, Point3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const K1_LEVELS_1_2: &str = include_str!("../data/k1_levels_1_2.txt");
pub const K1_LEVEL_3: &str = include_str!("../data/k1_level3.txt");

/// A table section: its header line (if any) and its polygons with their
/// optional axis annotations.
pub struct Section {
    pub header: Option<String>,
    pub pieces: Vec<(Option<String>, Vec<Point3>)>,
}

/// Reads brace-style point listings: `{ x, y, z },` lines grouped into
/// polygons by blank lines, `(* ... *)` section headers and `P[k]: ...` tags.
pub fn parse_sections(text: &str) -> Vec<Section> {
    let mut sections: Vec<Section> = Vec::new();
    let mut label: Option<String> = None;
    let mut current: Vec<Point3> = Vec::new();
    let flush = |sections: &mut Vec<Section>, label: &mut Option<String>, current: &mut Vec<Point3>| {
        if !current.is_empty() {
            if sections.is_empty() {
                sections.push(Section {
                    header: None,
                    pieces: Vec::new(),
                });
            }
            sections
                .last_mut()
                .unwrap()
                .pieces
                .push((label.take(), std::mem::take(current)));
        }
    };
    for line in text.lines().map(str::trim) {
        if line.starts_with("(*") {
            flush(&mut sections, &mut label, &mut current);
            sections.push(Section {
                header: Some(line.to_string()),
                pieces: Vec::new(),
            });
        } else if line.starts_with('{') {
            let inner = line.trim_end_matches(',').trim_start_matches('{').trim_end_matches('}');
            let c: Vec<_> = inner.split(',').map(|x| parse_rational(x.trim()).unwrap()).collect();
            assert_eq!(c.len(), 3, "bad point line {line:?}");
            current.push(Point3::new(c[0].clone(), c[1].clone(), c[2].clone()));
        } else if line.starts_with("P[") {
            flush(&mut sections, &mut label, &mut current);
            let tag = line
                .split_once(':')
                .map(|(_, a)| a.trim().to_string())
                .unwrap_or_default();
            label = Some(tag);
        } else if line.is_empty() {
            flush(&mut sections, &mut label, &mut current);
        }
    }
    flush(&mut sections, &mut label, &mut current);
    sections
}

/// The closed PL curve formed by the pieces of a level-`level` subdivision,
/// scaled to integers.
pub fn refinement(cp: &ControlPolygon, level: u32) -> PLKnot {
    let (forest, _) = subdivide_scaled(cp, level).unwrap();
    let mut pts = forest.refinement_points();
    pts.pop();
    PLKnot::new(pts).unwrap()
}

pub fn refinement_unscaled(cp: &ControlPolygon, level: u32) -> PLKnot {
    let mut pts = subdivide_levels(cp, level).refinement_points();
    pts.pop();
    PLKnot::new(pts).unwrap()
}

pub fn sign_i128(x: i128) -> Sign {
    match x.cmp(&0) {
        std::cmp::Ordering::Less => Sign::Negative,
        std::cmp::Ordering::Equal => Sign::Zero,
        std::cmp::Ordering::Greater => Sign::Positive,
    }
}

pub fn det2(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    let (ux, uy) = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
    let (vx, vy) = ((c.0 - a.0) as i128, (c.1 - a.1) as i128);
    ux * vy - uy * vx
}

/// Textbook segment classification from orientations and interval overlap.
pub fn seg2_oracle(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> &'static str {
    let (d1, d2) = (det2(c, d, a).signum(), det2(c, d, b).signum());
    let (d3, d4) = (det2(a, b, c).signum(), det2(a, b, d).signum());
    let on = |p: (i64, i64), q: (i64, i64), r: (i64, i64)| {
        p.0.min(q.0) <= r.0 && r.0 <= p.0.max(q.0) && p.1.min(q.1) <= r.1 && r.1 <= p.1.max(q.1)
    };
    if d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0 {
        // Collinear: project to the dominant axis and intersect intervals.
        let key = |p: (i64, i64)| if a.0 != b.0 { p.0 } else { p.1 };
        let (lo1, hi1) = (key(a).min(key(b)), key(a).max(key(b)));
        let (lo2, hi2) = (key(c).min(key(d)), key(c).max(key(d)));
        let (lo, hi) = (lo1.max(lo2), hi1.min(hi2));
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Less => "overlap",
            std::cmp::Ordering::Equal => "point",
            std::cmp::Ordering::Greater => "empty",
        };
    }
    let proper = d1 * d2 < 0 && d3 * d4 < 0;
    let touch =
        (d1 == 0 && on(c, d, a)) || (d2 == 0 && on(c, d, b)) || (d3 == 0 && on(a, b, c)) || (d4 == 0 && on(a, b, d));
    if proper || touch {
        "point"
    } else {
        "empty"
    }
}

fn p2(u: i64, v: i64) -> Point2 {
    Point2::from_ints(u, v)
}

/// Runs `cases` random orient2d and segment-intersection queries on small
/// integer inputs and counts disagreements with the `i128` oracles.
pub fn kernel_oracle_mismatches(seed: u64, cases: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    for _ in 0..cases {
        let mut pt = || (rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64));
        let (a, b, c, d) = (pt(), pt(), pt(), pt());
        if orient2d(&p2(a.0, a.1), &p2(b.0, b.1), &p2(c.0, c.1)) != sign_i128(det2(a, b, c)) {
            mismatches += 1;
        }
        if a == b || c == d {
            continue;
        }
        let s = Segment2::new(p2(a.0, a.1), p2(b.0, b.1)).unwrap();
        let t = Segment2::new(p2(c.0, c.1), p2(d.0, d.1)).unwrap();
        let got = match seg2_intersection(&s, &t) {
            Seg2Intersection::Empty => "empty",
            Seg2Intersection::Overlap => "overlap",
            Seg2Intersection::Point { point, alpha, beta } => {
                let on_s = Point2::new(&s.p.u + (&s.q.u - &s.p.u) * &alpha, &s.p.v + (&s.q.v - &s.p.v) * &alpha);
                let on_t = Point2::new(&t.p.u + (&t.q.u - &t.p.u) * &beta, &t.p.v + (&t.q.v - &t.p.v) * &beta);
                assert_eq!(on_s, point);
                assert_eq!(on_t, point);
                "point"
            }
        };
        if got != seg2_oracle(a, b, c, d) {
            mismatches += 1;
        }
    }
    mismatches
}
