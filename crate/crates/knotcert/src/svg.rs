//! Static SVG drawings of knot diagrams.
//!
//! All geometry stays exact until a number is written, at which point it is
//! rounded to 30 significant decimal digits. The under-strand is cut at every
//! crossing, so the drawing consists of one polyline per arc (or a single
//! closed polyline when there are no crossings) plus a dot at each crossing.

use std::fmt::Write as _;

use knotcert_core::diagram::{plane_name, KnotDiagram};
use knotcert_core::kernel::{frac, Point2, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub const SIGNIFICANT_DIGITS: usize = 30;

/// Decimal text of `r` rounded half away from zero to `digits` significant
/// digits, without exponent notation or trailing zeros.
pub fn decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let (num, den) = (r.numer().abs(), r.denom().clone());
    let ten = BigInt::from(10);
    // Smallest e with |r| < 10^(e+1), i.e. the position of the leading digit.
    let int_digits = (&num / &den).to_string();
    let e: i64 = if num >= den {
        int_digits.len() as i64 - 1
    } else {
        let mut e = -1;
        let mut scaled = &num * &ten;
        while scaled < den {
            scaled *= &ten;
            e -= 1;
        }
        e
    };
    let shift = digits as i64 - 1 - e;
    let pow = |k: i64| num_traits::pow(ten.clone(), k.unsigned_abs() as usize);
    let (n, d) = if shift >= 0 {
        (&num * pow(shift), den)
    } else {
        (num, den * pow(shift))
    };
    let mut m: BigInt = (&n * 2 + &d) / (&d * 2);
    let mut shift = shift;
    if m.to_string().len() > digits {
        m /= &ten;
        shift -= 1;
    }
    let mut text = m.to_string();
    let out = if shift <= 0 {
        text.push_str(&"0".repeat((-shift) as usize));
        text
    } else {
        let shift = shift as usize;
        if text.len() <= shift {
            text = format!("{}{}", "0".repeat(shift - text.len() + 1), text);
        }
        let (int, frac_part) = text.split_at(text.len() - shift);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac_part}")
        }
    };
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

fn num(r: &Rational) -> String {
    decimal(r, SIGNIFICANT_DIGITS)
}

/// SVG coordinates: `v` points up in the diagram, down in SVG.
fn xy(p: &Point2) -> String {
    format!("{},{}", num(&p.u), num(&-&p.v))
}

fn lerp(a: &Point2, b: &Point2, t: &Rational) -> Point2 {
    Point2::new(&a.u + (&b.u - &a.u) * t, &a.v + (&b.v - &a.v) * t)
}

fn linf(a: &Point2, b: &Point2) -> Rational {
    let (du, dv) = ((&b.u - &a.u).abs(), (&b.v - &a.v).abs());
    if du > dv {
        du
    } else {
        dv
    }
}

/// A cut in the under-strand: parameters on `edge` where the gap starts and ends.
struct Cut {
    edge: usize,
    from: Rational,
    to: Rational,
}

pub fn render_svg(d: &KnotDiagram) -> String {
    let n = d.vertices.len();
    let (mut lo_u, mut hi_u) = (d.vertices[0].u.clone(), d.vertices[0].u.clone());
    let (mut lo_v, mut hi_v) = (d.vertices[0].v.clone(), d.vertices[0].v.clone());
    for p in &d.vertices {
        lo_u = lo_u.min(p.u.clone());
        hi_u = hi_u.max(p.u.clone());
        lo_v = lo_v.min(p.v.clone());
        hi_v = hi_v.max(p.v.clone());
    }
    let extent = {
        let e = (&hi_u - &lo_u).max(&hi_v - &lo_v);
        if e.is_zero() {
            Rational::one()
        } else {
            e
        }
    };
    let margin = &extent * frac(1, 20);
    let stroke = &extent * frac(1, 250);
    let gap = &extent * frac(1, 60);

    let visits = d.visits();
    let mut cuts: Vec<Cut> = Vec::new();
    for (k, v) in visits.iter().enumerate() {
        if v.over {
            continue;
        }
        let (a, b) = (&d.vertices[v.edge], &d.vertices[(v.edge + 1) % n]);
        let mut half = &gap / linf(a, b);
        // Stay clear of the edge ends and of neighbouring visits on the same edge.
        let mut room = v.param.clone().min(Rational::one() - &v.param);
        for w in [k.checked_sub(1).map(|i| &visits[i]), visits.get(k + 1)]
            .into_iter()
            .flatten()
        {
            if w.edge == v.edge {
                room = room.min((&w.param - &v.param).abs());
            }
        }
        half = half.min(room * frac(1, 2));
        cuts.push(Cut {
            edge: v.edge,
            from: &v.param - &half,
            to: &v.param + &half,
        });
    }

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" data-plane="{}">"#,
        num(&(&lo_u - &margin)),
        num(&(-&hi_v - &margin)),
        num(&(&hi_u - &lo_u + &margin * frac(2, 1))),
        num(&(&hi_v - &lo_v + &margin * frac(2, 1))),
        plane_name(d.axis)
    );
    let _ = writeln!(
        out,
        r#"<g fill="none" stroke="black" stroke-width="{}" stroke-linejoin="round">"#,
        num(&stroke)
    );
    let mut arcs: Vec<Vec<Point2>> = Vec::new();
    if cuts.is_empty() {
        let mut ring: Vec<Point2> = d.vertices.clone();
        ring.push(d.vertices[0].clone());
        arcs.push(ring);
    } else {
        // Each arc runs from the end of one cut to the start of the next.
        for (k, cut) in cuts.iter().enumerate() {
            let next = &cuts[(k + 1) % cuts.len()];
            let point = |edge: usize, t: &Rational| lerp(&d.vertices[edge], &d.vertices[(edge + 1) % n], t);
            let mut arc = vec![point(cut.edge, &cut.to)];
            let mut e = cut.edge;
            let same_edge_ahead = next.edge == cut.edge && next.from > cut.to;
            if !same_edge_ahead {
                loop {
                    e = (e + 1) % n;
                    arc.push(d.vertices[e].clone());
                    if e == next.edge {
                        break;
                    }
                }
            }
            arc.push(point(next.edge, &next.from));
            arcs.push(arc);
        }
    }
    for arc in &arcs {
        let pts: Vec<String> = arc.iter().map(xy).collect();
        let _ = writeln!(out, r#"<polyline class="strand" points="{}"/>"#, pts.join(" "));
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, r#"<g fill="black" stroke="none">"#);
    for (i, c) in d.crossings.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle class="crossing" data-label="{}" data-sign="{}" cx="{}" cy="{}" r="{}"/>"#,
            i + 1,
            c.sign,
            num(&c.location.u),
            num(&-&c.location.v),
            num(&(&stroke * frac(2, 1)))
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
