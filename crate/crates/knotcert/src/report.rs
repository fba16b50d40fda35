//! Line-oriented text form of certificates.
//!
//! Every line is a keyword followed by space-separated tokens; rationals are
//! written `p/q` (or `p`), points as their coordinates in order, planes as
//! `a b c d` for `a x + b y + c z + d = 0`. Lines starting with `#` are
//! comments. Nothing derived from the clock or the environment is written, so
//! equal inputs give byte-identical reports.
//!
//! Isotopy certificates omit the piece hulls, which are recomputed from the
//! input curve when a report is read back; the reader therefore takes the curve
//! and the result can be passed straight to `IsotopyCertificate::validate`.

use std::fmt::Write as _;

use knotcert_core::bezier::{AxisSet, ControlPolygon};
use knotcert_core::certify::{
    certification_forest, Clearance, EdgeClearance, EnclosureRepair, PairSeparation, SweptSide,
};
use knotcert_core::diagram::{parse_plane, plane_name, Crossing, KnotDiagram};
use knotcert_core::enclosure::{Enclosure, EnclosureEvidence, EnclosureSeparation, SampleCheck};
use knotcert_core::gauss::gauss_code;
use knotcert_core::hull::convex_hull;
use knotcert_core::jones::{KnotClass, LaurentPoly};
use knotcert_core::kernel::{parse_rational, Plane, Point2, Point3, Rational};
use knotcert_core::pl::{SimplicityCertificate, SimplicityVerdict};
use knotcert_core::{
    Axis, IsotopyCertificate, PieceCertificate, PushCertificate, SeparationResult, TransitionInterval, VertexHomotopy,
};

use crate::error::{Error, Result};

// ---------------------------------------------------------------- writing

fn pt3(p: &Point3) -> String {
    format!("{} {} {}", p.x, p.y, p.z)
}

fn plane(p: &Plane) -> String {
    format!("{} {} {} {}", p.a, p.b, p.c, p.d)
}

fn axis_set(s: &AxisSet) -> String {
    let names: Vec<&str> = s.iter().map(Axis::name).collect();
    if names.is_empty() {
        "-".into()
    } else {
        names.join(",")
    }
}

fn verdict(r: &SeparationResult) -> String {
    match r {
        SeparationResult::Separated { witness } => format!("separated {}", plane(witness)),
        SeparationResult::SharedPointsOnly { points, witness } => {
            let mut s = format!("shared {} {}", plane(witness), points.len());
            for p in points {
                s.push(' ');
                s.push_str(&pt3(p));
            }
            s
        }
        SeparationResult::Overlapping { witness } => format!("overlap {}", pt3(witness)),
    }
}

fn class_tag(c: &KnotClass) -> &'static str {
    match c {
        KnotClass::Unknot => "unknot",
        KnotClass::TrefoilLeft => "trefoil-left",
        KnotClass::TrefoilRight => "trefoil-right",
        KnotClass::Other(_) => "other",
    }
}

fn jones_terms(j: &LaurentPoly) -> String {
    j.terms().map(|(e, c)| format!(" {e}:{c}")).collect()
}

fn points_line(key: &str, pts: &[Point3]) -> String {
    let mut s = format!("{key} {}", pts.len());
    for p in pts {
        s.push(' ');
        s.push_str(&pt3(p));
    }
    s
}

fn write_simplicity(out: &mut String, s: &SimplicityCertificate) {
    match &s.verdict {
        SimplicityVerdict::Simple => out.push_str("simplicity simple\n"),
        SimplicityVerdict::SelfIntersecting { edges, witness } => {
            let _ = writeln!(
                out,
                "simplicity self-intersecting {} {} {}",
                edges.0,
                edges.1,
                pt3(witness)
            );
        }
    }
    let _ = write!(out, "collinear {}", s.collinear.len());
    for (i, c) in s.collinear.iter().enumerate() {
        if *c {
            let _ = write!(out, " {i}");
        }
    }
    out.push('\n');
}

fn write_enclosure(out: &mut String, r: &EnclosureRepair) {
    let e = &r.evidence;
    let _ = writeln!(out, "enclosure {}", r.piece);
    let _ = writeln!(out, "midpoint {}", pt3(&r.midpoint));
    let _ = writeln!(out, "normals {} {}", pt3(&r.normals.0), pt3(&r.normals.1));
    let _ = writeln!(
        out,
        "halves {} {}",
        plane(&r.enclosure.left_half),
        plane(&r.enclosure.right_half)
    );
    let _ = writeln!(out, "plane-counts {} {}", e.left_count, e.right_count);
    let _ = writeln!(out, "{}", points_line("left-points", &e.left_points));
    let _ = writeln!(out, "{}", points_line("right-points", &e.right_points));
    let _ = writeln!(out, "samples {}", e.samples.len());
    for s in &e.samples {
        let tag = if s.inside { "inside" } else { "outside" };
        let _ = writeln!(out, "sample {} {} {tag}", s.parameter, pt3(&s.point));
    }
    let _ = writeln!(out, "clearances {}", r.clearances.len());
    for (j, sep) in &r.clearances {
        let _ = writeln!(out, "clearance {j} {} | {}", verdict(&sep.left), verdict(&sep.right));
    }
}

fn write_diagram(out: &mut String, d: &KnotDiagram) {
    let _ = writeln!(out, "diagram {}", plane_name(d.axis));
    let _ = writeln!(out, "vertices {}", d.vertices.len());
    for v in &d.vertices {
        let _ = writeln!(out, "vertex {} {}", v.u, v.v);
    }
    let _ = writeln!(out, "crossings {}", d.crossings.len());
    for c in &d.crossings {
        let _ = writeln!(
            out,
            "crossing {} {} {} {} {} {} {} {} {}",
            c.over_edge,
            c.under_edge,
            c.over_param,
            c.under_param,
            c.over_depth,
            c.under_depth,
            c.sign,
            c.location.u,
            c.location.v
        );
    }
    let code = gauss_code(d);
    let _ = writeln!(
        out,
        "gauss {}",
        if code.entries.is_empty() {
            "-".into()
        } else {
            code.to_string()
        }
    );
}

pub fn isotopy_report(cert: &IsotopyCertificate) -> String {
    let mut out = String::new();
    out.push_str("format isotopy 1\n");
    let _ = writeln!(out, "# class {}", cert.pl_knot_class);
    let _ = writeln!(out, "level {}", cert.level);
    match cert.scale_exponent {
        Some(m) => {
            let _ = writeln!(out, "scale-exponent {m}");
        }
        None => out.push_str("scale-exponent none\n"),
    }
    let _ = writeln!(out, "pieces {}", cert.pieces.len());
    for p in &cert.pieces {
        let _ = writeln!(
            out,
            "piece {} {} {}",
            p.index,
            p.monotone_axis.name(),
            axis_set(&p.axes)
        );
    }
    let _ = writeln!(out, "separations {}", cert.separations.len());
    for s in &cert.separations {
        let _ = writeln!(out, "pair {} {} {}", s.first, s.second, verdict(&s.result));
    }
    let _ = writeln!(out, "enclosures {}", cert.enclosures.len());
    for r in &cert.enclosures {
        write_enclosure(&mut out, r);
    }
    write_simplicity(&mut out, &cert.simplicity);
    write_diagram(&mut out, &cert.diagram);
    let _ = writeln!(out, "# V(t) = {}", cert.jones);
    let _ = writeln!(out, "jones{}", jones_terms(&cert.jones));
    let _ = writeln!(out, "class {}", class_tag(&cert.pl_knot_class));
    out
}

/// A diagram on its own: projected vertices, exact crossings and Gauss code.
pub fn diagram_report(d: &KnotDiagram) -> String {
    let mut out = String::from("format diagram 1\n");
    write_diagram(&mut out, d);
    let _ = writeln!(out, "writhe {}", d.writhe());
    out
}

/// Report for a single enclosure check at `level`.
pub fn enclosure_report(level: u32, r: &EnclosureRepair) -> String {
    let mut out = String::from("format enclosure 1\n");
    let _ = writeln!(out, "level {level}");
    write_enclosure(&mut out, r);
    let blocked: Vec<String> = r
        .clearances
        .iter()
        .filter(|(_, s)| !s.is_disjoint_modulo_shared())
        .map(|(j, _)| j.to_string())
        .collect();
    if blocked.is_empty() {
        out.push_str("status clear\n");
    } else {
        let _ = writeln!(out, "status blocked {}", blocked.join(" "));
    }
    out
}

fn side_tag(s: SweptSide) -> &'static str {
    match s {
        SweptSide::Previous => "previous",
        SweptSide::Next => "next",
    }
}

pub fn push_report(cert: &PushCertificate) -> String {
    let mut out = String::from("format push 1\n");
    let _ = writeln!(out, "vertex {}", cert.vertex);
    let _ = writeln!(out, "start {}", pt3(&cert.start));
    let _ = writeln!(out, "end {}", pt3(&cert.end));
    for (side, t) in [SweptSide::Previous, SweptSide::Next].into_iter().zip(&cert.triangles) {
        let _ = writeln!(
            out,
            "triangle {} {} {} {}",
            side_tag(side),
            pt3(&t[0]),
            pt3(&t[1]),
            pt3(&t[2])
        );
    }
    let _ = writeln!(out, "clearances {}", cert.clearances.len());
    for c in &cert.clearances {
        match &c.clearance {
            Clearance::Clear => {
                let _ = writeln!(out, "edge {} {} clear", c.edge, side_tag(c.side));
            }
            Clearance::SharedCorner(p) => {
                let _ = writeln!(out, "edge {} {} shared-corner {}", c.edge, side_tag(c.side), pt3(p));
            }
        }
    }
    write_simplicity(&mut out, &cert.final_simplicity);
    out
}

fn opt_rational(r: &Option<Rational>) -> String {
    r.as_ref().map_or_else(|| "none".into(), |r| r.to_string())
}

pub fn transition_report(t: &TransitionInterval) -> String {
    let mut out = String::from("format transition 1\n");
    let _ = writeln!(out, "lo {}", t.lo);
    let _ = writeln!(out, "hi {}", t.hi);
    let _ = writeln!(out, "class-lo {}", class_tag(&t.class_lo));
    let _ = writeln!(out, "class-hi {}", class_tag(&t.class_hi));
    let _ = writeln!(out, "uncertified-gap {}", t.uncertified_gap);
    let _ = writeln!(out, "failed-at {}", opt_rational(&t.failed_at));
    for (name, cert) in [("lo", &t.cert_lo), ("hi", &t.cert_hi)] {
        let _ = writeln!(out, "begin certificate {name}");
        out.push_str(&isotopy_report(cert));
        out.push_str("end certificate\n");
    }
    out
}

// ---------------------------------------------------------------- reading

struct Fields<'a> {
    line: usize,
    toks: Vec<&'a str>,
    pos: usize,
}

impl<'a> Fields<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, msg.into())
    }

    fn word(&mut self) -> Result<&'a str> {
        let t = self
            .toks
            .get(self.pos)
            .copied()
            .ok_or_else(|| self.err("line ends early"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, w: &str) -> Result<()> {
        let got = self.word()?;
        if got == w {
            Ok(())
        } else {
            Err(self.err(format!("expected {w:?}, found {got:?}")))
        }
    }

    fn usize(&mut self) -> Result<usize> {
        let t = self.word()?;
        t.parse()
            .map_err(|_| self.err(format!("expected a count, found {t:?}")))
    }

    fn rational(&mut self) -> Result<Rational> {
        let t = self.word()?;
        parse_rational(t).map_err(|e| self.err(e.to_string()))
    }

    fn point3(&mut self) -> Result<Point3> {
        Ok(Point3::new(self.rational()?, self.rational()?, self.rational()?))
    }

    fn plane(&mut self) -> Result<Plane> {
        let (a, b, c, d) = (self.rational()?, self.rational()?, self.rational()?, self.rational()?);
        Plane::new(a, b, c, d).map_err(|e| self.err(e.to_string()))
    }

    fn points(&mut self) -> Result<Vec<Point3>> {
        let n = self.usize()?;
        (0..n).map(|_| self.point3()).collect()
    }

    fn axis(&mut self) -> Result<Axis> {
        let t = self.word()?;
        parse_axis(t).ok_or_else(|| self.err(format!("unknown axis {t:?}")))
    }

    fn verdict(&mut self) -> Result<SeparationResult> {
        match self.word()? {
            "separated" => Ok(SeparationResult::Separated { witness: self.plane()? }),
            "shared" => {
                let witness = self.plane()?;
                Ok(SeparationResult::SharedPointsOnly {
                    points: self.points()?,
                    witness,
                })
            }
            "overlap" => Ok(SeparationResult::Overlapping {
                witness: self.point3()?,
            }),
            t => Err(self.err(format!("unknown verdict {t:?}"))),
        }
    }

    fn done(&self) -> Result<()> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected trailing token {t:?}"))),
        }
    }
}

fn parse_axis(t: &str) -> Option<Axis> {
    Axis::ALL.into_iter().find(|a| a.name() == t)
}

struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Reader { lines, pos: 0 }
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(0, |l| l.0)
    }

    /// Next line, which must start with `key`; the remaining tokens.
    fn next(&mut self, key: &str) -> Result<Fields<'a>> {
        let Some(&(line, text)) = self.lines.get(self.pos) else {
            return Err(Error::parse(self.last_line(), format!("missing {key:?} line")));
        };
        let mut toks = text.split_whitespace();
        if toks.next() != Some(key) {
            return Err(Error::parse(line, format!("expected {key:?}, found {text:?}")));
        }
        self.pos += 1;
        Ok(Fields {
            line,
            toks: toks.collect(),
            pos: 0,
        })
    }

    fn header(&mut self, kind: &str) -> Result<()> {
        let mut f = self.next("format")?;
        f.expect(kind)?;
        f.expect("1")?;
        f.done()
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some((line, text)) => Err(Error::parse(*line, format!("unexpected line {text:?}"))),
        }
    }
}

fn read_class(f: &mut Fields, jones: &LaurentPoly) -> Result<KnotClass> {
    match f.word()? {
        "unknot" => Ok(KnotClass::Unknot),
        "trefoil-left" => Ok(KnotClass::TrefoilLeft),
        "trefoil-right" => Ok(KnotClass::TrefoilRight),
        "other" => Ok(KnotClass::Other(jones.clone())),
        t => Err(f.err(format!("unknown knot class {t:?}"))),
    }
}

fn read_simplicity(r: &mut Reader) -> Result<SimplicityCertificate> {
    let mut f = r.next("simplicity")?;
    let verdict = match f.word()? {
        "simple" => SimplicityVerdict::Simple,
        "self-intersecting" => SimplicityVerdict::SelfIntersecting {
            edges: (f.usize()?, f.usize()?),
            witness: f.point3()?,
        },
        t => return Err(f.err(format!("unknown simplicity verdict {t:?}"))),
    };
    f.done()?;
    let mut f = r.next("collinear")?;
    let mut collinear = vec![false; f.usize()?];
    while f.pos < f.toks.len() {
        let i = f.usize()?;
        *collinear
            .get_mut(i)
            .ok_or_else(|| f.err(format!("vertex {i} out of range")))? = true;
    }
    Ok(SimplicityCertificate { verdict, collinear })
}

fn read_enclosure(r: &mut Reader, pieces: &[ControlPolygon]) -> Result<EnclosureRepair> {
    let mut f = r.next("enclosure")?;
    let piece = f.usize()?;
    f.done()?;
    let cp = pieces
        .get(piece)
        .ok_or_else(|| f.err(format!("piece {piece} out of range")))?;
    let mut f = r.next("midpoint")?;
    let midpoint = f.point3()?;
    let mut f = r.next("normals")?;
    let normals = (f.point3()?, f.point3()?);
    let mut f = r.next("halves")?;
    let enclosure = Enclosure {
        hull: convex_hull(cp.points()),
        left_half: f.plane()?,
        right_half: f.plane()?,
    };
    let mut f = r.next("plane-counts")?;
    let (left_count, right_count) = (f.usize()?, f.usize()?);
    let left_points = r.next("left-points")?.points()?;
    let right_points = r.next("right-points")?.points()?;
    let n = r.next("samples")?.usize()?;
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        let mut f = r.next("sample")?;
        let parameter = f.rational()?;
        let point = f.point3()?;
        let inside = match f.word()? {
            "inside" => true,
            "outside" => false,
            t => return Err(f.err(format!("expected inside or outside, found {t:?}"))),
        };
        samples.push(SampleCheck {
            parameter,
            point,
            inside,
        });
    }
    let n = r.next("clearances")?.usize()?;
    let mut clearances = Vec::with_capacity(n);
    for _ in 0..n {
        let mut f = r.next("clearance")?;
        let j = f.usize()?;
        let left = f.verdict()?;
        f.expect("|")?;
        let right = f.verdict()?;
        f.done()?;
        clearances.push((j, EnclosureSeparation { left, right }));
    }
    Ok(EnclosureRepair {
        piece,
        midpoint,
        normals,
        enclosure,
        evidence: EnclosureEvidence {
            left_count,
            left_points,
            right_count,
            right_points,
            samples,
        },
        clearances,
    })
}

fn read_diagram(r: &mut Reader) -> Result<KnotDiagram> {
    let mut f = r.next("diagram")?;
    let name = f.word()?;
    let axis = parse_plane(name).map_err(|e| f.err(e.to_string()))?;
    let n = r.next("vertices")?.usize()?;
    let mut vertices = Vec::with_capacity(n);
    for _ in 0..n {
        let mut f = r.next("vertex")?;
        vertices.push(Point2::new(f.rational()?, f.rational()?));
    }
    let n = r.next("crossings")?.usize()?;
    let mut crossings = Vec::with_capacity(n);
    for _ in 0..n {
        let mut f = r.next("crossing")?;
        let (over_edge, under_edge) = (f.usize()?, f.usize()?);
        let (over_param, under_param) = (f.rational()?, f.rational()?);
        let (over_depth, under_depth) = (f.rational()?, f.rational()?);
        let sign = match f.word()? {
            "1" => 1,
            "-1" => -1,
            t => return Err(f.err(format!("crossing sign {t:?}"))),
        };
        let location = Point2::new(f.rational()?, f.rational()?);
        crossings.push(Crossing {
            location,
            over_edge,
            under_edge,
            over_param,
            under_param,
            over_depth,
            under_depth,
            sign,
        });
    }
    let d = KnotDiagram {
        axis,
        vertices,
        crossings,
    };
    let f = r.next("gauss")?;
    let recorded = f.toks.join(" ");
    let code = gauss_code(&d);
    let expected = if code.entries.is_empty() {
        "-".into()
    } else {
        code.to_string()
    };
    if recorded != expected {
        return Err(f.err(format!(
            "Gauss code {recorded:?} does not match the crossings ({expected})"
        )));
    }
    Ok(d)
}

fn read_isotopy(r: &mut Reader, cp: &ControlPolygon) -> Result<IsotopyCertificate> {
    r.header("isotopy")?;
    let mut f = r.next("level")?;
    let level: u32 = f.word()?.parse().map_err(|_| f.err("bad level"))?;
    let mut f = r.next("scale-exponent")?;
    let scale_exponent = match f.word()? {
        "none" => None,
        t => Some(t.parse().map_err(|_| f.err(format!("bad scale exponent {t:?}")))?),
    };
    let (forest, _) = certification_forest(cp, level)?;
    let mut f = r.next("pieces")?;
    let n = f.usize()?;
    if n != forest.pieces.len() {
        return Err(f.err(format!(
            "{n} pieces recorded, the curve has {} at level {level}",
            forest.pieces.len()
        )));
    }
    let mut pieces = Vec::with_capacity(n);
    for cp in &forest.pieces {
        let mut f = r.next("piece")?;
        let index = f.usize()?;
        let monotone_axis = f.axis()?;
        let axes_tok = f.word()?;
        let axes: AxisSet = if axes_tok == "-" {
            AxisSet::empty()
        } else {
            axes_tok
                .split(',')
                .map(|a| parse_axis(a).ok_or_else(|| f.err(format!("unknown axis {a:?}"))))
                .collect::<Result<_>>()?
        };
        pieces.push(PieceCertificate {
            index,
            monotone_axis,
            axes,
            hull: convex_hull(cp.points()),
        });
    }
    let m = r.next("separations")?.usize()?;
    let mut separations = Vec::with_capacity(m);
    for _ in 0..m {
        let mut f = r.next("pair")?;
        let (first, second) = (f.usize()?, f.usize()?);
        let result = f.verdict()?;
        f.done()?;
        separations.push(PairSeparation { first, second, result });
    }
    let e = r.next("enclosures")?.usize()?;
    let enclosures = (0..e)
        .map(|_| read_enclosure(r, &forest.pieces))
        .collect::<Result<_>>()?;
    let simplicity = read_simplicity(r)?;
    let diagram = read_diagram(r)?;
    let mut f = r.next("jones")?;
    let mut terms = Vec::new();
    while f.pos < f.toks.len() {
        let t = f.word()?;
        let parsed = t
            .split_once(':')
            .and_then(|(e, c)| Some((e.parse::<i32>().ok()?, c.parse::<i64>().ok()?)));
        terms.push(parsed.ok_or_else(|| f.err(format!("bad Jones term {t:?}")))?);
    }
    let jones = terms.iter().fold(LaurentPoly::zero(), |acc, &(e, c)| {
        acc.add(&LaurentPoly::monomial(c, e))
    });
    let mut f = r.next("class")?;
    let pl_knot_class = read_class(&mut f, &jones)?;
    Ok(IsotopyCertificate {
        level,
        scale_exponent,
        pieces,
        separations,
        enclosures,
        simplicity,
        diagram_axis: diagram.axis,
        diagram,
        jones,
        pl_knot_class,
    })
}

/// Reads an isotopy report for the curve `cp`.
pub fn parse_isotopy_report(text: &str, cp: &ControlPolygon) -> Result<IsotopyCertificate> {
    let mut r = Reader::new(text);
    let cert = read_isotopy(&mut r, cp)?;
    r.finish()?;
    Ok(cert)
}

fn read_side(f: &mut Fields) -> Result<SweptSide> {
    match f.word()? {
        "previous" => Ok(SweptSide::Previous),
        "next" => Ok(SweptSide::Next),
        t => Err(f.err(format!("unknown side {t:?}"))),
    }
}

pub fn parse_push_report(text: &str) -> Result<PushCertificate> {
    let mut r = Reader::new(text);
    r.header("push")?;
    let vertex = r.next("vertex")?.usize()?;
    let start = r.next("start")?.point3()?;
    let end = r.next("end")?.point3()?;
    let mut read_triangle = |want: SweptSide| -> Result<[Point3; 3]> {
        let mut f = r.next("triangle")?;
        if read_side(&mut f)? != want {
            return Err(f.err("triangles out of order"));
        }
        Ok([f.point3()?, f.point3()?, f.point3()?])
    };
    let triangles = [read_triangle(SweptSide::Previous)?, read_triangle(SweptSide::Next)?];
    let n = r.next("clearances")?.usize()?;
    let mut clearances = Vec::with_capacity(n);
    for _ in 0..n {
        let mut f = r.next("edge")?;
        let edge = f.usize()?;
        let side = read_side(&mut f)?;
        let clearance = match f.word()? {
            "clear" => Clearance::Clear,
            "shared-corner" => Clearance::SharedCorner(f.point3()?),
            t => return Err(f.err(format!("unknown clearance {t:?}"))),
        };
        clearances.push(EdgeClearance { edge, side, clearance });
    }
    let final_simplicity = read_simplicity(&mut r)?;
    r.finish()?;
    Ok(PushCertificate {
        vertex,
        start,
        end,
        triangles,
        clearances,
        final_simplicity,
    })
}

/// Reads a transition report for the family `h`; the two embedded isotopy
/// certificates are read against the polygons at `lo` and `hi`.
pub fn parse_transition_report(text: &str, h: &VertexHomotopy) -> Result<TransitionInterval> {
    let mut r = Reader::new(text);
    r.header("transition")?;
    let lo = r.next("lo")?.rational()?;
    let hi = r.next("hi")?.rational()?;
    let mut f = r.next("class-lo")?;
    let class_lo_tag = f.word()?.to_string();
    let mut f = r.next("class-hi")?;
    let class_hi_tag = f.word()?.to_string();
    let mut f = r.next("uncertified-gap")?;
    let uncertified_gap = match f.word()? {
        "true" => true,
        "false" => false,
        t => return Err(f.err(format!("expected true or false, found {t:?}"))),
    };
    let mut f = r.next("failed-at")?;
    let failed_at = match f.word()? {
        "none" => None,
        t => Some(parse_rational(t).map_err(|e| f.err(e.to_string()))?),
    };
    let mut certs = Vec::new();
    for (name, s) in [("lo", &lo), ("hi", &hi)] {
        let mut f = r.next("begin")?;
        f.expect("certificate")?;
        f.expect(name)?;
        let cp = knotcert_core::polygon_at(h, s)?;
        certs.push(read_isotopy(&mut r, &cp)?);
        let mut f = r.next("end")?;
        f.expect("certificate")?;
    }
    r.finish()?;
    let cert_hi = certs.pop().expect("two certificates");
    let cert_lo = certs.pop().expect("two certificates");
    for (tag, cert) in [(&class_lo_tag, &cert_lo), (&class_hi_tag, &cert_hi)] {
        if tag != class_tag(&cert.pl_knot_class) {
            return Err(Error::parse(0, format!("class {tag} disagrees with its certificate")));
        }
    }
    Ok(TransitionInterval {
        lo,
        hi,
        class_lo: cert_lo.pl_knot_class.clone(),
        class_hi: cert_hi.pl_knot_class.clone(),
        cert_lo,
        cert_hi,
        uncertified_gap,
        failed_at,
    })
}

/// Reads an isotopy report for `cp` and re-derives every verdict in it.
/// Returns the list of discrepancies (empty when the report checks).
pub fn check_isotopy_report(text: &str, cp: &ControlPolygon) -> Result<Vec<String>> {
    let cert = parse_isotopy_report(text, cp)?;
    let mut problems = cert.validate(cp);
    if strip_comments(&isotopy_report(&cert)) != strip_comments(text) {
        problems.push("report is not in canonical form".into());
    }
    Ok(problems)
}

/// Reads a push report and compares it with a fresh push certificate for
/// the same move on `cp`.
pub fn check_push_report(text: &str, cp: &ControlPolygon) -> Result<Vec<String>> {
    let cert = parse_push_report(text)?;
    let mut problems = Vec::new();
    if cp.points().get(cert.vertex) != Some(&cert.start) {
        problems.push(format!("vertex {} of the polygon is not {}", cert.vertex, cert.start));
    }
    match knotcert_core::certify_push(cp, cert.vertex, &cert.end) {
        Ok(fresh) if fresh == cert => {}
        Ok(_) => problems.push("push certificate does not replay".into()),
        Err(e) => problems.push(format!("push does not certify: {e}")),
    }
    Ok(problems)
}

/// The report with comments and blank lines removed and lines trimmed.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .fold(String::new(), |mut acc, l| {
            acc.push_str(l);
            acc.push('\n');
            acc
        })
}
