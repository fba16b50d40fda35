//! Certification pipelines: subdivide until every piece is monotone and the
//! piece hulls are pairwise disjoint apart from shared subdivision points, then
//! classify the PL refinement; push certificates for moving one vertex.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bezier::{
    evaluate, monotone_axes, subdivide_levels, subdivide_scaled, Axis, AxisSet, ControlPolygon, SubdivisionForest,
};
use crate::diagram::{project_diagram, KnotDiagram, PROJECTION_ORDER};
use crate::enclosure::{
    build_enclosure, curve_in_enclosure, normal_candidates, parts_disjoint, Enclosure, EnclosureEvidence,
    EnclosureSeparation,
};
use crate::error::{Error, Obstruction, Result};
use crate::hull::{convex_hull, ConvexHull3};
use crate::jones::{classify_jones, kauffman_jones, KnotClass, LaurentPoly};
use crate::kernel::{collinear3, frac, segment_triangle_point, Point3, Rational};
use crate::pl::{is_simple, PLKnot, SimplicityCertificate, SimplicityVerdict};
use crate::separation::{separate, verify_separation, SeparationResult};

pub const DEFAULT_MAX_LEVEL: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    /// First subdivision level tried.
    pub min_level: u32,
    pub max_level: u32,
    /// Try to resolve hull overlaps with a trimmed enclosure of one piece.
    pub enclosure_repair: bool,
    /// Normals `(left, right)` to try before the built-in search grid.
    pub enclosure_normals: Option<(Point3, Point3)>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            min_level: 1,
            max_level: DEFAULT_MAX_LEVEL,
            enclosure_repair: false,
            enclosure_normals: None,
        }
    }
}

impl CertifyOptions {
    pub fn with_max_level(max_level: u32) -> Self {
        CertifyOptions {
            max_level,
            ..CertifyOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceCertificate {
    pub index: usize,
    pub monotone_axis: Axis,
    pub axes: AxisSet,
    pub hull: ConvexHull3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSeparation {
    pub first: usize,
    pub second: usize,
    pub result: SeparationResult,
}

/// A piece whose hull overlapped another, replaced by a trimmed enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnclosureRepair {
    pub piece: usize,
    pub midpoint: Point3,
    pub normals: (Point3, Point3),
    pub enclosure: Enclosure,
    pub evidence: EnclosureEvidence,
    /// Verdicts of both enclosure parts against every other piece hull.
    pub clearances: Vec<(usize, EnclosureSeparation)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotopyCertificate {
    pub level: u32,
    /// Power of two the input was scaled by before subdividing (integral input only).
    pub scale_exponent: Option<u32>,
    pub pieces: Vec<PieceCertificate>,
    /// Upper triangle of the pairwise verdicts, row by row.
    pub separations: Vec<PairSeparation>,
    pub enclosures: Vec<EnclosureRepair>,
    pub simplicity: SimplicityCertificate,
    pub diagram: KnotDiagram,
    pub jones: LaurentPoly,
    pub pl_knot_class: KnotClass,
    pub diagram_axis: Axis,
}

impl IsotopyCertificate {
    pub fn separation(&self, i: usize, j: usize) -> Option<&SeparationResult> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.separations
            .iter()
            .find(|s| s.first == a && s.second == b)
            .map(|s| &s.result)
    }

    /// Re-derives every recorded fact from `cp` and reports each mismatch.
    pub fn validate(&self, cp: &ControlPolygon) -> Vec<String> {
        let mut bad = Vec::new();
        let forest = match certification_forest(cp, self.level) {
            Ok((f, m)) => {
                if m != self.scale_exponent {
                    bad.push(format!(
                        "scale exponent {:?} recorded, {:?} recomputed",
                        self.scale_exponent, m
                    ));
                }
                f
            }
            Err(e) => {
                bad.push(format!("subdivision failed: {e}"));
                return bad;
            }
        };
        if forest.pieces.len() != self.pieces.len() {
            bad.push(format!(
                "{} pieces recorded, {} at level {}",
                self.pieces.len(),
                forest.pieces.len(),
                self.level
            ));
            return bad;
        }
        for (k, (pc, piece)) in self.pieces.iter().zip(&forest.pieces).enumerate() {
            let axes = monotone_axes(piece);
            if pc.index != k || axes != pc.axes || !axes.contains(pc.monotone_axis) {
                bad.push(format!("piece {k}: monotone axes {} recomputed as {axes}", pc.axes));
            }
            if convex_hull(piece.points()) != pc.hull {
                bad.push(format!("piece {k}: hull differs"));
            }
        }
        let n = forest.pieces.len();
        let repaired: Vec<usize> = self.enclosures.iter().map(|r| r.piece).collect();
        if self.separations.len() != n * (n - 1) / 2 {
            bad.push(format!("{} pair verdicts for {n} pieces", self.separations.len()));
        }
        for s in &self.separations {
            let (i, j) = (s.first, s.second);
            if i >= j || j >= n {
                bad.push(format!("pair ({i}, {j}) out of range"));
                continue;
            }
            let (a, b) = (&self.pieces[i].hull, &self.pieces[j].hull);
            if !verify_separation(
                &a.vertices,
                &b.vertices,
                &s.result,
                |p| a.contains(p),
                |p| b.contains(p),
            ) {
                bad.push(format!("pair ({i}, {j}): witness does not check"));
            }
            let allowed = allowed_shared(&forest, i, j);
            match &s.result {
                SeparationResult::SharedPointsOnly { points, .. } => {
                    if points.iter().any(|p| !allowed.contains(p)) {
                        bad.push(format!(
                            "pair ({i}, {j}): shares a point that is not a subdivision point"
                        ));
                    }
                }
                SeparationResult::Overlapping { .. } => {
                    if !repaired.contains(&i) && !repaired.contains(&j) {
                        bad.push(format!("pair ({i}, {j}) overlaps without a repair"));
                    }
                }
                SeparationResult::Separated { .. } => {}
            }
        }
        for r in &self.enclosures {
            let piece = &forest.pieces[r.piece];
            match build_enclosure(piece, &r.midpoint, &r.normals.0, &r.normals.1) {
                Ok(e) if e == r.enclosure => {}
                _ => bad.push(format!("enclosure of piece {} does not rebuild", r.piece)),
            }
            let samples: Vec<Rational> = r.evidence.samples.iter().map(|s| s.parameter.clone()).collect();
            match curve_in_enclosure(piece, &r.enclosure, &samples) {
                Ok(ev) if ev == r.evidence => {}
                _ => bad.push(format!("containment evidence of piece {} does not replay", r.piece)),
            }
            let parts = r.enclosure.parts();
            for j in (0..n).filter(|&j| j != r.piece) {
                let recorded = r.clearances.iter().find(|(k, _)| *k == j);
                let fresh = parts_disjoint(&parts, &self.pieces[j].hull, &allowed_shared(&forest, r.piece, j));
                match recorded {
                    Some((_, sep)) if *sep == fresh && sep.is_disjoint_modulo_shared() => {}
                    _ => bad.push(format!("enclosure of piece {} is not clear of piece {j}", r.piece)),
                }
            }
        }
        let knot = match refinement_knot(&forest) {
            Ok(k) => k,
            Err(e) => {
                bad.push(format!("refinement: {e}"));
                return bad;
            }
        };
        let simplicity = is_simple(&knot);
        if simplicity != self.simplicity || !simplicity.is_simple() {
            bad.push("simplicity of the refinement does not replay".into());
        }
        match project_diagram(&knot, self.diagram_axis) {
            Ok(d) if d == self.diagram && d.axis == self.diagram_axis => match kauffman_jones(&d) {
                Ok(j) if j == self.jones && classify_jones(&j) == self.pl_knot_class => {}
                _ => bad.push("Jones polynomial or class does not replay".into()),
            },
            _ => bad.push("diagram does not reproject".into()),
        }
        bad
    }
}

/// The forest the certifier works on: integer inputs are scaled by `2^m` first
/// so every subdivision point is integral.
pub fn certification_forest(cp: &ControlPolygon, level: u32) -> Result<(SubdivisionForest, Option<u32>)> {
    if cp.is_integral() {
        let (f, m) = subdivide_scaled(cp, level)?;
        Ok((f, Some(m)))
    } else {
        Ok((subdivide_levels(cp, level), None))
    }
}

/// Points two pieces may share: the common endpoint of consecutive pieces,
/// including the last and first piece of a closed curve.
fn allowed_shared(forest: &SubdivisionForest, i: usize, j: usize) -> Vec<Point3> {
    let n = forest.pieces.len();
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let mut out = Vec::new();
    if j == i + 1 {
        out.push(forest.pieces[i].last().clone());
    }
    if i == 0 && j == n - 1 && forest.pieces[0].first() == forest.pieces[n - 1].last() {
        let p = forest.pieces[0].first().clone();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn refinement_knot(forest: &SubdivisionForest) -> Result<PLKnot> {
    let mut pts = forest.refinement_points();
    pts.pop();
    PLKnot::new(pts)
}

fn repair_samples() -> Vec<Rational> {
    (1..16).map(|k| frac(k, 16)).collect()
}

/// Normal pairs to try for the enclosure of `cp`: the supplied pair first,
/// then the search grid.
fn normal_pairs(cp: &ControlPolygon, mid: &Point3, opts: &CertifyOptions) -> Vec<(Point3, Point3)> {
    let mut pairs: Vec<(Point3, Point3)> = Vec::new();
    if let Some(given) = &opts.enclosure_normals {
        pairs.push(given.clone());
    }
    let (cl, cr) = (
        normal_candidates(&(cp.last() - mid)),
        normal_candidates(&(mid - cp.first())),
    );
    for l in &cl {
        for r in &cr {
            pairs.push((l.clone(), r.clone()));
        }
    }
    pairs
}

/// Builds the enclosure of `piece` with the given normals and checks it
/// against every other piece hull, `first` ones first.
fn try_enclosure(
    forest: &SubdivisionForest,
    hulls: &[ConvexHull3],
    piece: usize,
    mid: &Point3,
    normals: &(Point3, Point3),
    first: &[usize],
) -> Option<EnclosureRepair> {
    let cp = &forest.pieces[piece];
    let enclosure = build_enclosure(cp, mid, &normals.0, &normals.1).ok()?;
    let evidence = curve_in_enclosure(cp, &enclosure, &repair_samples()).ok()?;
    let parts = enclosure.parts();
    let mut order: Vec<usize> = first.to_vec();
    order.extend((0..hulls.len()).filter(|j| *j != piece && !first.contains(j)));
    let mut clearances = Vec::with_capacity(order.len());
    for j in order {
        let sep = parts_disjoint(&parts, &hulls[j], &allowed_shared(forest, piece, j));
        if !sep.is_disjoint_modulo_shared() {
            return None;
        }
        clearances.push((j, sep));
    }
    clearances.sort_by_key(|(j, _)| *j);
    Some(EnclosureRepair {
        piece,
        midpoint: mid.clone(),
        normals: normals.clone(),
        enclosure,
        evidence,
        clearances,
    })
}

/// Looks for one piece whose enclosure clears every other hull. The candidate
/// pieces are searched side by side, one normal pair at a time.
fn find_repair(
    forest: &SubdivisionForest,
    hulls: &[ConvexHull3],
    overlaps: &[(usize, usize, Point3)],
    opts: &CertifyOptions,
) -> Option<EnclosureRepair> {
    let (i, j, _) = &overlaps[0];
    let mut searches = Vec::new();
    for k in [*i, *j] {
        if overlaps.iter().all(|(a, b, _)| *a == k || *b == k) {
            let partners: Vec<usize> = overlaps.iter().map(|(a, b, _)| if *a == k { *b } else { *a }).collect();
            let mid = evaluate(&forest.pieces[k], &frac(1, 2)).ok()?;
            let pairs = normal_pairs(&forest.pieces[k], &mid, opts);
            searches.push((k, mid, pairs, partners));
        }
    }
    let longest = searches.iter().map(|s| s.2.len()).max().unwrap_or(0);
    for idx in 0..longest {
        for (k, mid, pairs, partners) in &searches {
            if let Some(normals) = pairs.get(idx) {
                if let Some(r) = try_enclosure(forest, hulls, *k, mid, normals, partners) {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn attempt_level(
    cp: &ControlPolygon,
    level: u32,
    opts: &CertifyOptions,
) -> Result<core::result::Result<IsotopyCertificate, Obstruction>> {
    let (forest, scale_exponent) = certification_forest(cp, level)?;
    let mut pieces = Vec::with_capacity(forest.pieces.len());
    for (index, piece) in forest.pieces.iter().enumerate() {
        let axes = monotone_axes(piece);
        let Some(monotone_axis) = axes.first() else {
            return Ok(Err(Obstruction::NotMonotone { level, piece: index }));
        };
        pieces.push(PieceCertificate {
            index,
            monotone_axis,
            axes,
            hull: convex_hull(piece.points()),
        });
    }
    let n = pieces.len();
    let hulls: Vec<ConvexHull3> = pieces.iter().map(|p| p.hull.clone()).collect();
    let mut separations = Vec::with_capacity(n * (n - 1) / 2);
    let mut overlaps: Vec<(usize, usize, Point3)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let allowed = allowed_shared(&forest, i, j);
            let result = separate(&hulls[i], &hulls[j], &allowed);
            if let SeparationResult::Overlapping { witness } = &result {
                overlaps.push((i, j, witness.clone()));
            }
            separations.push(PairSeparation {
                first: i,
                second: j,
                result,
            });
        }
    }
    let mut enclosures = Vec::new();
    if let Some((i, j, w)) = overlaps.first().cloned() {
        let fail = Obstruction::Overlap {
            level,
            first: i,
            second: j,
            witness: w,
        };
        // Only pairs that share no control point can be repaired, and a single
        // piece has to account for every overlap.
        if !opts.enclosure_repair
            || overlaps
                .iter()
                .any(|(a, b, _)| !allowed_shared(&forest, *a, *b).is_empty())
        {
            return Ok(Err(fail));
        }
        let repaired = find_repair(&forest, &hulls, &overlaps, opts);
        match repaired {
            Some(r) => enclosures.push(r),
            None => return Ok(Err(fail)),
        }
    }
    let knot = refinement_knot(&forest)?;
    let simplicity = is_simple(&knot);
    if let SimplicityVerdict::SelfIntersecting { edges, .. } = simplicity.verdict {
        return Ok(Err(Obstruction::NotSimple { level, edges }));
    }
    let Some(diagram) = PROJECTION_ORDER.iter().find_map(|&a| project_diagram(&knot, a).ok()) else {
        return Ok(Err(Obstruction::NoRegularProjection { level }));
    };
    let jones = kauffman_jones(&diagram)?;
    let pl_knot_class = classify_jones(&jones);
    Ok(Ok(IsotopyCertificate {
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
    }))
}

/// Escalates the subdivision level from `opts.min_level` to `opts.max_level` until the curve
/// and its PL refinement are certified ambient isotopic.
pub fn certify_isotopy_with(cp: &ControlPolygon, opts: &CertifyOptions) -> Result<IsotopyCertificate> {
    if !cp.is_closed() {
        return Err(Error::Precondition("control polygon is not closed".into()));
    }
    if opts.min_level == 0 || opts.min_level > opts.max_level {
        return Err(Error::Domain(format!(
            "level range {}..={} must be non-empty and start at 1 or above",
            opts.min_level, opts.max_level
        )));
    }
    let mut last = None;
    for level in opts.min_level..=opts.max_level {
        match attempt_level(cp, level, opts)? {
            Ok(cert) => return Ok(cert),
            Err(obstruction) => last = Some(obstruction),
        }
    }
    Err(Error::Certification(Box::new(last.expect("at least one level tried"))))
}

pub fn certify_isotopy(cp: &ControlPolygon, max_level: u32) -> Result<IsotopyCertificate> {
    certify_isotopy_with(cp, &CertifyOptions::with_max_level(max_level))
}

/// Knot class of the Bézier curve, via its certified PL refinement.
pub fn bezier_knot_type(cp: &ControlPolygon, max_level: u32) -> Result<(KnotClass, IsotopyCertificate)> {
    let cert = certify_isotopy(cp, max_level)?;
    Ok((cert.pl_knot_class.clone(), cert))
}

/// Builds the enclosure of one piece at `level` with the given normals and
/// tests it against every other piece hull. Unlike the repair search this
/// does not stop at the first hull it meets: every clearance is listed.
pub fn enclosure_for_piece(
    cp: &ControlPolygon,
    level: u32,
    piece: usize,
    normals: &(Point3, Point3),
) -> Result<EnclosureRepair> {
    let (forest, _) = certification_forest(cp, level)?;
    let n = forest.pieces.len();
    if piece >= n {
        return Err(Error::Domain(format!(
            "piece {piece} out of range, level {level} has {n} pieces"
        )));
    }
    let pc = &forest.pieces[piece];
    let midpoint = evaluate(pc, &frac(1, 2))?;
    let enclosure = build_enclosure(pc, &midpoint, &normals.0, &normals.1)?;
    let evidence = curve_in_enclosure(pc, &enclosure, &repair_samples())?;
    let parts = enclosure.parts();
    let clearances = (0..n)
        .filter(|&j| j != piece)
        .map(|j| {
            let hull = convex_hull(forest.pieces[j].points());
            (j, parts_disjoint(&parts, &hull, &allowed_shared(&forest, piece, j)))
        })
        .collect();
    Ok(EnclosureRepair {
        piece,
        midpoint,
        normals: normals.clone(),
        enclosure,
        evidence,
        clearances,
    })
}

/// Which swept triangle an edge was tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptSide {
    Previous,
    Next,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clearance {
    /// No common point.
    Clear,
    /// Meets the triangle only at the fixed corner it shares with it.
    SharedCorner(Point3),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClearance {
    pub edge: usize,
    pub side: SweptSide,
    pub clearance: Clearance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushCertificate {
    pub vertex: usize,
    pub start: Point3,
    pub end: Point3,
    /// `(prev, start, target)` and `(next, start, target)`.
    pub triangles: [[Point3; 3]; 2],
    pub clearances: Vec<EdgeClearance>,
    pub final_simplicity: SimplicityCertificate,
}

/// If `d` lies in the cone spanned by `u` and `w` (all coplanar, `d != 0`),
/// returns `c` with `d = λu + μw`, `λ + μ = c`, so `corner + t d` stays in the
/// triangle for `t <= 1/c`.
fn cone_weight(d: &Point3, u: &Point3, w: &Point3) -> Option<Rational> {
    let n = u.cross(w);
    if n.is_zero() {
        // Degenerate triangle: a segment (or two) out of the corner.
        return [u, w]
            .into_iter()
            .find(|v| !v.is_zero() && d.cross(v).is_zero() && d.dot(v).is_positive())
            .map(|v| d.dot(v) / v.dot(v));
    }
    if !n.dot(d).is_zero() {
        return None;
    }
    let nn = n.dot(&n);
    let lambda = d.cross(w).dot(&n) / &nn;
    let mu = u.cross(d).dot(&n) / &nn;
    (!lambda.is_negative() && !mu.is_negative()).then(|| lambda + mu)
}

fn on_segment(p: &Point3, a: &Point3, b: &Point3) -> bool {
    collinear3(a, b, p) && (p - a).dot(&(p - b)) <= Rational::zero()
}

/// Moves vertex `vertex` of the closed polygon `cp` in a straight line to
/// `target`, checking that the two swept triangles avoid every other edge.
pub fn certify_push(cp: &ControlPolygon, vertex: usize, target: &Point3) -> Result<PushCertificate> {
    let knot = PLKnot::from_closed_polygon(cp)?;
    let n = knot.len();
    if vertex == 0 || vertex >= n {
        return Err(Error::Precondition(format!(
            "vertex {vertex} is the repeated endpoint or out of range (1..{n})"
        )));
    }
    if !is_simple(&knot).is_simple() {
        return Err(Error::Precondition("control polygon is not simple".into()));
    }
    let v = knot.vertices();
    let start = v[vertex].clone();
    let prev = v[vertex - 1].clone();
    let next = v[(vertex + 1) % n].clone();
    let triangles = [
        [prev.clone(), start.clone(), target.clone()],
        [next.clone(), start.clone(), target.clone()],
    ];
    let push_fail = |edge: usize, witness: Point3| Error::PushFailure {
        vertex,
        edge,
        witness: Box::new(witness),
    };

    // A moving edge collapses if the path of the vertex runs through its fixed end.
    for (fixed, edge) in [(&prev, vertex - 1), (&next, vertex)] {
        if on_segment(fixed, &start, target) {
            return Err(push_fail(edge, fixed.clone()));
        }
    }

    let mut clearances = Vec::new();
    for e in (0..n).filter(|&e| e != vertex && e != vertex - 1) {
        let seg = knot.edge(e);
        for (side, tri) in [(SweptSide::Previous, &triangles[0]), (SweptSide::Next, &triangles[1])] {
            let corner = &tri[0];
            let clearance = if seg.p == *corner || seg.q == *corner {
                let other = if seg.p == *corner { &seg.q } else { &seg.p };
                let d = other - corner;
                if let Some(c) = cone_weight(&d, &(&tri[1] - corner), &(&tri[2] - corner)) {
                    let reach = core::cmp::min(Rational::one(), Rational::one() / c);
                    return Err(push_fail(
                        e,
                        corner.lerp(other, &(reach / Rational::from_integer(2.into()))),
                    ));
                }
                Clearance::SharedCorner(corner.clone())
            } else {
                match segment_triangle_point(&seg, &tri[0], &tri[1], &tri[2]) {
                    Some(p) => return Err(push_fail(e, p)),
                    None => Clearance::Clear,
                }
            };
            clearances.push(EdgeClearance {
                edge: e,
                side,
                clearance,
            });
        }
    }

    let mut moved = v.to_vec();
    moved[vertex] = target.clone();
    let final_knot = PLKnot::new(moved)?;
    let final_simplicity = is_simple(&final_knot);
    if let SimplicityVerdict::SelfIntersecting { edges, witness } = &final_simplicity.verdict {
        return Err(push_fail(edges.1, witness.clone()));
    }
    Ok(PushCertificate {
        vertex,
        start,
        end: target.clone(),
        triangles,
        clearances,
        final_simplicity,
    })
}

/// The polygon after a push, as a closed control polygon.
pub fn pushed_polygon(cp: &ControlPolygon, vertex: usize, target: &Point3) -> Result<ControlPolygon> {
    let mut pts = cp.points().to_vec();
    if vertex >= pts.len() {
        return Err(Error::Domain(format!("vertex {vertex} out of range")));
    }
    pts[vertex] = target.clone();
    ControlPolygon::new(pts)
}
