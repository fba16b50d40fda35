//! Exact predicates and constructions checked against independent brute-force
//! computations.

mod common;

use common::sign_i128;
use knotcert_core::bezier::{evaluate, subdivide_levels, ControlPolygon};
use knotcert_core::diagram::{project_diagram, PROJECTION_ORDER};
use knotcert_core::fixtures::{k0, k1};
use knotcert_core::gauss::{gauss_code, reduce_gauss};
use knotcert_core::hull::convex_hull;
use knotcert_core::jones::{jones_from_gauss, kauffman_jones};
use knotcert_core::kernel::{frac, int, orient3d, Plane, Point3, Rational};
use knotcert_core::separation::{separate, verify_separation, SeparationResult};
use knotcert_core::{Axis, PLKnot};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn kernel_predicates_match_integer_oracles() {
    assert_eq!(common::kernel_oracle_mismatches(2024, 1000), 0);
}

#[test]
fn orient3d_matches_integer_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let v: Vec<[i64; 3]> = (0..4)
            .map(|_| [rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5)])
            .collect();
        let d = |i: usize, k: usize| (v[i][k] - v[0][k]) as i128;
        let det = d(1, 0) * (d(2, 1) * d(3, 2) - d(2, 2) * d(3, 1)) - d(1, 1) * (d(2, 0) * d(3, 2) - d(2, 2) * d(3, 0))
            + d(1, 2) * (d(2, 0) * d(3, 1) - d(2, 1) * d(3, 0));
        let p: Vec<Point3> = v.iter().map(|c| Point3::from_ints(c[0], c[1], c[2])).collect();
        assert_eq!(orient3d(&p[0], &p[1], &p[2], &p[3]), sign_i128(det));
    }
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

/// Direct Bernstein-basis evaluation.
fn bernstein(cp: &ControlPolygon, t: &Rational) -> Point3 {
    let n = cp.degree() as u64;
    let one_minus = Rational::one() - t;
    let mut acc = Point3::zero();
    for (i, p) in cp.points().iter().enumerate() {
        let i = i as u64;
        let w = int(binomial(n, i))
            * num_traits::pow(t.clone(), i as usize)
            * num_traits::pow(one_minus.clone(), (n - i) as usize);
        acc = &acc + &p.scale(&w);
    }
    acc
}

fn small_polygon() -> impl Strategy<Value = ControlPolygon> {
    prop::collection::vec((-20i64..20, -20i64..20, -20i64..20), 2..7).prop_filter_map("distinct neighbours", |v| {
        ControlPolygon::new(v.into_iter().map(|(x, y, z)| Point3::from_ints(x, y, z)).collect()).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn de_casteljau_matches_bernstein_sum(cp in small_polygon(), num in 0i64..=64) {
        let t = frac(num, 64);
        prop_assert_eq!(evaluate(&cp, &t).unwrap(), bernstein(&cp, &t));
    }

    #[test]
    fn hull_contains_its_points_and_curve_samples(cp in small_polygon()) {
        let hull = convex_hull(cp.points());
        for p in cp.points() {
            prop_assert!(hull.contains(p));
        }
        for h in hull.halfspaces() {
            for p in cp.points() {
                prop_assert!(!h.eval(p).is_positive());
            }
        }
        for k in 0..=16 {
            prop_assert!(hull.contains(&evaluate(&cp, &frac(k, 16)).unwrap()));
        }
    }

    #[test]
    fn separation_verdicts_verify(a in prop::collection::vec((-6i64..6, -6i64..6, -6i64..6), 1..6),
                                  b in prop::collection::vec((-6i64..6, -6i64..6, -6i64..6), 1..6)) {
        let pa: Vec<Point3> = a.iter().map(|&(x, y, z)| Point3::from_ints(x, y, z)).collect();
        let pb: Vec<Point3> = b.iter().map(|&(x, y, z)| Point3::from_ints(x, y, z)).collect();
        let (ha, hb) = (convex_hull(&pa), convex_hull(&pb));
        let r = separate(&ha, &hb, &[]);
        prop_assert!(verify_separation(&ha.vertices, &hb.vertices, &r, |p| ha.contains(p), |p| hb.contains(p)));
        let shared = matches!(r, SeparationResult::SharedPointsOnly { .. });
        prop_assert!(!shared);
        // A point common to both inputs rules out separation.
        if pa.iter().any(|p| hb.contains(p)) {
            let overlapping = matches!(r, SeparationResult::Overlapping { .. });
            prop_assert!(overlapping);
        }
    }

    #[test]
    fn variation_diminishing(cp in small_polygon(), a in -5i64..5, b in -5i64..5, c in -5i64..5, d in -40i64..40) {
        prop_assume!(a != 0 || b != 0 || c != 0);
        let plane = Plane::new(int(a), int(b), int(c), int(d)).unwrap();
        let changes = |vals: Vec<Rational>| {
            let signs: Vec<bool> = vals.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let poly = changes(cp.points().iter().map(|p| plane.eval(p)).collect());
        let curve = changes((0..=64).map(|k| plane.eval(&evaluate(&cp, &frac(k, 64)).unwrap())).collect());
        prop_assert!(curve <= poly);
    }
}

#[test]
fn fixture_curves_stay_in_their_hulls() {
    for cp in [k0(), k1()] {
        let hull = convex_hull(cp.points());
        for k in 1..=50 {
            assert!(hull.contains(&evaluate(&cp, &frac(k, 51)).unwrap()));
        }
        for piece in subdivide_levels(&cp, 3).pieces {
            let hull = convex_hull(piece.points());
            for k in 1..=50 {
                assert!(hull.contains(&evaluate(&piece, &frac(k, 51)).unwrap()));
            }
        }
    }
}

#[test]
fn fixture_curves_diminish_variation() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for cp in [k0(), k1()] {
        for _ in 0..20 {
            let n = Point3::from_ints(rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            if n.is_zero() {
                continue;
            }
            let through = Point3::from_ints(
                rng.gen_range(-30..=30),
                rng.gen_range(-30..=30),
                rng.gen_range(-30..=30),
            );
            let plane = Plane::through(&n, &through).unwrap();
            let changes = |vals: Vec<Rational>| {
                let signs: Vec<bool> = vals.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
                signs.windows(2).filter(|w| w[0] != w[1]).count()
            };
            let poly = changes(cp.points().iter().map(|p| plane.eval(p)).collect());
            let curve = changes(
                (0..200)
                    .map(|k| plane.eval(&evaluate(&cp, &frac(k, 199)).unwrap()))
                    .collect(),
            );
            assert!(curve <= poly, "plane {plane}: curve {curve} > polygon {poly}");
        }
    }
}

/// A point is a hull vertex exactly when it is outside the hull of the rest.
#[test]
fn hull_vertices_match_exclusion_oracle() {
    let pieces = subdivide_levels(&k1(), 3).pieces;
    for piece in [&pieces[7], &pieces[0], &pieces[3]] {
        let pts = piece.points();
        let hull = convex_hull(pts);
        for (i, p) in pts.iter().enumerate() {
            let rest: Vec<Point3> = pts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q.clone())
                .collect();
            let extreme = !convex_hull(&rest).contains(p);
            assert_eq!(hull.vertices.contains(p), extreme, "point {i}");
        }
    }
}

fn code_jones_invariant(knot: &PLKnot) {
    for axis in PROJECTION_ORDER {
        if let Ok(d) = project_diagram(knot, axis) {
            let code = gauss_code(&d);
            let j = kauffman_jones(&d).unwrap();
            assert_eq!(j, jones_from_gauss(&reduce_gauss(&code)).unwrap(), "axis {axis:?}");
            assert_eq!(j.eval_at_one(), 1);
        }
    }
}

#[test]
fn jones_survives_reduction_on_random_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tried = 0;
    while tried < 60 {
        let n = rng.gen_range(5..=9);
        let pts: Vec<Point3> = (0..n)
            .map(|_| {
                Point3::from_ints(
                    rng.gen_range(-12..=12),
                    rng.gen_range(-12..=12),
                    rng.gen_range(-12..=12),
                )
            })
            .collect();
        let Ok(k) = PLKnot::new(pts) else { continue };
        if !knotcert_core::is_simple(&k).is_simple() {
            continue;
        }
        tried += 1;
        code_jones_invariant(&k);
    }
    code_jones_invariant(&common::refinement(&k0(), 4));
    code_jones_invariant(&common::refinement(&k1(), 4));
}

#[test]
fn mirror_inverts_jones() {
    for level in [3, 4] {
        let knot = common::refinement(&k1(), level);
        let d = project_diagram(&knot, Axis::X).unwrap();
        let j = kauffman_jones(&d).unwrap();
        for axis in Axis::ALL {
            for proj in PROJECTION_ORDER {
                if let Ok(dm) = project_diagram(&knot.mirrored(axis), proj) {
                    assert_eq!(kauffman_jones(&dm).unwrap(), j.mirror());
                }
            }
        }
    }
}
