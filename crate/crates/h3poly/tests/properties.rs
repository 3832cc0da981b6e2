use std::f64::consts::PI;

use nalgebra::{Rotation3, Unit};
use proptest::prelude::*;

use h3poly::andreev::{check_andreev, check_dual_andreev, dual_andreev_metric, AngleAssignment};
use h3poly::combinatorics::corpus;
use h3poly::hpolyhedron::{build_from_halfspaces, cube_halfspaces, tetrahedron_halfspaces, total_turning};
use h3poly::minkowski::{hyperbolic_distance, HPoint, LorentzTransform, MinkowskiVec4, Vec3};
use h3poly::models::{klein_distance, to_klein};
use h3poly::pogorelov::phi;
use h3poly::polar::check_admissible;
use h3poly::report::Verdict;
use h3poly::spherical::spherical_angle_from_sides;

fn direction() -> impl Strategy<Value = Vec3> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_map(|(x, y, z)| Vec3::new(x, y, z))
        .prop_filter("non-degenerate", |v| v.norm() > 0.1)
        .prop_map(|v| v.normalize())
}

fn point(max_d: f64) -> impl Strategy<Value = HPoint> {
    (0.0..max_d, direction()).prop_map(|(d, u)| HPoint::from_timelike(MinkowskiVec4::from_parts(d.cosh(), u * d.sinh())).unwrap())
}

fn motion() -> impl Strategy<Value = LorentzTransform> {
    (direction(), 0.0..2.0f64, direction(), 0.0..PI).prop_map(|(b, s, axis, th)| {
        let boost = LorentzTransform::boost(b, s).unwrap();
        boost.compose(&LorentzTransform::rotation(Rotation3::from_axis_angle(&Unit::new_normalize(axis), th)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distance_is_lorentz_invariant(x in point(3.0), y in point(3.0), a in motion()) {
        let d = hyperbolic_distance(&x, &y).unwrap();
        let (ax, ay) = (a.apply_h(&x), a.apply_h(&y));
        prop_assert!((hyperbolic_distance(&ax, &ay).unwrap() - d).abs() < 1e-9);
        prop_assert!((klein_distance(&to_klein(&ax), &to_klein(&ay)) - d).abs() < 1e-8);
    }

    #[test]
    fn finite_vertex_links_are_short(r in 0.05..0.55f64, tetra in any::<bool>(), a in motion()) {
        let hs = if tetra { tetrahedron_halfspaces(r * 0.5) } else { cube_halfspaces(r) }.unwrap();
        let p = build_from_halfspaces(&hs).unwrap().apply(&a).unwrap();
        prop_assume!(p.is_compact());
        for v in 0..p.num_vertices() {
            prop_assert!(p.vertex_link(v).unwrap().perimeter() < 2.0 * PI);
        }
    }

    #[test]
    fn obtuse_triangle_angle_exceeds_opposite_side(a in PI / 2.0..PI, b in PI / 2.0..PI, c in PI / 2.0..PI) {
        prop_assume!(a < b + c && b < a + c && c < a + b && a + b + c < 2.0 * PI);
        let alpha = spherical_angle_from_sides(a, b, c).unwrap();
        prop_assert!(alpha >= a - 1e-12, "α = {alpha}, a = {a}");
    }

    #[test]
    fn pogorelov_image_in_double_ball(x in point(6.0), y in point(6.0)) {
        let (a, b) = phi(&x, &y);
        prop_assert!(a.norm() + b.norm() < 2.0);
    }

    #[test]
    fn closed_polygons_turn_more_than_once(pts in prop::collection::vec(point(2.0), 4..8)) {
        let t = total_turning(&pts).unwrap();
        prop_assume!(!t.collinear);
        prop_assert!(t.total > 2.0 * PI, "turning {}", t.total);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Andreev acceptance implies the dual conditions on the glued metric,
    /// and a metric passing them has no short closed geodesic.
    #[test]
    fn accepted_angles_give_admissible_duals(angles in prop::collection::vec(0.3 * PI..0.5 * PI, 30)) {
        let d = corpus::dodecahedron();
        let a = AngleAssignment {
            angles: d.edge_ids().iter().copied().zip(angles).collect(),
        };
        prop_assume!(check_andreev(&d, &a).unwrap().verdict == Verdict::Accept);
        let q = dual_andreev_metric(&d, &a).unwrap();
        let dual = check_dual_andreev(&q);
        prop_assert!(dual.passed(), "{dual:?}");
        let r = check_admissible(&q, 3 * q.cells().len());
        prop_assert!(!r.geodesic_check.is_refuted(), "{:?}", r.geodesic_check);
    }
}
